//! Layered configuration: command-line flags override the JSON config file,
//! which overrides the built-in defaults.

use std::path::{Path, PathBuf};

use clap::Args;
use ncmseg::NcmConfig;
use serde::Deserialize;

use crate::error::CliError;

/// Solver flags shared by `segment` and `evaluate`.
#[derive(Debug, Clone, Default, Args)]
pub struct SolverArgs {
    /// Number of clusters.
    #[arg(long)]
    pub clusters: Option<usize>,
    /// Fuzzifier (> 1).
    #[arg(long)]
    pub m: Option<f64>,
    /// Truth-term weight.
    #[arg(long)]
    pub w1: Option<f64>,
    /// Indeterminacy-term weight.
    #[arg(long)]
    pub w2: Option<f64>,
    /// Falsity-term weight.
    #[arg(long)]
    pub w3: Option<f64>,
    /// Falsity regulariser on the [0, 1] intensity scale.
    #[arg(long)]
    pub delta: Option<f64>,
    /// Odd local-mean window for the neutrosophic transform.
    #[arg(long)]
    pub window: Option<usize>,
    /// Convergence threshold on the largest centre movement.
    #[arg(long)]
    pub eps: Option<f64>,
    #[arg(long = "max-iter")]
    pub max_iter: Option<usize>,
    #[arg(long = "distance-floor")]
    pub distance_floor: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// JSON file with any of the above keys (plus roi, expert, format,
    /// overlay, min_area).
    #[arg(long)]
    pub config: Option<PathBuf>,
}

/// Keys accepted in a `--config` file. Unknown keys are rejected.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub clusters: Option<usize>,
    pub m: Option<f64>,
    pub w1: Option<f64>,
    pub w2: Option<f64>,
    pub w3: Option<f64>,
    pub delta: Option<f64>,
    pub window: Option<usize>,
    pub eps: Option<f64>,
    pub max_iter: Option<usize>,
    pub distance_floor: Option<f64>,
    pub seed: Option<u64>,
    pub roi: Option<PathBuf>,
    pub expert: Option<String>,
    pub format: Option<String>,
    pub overlay: Option<PathBuf>,
    pub min_area: Option<usize>,
}

impl FileConfig {
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let Some(path) = path else {
            return Ok(FileConfig::default());
        };
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("config {}: {e}", path.display())))
    }
}

impl SolverArgs {
    pub fn resolve(&self, file: &FileConfig) -> Result<NcmConfig, CliError> {
        let defaults = NcmConfig::default();
        let [d1, d2, d3] = defaults.weights();
        let pick = |flag: Option<f64>, file: Option<f64>, default: f64| flag.or(file).unwrap_or(default);
        NcmConfig::builder()
            .clusters(self.clusters.or(file.clusters).unwrap_or(defaults.clusters()))
            .fuzzifier(pick(self.m, file.m, defaults.fuzzifier()))
            .weights(
                pick(self.w1, file.w1, d1),
                pick(self.w2, file.w2, d2),
                pick(self.w3, file.w3, d3),
            )
            .delta(pick(self.delta, file.delta, defaults.delta()))
            .window(self.window.or(file.window).unwrap_or(defaults.window()))
            .tolerance(pick(self.eps, file.eps, defaults.tolerance()))
            .max_iter(self.max_iter.or(file.max_iter).unwrap_or(defaults.max_iter()))
            .distance_floor(pick(
                self.distance_floor,
                file.distance_floor,
                defaults.distance_floor(),
            ))
            .seed(self.seed.or(file.seed).unwrap_or(defaults.seed()))
            .build()
            .map_err(|e| CliError::Usage(e.to_string()))
    }
}
