use std::path::{Path, PathBuf};

use clap::Args;
use ncmseg::io::{self, ReportFormat};
use ncmseg::metrics::{confusion, Scores};
use ncmseg::pipeline::remove_small_components;
use ncmseg::{
    generate_phantom, segment_bscan, to_neutrosophic, BinaryMask, GrayImage, MetricsReport, NcmConfig, PhantomSpec,
};
use rayon::prelude::*;

use crate::config::{FileConfig, SolverArgs};
use crate::error::CliError;

pub const THREADS_ENV: &str = "NCMSEG_THREADS";

#[derive(Debug, Args)]
pub struct SegmentArgs {
    /// Grayscale B-scan (PGM, PNG or TIFF).
    pub image: PathBuf,
    /// Output mask (8-bit PNG, fluid = 255).
    #[arg(short, long)]
    pub output: PathBuf,
    /// Also write an RGB overlay of the mask on the image.
    #[arg(long)]
    pub overlay: Option<PathBuf>,
    /// Region-of-interest mask; only nonzero pixels are clustered.
    #[arg(long)]
    pub roi: Option<PathBuf>,
    /// Drop fluid components smaller than this many pixels.
    #[arg(long = "min-area")]
    pub min_area: Option<usize>,
    #[command(flatten)]
    pub solver: SolverArgs,
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    /// Dataset root: <root>/<subject>/images and <root>/<subject>/masks/<expert>.
    pub root: PathBuf,
    /// Expert to compare against, by directory name or 1-based index.
    #[arg(long)]
    pub expert: Option<String>,
    /// Report output path.
    #[arg(short, long)]
    pub report: PathBuf,
    /// Report format: json or csv.
    #[arg(long)]
    pub format: Option<String>,
    /// Region-of-interest mask applied to every B-scan.
    #[arg(long)]
    pub roi: Option<PathBuf>,
    #[arg(long = "min-area")]
    pub min_area: Option<usize>,
    #[command(flatten)]
    pub solver: SolverArgs,
}

#[derive(Debug, Args)]
pub struct TransformArgs {
    pub image: PathBuf,
    /// Writes <prefix>_t.png, <prefix>_i.png, <prefix>_f.png and <prefix>_delta.png.
    #[arg(short, long = "out-prefix")]
    pub out_prefix: PathBuf,
    #[arg(long, default_value_t = NcmConfig::default().window())]
    pub window: usize,
}

#[derive(Debug, Args)]
pub struct PhantomArgs {
    /// Output B-scan path (8-bit PNG).
    pub image: PathBuf,
    /// Output ground-truth mask path.
    #[arg(long)]
    pub mask: PathBuf,
    #[arg(long, default_value_t = PhantomSpec::default().width)]
    pub width: usize,
    #[arg(long, default_value_t = PhantomSpec::default().height)]
    pub height: usize,
    #[arg(long, default_value_t = PhantomSpec::default().layer_count)]
    pub layers: usize,
    #[arg(long, default_value_t = PhantomSpec::default().blob_count)]
    pub blobs: usize,
    #[arg(long = "blob-min", default_value_t = PhantomSpec::default().blob_intensity.0)]
    pub blob_min: f64,
    #[arg(long = "blob-max", default_value_t = PhantomSpec::default().blob_intensity.1)]
    pub blob_max: f64,
    #[arg(long = "bg-min", default_value_t = PhantomSpec::default().background_intensity.0)]
    pub bg_min: f64,
    #[arg(long = "bg-max", default_value_t = PhantomSpec::default().background_intensity.1)]
    pub bg_max: f64,
    /// Gaussian noise standard deviation.
    #[arg(long, default_value_t = PhantomSpec::default().noise_std)]
    pub noise: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

fn opt4(v: Option<f64>) -> String {
    v.map(|v| format!("{v:.4}")).unwrap_or_else(|| "undefined".into())
}

fn load_roi(path: Option<&Path>) -> Result<Option<BinaryMask>, CliError> {
    path.map(io::load_mask).transpose().map_err(CliError::from)
}

fn segment_one(
    image: &GrayImage,
    config: &NcmConfig,
    roi: Option<&BinaryMask>,
    min_area: Option<usize>,
) -> Result<(BinaryMask, ncmseg::SegmentationResult), CliError> {
    let result = segment_bscan(image, config, roi)?;
    let mask = match min_area {
        Some(area) if area > 1 => remove_small_components(&result.mask, area),
        _ => result.mask.clone(),
    };
    Ok((mask, result))
}

pub fn segment(args: &SegmentArgs) -> Result<(), CliError> {
    let file = FileConfig::load(args.solver.config.as_deref())?;
    let config = args.solver.resolve(&file)?;
    let image = io::load_gray(&args.image)?;
    let roi = load_roi(args.roi.as_deref().or(file.roi.as_deref()))?;
    let (mask, result) = segment_one(&image, &config, roi.as_ref(), args.min_area.or(file.min_area))?;

    io::save_mask(&mask, &args.output)?;
    if let Some(path) = args.overlay.as_ref().or(file.overlay.as_ref()) {
        io::save_overlay(&image, &mask, path)?;
    }
    println!("iterations: {}", result.state.iterations);
    println!("converged: {}", result.state.converged);
    println!("final cost: {}", opt4(result.state.final_cost()));
    println!("fluid pixels: {}", mask.fluid_count());
    println!("elapsed: {:.4} s", result.elapsed);
    Ok(())
}

fn worker_count() -> Result<usize, CliError> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(n),
            _ => Err(CliError::Usage(format!(
                "{THREADS_ENV} must be a positive integer, got {v:?}"
            ))),
        },
        Err(_) => Ok(std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)),
    }
}

pub fn evaluate(args: &EvaluateArgs) -> Result<(), CliError> {
    let file = FileConfig::load(args.solver.config.as_deref())?;
    let config = args.solver.resolve(&file)?;
    let format: ReportFormat = args
        .format
        .as_deref()
        .or(file.format.as_deref())
        .unwrap_or("json")
        .parse()
        .map_err(|e: ncmseg::Error| CliError::Usage(e.to_string()))?;
    let threads = worker_count()?;
    let roi = load_roi(args.roi.as_deref().or(file.roi.as_deref()))?;
    let min_area = args.min_area.or(file.min_area);

    let index = io::index_dataset(&args.root).map_err(CliError::dataset)?;
    let selector = args.expert.as_deref().or(file.expert.as_deref()).unwrap_or("1");
    let expert = index
        .resolve_expert(selector)
        .ok_or_else(|| {
            CliError::Usage(format!(
                "expert {selector:?} not found; dataset has {} ({})",
                index.experts.len(),
                index.experts.join(", ")
            ))
        })?
        .to_string();
    for w in &index.warnings {
        eprintln!("warning: {w}");
    }

    let jobs: Vec<(&str, &ncmseg::io::ScanEntry)> = index
        .subjects
        .iter()
        .flat_map(|s| s.scans.iter().map(move |scan| (s.id.as_str(), scan)))
        .collect();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let counts: Vec<Result<_, CliError>> = pool.install(|| {
        jobs.par_iter()
            .map(|(subject, scan)| {
                let image = io::load_gray(&scan.image)?;
                let gt = io::load_mask(&scan.masks[&expert])?;
                let (mask, _) = segment_one(&image, &config, roi.as_ref(), min_area)?;
                Ok((subject.to_string(), scan.id.clone(), confusion(&mask, &gt)?))
            })
            .collect()
    });
    let counts = counts.into_iter().collect::<Result<Vec<_>, _>>()?;

    let report = MetricsReport::from_counts(counts);
    io::write_report(&report, &args.report, format)?;

    for s in &report.per_subject {
        print_row(&format!("subject {}", s.id), &s.scores);
    }
    print_row("average", &report.average);
    Ok(())
}

fn print_row(label: &str, s: &Scores) {
    println!(
        "{label}: dice {} sensitivity {} precision {}",
        opt4(s.dice),
        opt4(s.sensitivity),
        opt4(s.precision)
    );
}

pub fn transform(args: &TransformArgs) -> Result<(), CliError> {
    let image = io::load_gray(&args.image)?;
    let ns = to_neutrosophic(&image, args.window)?;
    let prefix = args.out_prefix.to_string_lossy();
    for (suffix, map) in [
        ("t", &ns.t_map),
        ("i", &ns.i_map),
        ("f", &ns.f_map),
        ("delta", &ns.delta_map),
    ] {
        let path = format!("{prefix}_{suffix}.png");
        io::save_gray(map, &path)?;
        println!("wrote {path}");
    }
    Ok(())
}

pub fn phantom(args: &PhantomArgs) -> Result<(), CliError> {
    let spec = PhantomSpec {
        width: args.width,
        height: args.height,
        layer_count: args.layers,
        blob_count: args.blobs,
        blob_intensity: (args.blob_min, args.blob_max),
        background_intensity: (args.bg_min, args.bg_max),
        noise_std: args.noise,
        seed: args.seed,
    };
    let (image, mask) = generate_phantom(&spec)?;
    io::save_gray(&image, &args.image)?;
    io::save_mask(&mask, &args.mask)?;
    println!("fluid pixels: {}", mask.fluid_count());
    Ok(())
}
