use crate::error::{Error, Result};

/// Hyperparameters of the neutrosophic c-means solver.
///
/// Built through [`NcmConfig::builder`], which validates every field; a
/// constructed config always satisfies `w1 + w2 + w3 = 1` and `m > 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct NcmConfig {
    clusters: usize,
    fuzzifier: f64,
    weights: [f64; 3],
    delta: f64,
    tolerance: f64,
    max_iter: usize,
    distance_floor: f64,
    window: usize,
    seed: u64,
}

impl Default for NcmConfig {
    fn default() -> Self {
        NcmConfig {
            clusters: 12,
            fuzzifier: 2.0,
            weights: [0.75, 0.125, 0.125],
            delta: 0.1,
            tolerance: 1e-5,
            max_iter: 100,
            distance_floor: 1e-10,
            window: 5,
            seed: 0,
        }
    }
}

impl NcmConfig {
    pub fn builder() -> NcmConfigBuilder {
        NcmConfigBuilder {
            inner: NcmConfig::default(),
        }
    }

    /// Reopens a validated config for modification.
    pub fn to_builder(&self) -> NcmConfigBuilder {
        NcmConfigBuilder { inner: self.clone() }
    }

    pub fn clusters(&self) -> usize {
        self.clusters
    }

    pub fn fuzzifier(&self) -> f64 {
        self.fuzzifier
    }

    /// `(w1, w2, w3)`: weights of the truth, indeterminacy and falsity terms.
    pub fn weights(&self) -> [f64; 3] {
        self.weights
    }

    /// Scalar regulariser of the falsity term.
    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn max_iter(&self) -> usize {
        self.max_iter
    }

    pub fn distance_floor(&self) -> f64 {
        self.distance_floor
    }

    /// Local-mean window used by the neutrosophic transform.
    pub fn window(&self) -> usize {
        self.window
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Membership exponent `2 / (m - 1)`.
    pub fn exponent(&self) -> f64 {
        2.0 / (self.fuzzifier - 1.0)
    }

    fn validate(&self) -> Result<()> {
        if self.clusters < 2 {
            return Err(Error::invalid(format!(
                "clusters must be at least 2, got {}",
                self.clusters
            )));
        }
        ensure(
            self.fuzzifier.is_finite() && self.fuzzifier > 1.0,
            "fuzzifier m must be > 1",
            self.fuzzifier,
        )?;
        for (k, &w) in self.weights.iter().enumerate() {
            ensure(w.is_finite() && w > 0.0, &format!("weight w{} must be > 0", k + 1), w)?;
        }
        let sum: f64 = self.weights.iter().sum();
        ensure((sum - 1.0).abs() <= 1e-9, "weights w1 + w2 + w3 must sum to 1", sum)?;
        ensure(
            self.delta.is_finite() && self.delta > 0.0,
            "delta must be > 0",
            self.delta,
        )?;
        ensure(
            self.tolerance.is_finite() && self.tolerance > 0.0,
            "tolerance must be > 0",
            self.tolerance,
        )?;
        ensure(
            self.distance_floor.is_finite() && self.distance_floor > 0.0,
            "distance floor must be > 0",
            self.distance_floor,
        )?;
        if self.max_iter == 0 {
            return Err(Error::invalid("max_iter must be at least 1"));
        }
        if self.window == 0 || self.window.is_multiple_of(2) {
            return Err(Error::invalid(format!(
                "window must be a positive odd number, got {}",
                self.window
            )));
        }
        Ok(())
    }
}

fn ensure(ok: bool, what: &str, value: f64) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::invalid(format!("{what}, got {value}")))
    }
}

#[derive(Debug, Clone)]
pub struct NcmConfigBuilder {
    inner: NcmConfig,
}

impl NcmConfigBuilder {
    pub fn clusters(mut self, clusters: usize) -> Self {
        self.inner.clusters = clusters;
        self
    }

    pub fn fuzzifier(mut self, m: f64) -> Self {
        self.inner.fuzzifier = m;
        self
    }

    pub fn weights(mut self, w1: f64, w2: f64, w3: f64) -> Self {
        self.inner.weights = [w1, w2, w3];
        self
    }

    pub fn delta(mut self, delta: f64) -> Self {
        self.inner.delta = delta;
        self
    }

    pub fn tolerance(mut self, eps: f64) -> Self {
        self.inner.tolerance = eps;
        self
    }

    pub fn max_iter(mut self, max_iter: usize) -> Self {
        self.inner.max_iter = max_iter;
        self
    }

    pub fn distance_floor(mut self, floor: f64) -> Self {
        self.inner.distance_floor = floor;
        self
    }

    pub fn window(mut self, window: usize) -> Self {
        self.inner.window = window;
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.inner.seed = seed;
        self
    }

    pub fn build(self) -> Result<NcmConfig> {
        self.inner.validate()?;
        Ok(self.inner)
    }
}
