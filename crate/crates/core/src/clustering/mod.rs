//! Fuzzy and neutrosophic c-means over scalar intensities.

mod config;
mod fcm;
mod ncm;

pub use config::{NcmConfig, NcmConfigBuilder};
pub use fcm::{fcm_cost, fcm_fit, FcmState, FCM_DISTANCE_FLOOR};
pub use ncm::{
    compute_cbar, ncm_cost, ncm_fit, ncm_update_centers, ncm_update_memberships, Memberships, NcmSolver, NcmState,
    EMPTY_CLUSTER_WEIGHT,
};

use crate::error::{Error, Result};

/// Centres at the `(j + 0.5) / C` quantiles of the sorted data.
pub fn quantile_centers(data: &[f64], clusters: usize) -> Vec<f64> {
    let mut sorted = data.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len();
    (0..clusters)
        .map(|j| {
            let idx = (((j as f64 + 0.5) / clusters as f64) * n as f64).floor() as usize;
            sorted[idx.min(n - 1)]
        })
        .collect()
}

fn check_data(data: &[f64], clusters: usize) -> Result<()> {
    if data.len() < clusters {
        return Err(Error::invalid(format!(
            "need at least {clusters} data points for {clusters} clusters, got {}",
            data.len()
        )));
    }
    if let Some(pos) = data.iter().position(|v| !v.is_finite()) {
        return Err(Error::invalid(format!("data point {pos} is not finite")));
    }
    Ok(())
}

/// `x^p` with fast paths for the integer exponents that show up with the
/// usual fuzzifiers.
#[derive(Debug, Clone, Copy)]
pub(crate) enum Power {
    Two,
    Int(i32),
    Real(f64),
}

impl Power {
    pub(crate) fn new(p: f64) -> Self {
        if p == 2.0 {
            Power::Two
        } else if p.fract() == 0.0 && p.abs() <= 64.0 {
            Power::Int(p as i32)
        } else {
            Power::Real(p)
        }
    }

    #[inline]
    pub(crate) fn apply(self, x: f64) -> f64 {
        match self {
            Power::Two => x * x,
            Power::Int(k) => x.powi(k),
            Power::Real(p) => x.powf(p),
        }
    }
}
