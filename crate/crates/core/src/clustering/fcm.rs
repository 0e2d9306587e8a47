//! Fuzzy c-means baseline.

use super::{check_data, quantile_centers, Power};
use crate::error::{Error, Result};

/// Distances are clamped to this before the negative power in the
/// membership update.
pub const FCM_DISTANCE_FLOOR: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct FcmState {
    pub centers: Vec<f64>,
    /// Row-major `N x C`; row `i` holds the memberships of point `i`.
    pub memberships: Vec<f64>,
    pub cost_history: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
}

impl FcmState {
    pub fn clusters(&self) -> usize {
        self.centers.len()
    }

    pub fn row(&self, i: usize) -> &[f64] {
        let c = self.clusters();
        &self.memberships[i * c..(i + 1) * c]
    }
}

/// `sum_i sum_j u_ij^m (x_i - v_j)^2`.
pub fn fcm_cost(data: &[f64], state: &FcmState, m: f64) -> Result<f64> {
    let c = state.clusters();
    if c == 0 || state.memberships.len() != data.len() * c {
        return Err(Error::invalid(format!(
            "membership matrix has {} entries, expected {} x {c}",
            state.memberships.len(),
            data.len()
        )));
    }
    let pw = Power::new(m);
    let mut cost = 0.0;
    for (i, &x) in data.iter().enumerate() {
        for (u, v) in state.row(i).iter().zip(&state.centers) {
            cost += pw.apply(*u) * (x - v) * (x - v);
        }
    }
    Ok(cost)
}

/// Alternates the membership and centre updates from quantile-initialised
/// centres until no centre moves by `eps` or more, or `max_iter` is hit.
pub fn fcm_fit(data: &[f64], clusters: usize, m: f64, eps: f64, max_iter: usize) -> Result<FcmState> {
    if clusters == 0 {
        return Err(Error::invalid("clusters must be at least 1"));
    }
    if !(m.is_finite() && m > 1.0) {
        return Err(Error::invalid(format!("fuzzifier m must be > 1, got {m}")));
    }
    check_data(data, clusters)?;

    let exponent = Power::new(2.0 / (m - 1.0));
    let mpow = Power::new(m);
    let mut state = FcmState {
        centers: quantile_centers(data, clusters),
        memberships: vec![0.0; data.len() * clusters],
        cost_history: Vec::new(),
        iterations: 0,
        converged: false,
    };

    while state.iterations < max_iter {
        update_memberships(data, &state.centers, exponent, &mut state.memberships);

        let mut moved: f64 = 0.0;
        for j in 0..clusters {
            let (mut num, mut den) = (0.0, 0.0);
            for (i, &x) in data.iter().enumerate() {
                let w = mpow.apply(state.memberships[i * clusters + j]);
                num += w * x;
                den += w;
            }
            if den > 0.0 {
                let next = num / den;
                moved = moved.max((next - state.centers[j]).abs());
                state.centers[j] = next;
            }
        }

        state.iterations += 1;
        let cost = fcm_cost(data, &state, m)?;
        state.cost_history.push(cost);
        if moved < eps {
            state.converged = true;
            break;
        }
    }
    // Memberships consistent with the returned centres.
    update_memberships(data, &state.centers, exponent, &mut state.memberships);
    Ok(state)
}

/// `u_ij = 1 / sum_k (d_ij / d_ik)^(2/(m-1))`, evaluated relative to the
/// nearest centre so large exponents do not overflow.
fn update_memberships(data: &[f64], centers: &[f64], exponent: Power, out: &mut [f64]) {
    let c = centers.len();
    for (i, &x) in data.iter().enumerate() {
        let row = &mut out[i * c..(i + 1) * c];
        let nearest = centers
            .iter()
            .map(|v| (x - v).abs().max(FCM_DISTANCE_FLOOR))
            .fold(f64::INFINITY, f64::min);
        let mut total = 0.0;
        for (u, v) in row.iter_mut().zip(centers) {
            let d = (x - v).abs().max(FCM_DISTANCE_FLOOR);
            *u = exponent.apply(nearest / d);
            total += *u;
        }
        for u in row.iter_mut() {
            *u /= total;
        }
    }
}
