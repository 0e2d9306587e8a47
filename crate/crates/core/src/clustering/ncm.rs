//! Neutrosophic c-means.
//!
//! Each point `x_i` carries truth memberships `T_ij` towards every centre
//! `C_j`, an indeterminacy `I_i` measured against `C̄_i` (the midpoint of its
//! two strongest centres) and a falsity `F_i` measured against the scalar
//! regulariser `delta`. The cost is
//!
//! ```text
//! L = sum_i sum_j (w1 T_ij)^m (x_i - C_j)^2
//!   + sum_i (w2 I_i)^m (x_i - C̄_i)^2
//!   + sum_i delta^2 (w3 F_i)^m
//! ```
//!
//! and the solver alternates the closed-form membership update (normalised
//! by a per-point factor `K` so that `sum_j T_ij + I_i + F_i = 1`) with the
//! weighted-mean centre update.

use super::{check_data, quantile_centers, NcmConfig, Power};
use crate::error::{Error, Result};

/// Centres whose total weight `sum_i (w1 T_ij)^m` falls below this are
/// re-seeded.
pub const EMPTY_CLUSTER_WEIGHT: f64 = 1e-300;

#[derive(Debug, Clone, PartialEq)]
pub struct Memberships {
    /// Row-major `N x C`.
    pub t: Vec<f64>,
    pub i: Vec<f64>,
    pub f: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NcmState {
    pub centers: Vec<f64>,
    /// Row-major `N x C` truth memberships.
    pub t_memb: Vec<f64>,
    pub i_memb: Vec<f64>,
    pub f_memb: Vec<f64>,
    pub cost_history: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
}

impl NcmState {
    pub fn clusters(&self) -> usize {
        self.centers.len()
    }

    pub fn points(&self) -> usize {
        self.i_memb.len()
    }

    pub fn t_row(&self, i: usize) -> &[f64] {
        let c = self.clusters();
        &self.t_memb[i * c..(i + 1) * c]
    }

    pub fn final_cost(&self) -> Option<f64> {
        self.cost_history.last().copied()
    }
}

/// Indices of the largest and second-largest entries; ties go to the lower
/// index.
fn top_two(row: &[f64]) -> (usize, usize) {
    let mut best = TopTwo::new();
    for (j, &v) in row.iter().enumerate() {
        best.push(j, v);
    }
    (best.p, best.q)
}

/// Running arg-top-two; strict comparisons keep the lower index on ties.
#[derive(Clone, Copy)]
struct TopTwo {
    p: usize,
    q: usize,
    vp: f64,
    vq: f64,
}

impl TopTwo {
    #[inline(always)]
    fn new() -> Self {
        TopTwo {
            p: 0,
            q: 1,
            vp: f64::NEG_INFINITY,
            vq: f64::NEG_INFINITY,
        }
    }

    #[inline(always)]
    fn push(&mut self, j: usize, v: f64) {
        if v > self.vp {
            self.q = self.p;
            self.vq = self.vp;
            self.p = j;
            self.vp = v;
        } else if v > self.vq {
            self.q = j;
            self.vq = v;
        }
    }
}

/// Midpoint of the centres with the largest and second-largest truth
/// membership in `t_row`.
pub fn compute_cbar(t_row: &[f64], centers: &[f64]) -> Result<f64> {
    if t_row.len() < 2 || t_row.len() != centers.len() {
        return Err(Error::invalid(format!(
            "need at least two clusters with matching centres, got {} memberships and {} centres",
            t_row.len(),
            centers.len()
        )));
    }
    let (p, q) = top_two(t_row);
    Ok((centers[p] + centers[q]) / 2.0)
}

/// Closed-form truth, indeterminacy and falsity memberships for fixed
/// centres.
///
/// For point `i`, with `e = 2/(m-1)`, distances clamped below by the
/// configured floor, and `C̄_i` taken from the two nearest centres (the two
/// largest `T_ij` the update produces):
///
/// ```text
/// K    = [ (1/w1) sum_j |x_i - C_j|^-e + (1/w2) |x_i - C̄_i|^-e + (1/w3) delta^-e ]^-1
/// T_ij = K/w1 |x_i - C_j|^-e,   I_i = K/w2 |x_i - C̄_i|^-e,   F_i = K/w3 delta^-e
/// ```
pub fn ncm_update_memberships(data: &[f64], centers: &[f64], config: &NcmConfig) -> Result<Memberships> {
    let mut out = Memberships {
        t: Vec::new(),
        i: Vec::new(),
        f: Vec::new(),
    };
    update_memberships_into(data, centers, config, &mut out)?;
    Ok(out)
}

/// [`ncm_update_memberships`] writing into existing buffers.
fn update_memberships_into(data: &[f64], centers: &[f64], config: &NcmConfig, out: &mut Memberships) -> Result<()> {
    let c = centers.len();
    if c < 2 {
        return Err(Error::invalid("neutrosophic c-means needs at least two centres"));
    }
    out.t.resize(data.len() * c, 0.0);
    out.i.resize(data.len(), 0.0);
    out.f.resize(data.len(), 0.0);
    match Power::new(config.exponent()) {
        Power::Two => membership_kernel(data, centers, config, out, |x| x * x),
        Power::Int(k) => membership_kernel(data, centers, config, out, |x| x.powi(k)),
        Power::Real(p) => membership_kernel(data, centers, config, out, |x| x.powf(p)),
    }
}

#[inline(always)]
fn membership_kernel(
    data: &[f64],
    centers: &[f64],
    config: &NcmConfig,
    out: &mut Memberships,
    pow: impl Fn(f64) -> f64,
) -> Result<()> {
    let c = centers.len();
    let [w1, w2, w3] = config.weights();
    let floor = config.distance_floor();
    let delta = config.delta();
    let (inv_w1, inv_w2, inv_w3) = (1.0 / w1, 1.0 / w2, 1.0 / w3);

    let rows = out.t.chunks_exact_mut(c);
    for (i, (((&x, row), ind_out), fal_out)) in data.iter().zip(rows).zip(&mut out.i).zip(&mut out.f).enumerate() {
        // Inverse distances share their ordering with T_ij, so they pick C̄.
        for (r, cj) in row.iter_mut().zip(centers) {
            *r = 1.0 / (x - cj).abs().max(floor);
        }
        let mut best = TopTwo::new();
        for (j, &inv) in row.iter().enumerate() {
            best.push(j, inv);
        }
        let nearest = 1.0 / best.vp;
        let cbar = (centers[best.p] + centers[best.q]) / 2.0;
        let dbar = (x - cbar).abs().max(floor);
        // Every term is scaled by `scale^e`, which cancels in K and keeps
        // the powers inside [0, 1].
        let scale = nearest.min(dbar).min(delta);

        let mut sum_t = 0.0;
        for r in row.iter_mut() {
            *r = pow(scale * *r);
            sum_t += *r;
        }
        let sum_t = sum_t * inv_w1;
        let ind = pow(scale / dbar) * inv_w2;
        let fal = pow(scale / delta) * inv_w3;
        let k = 1.0 / (sum_t + ind + fal);
        if !k.is_finite() || k <= 0.0 {
            return Err(Error::Numeric {
                index: i,
                detail: format!("normaliser K = {k} for x = {x}"),
            });
        }

        let kt = k * inv_w1;
        for r in row.iter_mut() {
            *r *= kt;
        }
        *ind_out = ind * k;
        *fal_out = fal * k;
    }
    Ok(())
}

/// `C_j = sum_i (w1 T_ij)^m x_i / sum_i (w1 T_ij)^m`.
///
/// A centre with vanishing weight is moved onto the point whose strongest
/// truth membership is weakest (distinct points for several dead centres).
pub fn ncm_update_centers(data: &[f64], t_memb: &[f64], config: &NcmConfig) -> Result<Vec<f64>> {
    if data.is_empty() || !t_memb.len().is_multiple_of(data.len()) {
        return Err(Error::invalid(format!(
            "truth matrix has {} entries for {} points",
            t_memb.len(),
            data.len()
        )));
    }
    let c = t_memb.len() / data.len();
    let w1 = config.weights()[0];
    let (num, den) = match Power::new(config.fuzzifier()) {
        Power::Two => center_sums(data, t_memb, c, |t| (w1 * t) * (w1 * t)),
        Power::Int(k) => center_sums(data, t_memb, c, |t| (w1 * t).powi(k)),
        Power::Real(m) => center_sums(data, t_memb, c, |t| (w1 * t).powf(m)),
    };

    let mut centers = vec![0.0; c];
    let mut dead = Vec::new();
    for j in 0..c {
        if den[j] < EMPTY_CLUSTER_WEIGHT {
            dead.push(j);
        } else {
            centers[j] = num[j] / den[j];
        }
    }
    if !dead.is_empty() {
        let mut by_confidence: Vec<(f64, usize)> = (0..data.len())
            .map(|i| {
                let best = t_memb[i * c..(i + 1) * c]
                    .iter()
                    .cloned()
                    .fold(f64::NEG_INFINITY, f64::max);
                (best, i)
            })
            .collect();
        by_confidence.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        for (j, (_, i)) in dead.into_iter().zip(by_confidence) {
            centers[j] = data[i];
        }
    }
    Ok(centers)
}

#[inline(always)]
fn center_sums(data: &[f64], t_memb: &[f64], c: usize, weight: impl Fn(f64) -> f64) -> (Vec<f64>, Vec<f64>) {
    let mut num = vec![0.0; c];
    let mut den = vec![0.0; c];
    for (&x, row) in data.iter().zip(t_memb.chunks_exact(c)) {
        for ((n, d), &t) in num.iter_mut().zip(den.iter_mut()).zip(row) {
            let w = weight(t);
            *n += w * x;
            *d += w;
        }
    }
    (num, den)
}

/// Evaluates the neutrosophic cost of `state` with unclamped distances.
/// `C̄_i` is derived from the state's truth memberships and centres.
pub fn ncm_cost(data: &[f64], state: &NcmState, config: &NcmConfig) -> Result<f64> {
    let c = state.clusters();
    let n = data.len();
    if c < 2 || state.t_memb.len() != n * c || state.i_memb.len() != n || state.f_memb.len() != n {
        return Err(Error::invalid(format!(
            "state shapes (T: {}, I: {}, F: {}, C: {c}) do not match {n} points",
            state.t_memb.len(),
            state.i_memb.len(),
            state.f_memb.len()
        )));
    }
    match Power::new(config.fuzzifier()) {
        Power::Two => cost_kernel(data, state, config, |x| x * x),
        Power::Int(k) => cost_kernel(data, state, config, |x| x.powi(k)),
        Power::Real(m) => cost_kernel(data, state, config, |x| x.powf(m)),
    }
}

#[inline(always)]
fn cost_kernel(data: &[f64], state: &NcmState, config: &NcmConfig, pow: impl Fn(f64) -> f64) -> Result<f64> {
    let [w1, w2, w3] = config.weights();
    let delta2 = config.delta() * config.delta();
    let c = state.clusters();

    let mut truth = 0.0;
    let mut indet = 0.0;
    let mut fals = 0.0;
    for (i, (&x, row)) in data.iter().zip(state.t_memb.chunks_exact(c)).enumerate() {
        for (t, cj) in row.iter().zip(&state.centers) {
            truth += pow(w1 * t) * (x - cj) * (x - cj);
        }
        let (p, q) = top_two(row);
        let cbar = (state.centers[p] + state.centers[q]) / 2.0;
        indet += pow(w2 * state.i_memb[i]) * (x - cbar) * (x - cbar);
        fals += delta2 * pow(w3 * state.f_memb[i]);
    }
    Ok(truth + indet + fals)
}

/// Step-wise neutrosophic c-means solver.
///
/// One [`step`](NcmSolver::step) updates the memberships from the current
/// centres, moves the centres, and records the cost of the resulting state.
#[derive(Debug, Clone)]
pub struct NcmSolver<'a> {
    data: &'a [f64],
    config: &'a NcmConfig,
    state: NcmState,
}

impl<'a> NcmSolver<'a> {
    /// Starts from centres at the `(j + 0.5) / C` data quantiles.
    pub fn new(data: &'a [f64], config: &'a NcmConfig) -> Result<Self> {
        check_data(data, config.clusters())?;
        let centers = quantile_centers(data, config.clusters());
        Self::with_centers(data, config, centers)
    }

    pub fn with_centers(data: &'a [f64], config: &'a NcmConfig, centers: Vec<f64>) -> Result<Self> {
        check_data(data, config.clusters())?;
        if centers.len() != config.clusters() {
            return Err(Error::invalid(format!(
                "expected {} initial centres, got {}",
                config.clusters(),
                centers.len()
            )));
        }
        Ok(NcmSolver {
            data,
            config,
            state: NcmState {
                centers,
                t_memb: Vec::new(),
                i_memb: Vec::new(),
                f_memb: Vec::new(),
                cost_history: Vec::new(),
                iterations: 0,
                converged: false,
            },
        })
    }

    /// Runs one update cycle and returns the largest centre movement.
    pub fn step(&mut self) -> Result<f64> {
        let mut memb = Memberships {
            t: std::mem::take(&mut self.state.t_memb),
            i: std::mem::take(&mut self.state.i_memb),
            f: std::mem::take(&mut self.state.f_memb),
        };
        update_memberships_into(self.data, &self.state.centers, self.config, &mut memb)?;
        let centers = ncm_update_centers(self.data, &memb.t, self.config)?;
        let moved = centers
            .iter()
            .zip(&self.state.centers)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);

        self.state.centers = centers;
        self.state.t_memb = memb.t;
        self.state.i_memb = memb.i;
        self.state.f_memb = memb.f;
        self.state.iterations += 1;
        let cost = ncm_cost(self.data, &self.state, self.config)?;
        self.state.cost_history.push(cost);
        self.state.converged = moved < self.config.tolerance();
        Ok(moved)
    }

    /// Steps until convergence or the iteration cap.
    pub fn run(mut self) -> Result<NcmState> {
        while !self.state.converged && self.state.iterations < self.config.max_iter() {
            self.step()?;
        }
        Ok(self.state)
    }

    pub fn state(&self) -> &NcmState {
        &self.state
    }

    pub fn into_state(self) -> NcmState {
        self.state
    }
}

/// Fits the solver from quantile-initialised centres.
///
/// Reaching `max_iter` is not an error; check [`NcmState::converged`].
pub fn ncm_fit(data: &[f64], config: &NcmConfig) -> Result<NcmState> {
    NcmSolver::new(data, config)?.run()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cfg() -> NcmConfig {
        NcmConfig::builder().clusters(2).build().unwrap()
    }

    #[test]
    fn cbar_examples() {
        assert!((compute_cbar(&[0.7, 0.2, 0.1], &[0.1, 0.5, 0.9]).unwrap() - 0.3).abs() < 1e-15);
        assert!((compute_cbar(&[0.5, 0.5, 0.0], &[0.2, 0.4, 0.6]).unwrap() - 0.3).abs() < 1e-15);
        assert_eq!(compute_cbar(&[0.1, 0.9], &[0.2, 0.6]).unwrap(), 0.4);
        assert_eq!(compute_cbar(&[0.9, 0.1], &[0.2, 0.6]).unwrap(), 0.4);
        assert!(compute_cbar(&[1.0], &[0.3]).is_err());
        // runner-up ties also go to the lower index
        assert_eq!(top_two(&[0.2, 0.5, 0.2]), (1, 0));
        assert_eq!(top_two(&[0.1, 0.1, 0.1]), (0, 1));
    }

    #[test]
    fn symmetric_point_splits_truth_evenly() {
        let w = 1.0 / 3.0;
        let cfg = NcmConfig::builder()
            .clusters(2)
            .weights(w, w, 1.0 - 2.0 * w)
            .delta(0.25)
            .build()
            .unwrap();
        let m = ncm_update_memberships(&[0.5], &[0.25, 0.75], &cfg).unwrap();
        assert_eq!(m.t[0], m.t[1]);
    }

    #[test]
    fn coincident_point_is_clamped() {
        let m = ncm_update_memberships(&[0.2, 0.8], &[0.2, 0.8], &cfg()).unwrap();
        assert!(m.t[0] > 1.0 - 1e-12);
        assert!(m.t[3] > 1.0 - 1e-12);
    }

    #[test]
    fn uniform_columns_give_data_mean() {
        let data = [0.1, 0.4, 0.7, 0.8];
        let t = vec![0.3; 8];
        let c = ncm_update_centers(&data, &t, &cfg()).unwrap();
        for v in c {
            assert!((v - 0.5).abs() < 1e-15);
        }
    }

    #[test]
    fn one_hot_columns_give_cluster_means() {
        let data = [0.1, 0.3, 0.7, 0.9];
        let t = vec![1.0, 0.0, 1.0, 0.0, 0.0, 1.0, 0.0, 1.0];
        let c = ncm_update_centers(&data, &t, &cfg()).unwrap();
        assert!((c[0] - 0.2).abs() < 1e-15);
        assert!((c[1] - 0.8).abs() < 1e-15);
    }

    #[test]
    fn dead_cluster_is_reseeded_on_least_confident_point() {
        let data = [0.1, 0.3, 0.7, 0.9];
        let t = vec![1.0, 0.0, 0.9, 0.0, 0.6, 0.0, 1.0, 0.0];
        let c = ncm_update_centers(&data, &t, &cfg()).unwrap();
        assert_eq!(c[1], 0.7);
    }

    #[test]
    fn cost_examples() {
        let cfg = cfg();
        let zero = NcmState {
            centers: vec![0.2, 0.7],
            t_memb: vec![0.0; 6],
            i_memb: vec![0.0; 3],
            f_memb: vec![0.0; 3],
            cost_history: vec![],
            iterations: 0,
            converged: false,
        };
        let data = [0.1, 0.5, 0.9];
        assert_eq!(ncm_cost(&data, &zero, &cfg).unwrap(), 0.0);

        let falsity = NcmState {
            f_memb: vec![1.0; 3],
            ..zero.clone()
        };
        let expected = 3.0 * 0.1 * 0.1 * 0.125 * 0.125;
        assert!((ncm_cost(&data, &falsity, &cfg).unwrap() - expected).abs() < 1e-15);

        assert!(ncm_cost(&data[..2], &zero, &cfg).is_err());
    }

    #[test]
    fn distinct_values_are_recovered() {
        let data: Vec<f64> = [0.1, 0.5, 0.9]
            .iter()
            .flat_map(|&v| std::iter::repeat_n(v, 10))
            .collect();
        let cfg = NcmConfig::builder().clusters(3).tolerance(1e-3).build().unwrap();
        let s = ncm_fit(&data, &cfg).unwrap();
        for (c, want) in s.centers.iter().zip([0.1, 0.5, 0.9]) {
            assert!((c - want).abs() < 1e-12);
        }
        assert!(s.final_cost().unwrap() < 1e-12);
    }

    #[test]
    fn fit_is_deterministic_and_checks_size() {
        let data: Vec<f64> = (0..50).map(|i| ((i * 37) % 50) as f64 / 50.0).collect();
        let cfg = NcmConfig::builder().clusters(4).build().unwrap();
        assert_eq!(ncm_fit(&data, &cfg).unwrap(), ncm_fit(&data, &cfg).unwrap());
        assert!(matches!(ncm_fit(&data[..3], &cfg), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn iteration_cap_is_not_an_error() {
        let data: Vec<f64> = (0..40).map(|i| i as f64 / 40.0).collect();
        let cfg = NcmConfig::builder()
            .clusters(3)
            .max_iter(1)
            .tolerance(1e-12)
            .build()
            .unwrap();
        let s = ncm_fit(&data, &cfg).unwrap();
        assert_eq!(s.iterations, 1);
        assert!(!s.converged);
    }

    fn arb_instance() -> impl Strategy<Value = (Vec<f64>, usize)> {
        (2usize..5).prop_flat_map(|c| (prop::collection::vec(0.0f64..1.0, c.max(5)..60), Just(c)))
    }

    proptest! {
        #[test]
        fn memberships_are_normalised((data, c) in arb_instance(), m in 1.3f64..3.0, delta in 0.01f64..0.5) {
            let cfg = NcmConfig::builder().clusters(c).fuzzifier(m).delta(delta).build().unwrap();
            let centers = quantile_centers(&data, c);
            let mb = ncm_update_memberships(&data, &centers, &cfg).unwrap();
            for i in 0..data.len() {
                let s: f64 = mb.t[i * c..(i + 1) * c].iter().sum::<f64>() + mb.i[i] + mb.f[i];
                prop_assert!((s - 1.0).abs() <= 1e-9);
                prop_assert!(mb.t[i * c..(i + 1) * c].iter().chain([&mb.i[i], &mb.f[i]]).all(|v| (0.0..=1.0).contains(v)));
            }
        }

        #[test]
        fn shift_moves_centers((data, c) in arb_instance(), shift in -0.5f64..0.5) {
            let cfg = NcmConfig::builder().clusters(c).max_iter(30).build().unwrap();
            let shifted: Vec<f64> = data.iter().map(|x| x + shift).collect();
            let a = ncm_fit(&data, &cfg).unwrap();
            let b = ncm_fit(&shifted, &cfg).unwrap();
            for (x, y) in a.centers.iter().zip(&b.centers) {
                prop_assert!((x + shift - y).abs() < 1e-9, "{} vs {}", x + shift, y);
            }
        }

        #[test]
        fn permuted_start_permutes_result((data, c) in arb_instance()) {
            let cfg = NcmConfig::builder().clusters(c).max_iter(30).build().unwrap();
            let init = quantile_centers(&data, c);
            prop_assume!(init.windows(2).all(|w| w[1] - w[0] > 1e-6));
            let mut rev = init.clone();
            rev.reverse();
            let a = NcmSolver::with_centers(&data, &cfg, init).unwrap().run().unwrap();
            let b = NcmSolver::with_centers(&data, &cfg, rev).unwrap().run().unwrap();
            for (j, x) in a.centers.iter().enumerate() {
                prop_assert!((x - b.centers[c - 1 - j]).abs() < 1e-9);
            }
        }

        #[test]
        fn scaling_keeps_argmax((data, c) in arb_instance(), k in 0.2f64..4.0) {
            let cfg = NcmConfig::builder().clusters(c).build().unwrap();
            let centers = quantile_centers(&data, c);
            prop_assume!(centers.windows(2).all(|w| w[1] - w[0] > 1e-6));
            let a = ncm_update_memberships(&data, &centers, &cfg).unwrap();
            let sd: Vec<f64> = data.iter().map(|x| x * k).collect();
            let sc: Vec<f64> = centers.iter().map(|x| x * k).collect();
            let b = ncm_update_memberships(&sd, &sc, &cfg).unwrap();
            for i in 0..data.len() {
                let ra = top_two(&a.t[i * c..(i + 1) * c]).0;
                let rb = top_two(&b.t[i * c..(i + 1) * c]).0;
                prop_assert_eq!(ra, rb);
            }
        }
    }
}
