use serde::{Deserialize, Serialize};

use super::Pattern;
use crate::error::{config, Result};
use crate::estimator::{
    check_accuracy, check_positive, run_engine, run_repetitions, sample_stream, Clamp, CopySource, EstimateOutcome,
    RepetitionPlan, SampleState, SamplingParams, SingleEstimate,
};
use crate::graph::{Edge, Graph};

struct MotifSource<'a>(&'a Pattern);

impl CopySource for MotifSource<'_> {
    fn size(&self) -> usize {
        self.0.size()
    }

    fn for_each_copy(&self, g: &Graph, f: &mut dyn FnMut(&[usize], &[(usize, usize)])) {
        self.0.for_each_copy_index(g, f);
    }
}

/// Parameters of the motif estimator.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MotifParams {
    /// `M̃`
    pub m_tilde: f64,
    /// Upper bounds `[C_1⁺, …, C_s⁺]`.
    pub c_bounds: Vec<f64>,
    pub sampling: SamplingParams,
    pub eps: f64,
    pub eps_effective: f64,
    pub delta: f64,
    pub seed: u64,
    pub clamps: Vec<Clamp>,
    pub k_overridden: bool,
}

/// `k = min_{2 ≤ l ≤ s} min{(M̃²/C_l)^{2/l}, M̃²/(C_l·C_1^{l-2})^{1/(l-1)}}`.
///
/// With `s = 3` and `C = [T_V, T_E, T]` this is the triangle estimator's `k`.
pub fn motif_k(m_tilde: f64, c_bounds: &[f64]) -> f64 {
    let m2 = m_tilde * m_tilde;
    let c1 = c_bounds[0];
    (2..=c_bounds.len())
        .map(|l| {
            let cl = c_bounds[l - 1];
            let a = (m2 / cl).powf(2.0 / l as f64);
            let b = m2 / (cl * c1.powi(l as i32 - 2)).powf(1.0 / (l - 1) as f64);
            a.min(b)
        })
        .fold(f64::INFINITY, f64::min)
}

/// Parameters for `M̃` and bounds `[C_1⁺, …, C_s⁺]`, with
/// `ω = min{M̃²/C_1⁺, √k}`.
pub fn compute_motif_params(
    m_tilde: f64,
    c_bounds: &[f64],
    eps: f64,
    delta: f64,
    seed: u64,
) -> Result<MotifParams> {
    if !(m_tilde >= 1.0 && m_tilde.is_finite()) {
        return config(format!("M_tilde must be at least 1, got {m_tilde}"));
    }
    if c_bounds.len() < 3 {
        return config(format!("need C bounds for l = 1..s with s ≥ 3, got {}", c_bounds.len()));
    }
    for (l, &c) in c_bounds.iter().enumerate() {
        check_positive(&format!("C_{}_plus", l + 1), c)?;
    }
    build(m_tilde, c_bounds, motif_k(m_tilde, c_bounds), false, eps, delta, seed)
}

fn build(
    m_tilde: f64,
    c_bounds: &[f64],
    k: f64,
    k_overridden: bool,
    eps: f64,
    delta: f64,
    seed: u64,
) -> Result<MotifParams> {
    let mut clamps = Vec::new();
    let eps_effective = check_accuracy(eps, delta, &mut clamps)?;
    let sampling = SamplingParams::new(k, m_tilde * m_tilde / c_bounds[0], &mut clamps);
    Ok(MotifParams {
        m_tilde,
        c_bounds: c_bounds.to_vec(),
        sampling,
        eps,
        eps_effective,
        delta,
        seed,
        clamps,
        k_overridden,
    })
}

impl MotifParams {
    pub fn with_k(&self, k: f64) -> Result<MotifParams> {
        if !(k >= 1.0 && k.is_finite()) {
            return config(format!("k must be at least 1, got {k}"));
        }
        build(self.m_tilde, &self.c_bounds, k, true, self.eps, self.delta, self.seed)
    }

    pub fn with_seed(&self, seed: u64) -> MotifParams {
        MotifParams { seed, ..self.clone() }
    }

    pub fn k(&self) -> f64 {
        self.sampling.k
    }

    pub fn omega(&self) -> f64 {
        self.sampling.omega
    }

    pub fn top_level(&self) -> i64 {
        self.sampling.top_level()
    }

    pub fn plan(&self) -> RepetitionPlan {
        RepetitionPlan::from_accuracy(self.eps_effective, self.delta)
    }

    fn check_pattern(&self, pattern: &Pattern) -> Result<()> {
        if self.c_bounds.len() == pattern.size() {
            Ok(())
        } else {
            config(format!(
                "pattern has {} vertices but {} C bounds were given",
                pattern.size(),
                self.c_bounds.len()
            ))
        }
    }
}

/// `M̄ = M̄_L + M̄_H` evaluated on an already scanned sample.
pub fn motif_evaluate_state(state: &SampleState, pattern: &Pattern, params: &MotifParams) -> Result<SingleEstimate> {
    params.check_pattern(pattern)?;
    let ev = run_engine(state, &MotifSource(pattern), params.m_tilde);
    Ok(SingleEstimate::new(ev, state.edges_stored))
}

/// One repetition seeded with `params.seed`.
pub fn motif_estimate_once<I: IntoIterator<Item = Edge>>(
    stream: I,
    pattern: &Pattern,
    params: &MotifParams,
) -> Result<SingleEstimate> {
    params.check_pattern(pattern)?;
    motif_evaluate_state(&sample_stream(stream, params.sampling, params.seed), pattern, params)
}

/// Median-of-means over `params.plan()` repetitions with the `¾·M̃` verdict.
pub fn motif_estimate_with<I: IntoIterator<Item = Edge>>(
    stream: I,
    pattern: &Pattern,
    params: &MotifParams,
) -> Result<EstimateOutcome> {
    params.check_pattern(pattern)?;
    let plan = params.plan();
    let source = MotifSource(pattern);
    let runs = run_repetitions(stream, params.sampling, params.seed, plan.repetitions(), |state| {
        run_engine(state, &source, params.m_tilde)
    });
    Ok(EstimateOutcome::from_runs(&runs, plan, params.m_tilde))
}

pub fn motif_estimate<I: IntoIterator<Item = Edge>>(
    stream: I,
    pattern: &Pattern,
    m_tilde: f64,
    c_bounds: &[f64],
    eps: f64,
    delta: f64,
    seed: u64,
) -> Result<EstimateOutcome> {
    let params = compute_motif_params(m_tilde, c_bounds, eps, delta, seed)?;
    motif_estimate_with(stream, pattern, &params)
}

/// `M² + Σ_{l=2}^{s} C_l·(k^{l/2} + k·(C_1⁺·k/M²)^{l-2})`, the variance
/// bound without its constant.
pub fn motif_variance_bound(count: f64, c: &[f64], k: f64, c1_plus: f64) -> f64 {
    let m2 = count * count;
    m2 + (2..=c.len())
        .map(|l| c[l - 1] * (k.powf(l as f64 / 2.0) + k * (c1_plus * k / m2).powi(l as i32 - 2)))
        .sum::<f64>()
}
