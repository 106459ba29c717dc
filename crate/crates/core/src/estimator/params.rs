use serde::{Deserialize, Serialize};

use crate::error::{config, Result};

/// A parameter that had to be moved into its admissible range.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Clamp {
    /// `k` computed below 1 and raised to 1.
    KRaisedToOne,
    /// `ω` computed below 2 and raised to 2.
    OmegaRaisedToTwo,
    /// `ε > ½` executed as `ε = ½`.
    EpsCappedAtHalf,
}

/// The retention scheme shared by the triangle and motif estimators: sampling
/// parameter `k`, minimum vertex weight `ω`, and the number of weight levels
/// `ω·2^h`, `h = 0, …, levels - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SamplingParams {
    pub k: f64,
    pub omega: f64,
    pub levels: u32,
}

impl SamplingParams {
    /// Clamps `k ≥ 1` and `ω ≥ 2`, with `levels = ⌈log₂(√k/ω)⌉ + 1`.
    ///
    /// `levels` is 0 when `√k/ω ≤ ½`, which happens at `k < 4` once `ω` is
    /// clamped; every vertex is then light.
    pub fn new(k: f64, omega_raw: f64, clamps: &mut Vec<Clamp>) -> Self {
        let k = if k < 1.0 {
            clamps.push(Clamp::KRaisedToOne);
            1.0
        } else {
            k
        };
        let mut omega = omega_raw.min(k.sqrt());
        if omega < 2.0 {
            clamps.push(Clamp::OmegaRaisedToTwo);
            omega = 2.0;
        }
        let top = (k.sqrt() / omega).log2().ceil();
        SamplingParams {
            k,
            omega,
            levels: (top + 1.0).max(0.0) as u32,
        }
    }

    /// `L = ⌈log₂(√k/ω)⌉`, i.e. `levels - 1`; may be `-1`.
    pub fn top_level(&self) -> i64 {
        i64::from(self.levels) - 1
    }
}

/// Median-of-means layout: `blocks` blocks of `block_size` repetitions each.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepetitionPlan {
    pub block_size: usize,
    pub blocks: usize,
}

impl RepetitionPlan {
    /// `⌈16/ε²⌉` per block and `⌈8 ln(1/δ)⌉` blocks (at least one).
    pub fn from_accuracy(eps: f64, delta: f64) -> Self {
        RepetitionPlan {
            block_size: (16.0 / (eps * eps)).ceil() as usize,
            blocks: ((8.0 * (1.0 / delta).ln()).ceil() as usize).max(1),
        }
    }

    pub fn repetitions(&self) -> usize {
        self.block_size * self.blocks
    }
}

pub(crate) fn check_accuracy(eps: f64, delta: f64, clamps: &mut Vec<Clamp>) -> Result<f64> {
    if !(eps > 0.0 && eps <= 1.0) {
        return config(format!("eps must lie in (0, 1], got {eps}"));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return config(format!("delta must lie in (0, 1), got {delta}"));
    }
    Ok(if eps > 0.5 {
        clamps.push(Clamp::EpsCappedAtHalf);
        0.5
    } else {
        eps
    })
}

pub(crate) fn check_positive(name: &str, x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        config(format!("{name} must be positive and finite, got {x}"))
    }
}

/// Parameters of the triangle estimator.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EstimatorParams {
    /// `T̃`, the guessed lower bound on `T`.
    pub t_tilde: f64,
    /// `T_V⁺`
    pub tv_plus: f64,
    /// `T_E⁺`
    pub te_plus: f64,
    pub sampling: SamplingParams,
    /// Requested accuracy.
    pub eps: f64,
    /// Accuracy actually run (at most ½).
    pub eps_effective: f64,
    pub delta: f64,
    pub seed: u64,
    pub clamps: Vec<Clamp>,
    /// True when `k` was supplied instead of derived.
    pub k_overridden: bool,
}

/// `k = min{T̃^{2/3}, T̃^{3/2}/√T_V⁺, T̃²/T_E⁺}` and `ω = min{T̃²/T_V⁺, √k}`,
/// then clamped.
pub fn compute_params(
    t_tilde: f64,
    tv_plus: f64,
    te_plus: f64,
    eps: f64,
    delta: f64,
    seed: u64,
) -> Result<EstimatorParams> {
    let k = triangle_k(t_tilde, tv_plus, te_plus)?;
    build(t_tilde, tv_plus, te_plus, k, false, eps, delta, seed)
}

fn triangle_k(t_tilde: f64, tv_plus: f64, te_plus: f64) -> Result<f64> {
    if !(t_tilde >= 1.0 && t_tilde.is_finite()) {
        return config(format!("T_tilde must be at least 1, got {t_tilde}"));
    }
    check_positive("T_V_plus", tv_plus)?;
    check_positive("T_E_plus", te_plus)?;
    Ok(t_tilde
        .powf(2.0 / 3.0)
        .min(t_tilde.powf(1.5) / tv_plus.sqrt())
        .min(t_tilde * t_tilde / te_plus))
}

#[allow(clippy::too_many_arguments)]
fn build(
    t_tilde: f64,
    tv_plus: f64,
    te_plus: f64,
    k: f64,
    k_overridden: bool,
    eps: f64,
    delta: f64,
    seed: u64,
) -> Result<EstimatorParams> {
    let mut clamps = Vec::new();
    let eps_effective = check_accuracy(eps, delta, &mut clamps)?;
    let sampling = SamplingParams::new(k, t_tilde * t_tilde / tv_plus, &mut clamps);
    Ok(EstimatorParams {
        t_tilde,
        tv_plus,
        te_plus,
        sampling,
        eps,
        eps_effective,
        delta,
        seed,
        clamps,
        k_overridden,
    })
}

impl EstimatorParams {
    /// Same bounds with a fixed `k` (`ω` and the level count are recomputed).
    pub fn with_k(&self, k: f64) -> Result<EstimatorParams> {
        if !(k >= 1.0 && k.is_finite()) {
            return config(format!("k must be at least 1, got {k}"));
        }
        build(
            self.t_tilde,
            self.tv_plus,
            self.te_plus,
            k,
            true,
            self.eps,
            self.delta,
            self.seed,
        )
    }

    pub fn with_seed(&self, seed: u64) -> EstimatorParams {
        EstimatorParams { seed, ..self.clone() }
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
}
