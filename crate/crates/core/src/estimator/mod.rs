//! The one-pass triangle estimator.
//!
//! Each repetition keeps the edges of five hash-defined sets while scanning
//! the stream. Afterwards it derives a scale estimate for the vertices that
//! need one, counts sampled triangles among light vertices (`T̄_L`), and
//! reweights triangles counted at heavy vertices (`T̄_H`). Repetitions are
//! combined by a median of block means.

mod engine;
mod params;
mod retention;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph::{Edge, VertexId};
use crate::hashing::derive_seed;
use crate::numeric::{mean, median_of_means};

pub(crate) use engine::{run as run_engine, CopySource};
pub use engine::{Evaluation, ScaleEstimate, ScaleKnowledge};
use engine::{Engine, TriangleSource};
pub use params::{compute_params, Clamp, EstimatorParams, RepetitionPlan, SamplingParams};
pub(crate) use params::{check_accuracy, check_positive};
pub use retention::{
    retention_flags, sample_stream, RetentionFlags, SampleState, Sampler, SamplingConfig, VertexCoins,
};

/// Scans `stream` once with the hash functions of `params.seed`.
pub fn process_stream<I: IntoIterator<Item = Edge>>(stream: I, params: &EstimatorParams) -> SampleState {
    sample_stream(stream, params.sampling, params.seed)
}

/// Scale estimates of every retained vertex that has `c(v) = 1` or a level.
pub fn scale_estimates(state: &SampleState, params: &EstimatorParams) -> BTreeMap<VertexId, ScaleKnowledge> {
    let engine = Engine::new(state, &TriangleSource, params.t_tilde);
    let scales = engine.scales();
    engine.scale_map(&scales)
}

/// `T̄_L`: sampled triangles on light vertices, times `k^{3/2}`.
pub fn estimate_tl(
    state: &SampleState,
    params: &EstimatorParams,
    scales: &BTreeMap<VertexId, ScaleKnowledge>,
) -> f64 {
    let engine = Engine::new(state, &TriangleSource, params.t_tilde);
    engine.evaluate(&engine.scale_vec(scales)).low
}

/// `T̄_H`: reweighted triangles counted at vertices whose level matches.
pub fn estimate_th(
    state: &SampleState,
    params: &EstimatorParams,
    scales: &BTreeMap<VertexId, ScaleKnowledge>,
) -> f64 {
    let engine = Engine::new(state, &TriangleSource, params.t_tilde);
    engine.evaluate(&engine.scale_vec(scales)).high
}

/// One repetition's result.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SingleEstimate {
    pub value: f64,
    pub low: f64,
    pub high: f64,
    pub edges_stored: usize,
}

impl SingleEstimate {
    pub(crate) fn new(ev: Evaluation, edges_stored: usize) -> Self {
        SingleEstimate {
            value: ev.total(),
            low: ev.low,
            high: ev.high,
            edges_stored,
        }
    }
}

pub fn evaluate_state(state: &SampleState, params: &EstimatorParams) -> SingleEstimate {
    SingleEstimate::new(run_engine(state, &TriangleSource, params.t_tilde), state.edges_stored)
}

/// `T̄ = T̄_L + T̄_H` for one repetition seeded with `params.seed`.
pub fn estimate_once<I: IntoIterator<Item = Edge>>(stream: I, params: &EstimatorParams) -> SingleEstimate {
    evaluate_state(&process_stream(stream, params), params)
}

/// Final verdict of the median-of-means wrapper.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "outcome", content = "value", rename_all = "snake_case")]
pub enum OutcomeKind {
    Estimate(f64),
    GuessTooHigh,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EstimateOutcome {
    pub kind: OutcomeKind,
    /// Median of block means, reported even when the guess is rejected.
    pub median_of_means: f64,
    pub edges_stored_mean: f64,
    pub repetitions: usize,
    pub plan: RepetitionPlan,
}

impl EstimateOutcome {
    pub fn value(&self) -> Option<f64> {
        match self.kind {
            OutcomeKind::Estimate(v) => Some(v),
            OutcomeKind::GuessTooHigh => None,
        }
    }

    pub(crate) fn from_runs(runs: &[SingleEstimate], plan: RepetitionPlan, guess: f64) -> Self {
        let values: Vec<f64> = runs.iter().map(|r| r.value).collect();
        let stored: Vec<f64> = runs.iter().map(|r| r.edges_stored as f64).collect();
        let mom = median_of_means(&values, plan.block_size).unwrap_or(0.0);
        EstimateOutcome {
            kind: if mom >= 0.75 * guess {
                OutcomeKind::Estimate(mom)
            } else {
                OutcomeKind::GuessTooHigh
            },
            median_of_means: mom,
            edges_stored_mean: mean(&stored).unwrap_or(0.0),
            repetitions: runs.len(),
            plan,
        }
    }
}

const SCAN_CHUNK: usize = 4096;

/// Feeds one scan of `stream` to `repetitions` samplers seeded
/// `derive_seed(seed, r)` and post-processes each with `eval`. Results are
/// in repetition order.
pub(crate) fn run_repetitions<I, F>(
    stream: I,
    sampling: SamplingParams,
    seed: u64,
    repetitions: usize,
    eval: F,
) -> Vec<SingleEstimate>
where
    I: IntoIterator<Item = Edge>,
    F: Fn(&SampleState) -> Evaluation + Sync,
{
    let mut samplers: Vec<Sampler> = (0..repetitions as u64)
        .map(|r| Sampler::new(SamplingConfig::new(sampling, derive_seed(seed, r))))
        .collect();
    let mut chunk = Vec::with_capacity(SCAN_CHUNK);
    let flush = |chunk: &mut Vec<Edge>, samplers: &mut Vec<Sampler>| {
        samplers.par_iter_mut().for_each(|s| {
            for &e in chunk.iter() {
                s.push(e);
            }
        });
        chunk.clear();
    };
    for e in stream {
        chunk.push(e);
        if chunk.len() == SCAN_CHUNK {
            flush(&mut chunk, &mut samplers);
        }
    }
    flush(&mut chunk, &mut samplers);
    samplers
        .into_par_iter()
        .map(|s| {
            let state = s.finish();
            SingleEstimate::new(eval(&state), state.edges_stored)
        })
        .collect()
}

/// Runs `params.plan()` repetitions and applies the `¾·T̃` verdict.
pub fn estimate_with<I: IntoIterator<Item = Edge>>(stream: I, params: &EstimatorParams) -> EstimateOutcome {
    let plan = params.plan();
    let runs = run_repetitions(stream, params.sampling, params.seed, plan.repetitions(), |state| {
        run_engine(state, &TriangleSource, params.t_tilde)
    });
    EstimateOutcome::from_runs(&runs, plan, params.t_tilde)
}

/// `(ε, δ)` estimate of `T`, or a report that `T̃` exceeds it.
pub fn estimate<I: IntoIterator<Item = Edge>>(
    stream: I,
    t_tilde: f64,
    tv_plus: f64,
    te_plus: f64,
    eps: f64,
    delta: f64,
    seed: u64,
) -> Result<EstimateOutcome> {
    let params = compute_params(t_tilde, tv_plus, te_plus, eps, delta, seed)?;
    Ok(estimate_with(stream, &params))
}

/// Repetition `r` of [`estimate_with`] as a standalone run.
pub fn repetition_params(params: &EstimatorParams, r: u64) -> EstimatorParams {
    params.with_seed(derive_seed(params.seed, r))
}
