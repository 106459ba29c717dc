//! Experiment harness: runs the main estimator and the baselines on
//! generated instances under paired seeds, predicted space bounds, result
//! files and the exact-statistics cache.

mod cache;
mod experiment;
mod output;
mod predicted;

pub use cache::{cached_stats, sidecar_path, StatsSidecar};
pub use experiment::{
    bench_preset, matched_baseline, run_experiment, run_on, run_sweep, BudgetRule, ExperimentConfig, MethodSpec,
    PreparedInstance, PRESETS,
};
pub use output::{emit_results, format_sig, write_results, ResultFormat, RunRecord, COLUMNS};
pub use predicted::{predicted_complexities, PredictedComplexities};
