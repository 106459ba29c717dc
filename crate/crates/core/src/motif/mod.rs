//! Counting copies of a small connected pattern: exact enumeration and the
//! one-pass estimator generalized from triangles.
//!
//! A copy is a subgraph of `G` isomorphic to the pattern, identified by its
//! edge set, so each copy is counted once regardless of the pattern's
//! automorphisms.
//!
//! Scale estimates use the normalized first-pass statistic at every level,
//! with threshold `M̃/(ω2^h)`; a vertex passing no level is light.

mod count;
mod estimate;
mod pattern;

pub use count::{brute_force_motifs, enumerate_motifs, motif_copies, motif_stats, MotifCopy, MotifCount, MotifStats};
pub use estimate::{
    compute_motif_params, motif_estimate, motif_estimate_once, motif_estimate_with, motif_evaluate_state, motif_k,
    motif_variance_bound, MotifParams,
};
pub use pattern::{Pattern, MAX_PATTERN_SIZE, MIN_PATTERN_SIZE};
