//! One-pass sampling estimators for triangle and small-motif counts in edge
//! streams, with exact oracles, baseline estimators and instance generators.

pub mod baselines;
pub mod bench;
pub mod error;
pub mod estimator;
pub mod generators;
pub mod graph;
pub mod hashing;
pub mod io;
pub mod motif;
pub mod numeric;

pub use error::{Error, Result};
pub use estimator::{compute_params, estimate, estimate_once, EstimateOutcome, EstimatorParams, OutcomeKind};
pub use graph::{Edge, Graph, Triangle, TriangleStats, VertexId};
