//! Congested-link detection from end-to-end random-walk delay measurements.
//!
//! Link delays are recovered by an elastic-net program centred on a prior
//! built from edge betweenness centrality, next to a plain LASSO baseline and
//! a betweenness-only ranking. The crate also ships the irrepresentable
//! condition checks and an experiment harness that sweeps walk counts and
//! sparsity on synthetic topologies.

pub mod consistency;
pub mod error;
pub mod graph;
pub mod harness;
pub mod metrics;
pub mod prior;
pub mod sampling;
pub mod seed;
pub mod solvers;
pub mod textio;

pub use error::{Error, Result};
pub use graph::{edge_betweenness, random_walk, sample_walks, EdgeBetweenness, Graph, WalkPath};
pub use metrics::{score, DetectionOutcome};
pub use prior::{scale_prior, PriorVector};
pub use sampling::{
    build_matrix, gen_ground_truth, observe, BinaryMatrix, DelayState, MeasurementSet,
};
pub use solvers::{
    bc_only_rank, label_congested, solve_cscd, solve_lasso, RecoveryResult, SolverConfig,
};
