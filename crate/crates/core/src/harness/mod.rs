//! Experiment sweeps over synthetic or imported topologies.

mod config;
mod report;
mod sweep;

pub use config::{count_from_pct, ExperimentConfig, TopologySpec};
pub use report::{consistency_csv, fmt_num, min_walks_csv, sweep_csv, sweep_runs_csv, MinWalksRow};
pub use sweep::{
    min_walks_from_means, run_consistency_figure, run_fscore_vs_sparsity, run_fscore_vs_walks,
    run_min_walks_for_f50, run_trial, Experiment, Method, RawRow, SweepAxis, SweepResult, SweepRow,
    TrialScores,
};
