//! Experiment harness: configuration, seeded runs, sweeps, rate fits, and
//! closed-form bound evaluation. The `anytime-otb` binary is a thin CLI over
//! this module.

pub mod bounds;
mod config;
mod ratefit;
mod runner;
mod sweep;

pub use config::{
    parse_config_file, AlgoKind, ExperimentConfig, LearnerKind, NoiseKind, ProblemKind,
};
pub use ratefit::{fit_rate, RateFit};
pub use runner::{
    log_grid, primary_suboptimality, read_trajectory_csv, run_experiment, run_trial, seed_path,
    stream_records, Trajectory, TrajectoryRecord, TRAJECTORY_HEADER,
};
pub use sweep::{sweep, write_aggregate_csv, write_aggregate_file, AggregateRow, AGGREGATE_HEADER};
