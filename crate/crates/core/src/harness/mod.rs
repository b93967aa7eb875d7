//! Instance generators, random feasible solutions and the benchmark runner.
//!
//! All randomness comes from SplitMix64 (`rand_xoshiro::SplitMix64`) seeded
//! with the 64-bit seed, so generated instances are stable across versions.

mod bench;
mod generate;
mod sample;

pub use bench::{
    bench_run, Aggregate, BenchConfig, BenchFailure, BenchReport, BenchRow, Generator, Offender,
    SeedRange, SuiteConfig,
};
pub use generate::{generate_general_instance, generate_metric_instance, GenParams, ValueCaps};
pub use sample::sample_feasible_solution;

use crate::model::ModelError;
use crate::solvers::SolverError;

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("invalid generator parameters: {0}")]
    InvalidParams(String),
    #[error("impossible value caps: {0}")]
    ImpossibleCaps(String),
    #[error("invalid bench config: {0}")]
    Config(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Solver(#[from] SolverError),
}
