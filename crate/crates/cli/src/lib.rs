//! Benchmark harness for the `bitrev-core` permutation methods.
//!
//! [`run_benchmark`] times every selected method over a range of sizes,
//! [`tune_cobra`] picks COBRA's block bits for one size, and [`report`]
//! reads and writes the CSV results.

pub mod config;
pub mod error;
pub mod harness;
pub mod report;
pub mod tune;

pub use config::{parse_range, BenchConfig, CobraQ, ElementKind};
pub use error::{BenchError, Result};
pub use harness::{run_benchmark, BenchOutcome, BenchmarkRecord, PrepareTime, Skipped};
pub use report::{read_csv, write_csv};
pub use tune::{default_candidates, tune_cobra, CobraTuning};
