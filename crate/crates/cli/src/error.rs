use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = BenchError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("invalid benchmark configuration: {0}")]
    InvalidConfig(String),

    #[error(transparent)]
    Core(#[from] bitrev_core::Error),

    #[error("{method} at b={bits} disagrees with the oracle at {mismatches} positions")]
    Verification {
        method: String,
        bits: u32,
        mismatches: usize,
    },

    #[error("no COBRA block sizes to tune over")]
    NoCandidates,

    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },

    #[error("{path}: line {line}: {message}")]
    Parse {
        path: PathBuf,
        line: u64,
        message: String,
    },
}
