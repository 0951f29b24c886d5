use std::io;
use std::path::PathBuf;

use pencil_persist::Error;

/// Process exit statuses.
pub mod exit {
    pub const SUCCESS: i32 = 0;
    pub const INCONSISTENT: i32 = 2;
    pub const INVALID_INPUT: i32 = 3;
    pub const NUMERICAL: i32 = 4;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("reading {path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("parsing {path}: {source}")]
    Json {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error("{path}: {source}")]
    Matrix { path: PathBuf, source: Error },
    #[error("corpus instance {id} failed: {}", failed.join(", "))]
    CorpusMismatch { id: String, failed: Vec<String> },
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::CorpusMismatch { .. } | Self::Core(Error::InternalInconsistency { .. }) => {
                exit::INCONSISTENT
            }
            Self::Core(Error::NoConvergence { .. } | Error::SearchExhausted { .. }) => {
                exit::NUMERICAL
            }
            _ => exit::INVALID_INPUT,
        }
    }
}
