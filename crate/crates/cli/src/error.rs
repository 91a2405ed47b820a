use std::path::PathBuf;

use thiserror::Error;

/// Process exit codes. Usage errors from argument parsing exit with 2.
pub mod exit {
    pub const OK: i32 = 0;
    pub const INTERNAL: i32 = 1;
    pub const DOMAIN: i32 = 3;
    pub const TRUNCATION: i32 = 4;
    pub const VERIFICATION_FAILED: i32 = 5;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] cmlie::Error),
    #[error("reading config {path}: {source}")]
    ConfigRead {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("parsing config {path}: {source}")]
    ConfigParse {
        path: PathBuf,
        source: toml::de::Error,
    },
    #[error("writing output: {0}")]
    Io(#[from] std::io::Error),
    #[error("encoding output: {0}")]
    Json(#[from] serde_json::Error),
    #[error("encoding output: {0}")]
    Csv(#[from] csv::Error),
    #[error("thread pool: {0}")]
    Threads(#[from] rayon::ThreadPoolBuildError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) => match e {
                cmlie::Error::Truncation { .. } => exit::TRUNCATION,
                cmlie::Error::InternalConsistency(_) => exit::INTERNAL,
                _ => exit::DOMAIN,
            },
            _ => exit::INTERNAL,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
