//! Settings resolution: flags, then `CMLIE_*` environment variables, then
//! the TOML config file, then built-in defaults.
//!
//! Flags and environment variables are both handled by clap and arrive here
//! as `Some`; only the remaining `None`s fall through to the file.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::{CliError, CliResult};
use crate::output::Format;

pub const DEFAULT_TRUNCATION: u32 = cmlie::DEFAULT_TRUNCATION;
pub const DEFAULT_WK: i64 = 2;
pub const DEFAULT_MAX_DEGREE: i64 = 12;
pub const DEFAULT_SEED: u64 = 0x5eed;
pub const DEFAULT_SAMPLES: usize = 1000;

#[derive(Debug, Default, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct FileConfig {
    pub format: Option<Format>,
    pub truncation: Option<u32>,
    pub threads: Option<usize>,
    pub wk: Option<i64>,
    pub max_degree: Option<i64>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
}

impl FileConfig {
    pub fn load(path: Option<&Path>) -> CliResult<Self> {
        let Some(path) = path else {
            return Ok(FileConfig::default());
        };
        let text = std::fs::read_to_string(path).map_err(|source| CliError::ConfigRead {
            path: PathBuf::from(path),
            source,
        })?;
        toml::from_str(&text).map_err(|source| CliError::ConfigParse {
            path: PathBuf::from(path),
            source,
        })
    }
}

/// First `Some` wins.
pub fn pick<T>(flag_or_env: Option<T>, file: Option<T>, default: T) -> T {
    flag_or_env.or(file).unwrap_or(default)
}
