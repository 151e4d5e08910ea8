use std::io;
use std::path::PathBuf;

use doppler_core::ErrorKind;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] doppler_core::Error),

    #[error("invalid config {path}: {message}")]
    Config { path: PathBuf, message: String },

    #[error("{0}")]
    Usage(String),

    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: io::Error },

    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: io::Error },
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.code(),
            CliError::Config { .. } => "CONFIG",
            CliError::Usage(_) => "USAGE",
            CliError::Read { .. } | CliError::Write { .. } => "IO",
        }
    }

    /// 2 validation, 3 numerical, 4 I/O.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) => match e.kind() {
                ErrorKind::Validation => 2,
                ErrorKind::Numerical => 3,
            },
            CliError::Config { .. } | CliError::Usage(_) => 2,
            CliError::Read { .. } | CliError::Write { .. } => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
