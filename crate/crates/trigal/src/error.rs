use std::path::PathBuf;

use thiserror::Error;

/// Failures of a command, each mapped to a distinct exit status.
#[derive(Debug, Error)]
pub enum CliError {
    /// A scientific check run by the command did not hold.
    #[error("check failed: {0}")]
    Check(String),
    #[error("{0}")]
    Config(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] trigal_core::Error),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Check(_) => 1,
            CliError::Config(_) | CliError::Core(_) => 2,
            CliError::Io { .. } => 3,
        }
    }
}
