use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {message}")]
    Input { path: PathBuf, message: String },
    #[error(transparent)]
    Core(#[from] ehrhart_core::Error),
    /// A check failed; the report has already been written.
    #[error("verification failed")]
    Failed,
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Failed => 1,
            CliError::Core(e) if is_failure(e) => 1,
            _ => 2,
        }
    }
}

fn is_failure(e: &ehrhart_core::Error) -> bool {
    use ehrhart_core::Error::*;
    matches!(e, VerificationFailure(_) | ConstructionMismatch { .. } | GlueFailure(_))
}

pub type CliResult<T> = Result<T, CliError>;
