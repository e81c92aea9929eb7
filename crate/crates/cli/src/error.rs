use std::path::PathBuf;

/// Errors surfaced to the shell, each mapped to a fixed exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("schema mismatch: {0}")]
    Schema(String),
    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0} comparison(s) outside tolerance")]
    ComparisonFailed(usize),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::ComparisonFailed(_) => 1,
            CliError::Config(_) | CliError::Schema(_) => 2,
            CliError::Io { .. } => 3,
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

impl From<srg_core::ProcessError> for CliError {
    fn from(e: srg_core::ProcessError) -> Self {
        CliError::Config(e.to_string())
    }
}

impl From<srg_core::TheoryError> for CliError {
    fn from(e: srg_core::TheoryError) -> Self {
        CliError::Config(e.to_string())
    }
}

impl From<srg_core::oracle::OracleError> for CliError {
    fn from(e: srg_core::oracle::OracleError) -> Self {
        CliError::Config(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
