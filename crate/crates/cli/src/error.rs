use std::process::ExitCode;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{0} (pass --force to run anyway)")]
    ScaleGuard(String),
    #[error("{0}")]
    Limit(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Validation(_) | CliError::Io(_) => ExitCode::from(2),
            CliError::ScaleGuard(_) | CliError::Limit(_) => ExitCode::from(3),
            CliError::Invariant(_) => ExitCode::from(4),
        }
    }
}

impl From<galqm::Error> for CliError {
    fn from(e: galqm::Error) -> Self {
        match e {
            galqm::Error::Invariant(msg) => CliError::Invariant(msg),
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Invariant(format!("csv encoding failed: {e}"))
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Invariant(format!("json encoding failed: {e}"))
    }
}

pub type CliResult<T> = Result<T, CliError>;
