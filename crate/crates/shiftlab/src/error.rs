use shiftlab_core::Error;

/// Failures surfaced by the command line, each with its exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Resource(String),
    #[error("{0}")]
    Io(String),
    #[error("verification failed: {0}")]
    Verify(String),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) | CliError::Io(_) => 2,
            CliError::Resource(_) => 3,
            CliError::Verify(_) => 1,
            CliError::Usage(_) => 64,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        if e.is_resource() {
            CliError::Resource(e.to_string())
        } else {
            CliError::Validation(e.to_string())
        }
    }
}
