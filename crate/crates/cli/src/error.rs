use thiserror::Error;

/// Failure of a command, carrying its process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("{0}")]
    UnsupportedDimension(String),

    #[error("input error: {0}")]
    Input(String),

    #[error("invariant violation: {0}")]
    Invariant(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::VerificationFailed(_) => 1,
            CliError::UnsupportedDimension(_) => 2,
            CliError::Input(_) => 3,
            CliError::Invariant(_) => 4,
        }
    }

    pub fn input(msg: impl Into<String>) -> Self {
        CliError::Input(msg.into())
    }
}

impl From<mubtomo::Error> for CliError {
    fn from(e: mubtomo::Error) -> Self {
        let msg = e.to_string();
        match e {
            mubtomo::Error::UnsupportedDimension { .. } => CliError::UnsupportedDimension(msg),
            mubtomo::Error::Shape(_) => CliError::Input(msg),
            mubtomo::Error::Validity(_) => CliError::Invariant(msg),
            mubtomo::Error::Consistency(_) => CliError::VerificationFailed(msg),
        }
    }
}
