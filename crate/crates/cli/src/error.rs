use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("{0}")]
    Engine(ncqm_core::Error),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("verification failed")]
    VerificationFailed,
}

impl CliError {
    /// 1 verification failure, 2 parse error, 3 invalid parameters.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::VerificationFailed => 1,
            CliError::Parse(_) => 2,
            CliError::InvalidParams(_) | CliError::Engine(_) | CliError::Io(_) => 3,
        }
    }
}

impl From<ncqm_core::Error> for CliError {
    fn from(e: ncqm_core::Error) -> Self {
        use ncqm_core::Error as E;
        match e {
            E::Parse { .. } | E::MixedTokens | E::DimensionMismatch { .. } => {
                CliError::Parse(e.to_string())
            }
            E::InvalidParams(msg) => CliError::InvalidParams(msg),
            E::OutOfRange => CliError::InvalidParams(e.to_string()),
            other => CliError::Engine(other),
        }
    }
}
