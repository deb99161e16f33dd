use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags or parameters; exit status 2.
    #[error("usage: {0}")]
    Usage(String),

    /// A verification or consistency check failed; exit status 1.
    #[error("check failed: {0}")]
    Failed(String),

    #[error(transparent)]
    Core(cyclojones::Error),

    #[error("malformed data: {0}")]
    Format(String),

    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl From<cyclojones::Error> for CliError {
    fn from(e: cyclojones::Error) -> Self {
        match e {
            cyclojones::Error::InvalidKnot(msg) => CliError::Usage(msg),
            other => CliError::Core(other),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}
