use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    /// A parameter restriction such as non-integrality of ε, ε+α, ... is violated.
    #[error("parameter condition violated: {0}")]
    Conditions(String),
    #[error("inadmissible kernel data: {0}")]
    Inadmissible(String),
    /// The request lies outside the integrality cases the construction covers.
    #[error("out of scope: {0}")]
    Scope(String),
    /// A mathematical precondition of an operation does not hold
    /// (non-invertible element, non-divisible operator, ...).
    #[error("{0}")]
    Domain(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// Process exit code used by the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::Io(_) => 1,
            Error::Conditions(_) | Error::Inadmissible(_) => 2,
            Error::Scope(_) => 3,
            Error::Domain(_) | Error::Verification(_) => 4,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
