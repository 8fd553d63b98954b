use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid algebra specification: {0}")]
    InvalidSpec(String),
    #[error("metric is degenerate{0}")]
    DegenerateMetric(String),
    #[error("subspace is not contained in the enclosing subspace")]
    NotContained,
    #[error("subspace is not a strong ideal")]
    NotStrongIdeal,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("unknown catalog entry {0:?}")]
    UnknownEntry(String),
    #[error("certificate check failed: {0}")]
    Certificate(String),
    #[error("no consistent factor matching: {0}")]
    NoMatching(String),
}

impl Error {
    /// Process exit code for the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::UnknownEntry(_) => 1,
            Error::Certificate(_) | Error::NoMatching(_) => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
