use thiserror::Error;

/// Errors produced by graph ingestion and the algorithms in this crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("instance too large for exhaustive search: n = {n}, limit = {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid order: {0}")]
    InvalidOrder(String),

    #[error("invalid result: {0}")]
    InvalidResult(String),
}

pub type Result<T> = std::result::Result<T, Error>;
