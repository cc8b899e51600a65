use thiserror::Error;

/// Errors produced by topology construction, parsing, bound computation and solving.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid size: {0}")]
    InvalidSize(String),

    #[error("invalid overlap: shared = {shared} must be smaller than min(c1, c2) = {min}")]
    InvalidOverlap { shared: usize, min: usize },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("lifting still degenerate after {attempts} attempts")]
    Genericity { attempts: usize },

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }
}
