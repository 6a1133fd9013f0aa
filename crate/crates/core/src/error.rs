use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("allowed {dimension}-path count exceeds the cap of {limit}")]
    PathCap { dimension: usize, limit: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid digraph: {0}")]
    InvalidDigraph(String),

    #[error("configuration error: {0}")]
    Config(String),

    /// A linear system that the construction guarantees to be consistent was
    /// not. This indicates a bug rather than bad input.
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
