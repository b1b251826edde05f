use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid embedding: {0}")]
    Embedding(String),

    #[error("invalid walk: {0}")]
    InvalidWalk(String),

    #[error("invalid word: {0}")]
    InvalidWord(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("lifted-graph arena exhausted at {0} vertices")]
    ArenaExhausted(usize),

    #[error("region bound violated: {faces} faces after {weight} crossings")]
    RegionBound { faces: usize, weight: usize },

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn internal<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Internal(msg.into()))
}
