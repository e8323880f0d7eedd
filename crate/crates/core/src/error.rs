use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("incomplete data: {0}")]
    IncompleteData(String),
    #[error("level {level} is not a groupoid: morphism {witness} has no inverse")]
    NotGroupoid { level: usize, witness: String },
    #[error("morphism {0} needed for a pseudo-pullback object is not invertible")]
    NotInvertible(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("truncation bound {have} is too small, level {needed} is required")]
    InsufficientBound { needed: usize, have: usize },
    #[error("{path}: {message}")]
    Malformed { path: String, message: String },
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
