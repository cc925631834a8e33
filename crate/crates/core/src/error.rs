use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("object mismatch: {0}")]
    ObjectMismatch(String),
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("atom collision: {0}")]
    AtomCollision(String),
    #[error(
        "refusing {what}: size {size} exceeds limit {limit} \
         (pass --force-size or raise BRAUER_COEND_MAX_DIM)"
    )]
    TooLarge {
        what: String,
        size: u128,
        limit: u128,
    },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
