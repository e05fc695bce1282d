use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unknown model identifier `{0}`")]
    UnknownModel(String),

    #[error("inadmissible parameters: {0}")]
    Inadmissible(String),

    #[error("pole: {0}")]
    Pole(String),

    #[error("divergent integral: {0}")]
    Divergent(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
