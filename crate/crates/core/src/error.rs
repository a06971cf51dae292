use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("index out of range for dimension {n}: {what}")]
    IndexOutOfRange { what: String, n: usize },

    #[error("invalid generator: {0}")]
    InvalidGenerator(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not unimodular (det = {0})")]
    NotUnimodular(String),

    #[error("matrix is not in Gamma_2({0})")]
    NotLevel2(usize),

    #[error("dimension {n} exceeds the bound {max} for {what}")]
    TooLarge { what: &'static str, n: usize, max: usize },

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("{0}")]
    Precondition(String),

    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: message.into(),
        }
    }
}
