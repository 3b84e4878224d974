use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("arithmetic error: {0}")]
    Arithmetic(String),
    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),
    #[error("element is not in the algebra: {0}")]
    NotInAlgebra(String),
    #[error("index out of range: {0}")]
    OutOfRange(String),
}

pub type Result<T> = std::result::Result<T, Error>;
