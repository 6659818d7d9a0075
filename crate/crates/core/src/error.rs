use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole at {0}")]
    Pole(String),
    #[error("divergent integral: {0}")]
    Divergent(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("unresolved generator after boundary evaluation: {0}")]
    Unresolved(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("schema violation: {0}")]
    Schema(String),
    #[error("i/o: {0}")]
    Io(String),
    #[error("no convergence: {0}")]
    NoConvergence(String),
}

pub type Result<T> = std::result::Result<T, Error>;
