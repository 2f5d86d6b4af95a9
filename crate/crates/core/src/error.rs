use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed instance: {0}")]
    Malformed(String),
    #[error("index out of domain: {0}")]
    OutOfDomain(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("success probability undefined: {0}")]
    UndefinedProbability(String),
    #[error("config error: {0}")]
    Config(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
