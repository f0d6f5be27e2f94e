use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("invalid parameters: {0}")]
    Domain(String),
    #[error("data error: {0}")]
    Data(String),
    #[error("non-integral evaluation: {0}")]
    NonIntegral(String),
    #[error("no table row: {0}")]
    NoTableRow(String),
    #[error("{0}")]
    Unsupported(String),
}

impl Error {
    pub fn syntax(msg: impl Into<String>) -> Self {
        Error::Syntax(msg.into())
    }
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
    pub fn data(msg: impl Into<String>) -> Self {
        Error::Data(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
