use thiserror::Error;

#[derive(Debug, Error)]
pub enum QlmError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, QlmError>;
