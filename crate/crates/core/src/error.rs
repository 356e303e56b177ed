use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid web: {0}")]
    Web(String),
    #[error("guardrail exceeded: {0}")]
    Guardrail(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
