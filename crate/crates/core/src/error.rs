//! Error type shared by every module.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SgffError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("resonance: {0}")]
    Resonance(String),
    #[error("series truncated too early: {0}")]
    Truncation(String),
    #[error("no m/n split in the declared windows: {0}")]
    Split(String),
    #[error("structure error: {0}")]
    Structure(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no singular vector: {0}")]
    Kac(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("usage: {0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, SgffError>;
