use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ring context mismatch: {0}")]
    Context(String),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("degree error: {0}")]
    Degree(String),
    #[error("polynomial is not symmetric in group `{0}`")]
    NotSymmetric(String),
    #[error("invalid partition: {0}")]
    Partition(String),
    #[error("invalid class: {0}")]
    Class(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
