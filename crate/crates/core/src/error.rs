use alloc::string::String;

use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("node count must be at least 1")]
    EmptyInput,

    #[error(
        "{family} generation with n = {n} exceeds the exhaustive-generation guard (n <= {limit})"
    )]
    ResourceLimit {
        family: &'static str,
        n: usize,
        limit: usize,
    },

    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("invalid tree: {0}")]
    InvalidTree(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("branch error: {0}")]
    Branch(String),

    #[error("iteration did not converge after {steps} steps")]
    NonConvergence { steps: usize },

    #[error("model error: {0}")]
    Model(String),

    #[error("index {index} exceeds series order {order}")]
    Range { index: usize, order: usize },

    #[error("formula integrity: {0}")]
    FormulaIntegrity(String),
}

impl Error {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: message.into(),
        }
    }
}
