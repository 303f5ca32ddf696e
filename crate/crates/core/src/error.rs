//! Error taxonomy shared by the whole crate.
//!
//! `Inapplicable` is deliberately distinct from every failure variant: a bound
//! whose hypotheses are violated on the given inputs is reported as such and
//! never counted as a violated inequality.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument is outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The operation is not defined for this domain/norm kind.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A theorem hypothesis fails on the given inputs; not a failure.
    #[error("inapplicable: {0}")]
    Inapplicable(String),

    /// An iterative solver did not reach its tolerance.
    #[error("solver error: {0}")]
    Solver(String),

    /// Two internal routes for the same quantity disagree.
    #[error("internal consistency error: {0}")]
    Inconsistent(String),

    /// Configuration file problems, with a path to the offending field.
    #[error("config error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn is_inapplicable(&self) -> bool {
        matches!(self, Error::Inapplicable(_))
    }
}
