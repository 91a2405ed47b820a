use thiserror::Error;

use crate::MultiDegree;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A computation would need components above the configured truncation.
    #[error("truncation overflow: total degree {needed} exceeds truncation {truncation}")]
    Truncation { needed: i64, truncation: u32 },

    /// The dimension series cannot come from a free bigraded Lie algebra.
    #[error("not free: negative generator defect {defect} at bidegree {at}")]
    NotFree { at: MultiDegree, defect: i64 },

    /// A caller-side precondition of an operation was violated.
    #[error("contract violation: {0}")]
    ContractViolation(String),

    /// An intermediate value broke an identity that holds for all valid
    /// inputs. Always a bug.
    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
