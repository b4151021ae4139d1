use thiserror::Error;

/// Errors raised when a bound is queried outside its domain.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("malformed rational {0:?}")]
    ParseRational(String),

    /// A documented precondition of the named operation does not hold.
    #[error("{op}: {reason}")]
    Precondition { op: &'static str, reason: String },

    #[error("infeasible profile: {0}")]
    Infeasible(String),

    #[error("hypergraph: {0}")]
    Hypergraph(String),

    /// Exact enumeration was requested above the configured vertex guard.
    #[error("exact enumeration limited to {limit} vertices (got {v})")]
    EnumerationGuard { v: usize, limit: usize },

    /// A step of a certification chain evaluated the wrong way.
    #[error("certification failed at {step}: {detail}")]
    Certification { step: String, detail: String },

    #[error("search cap reached: {0}")]
    SearchCap(String),
}

impl Error {
    pub(crate) fn pre(op: &'static str, reason: impl Into<String>) -> Self {
        Error::Precondition {
            op,
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
