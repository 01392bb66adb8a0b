use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed or inconsistent arguments (dimension mismatch, bad subset, ...).
    #[error("input error: {0}")]
    Input(String),

    #[error("D must be prime, got {0}")]
    NotPrime(u64),

    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u32, right: u32 },

    /// A code file could not be parsed. `location` names the line/column or field.
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    /// The code violates one or more stabilizer-code invariants.
    #[error("invalid code: {}", .0.join("; "))]
    Validation(Vec<String>),

    /// A configured size cap would be exceeded.
    #[error("resource cap exceeded: {what} needs {needed}, cap is {cap}")]
    Resource { what: String, needed: u128, cap: u128 },

    #[error("insufficient shares: need {needed}, got {got}")]
    InsufficientShares { needed: usize, got: usize },

    /// A postcondition that must always hold was violated.
    #[error("internal check failed: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn resource(what: impl Into<String>, needed: u128, cap: u128) -> Self {
        Error::Resource { what: what.into(), needed, cap }
    }
}
