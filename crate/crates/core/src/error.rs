//! Error type shared by every module in the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument violated a precondition (zero modulus, empty range, ...).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A value lies outside the mathematical domain of the operation,
    /// e.g. a census base u in {-1, 0, 1} or a perfect square.
    #[error("domain error: {0}")]
    Domain(String),

    /// A requested table or sieve would exceed the configured memory ceiling.
    #[error("resource limit: {0}")]
    ResourceLimit(String),

    /// A lookup needed an entry beyond the prime table's sieved limit.
    #[error("value {n} exceeds the factor table limit {limit}")]
    OutOfTable { n: u64, limit: u64 },

    /// An evaluation point came too close to a pole of a closed form.
    #[error("pole proximity: |sin z| = {0:.3e} is below the guard threshold")]
    PoleProximity(f64),

    /// Two routes that must agree exactly (or within a stated tolerance) did not.
    #[error("identity violation: residual {residual:.3e} exceeds tolerance {tolerance:.3e}")]
    IdentityViolation { residual: f64, tolerance: f64 },

    /// A cache file failed magic/structure validation.
    #[error("cache format error: {0}")]
    CacheFormat(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
