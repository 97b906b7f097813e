use std::path::PathBuf;

/// Errors produced by rule construction, summation and the oracles.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An input lies outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An argument violates a precondition that is not a domain question
    /// (wrong lengths, bad tolerances, missing sequence entries).
    #[error("argument error: {0}")]
    Argument(String),

    /// The tridiagonal eigensolver did not converge for one eigenvalue.
    #[error("eigensolver did not converge for eigenvalue index {index} within {max_iterations} iterations")]
    EigenConvergence { index: usize, max_iterations: usize },

    /// A summand returned a non-finite value.
    #[error("summand evaluation is not finite at k = {k}")]
    Evaluation { k: f64 },

    /// The Weyl function was requested too close to a support point 1/nu^2.
    #[error("z = {z} is within {tol:e} of the measure support point 1/{nu}^2")]
    PoleProximity { z: f64, nu: i64, tol: f64 },

    /// A Pade convergent was evaluated at a zero of its denominator.
    #[error("Pade denominator vanishes at x = {x}")]
    PadePole { x: f64 },

    /// No cached rule exists at the given location.
    #[error("rule cache entry not found: {path}")]
    CacheNotFound { path: PathBuf },

    /// A cache file exists but fails validation.
    #[error("corrupt rule cache {path}: {reason}")]
    CacheCorrupt { path: PathBuf, reason: String },

    /// A computed quantity violates an invariant it should satisfy.
    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
