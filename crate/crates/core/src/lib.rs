//! Gaussian summation: nodes and weights for evaluating infinite sums
//! of the form `sum over nonzero integers nu of (1/nu^2) f(1/nu^2)` by a
//! short weighted sum `sum_k w_k f(z_k)`, exact for polynomials f of
//! degree 2n-1 with respect to the discrete measure.
//!
//! The crate is organized around the pipeline
//!
//! * [`rule`] — recurrence coefficients, Jacobi matrix, tridiagonal
//!   eigensolver, and the resulting [`SummationRule`], with disk caching;
//! * [`opoly`] — the continued-fraction / Pade objects behind the rule
//!   (denominator polynomials, Weyl function, closed Bessel form), used
//!   for cross-validation;
//! * [`summator`] — applying a rule to user summands, adaptive driving,
//!   and a-priori error estimators;
//! * [`reference`] — independent oracles and competitor methods (direct
//!   partial sums, Richardson extrapolation, Euler-Maclaurin expansion);
//! * [`zeros`] — the zero distribution of the underlying orthogonal
//!   polynomials and its cusp density.

pub mod error;
pub mod kahan;
pub mod opoly;
pub mod reference;
pub mod rule;
pub mod summator;
pub mod zeros;

pub use error::{Error, Result};
pub use rule::{
    build_rule, jacobi_matrix, recurrence_coeffs, JacobiMatrix, RecurrenceCoefficients,
    SummationRule,
};
pub use rule::cache::{rule_cache_load, rule_cache_store};
pub use rule::zeta::{moment, zeta_even};
pub use summator::{
    adaptive_sum, adaptive_sum_with, gauss_sum, ConvergenceReport, ConvergenceStatus, Side,
    Summand,
};
pub use zeros::ZeroSet;

/// First moment of the measure, `mu_0 = 2 zeta(2) = pi^2/3`.
pub fn mu_zero() -> f64 {
    std::f64::consts::PI * std::f64::consts::PI / 3.0
}
