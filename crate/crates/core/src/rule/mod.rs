//! Construction of the n-point Gaussian summation rule.
//!
//! The monic orthogonal polynomials of the measure obey the three-term
//! recursion `s_{k+1}(z) = (z - a_k) s_k(z) - b_k s_{k-1}(z)` with
//!
//! ```text
//! a_0 = pi^2/15,
//! a_k = 2 pi^2 / ((4k+1)(4k+5)),            k >= 1,
//! b_k = pi^4 / ((4k-1)(4k+1)^2 (4k+3)),     k >= 1,
//! ```
//!
//! and `b_0` fixed to `mu_0 = pi^2/3` so the Golub-Welsch weight formula
//! `w_k = b_0 q_{1k}^2` needs no special case. Nodes are the eigenvalues
//! of the Jacobi matrix built from these coefficients, weights come from
//! the first eigenvector components.

pub mod cache;
pub mod eig;
pub mod zeta;

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::mu_zero;

pub use eig::eig_tridiag;

/// Largest supported rule size. Double precision rules saturate at the
/// machine-epsilon floor well before this.
pub const MAX_RULE_SIZE: usize = 256;

/// Relative tolerance on the weight-sum identity `sum w_k = mu_0`.
pub const WEIGHT_SUM_RTOL: f64 = 1e-12;

/// Three-term recursion coefficients `a_k`, `b_k` of the monic
/// orthogonal polynomials. By convention `b[0]` holds `mu_0`.
#[derive(Debug, Clone, PartialEq)]
pub struct RecurrenceCoefficients {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
}

impl RecurrenceCoefficients {
    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }
}

/// Symmetric tridiagonal Jacobi matrix: diagonal `a_0..a_{N-1}`,
/// off-diagonal `sqrt(b_1)..sqrt(b_{N-1})`.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobiMatrix {
    pub diag: Vec<f64>,
    pub offdiag: Vec<f64>,
}

impl JacobiMatrix {
    pub fn order(&self) -> usize {
        self.diag.len()
    }
}

/// An n-point summation rule: `sum_nu (1/nu^2) f(1/nu^2) ~ sum_k w_k f(z_k)`.
///
/// Nodes are strictly increasing and positive (empirically inside (0,1)
/// for all sizes built here), weights are positive and sum to `mu_0`.
#[derive(Debug, Clone, PartialEq)]
pub struct SummationRule {
    n: usize,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl SummationRule {
    /// Assembles a rule from parts, enforcing the structural invariants.
    pub fn from_parts(n: usize, nodes: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        if n == 0 || nodes.len() != n || weights.len() != n {
            return Err(Error::Argument(format!(
                "rule size {n} does not match {} nodes / {} weights",
                nodes.len(),
                weights.len()
            )));
        }
        if !nodes.iter().all(|z| z.is_finite() && *z > 0.0) {
            return Err(Error::Numerical("rule nodes must be finite and positive".into()));
        }
        if !nodes.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::Numerical("rule nodes must be strictly increasing".into()));
        }
        if !weights.iter().all(|w| w.is_finite() && *w > 0.0) {
            return Err(Error::Numerical("rule weights must be positive".into()));
        }
        let sum: f64 = weights.iter().sum();
        if ((sum - mu_zero()) / mu_zero()).abs() > WEIGHT_SUM_RTOL {
            return Err(Error::Numerical(format!(
                "weight sum {sum} deviates from mu_0 = {} beyond {WEIGHT_SUM_RTOL:e}",
                mu_zero()
            )));
        }
        Ok(Self { n, nodes, weights })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

/// Recursion coefficients `a_0..a_{n-1}`, `b_0..b_{n-1}`.
pub fn recurrence_coeffs(n: usize) -> Result<RecurrenceCoefficients> {
    if n == 0 {
        return Err(Error::Argument("coefficient count must be positive".into()));
    }
    let mut a = Vec::with_capacity(n);
    let mut b = Vec::with_capacity(n);
    a.push(PI * PI / 15.0);
    b.push(mu_zero());
    for k in 1..n as u64 {
        let k = k as f64;
        a.push(2.0 * PI * PI / ((4.0 * k + 1.0) * (4.0 * k + 5.0)));
        b.push(PI.powi(4) / ((4.0 * k - 1.0) * (4.0 * k + 1.0).powi(2) * (4.0 * k + 3.0)));
    }
    Ok(RecurrenceCoefficients { a, b })
}

/// Jacobi matrix of order `n` from at least `n` recursion coefficients.
pub fn jacobi_matrix(coeffs: &RecurrenceCoefficients, n: usize) -> Result<JacobiMatrix> {
    if n == 0 {
        return Err(Error::Argument("matrix order must be positive".into()));
    }
    if coeffs.a.len() < n || coeffs.b.len() < n {
        return Err(Error::Argument(format!(
            "need {n} coefficients, have {}",
            coeffs.a.len().min(coeffs.b.len())
        )));
    }
    Ok(JacobiMatrix {
        diag: coeffs.a[..n].to_vec(),
        offdiag: coeffs.b[1..n].iter().map(|b| b.sqrt()).collect(),
    })
}

/// Builds the n-point rule via Golub-Welsch: nodes are the eigenvalues of
/// the Jacobi matrix, weights are `mu_0` times the squared first
/// eigenvector components. Bitwise deterministic for a given `n`.
pub fn build_rule(n: usize) -> Result<SummationRule> {
    if n == 0 || n > MAX_RULE_SIZE {
        return Err(Error::Argument(format!(
            "rule size must lie in 1..={MAX_RULE_SIZE}, got {n}"
        )));
    }
    let coeffs = recurrence_coeffs(n)?;
    let matrix = jacobi_matrix(&coeffs, n)?;
    let (nodes, firsts) = eig_tridiag(&matrix, f64::EPSILON)?;
    let mu0 = mu_zero();
    let weights: Vec<f64> = firsts.iter().map(|q| mu0 * q * q).collect();
    SummationRule::from_parts(n, nodes, weights)
}
