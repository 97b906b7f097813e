//! Zero distribution of the denominator polynomials.
//!
//! Rule nodes map to zeros of the degree-(2n-1) Pade denominator through
//! `x = pi/sqrt(z)`. With `nu = 2n + 5/2` and the scaled variables
//! `tau = x/nu`, `sigma = j/nu`, the zeros follow the cusp law
//!
//! ```text
//! pi sigma(tau) = tau                                   for tau <= 1,
//! pi sigma(tau) = tau - sqrt(tau^2-1) + arccos(1/tau)   for tau > 1:
//! ```
//!
//! below the cusp the zeros sit on the integer multiples of pi (unit
//! density 1/pi), above it the spacing opens up until the last zeros
//! follow `x_j ~ nu^2 / (pi (2(n-j)+1))`, the far-tail form of the law
//! `x ~ nu^2/(pi(nu-k))` with `k` counting the zeros of the full
//! symmetric (+/-) set.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::opoly::PolyEvalPoint;
use crate::rule::SummationRule;

/// Zeros of the rule's denominator polynomial in the x-variable, with
/// their scaled coordinates.
#[derive(Debug, Clone)]
pub struct ZeroSet {
    n: usize,
    nu: f64,
    x: Vec<f64>,
}

impl ZeroSet {
    pub fn n(&self) -> usize {
        self.n
    }

    /// `nu = 2n + 5/2`.
    pub fn nu(&self) -> f64 {
        self.nu
    }

    /// Ascending positive zeros `x_1 < ... < x_n`.
    pub fn x(&self) -> &[f64] {
        &self.x
    }

    /// `tau_j = x_j / nu`.
    pub fn tau(&self) -> impl Iterator<Item = f64> + '_ {
        self.x.iter().map(move |&x| x / self.nu)
    }

    /// `sigma_j = j / nu`, j = 1..n.
    pub fn sigma(&self) -> impl Iterator<Item = f64> + '_ {
        (1..=self.n).map(move |j| j as f64 / self.nu)
    }
}

/// Maps rule nodes to denominator zeros: `x_j = pi/sqrt(z)` with `z`
/// running over the nodes in descending order.
pub fn zero_set(rule: &SummationRule) -> Result<ZeroSet> {
    let mut x: Vec<f64> = rule
        .nodes()
        .iter()
        .rev()
        .map(|&z| {
            PolyEvalPoint::from_z(z)
                .map(|p| p.x())
                .map_err(|_| Error::Numerical(format!("nonpositive node {z}")))
        })
        .collect::<Result<_>>()?;
    x.sort_by(f64::total_cmp);
    Ok(ZeroSet {
        n: rule.n(),
        nu: 2.0 * rule.n() as f64 + 2.5,
        x,
    })
}

/// The asymptotic zero-counting law `sigma(tau)`: linear up to the cusp
/// at `tau = 1`, bending above it. Continuous at the cusp with value
/// `1/pi`, tending to 1/2 as `tau -> infinity`.
pub fn asymptotic_sigma(tau: f64) -> f64 {
    if tau <= 1.0 {
        tau / PI
    } else {
        (tau - (tau * tau - 1.0).sqrt() + (1.0 / tau).acos()) / PI
    }
}

/// Empirical zero density `1/(x_{j+1}-x_j)` against `sigma_j = j/nu`.
pub fn density_data(zset: &ZeroSet) -> Result<Vec<(f64, f64)>> {
    if zset.n() < 2 {
        return Err(Error::Argument("density needs at least two zeros".into()));
    }
    Ok(zset
        .x()
        .windows(2)
        .enumerate()
        .map(|(i, w)| ((i + 1) as f64 / zset.nu(), 1.0 / (w[1] - w[0])))
        .collect())
}

/// Smallest zero set accepted by [`tail_law_check`].
pub const TAIL_LAW_MIN_N: usize = 16;

/// Maximum relative deviation of the top 10% of zeros from the tail law
/// `x_j ~ nu^2 / (pi (2(n-j)+1))`.
pub fn tail_law_check(zset: &ZeroSet) -> Result<f64> {
    let n = zset.n();
    if n < TAIL_LAW_MIN_N {
        return Err(Error::Argument(format!(
            "tail law needs n >= {TAIL_LAW_MIN_N}, got {n}"
        )));
    }
    let nu = zset.nu();
    let start = (9 * n) / 10 + 1; // j with j > 0.9 n
    let mut max_dev = 0.0f64;
    for j in start..=n {
        let x = zset.x()[j - 1];
        let dev = (x * PI * (2.0 * (n - j) as f64 + 1.0) / (nu * nu) - 1.0).abs();
        max_dev = max_dev.max(dev);
    }
    Ok(max_dev)
}
