//! Applying summation rules to user summands.
//!
//! A rule evaluates the functional `L[f] = sum_{nu != 0} (1/nu^2) f(1/nu^2)`.
//! A user supplies the termwise form `g(k)` instead; with `t = 1/k^2` the
//! identity `(1/k^2) f(1/k^2) = g(k)` forces `f(t) = g(1/sqrt(t))/t`, so
//! the rule samples `g` at the real pseudo-indices `1/sqrt(z_k)`. For a
//! one-sided target `sum_{k>=1} g(k)` with even extension the functional
//! value is halved. The `k = 0` term, when a sum has one, stays with the
//! caller: the measure excludes nu = 0.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::path::PathBuf;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::mu_zero;
use crate::rule::cache::{rule_cache_load, rule_cache_store};
use crate::rule::{build_rule, SummationRule, MAX_RULE_SIZE};

/// Which part of the two-sided functional a summand targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `sum_{k>=1} g(k)`; the caller asserts `g` extends evenly to
    /// negative indices, and the functional value is halved.
    PositiveHalf,
    /// `sum over all nonzero integers` of `g(k)`.
    TwoSidedNonzero,
}

/// A summand `g(k)` over real `k > 0` plus its side flag.
pub struct Summand {
    g: Box<dyn Fn(f64) -> f64 + Send + Sync>,
    side: Side,
    description: String,
}

impl Summand {
    pub fn new(
        side: Side,
        description: impl Into<String>,
        g: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            g: Box::new(g),
            side,
            description: description.into(),
        }
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    /// Evaluates `g(k)`, rejecting non-finite results.
    pub fn eval(&self, k: f64) -> Result<f64> {
        let value = (self.g)(k);
        if value.is_finite() {
            Ok(value)
        } else {
            Err(Error::Evaluation { k })
        }
    }
}

impl std::fmt::Debug for Summand {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Summand")
            .field("side", &self.side)
            .field("description", &self.description)
            .finish()
    }
}

/// Applies a rule to a summand: `sum_k w_k g(1/sqrt(z_k)) / z_k`, halved
/// for [`Side::PositiveHalf`].
pub fn gauss_sum(rule: &SummationRule, summand: &Summand) -> Result<f64> {
    let mut acc = 0.0;
    for (&z, &w) in rule.nodes().iter().zip(rule.weights()) {
        let k = 1.0 / z.sqrt();
        acc += w * summand.eval(k)? / z;
    }
    Ok(match summand.side() {
        Side::PositiveHalf => 0.5 * acc,
        Side::TwoSidedNonzero => acc,
    })
}

/// Memoizing source of summation rules, optionally backed by a disk
/// cache directory.
#[derive(Debug, Default)]
pub struct RuleProvider {
    cache_dir: Option<PathBuf>,
    rules: HashMap<usize, Arc<SummationRule>>,
}

impl RuleProvider {
    pub fn in_memory() -> Self {
        Self::default()
    }

    pub fn with_cache_dir(dir: impl Into<PathBuf>) -> Self {
        Self {
            cache_dir: Some(dir.into()),
            rules: HashMap::new(),
        }
    }

    /// Returns the n-point rule, loading from or populating the caches.
    pub fn rule(&mut self, n: usize) -> Result<Arc<SummationRule>> {
        if let Some(rule) = self.rules.get(&n) {
            return Ok(Arc::clone(rule));
        }
        if let Some(dir) = &self.cache_dir {
            if let Ok(rule) = rule_cache_load(n, dir) {
                let rule = Arc::new(rule);
                self.rules.insert(n, Arc::clone(&rule));
                return Ok(rule);
            }
        }
        let rule = Arc::new(build_rule(n)?);
        if let Some(dir) = &self.cache_dir {
            rule_cache_store(&rule, dir)?;
        }
        self.rules.insert(n, Arc::clone(&rule));
        Ok(rule)
    }
}

/// Termination state of [`adaptive_sum`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConvergenceStatus {
    /// Two consecutive deltas fell below the requested tolerance.
    Converged,
    /// The rule-size budget was exhausted first.
    HitNMax,
    /// Three consecutive deltas sat at the machine-epsilon floor.
    StagnatedAtMachineEps,
}

/// Rule values per n, their successive differences, and the chosen n.
#[derive(Debug, Clone)]
pub struct ConvergenceReport {
    first_n: usize,
    values: Vec<f64>,
    deltas: Vec<f64>,
    n_used: usize,
    status: ConvergenceStatus,
}

impl ConvergenceReport {
    /// Rule size at which the reported value was taken.
    pub fn n_used(&self) -> usize {
        self.n_used
    }

    pub fn status(&self) -> ConvergenceStatus {
        self.status
    }

    /// The value at `n_used`.
    pub fn value(&self) -> f64 {
        self.values[self.n_used - self.first_n]
    }

    /// `(n, value)` pairs in ascending n.
    pub fn values(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(move |(i, &v)| (self.first_n + i, v))
    }

    /// `(n, delta_n)` pairs with `delta_n = value(n+1) - value(n)`.
    pub fn deltas(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.deltas
            .iter()
            .enumerate()
            .map(move |(i, &d)| (self.first_n + i, d))
    }
}

/// Smallest accepted adaptive tolerance; below this even the stagnation
/// diagnostic cannot distinguish progress from rounding noise.
pub const MIN_ADAPTIVE_TOL: f64 = 1e-16;

/// Drives [`gauss_sum`] over n = 2, 3, 4, ... until the successive
/// differences `delta_n` certify convergence.
///
/// Stops as converged once `|delta_n| <= tol * |value|` twice in a row
/// (the pre-asymptotic regime is not monotone, one small delta proves
/// nothing), as stagnated once three consecutive deltas sit below
/// `10 eps * |value|`, or when `n_max` is reached. The reported value is
/// the one at the first rule of the confirming streak.
pub fn adaptive_sum(summand: &Summand, tol: f64, n_max: usize) -> Result<ConvergenceReport> {
    let mut provider = RuleProvider::in_memory();
    adaptive_sum_with(&mut provider, summand, tol, n_max)
}

/// [`adaptive_sum`] reusing rules from the given provider.
pub fn adaptive_sum_with(
    provider: &mut RuleProvider,
    summand: &Summand,
    tol: f64,
    n_max: usize,
) -> Result<ConvergenceReport> {
    if tol.is_nan() || tol < MIN_ADAPTIVE_TOL {
        return Err(Error::Argument(format!(
            "adaptive tolerance must be at least {MIN_ADAPTIVE_TOL:e}, got {tol}"
        )));
    }
    if !(2..=MAX_RULE_SIZE).contains(&n_max) {
        return Err(Error::Argument(format!(
            "n_max must lie in 2..={MAX_RULE_SIZE}, got {n_max}"
        )));
    }

    const FIRST_N: usize = 2;
    let mut values = Vec::new();
    let mut deltas = Vec::new();
    let mut converged_streak = 0usize;
    let mut stagnated_streak = 0usize;

    for n in FIRST_N..=n_max {
        let rule = provider.rule(n)?;
        let value = gauss_sum(&rule, summand)?;
        if let Some(&prev) = values.last() {
            let delta: f64 = value - prev;
            deltas.push(delta);
            let scale = value.abs();
            if delta.abs() <= tol * scale {
                converged_streak += 1;
            } else {
                converged_streak = 0;
            }
            if delta.abs() <= 10.0 * f64::EPSILON * scale {
                stagnated_streak += 1;
            } else {
                stagnated_streak = 0;
            }
        }
        values.push(value);

        if converged_streak >= 2 {
            // deltas delta_{n-2} and delta_{n-1} confirmed; value at n-2 is
            // already within tolerance of the limit
            return Ok(ConvergenceReport {
                first_n: FIRST_N,
                values,
                deltas,
                n_used: n - 2,
                status: ConvergenceStatus::Converged,
            });
        }
        if stagnated_streak >= 3 {
            return Ok(ConvergenceReport {
                first_n: FIRST_N,
                values,
                deltas,
                n_used: n - 3,
                status: ConvergenceStatus::StagnatedAtMachineEps,
            });
        }
    }

    Ok(ConvergenceReport {
        first_n: FIRST_N,
        values,
        deltas,
        n_used: n_max,
        status: ConvergenceStatus::HitNMax,
    })
}

/// Largest n accepted by [`error_constant_kn`] before the Gamma factors
/// overflow double precision.
pub const KN_MAX_N: usize = 40;

/// The error constant `K_n = ||P_n||^2` in its two available forms.
///
/// The first entry is the closed Gamma-form constant
/// `(1/2)(4n+3) pi^(4n+3) 16^-(n+1) Gamma^-2(2n+5/2)` as usually printed;
/// the second is the squared norm of the monic polynomial,
/// `mu_0 prod_{k=1..n} b_k`. The two disagree by an exact factor 2 (a
/// normalization difference); both are exposed so callers can see it,
/// and bounds should use the moment norm.
pub fn error_constant_kn(n: usize) -> Result<(f64, f64)> {
    if n > KN_MAX_N {
        return Err(Error::Domain(format!(
            "error_constant_kn overflows double precision for n > {KN_MAX_N}, got {n}"
        )));
    }
    let gamma = crate::opoly::gamma_half_integer(4 * n + 5); // Gamma(2n + 5/2)
    let closed_form = 0.5 * (4.0 * n as f64 + 3.0) * PI.powi(4 * n as i32 + 3)
        / (16f64.powi(n as i32 + 1) * gamma * gamma);

    let mut moment_norm = mu_zero();
    if n > 0 {
        let coeffs = crate::rule::recurrence_coeffs(n + 1)?;
        for k in 1..=n {
            moment_norm *= coeffs.b[k];
        }
    }
    Ok((closed_form, moment_norm))
}

/// An a-priori error estimate; `advisory` marks values requested outside
/// the asymptotic validity regime of the underlying formula.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AprioriEstimate {
    pub value: f64,
    pub advisory: bool,
}

/// A-priori error of the n-point rule on `sum_k 1/(a^2+k^2)`:
/// `8 nu exp(-nu^2/(pi a))` with `nu = 2n + 5/2`, valid for
/// `nu^2 >> pi a` and `a >> nu`.
pub fn apriori_error_coth(n: usize, a: f64) -> AprioriEstimate {
    let nu = 2.0 * n as f64 + 2.5;
    let value = 8.0 * nu * (-nu * nu / (PI * a)).exp();
    let advisory = !(nu * nu >= 4.0 * PI * a && a >= 2.0 * nu);
    AprioriEstimate { value, advisory }
}

/// A-priori error of the n-point rule on the Hardy-Littlewood sum with
/// scale `a`: `2 sqrt(pi nu) e^(-pi a/nu) (e^2 pi a / (4 nu^2))^(2 nu)`
/// with `nu = 2n + 5/2`, computed in log space. Valid for
/// `2 nu^2/(pi a) >> 1`.
pub fn apriori_error_hl(n: usize, a: f64) -> AprioriEstimate {
    let nu = 2.0 * n as f64 + 2.5;
    let log_value = 2f64.ln() + 0.5 * (PI * nu).ln() - PI * a / nu
        + 2.0 * nu * (2.0 + (PI * a / (4.0 * nu * nu)).ln());
    let advisory = 2.0 * nu * nu / (PI * a) < 4.0 || a.is_nan();
    AprioriEstimate {
        value: log_value.exp(),
        advisory,
    }
}
