//! Independent oracles and competitor summation methods.
//!
//! Everything here deliberately avoids the Gaussian rule pipeline:
//! closed forms, brute-force partial sums with compensated accumulation,
//! Richardson extrapolation and the Euler-Maclaurin expansion of the
//! Lorentzian partial sums. These are the yardsticks the rule is
//! measured against.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::kahan::KahanSum;

/// `G(a) = sum_{k in Z} 1/(a^2+k^2) = (pi/a) coth(pi a)` for `a > 0`.
///
/// For `pi a > 20` the hyperbolic quotient is replaced by its expansion
/// `coth(pi a) = 1 + 2 exp(-2 pi a) + ...` to dodge `cosh` overflow.
pub fn coth_closed_form(a: f64) -> Result<f64> {
    if !a.is_finite() || a <= 0.0 {
        return Err(Error::Domain(format!("coth sum requires a > 0, got {a}")));
    }
    let pa = PI * a;
    let coth = if pa > 20.0 {
        1.0 + 2.0 * (-2.0 * pa).exp()
    } else {
        pa.cosh() / pa.sinh()
    };
    Ok(PI / a * coth)
}

/// Largest argument accepted by [`hl_oracle`].
pub const HL_ORACLE_MAX_X: f64 = 200.0;

/// Brute-force oracle for the Hardy-Littlewood function
/// `H(x) = sum_{k>=1} sin(x/k)/k`.
///
/// Sums directly to `K = max(10^6, 1000 x)` with compensated
/// accumulation, then adds the analytic tail from the odd Taylor terms of
/// the summand: `x T_1 - (x^3/6) T_3 + (x^5/120) T_5` with
/// `T_j = sum_{k>K} k^-(j+1)` evaluated by Euler-Maclaurin. The first
/// omitted Taylor order is bounded by `x^7/(5040 * 6 K^6)`, which is
/// checked against `tol/10` before use.
pub fn hl_oracle(x: f64, tol: f64) -> Result<f64> {
    if x.is_nan() || x <= 0.0 || x > HL_ORACLE_MAX_X {
        return Err(Error::Domain(format!(
            "hl_oracle requires 0 < x <= {HL_ORACLE_MAX_X}, got {x}"
        )));
    }
    if tol.is_nan() || tol < 1e-13 {
        return Err(Error::Argument(format!(
            "hl_oracle tolerance must be at least 1e-13, got {tol}"
        )));
    }
    let cut = 1_000_000u64.max((1000.0 * x).ceil() as u64);
    let truncation_bound = x.powi(7) / (5040.0 * 6.0 * (cut as f64).powi(6));
    assert!(
        truncation_bound <= tol / 10.0,
        "tail truncation bound {truncation_bound:e} exceeds tol/10"
    );

    let mut acc = KahanSum::new();
    for k in (1..=cut).rev() {
        let k = k as f64;
        acc.add((x / k).sin() / k);
    }
    let n = cut as f64;
    // T_j = sum_{k>n} k^-(j+1) by Euler-Maclaurin
    let t1 = 1.0 / n - 1.0 / (2.0 * n * n) + 1.0 / (6.0 * n.powi(3)) - 1.0 / (30.0 * n.powi(5));
    let t3 = 1.0 / (3.0 * n.powi(3)) - 1.0 / (2.0 * n.powi(4)) + 1.0 / (3.0 * n.powi(5));
    let t5 = 1.0 / (5.0 * n.powi(5)) - 1.0 / (2.0 * n.powi(6)) + 1.0 / (2.0 * n.powi(7));
    acc.add(x * t1 - x.powi(3) / 6.0 * t3 + x.powi(5) / 120.0 * t5);
    Ok(acc.value())
}

/// Partial sums of a parameterized sequence at selected indices.
#[derive(Debug, Clone)]
pub struct PartialSumSequence {
    /// Total terms accumulated to produce the last entry.
    pub terms_evaluated: usize,
    /// The parameter (`a` for the Lorentzian sums, `x` elsewhere).
    pub parameter: f64,
    indices: Vec<usize>,
    values: Vec<f64>,
}

impl PartialSumSequence {
    /// Wraps externally produced values; `indices` must be ascending and
    /// match `values` in length.
    pub fn from_values(parameter: f64, indices: Vec<usize>, values: Vec<f64>) -> Result<Self> {
        if indices.len() != values.len() {
            return Err(Error::Argument(format!(
                "{} indices vs {} values",
                indices.len(),
                values.len()
            )));
        }
        if !indices.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::Argument("indices must be strictly ascending".into()));
        }
        if !values.iter().all(|v| v.is_finite()) {
            return Err(Error::Argument("partial sums must be finite".into()));
        }
        let terms_evaluated = indices.last().copied().unwrap_or(0);
        Ok(Self {
            terms_evaluated,
            parameter,
            indices,
            values,
        })
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value_at(&self, n: usize) -> Option<f64> {
        self.indices
            .binary_search(&n)
            .ok()
            .map(|pos| self.values[pos])
    }
}

/// Lorentzian partial sums `G_n(a) = 1/a^2 + 2 sum_{k=1}^n 1/(a^2+k^2)`
/// captured at the requested (ascending) indices. Accumulation is
/// ascending in k with compensated summation.
pub fn partial_sums_g(a: f64, n_list: &[usize]) -> Result<PartialSumSequence> {
    if !a.is_finite() || a <= 0.0 {
        return Err(Error::Domain(format!("partial sums require a > 0, got {a}")));
    }
    if n_list.is_empty() {
        return Err(Error::Argument("empty index list".into()));
    }
    if !n_list.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::Argument("n_list must be strictly ascending".into()));
    }
    let a2 = a * a;
    let mut acc = KahanSum::new();
    acc.add(1.0 / a2);
    let mut values = Vec::with_capacity(n_list.len());
    let mut want = n_list.iter().copied().peekable();
    if want.peek() == Some(&0) {
        values.push(acc.value());
        want.next();
    }
    let last = *n_list.last().unwrap();
    for k in 1..=last {
        acc.add(2.0 / (a2 + (k * k) as f64));
        if want.peek() == Some(&k) {
            values.push(acc.value());
            want.next();
        }
    }
    PartialSumSequence::from_values(a, n_list.to_vec(), values)
}

/// N-th Richardson extrapolation of a partial-sum sequence at offset `n`:
///
/// ```text
/// R_N[G](n) = sum_{k=0}^{N} (-1)^(k+N) (n+k)^N / (k! (N-k)!) G_{n+k}
/// ```
///
/// The alternating sign is what annihilates a polynomial tail in 1/n of
/// degree up to N; a constant-sign variant cannot cancel anything.
pub fn richardson(seq: &PartialSumSequence, order: usize, n: usize) -> Result<f64> {
    if order == 0 {
        return Err(Error::Argument("extrapolation order must be positive".into()));
    }
    if n == 0 {
        return Err(Error::Argument("offset n must be positive".into()));
    }
    let mut acc = KahanSum::new();
    for k in 0..=order {
        let g = seq.value_at(n + k).ok_or_else(|| {
            Error::Argument(format!(
                "sequence does not supply G_{} (need G_{n}..G_{})",
                n + k,
                n + order
            ))
        })?;
        let sign = if (k + order).is_multiple_of(2) { 1.0 } else { -1.0 };
        let weight = sign * ((n + k) as f64).powi(order as i32)
            / (factorial(k) * factorial(order - k));
        acc.add(weight * g);
    }
    Ok(acc.value())
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// The asymptotic tail expansion of `G_n(a)` past the closed form:
///
/// ```text
/// G_n(a) - G(a) ~ -2/n + 1/n^2 + (2a^2-1)/(3n^3) - a^2/n^4
///                 - (6a^4-10a^2+1)/(15 n^5)
/// ```
///
/// truncated after the requested number of terms (1..=5).
pub fn partial_sum_tail_expansion(a: f64, n: usize, terms: usize) -> Result<f64> {
    if !(1..=5).contains(&terms) {
        return Err(Error::Argument(format!(
            "expansion is printed through the 1/n^5 term, got {terms} terms"
        )));
    }
    if n == 0 {
        return Err(Error::Argument("n must be positive".into()));
    }
    let nf = n as f64;
    let a2 = a * a;
    let coefficients = [
        -2.0,
        1.0,
        (2.0 * a2 - 1.0) / 3.0,
        -a2,
        -(6.0 * a2 * a2 - 10.0 * a2 + 1.0) / 15.0,
    ];
    let mut sum = 0.0;
    for (j, c) in coefficients.iter().enumerate().take(terms) {
        sum += c / nf.powi(j as i32 + 1);
    }
    Ok(sum)
}
