//! Even zeta values and moments of the measure.
//!
//! The moments are `mu_m = sum over nonzero integers nu of nu^(-2(m+1))
//! = 2 zeta(2m+2)`, so everything reduces to `zeta(2m)`.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::kahan::KahanSum;

fn rational(value: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(value))
}

/// Largest admissible argument of [`zeta_even`].
pub const ZETA_EVEN_MAX: u32 = 128;

// Closed form is used where the direct series converges too slowly; see
// `zeta_even`. Above this the series needs at most ~100 terms.
const CLOSED_FORM_MAX: u32 = 4;

/// Bernoulli numbers `B_0..=B_n` as exact rationals, from the recurrence
/// `sum_{j=0}^{m} C(m+1, j) B_j = 0`.
fn bernoulli_numbers(n: u32) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = Vec::with_capacity(n as usize + 1);
    b.push(rational(1));
    for m in 1..=n {
        // B_m = -1/(m+1) * sum_{j<m} C(m+1, j) B_j
        let mut acc = rational(0);
        let mut binom = BigInt::from(1); // C(m+1, 0)
        for (j, bj) in b.iter().enumerate().take(m as usize) {
            acc += BigRational::from_integer(binom.clone()) * bj;
            // C(m+1, j+1) = C(m+1, j) * (m+1-j) / (j+1)
            binom = binom * BigInt::from(m as i64 + 1 - j as i64) / BigInt::from(j as i64 + 1);
        }
        let m1 = BigRational::from_integer(BigInt::from(m as i64 + 1));
        b.push(-acc / m1);
    }
    b
}

/// `zeta(2m) / pi^(2m)` as an exact rational, via
/// `zeta(2m) = (-1)^(m+1) B_{2m} (2 pi)^(2m) / (2 (2m)!)`.
fn zeta_rational_factor(m: u32) -> BigRational {
    let b = bernoulli_numbers(2 * m);
    let b2m = b[2 * m as usize].clone();
    // (-1)^(m+1) * B_{2m} * 4^m / (2 * (2m)!)
    let mut fact = BigInt::from(1);
    for k in 2..=(2 * m as u64) {
        fact *= BigInt::from(k);
    }
    let four_m = BigInt::from(4).pow(m);
    let sign = if m % 2 == 1 { 1 } else { -1 };
    rational(sign) * b2m * BigRational::new(four_m, BigInt::from(2) * fact)
}

fn rational_to_f64(r: &BigRational) -> f64 {
    // only reached for m <= CLOSED_FORM_MAX, where numerator and
    // denominator convert exactly and the quotient rounds once
    let num = bigint_to_f64(r.numer());
    let den = bigint_to_f64(r.denom());
    num / den
}

fn bigint_to_f64(i: &BigInt) -> f64 {
    i.to_string().parse::<f64>().expect("bigint parses as f64")
}

/// `zeta(2m)` for `1 <= m <= 128`, accurate to a few machine epsilons.
///
/// Small `m` use the Bernoulli closed form (the direct series for
/// `zeta(2)` converges far too slowly); the Bernoulli numbers are carried
/// as exact rationals so the only rounding is in the final `pi^(2m)`
/// factor. For larger `m` the series `1 + 2^(-2m) + 3^(-2m) + ...`
/// terminates after a handful of terms and avoids amplifying the
/// representation error of `pi^(2m)`.
pub fn zeta_even(m: u32) -> Result<f64> {
    if !(1..=ZETA_EVEN_MAX).contains(&m) {
        return Err(Error::Domain(format!(
            "zeta_even requires 1 <= m <= {ZETA_EVEN_MAX}, got {m}"
        )));
    }
    if m <= CLOSED_FORM_MAX {
        let factor = rational_to_f64(&zeta_rational_factor(m));
        let pi2 = std::f64::consts::PI * std::f64::consts::PI;
        return Ok(factor * pi2.powi(m as i32));
    }
    // Truncation k > K contributes less than K^(1-2m)/(2m-1); pick K so the
    // bound is below eps/4 of the leading term 1.
    let p = 2 * m as i32;
    let k_max = ((4.0 / (f64::EPSILON * (p as f64 - 1.0))).ln() / (p as f64 - 1.0))
        .exp()
        .ceil() as u64
        + 2;
    let mut acc = KahanSum::new();
    for k in (2..=k_max).rev() {
        acc.add((k as f64).powi(-p));
    }
    acc.add(1.0);
    Ok(acc.value())
}

/// Moment `mu_m = 2 zeta(2m+2)` of the measure, `m >= 0`.
pub fn moment(m: u32) -> Result<f64> {
    Ok(2.0 * zeta_even(m + 1)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: direct series to 10^6 terms plus the
    /// Euler-Maclaurin integral tail `1/K - 1/(2K^2) + p/(12 K^(p+1))`-style
    /// corrections for `f(t) = t^(-p)`.
    fn zeta_series_oracle(p: i32) -> f64 {
        let k_cut: u64 = 1_000_000;
        let mut acc = KahanSum::new();
        for k in (1..=k_cut).rev() {
            acc.add((k as f64).powi(-p));
        }
        let n = k_cut as f64;
        let pf = p as f64;
        // sum_{k>N} k^-p = N^(1-p)/(p-1) - N^-p/2 + p N^(-p-1)/12 - ...
        let tail = n.powi(1 - p) / (pf - 1.0) - n.powi(-p) / 2.0 + pf * n.powi(-p - 1) / 12.0;
        acc.add(tail);
        acc.value()
    }

    #[test]
    fn zeta_2_matches_series_oracle() {
        let z = zeta_even(1).unwrap();
        let oracle = zeta_series_oracle(2);
        assert!((z - oracle).abs() <= 4.0 * f64::EPSILON * z, "z={z}, oracle={oracle}");
        assert!((z - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-15);
    }

    #[test]
    fn zeta_4_matches_series_oracle() {
        let z = zeta_even(2).unwrap();
        let oracle = zeta_series_oracle(4);
        assert!((z - oracle).abs() <= 4.0 * f64::EPSILON * z);
        assert!((z - std::f64::consts::PI.powi(4) / 90.0).abs() < 1e-15);
    }

    #[test]
    fn zeta_60_is_one_plus_2_pow_neg_60() {
        // dominated by the first two series terms; 1 + 2^-60 rounds to 1.0
        let z = zeta_even(30).unwrap();
        assert_eq!(z, 1.0);
    }

    #[test]
    fn zeta_rejects_out_of_range() {
        assert!(matches!(zeta_even(0), Err(Error::Domain(_))));
        assert!(matches!(zeta_even(129), Err(Error::Domain(_))));
    }

    #[test]
    fn zeta_monotone_decreasing_to_one() {
        let mut prev = f64::INFINITY;
        for m in 1..=ZETA_EVEN_MAX {
            let z = zeta_even(m).unwrap();
            assert!(z >= 1.0);
            assert!(z <= prev, "zeta(2m) must decrease, m={m}");
            prev = z;
        }
    }

    #[test]
    fn zeta_closed_form_and_series_agree_at_crossover() {
        // both evaluation routes are available near the crossover; they must
        // agree to a few ulps
        for (m, p) in [(3u32, 6i32), (4, 8), (5, 10), (6, 12)] {
            let z = zeta_even(m).unwrap();
            let oracle = zeta_series_oracle(p);
            assert!(
                (z - oracle).abs() <= 4.0 * f64::EPSILON * z,
                "m={m}: z={z:e}, oracle={oracle:e}"
            );
        }
    }

    #[test]
    fn bernoulli_values_are_exact() {
        let b = bernoulli_numbers(8);
        let r = |n: i64, d: i64| {
            BigRational::new(num_bigint::BigInt::from(n), num_bigint::BigInt::from(d))
        };
        assert_eq!(b[2], r(1, 6));
        assert_eq!(b[4], r(-1, 30));
        assert_eq!(b[6], r(1, 42));
        assert_eq!(b[8], r(-1, 30));
    }

    #[test]
    fn moments_match_closed_forms() {
        let pi = std::f64::consts::PI;
        assert!((moment(0).unwrap() - pi * pi / 3.0).abs() < 1e-15);
        assert!((moment(1).unwrap() - pi.powi(4) / 45.0).abs() < 1e-14);
        assert!((moment(2).unwrap() - 2.0 * pi.powi(6) / 945.0).abs() < 1e-14);
    }
}
