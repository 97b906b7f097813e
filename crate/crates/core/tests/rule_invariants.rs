//! Cross-cutting invariants of the rule pipeline: moment exactness,
//! interlacing, and the norm identity checked in exact rational
//! arithmetic.

use gsum_core::{build_rule, moment, mu_zero};

use num_bigint::BigInt;
use num_rational::BigRational;

#[test]
fn moment_exactness_sweep() {
    // exactness degree 2n-1: sum w z^m reproduces mu_m = 2 zeta(2m+2)
    for n in 1..=60usize {
        let rule = build_rule(n).unwrap();
        let tol = if n <= 20 { 1e-10 } else { 1e-8 };
        for m in 0..=(2 * n - 1) as u32 {
            let mu = moment(m).unwrap();
            let got: f64 = rule
                .nodes()
                .iter()
                .zip(rule.weights())
                .map(|(&z, &w)| w * z.powi(m as i32))
                .sum();
            let rel = ((got - mu) / mu).abs();
            assert!(rel <= tol, "n={n} m={m}: rel error {rel:e}");
        }
    }
}

#[test]
fn nodes_interlace_between_adjacent_rules() {
    // strict in exact arithmetic; in doubles the top nodes of adjacent
    // rules may collide bitwise once both have converged onto the same
    // measure support point 1/m^2
    let on_support = |z: f64| {
        let m = (1.0 / z.sqrt()).round();
        (z * m * m - 1.0).abs() <= 1e-12
    };
    for n in 1..=40usize {
        let coarse = build_rule(n).unwrap();
        let fine = build_rule(n + 1).unwrap();
        for k in 0..n {
            let lo = fine.nodes()[k];
            let mid = coarse.nodes()[k];
            let hi = fine.nodes()[k + 1];
            for (x, y) in [(lo, mid), (mid, hi)] {
                if x < y {
                    continue; // strict, as in exact arithmetic
                }
                // collapsed pair: ties and tiny inversions at the scale of
                // the eigensolver's absolute error (eps * ||J||), and only
                // on the support
                assert!(
                    x - y <= 1e-14 && on_support(x),
                    "n={n} k={k}: {lo} {mid} {hi} violates interlacing off the support"
                );
            }
        }
    }
}

/// Bernoulli numbers as exact rationals (independent of the library's
/// own copy; this is the oracle side).
fn bernoulli(n: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = vec![BigRational::from_integer(BigInt::from(1))];
    for m in 1..=n {
        let mut acc = BigRational::from_integer(BigInt::from(0));
        let mut binom = BigInt::from(1);
        for (j, bj) in b.iter().enumerate().take(m) {
            acc += BigRational::from_integer(binom.clone()) * bj;
            binom = binom * BigInt::from((m + 1 - j) as i64) / BigInt::from(j as i64 + 1);
        }
        b.push(-acc / BigRational::from_integer(BigInt::from(m as i64 + 1)));
    }
    b
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `zeta(2m)/pi^(2m)` as an exact rational.
fn zeta_factor(bernoulli_table: &[BigRational], m: usize) -> BigRational {
    let mut fact = BigInt::from(1);
    for k in 2..=(2 * m) {
        fact *= BigInt::from(k as i64);
    }
    let sign = if m % 2 == 1 { 1 } else { -1 };
    BigRational::from_integer(BigInt::from(sign))
        * bernoulli_table[2 * m].clone()
        * BigRational::new(BigInt::from(4).pow(m as u32), BigInt::from(2) * fact)
}

#[test]
fn norm_identity_in_exact_arithmetic() {
    // In the scaled variable t = z/pi^2 everything is rational:
    // alpha_0 = 1/15, alpha_k = 2/((4k+1)(4k+5)),
    // beta_k = 1/((4k-1)(4k+1)^2(4k+3)), t-moments 2 pi^2 r_{j+1} with
    // r_j = zeta(2j)/pi^(2j). The identity ||s_n||^2 = mu_0 prod b_k
    // reduces to  sum_ij c_i c_j r_{i+j+1} == r_1 prod beta_k  in Q.
    let max_n = 8usize;
    let bern = bernoulli(2 * (2 * max_n + 1));
    let r: Vec<BigRational> = (0..=2 * max_n + 1)
        .map(|j| {
            if j == 0 {
                BigRational::from_integer(BigInt::from(0)) // unused
            } else {
                zeta_factor(&bern, j)
            }
        })
        .collect();

    let alpha = |k: usize| -> BigRational {
        if k == 0 {
            ratio(1, 15)
        } else {
            let k = k as i64;
            ratio(2, (4 * k + 1) * (4 * k + 5))
        }
    };
    let beta = |k: usize| -> BigRational {
        let k = k as i64;
        ratio(1, (4 * k - 1) * (4 * k + 1) * (4 * k + 1) * (4 * k + 3))
    };

    for n in 1..=max_n {
        // monic coefficient vectors of s-hat_n via the recursion
        let zero = BigRational::from_integer(BigInt::from(0));
        let one = BigRational::from_integer(BigInt::from(1));
        let mut prev: Vec<BigRational> = vec![zero.clone()];
        let mut cur: Vec<BigRational> = vec![one.clone()];
        for k in 0..n {
            let mut next = vec![zero.clone(); cur.len() + 1];
            for (i, c) in cur.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= alpha(k) * c;
            }
            if k >= 1 {
                for (i, c) in prev.iter().enumerate() {
                    next[i] -= beta(k) * c;
                }
            }
            prev = cur;
            cur = next;
        }
        let mut lhs = BigRational::from_integer(BigInt::from(0));
        for (i, ci) in cur.iter().enumerate() {
            for (j, cj) in cur.iter().enumerate() {
                lhs += ci * cj * r[i + j + 1].clone();
            }
        }
        let mut rhs = r[1].clone();
        for k in 1..=n {
            rhs *= beta(k);
        }
        assert_eq!(lhs, rhs, "norm identity fails in Q at n={n}");
    }

    // the f64 moment_norm follows the same product; spot-check n = 1
    let (_, norm1) = gsum_core::summator::error_constant_kn(1).unwrap();
    let pi = std::f64::consts::PI;
    assert!((norm1 - pi.powi(6) / 1575.0).abs() < 1e-13);
    assert!((norm1 - mu_zero() * pi.powi(4) / 525.0).abs() < 1e-13);
}
