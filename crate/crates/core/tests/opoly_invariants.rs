//! Consistency between the three representations of the denominator
//! polynomials: monic recursion, R/S forward recursion, and the closed
//! Bessel form; plus Pade convergence toward the Weyl function.

use std::f64::consts::PI;

use gsum_core::opoly::{eval_rs, eval_s, pade_convergent, s_closed_form, weyl};
use gsum_core::{build_rule, Error};

#[test]
fn monic_and_rs_representations_are_proportional() {
    // eval_s(n, z) = C_n * z^n S_{2n-1}(pi/sqrt(z)) with C_n independent of z
    for n in 1..=10usize {
        let zs = [0.1, 0.5, 2.0, 10.0];
        let ratios: Vec<f64> = zs
            .iter()
            .map(|&z| {
                let monic = eval_s(n, z).unwrap();
                let x = PI / z.sqrt();
                monic / (z.powi(n as i32) * eval_rs(2 * n - 1, x).1)
            })
            .collect();
        let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
        for r in &ratios {
            assert!(((r - mean) / mean).abs() <= 1e-9, "n={n}: ratios {ratios:?}");
        }
    }
}

#[test]
fn pade_error_decreases_to_the_floor() {
    for z in [2.0, 5.0] {
        let phi = weyl(z).unwrap();
        let floor = 10.0 * f64::EPSILON * phi.abs();
        let mut prev = f64::INFINITY;
        for n in 1..=12usize {
            let err = (pade_convergent(n, z).unwrap() - phi).abs();
            assert!(
                err < prev || err <= floor,
                "z={z} n={n}: error {err:e} after {prev:e}"
            );
            prev = err.max(floor);
        }
    }
}

#[test]
fn parity_in_x() {
    for n in [1usize, 4, 9, 16] {
        for x in [0.3, 1.0, 2.5, 7.0] {
            let (rp, sp) = eval_rs(n, x);
            let (rm, sm) = eval_rs(n, -x);
            assert_eq!(sp, sm, "S_{n} must be even in x");
            assert_eq!(rp, rm, "R_{n} must be even in x");
        }
    }
}

#[test]
fn bisection_roots_agree_with_rule_nodes() {
    // brackets from the interlacing structure: midpoints between
    // adjacent eigenvalues straddle exactly one root each (endpoints at
    // the eigenvalues themselves are useless for the upper nodes, which
    // collapse onto the measure support points to within ulps);
    // bisection to 1e-13 absolute
    for n in 2..=10usize {
        let nodes = build_rule(n).unwrap();
        let z = nodes.nodes();
        for k in 0..n {
            let mut a = if k == 0 { 1e-12 } else { 0.5 * (z[k - 1] + z[k]) };
            let mut b = if k + 1 == n { 1.5 } else { 0.5 * (z[k] + z[k + 1]) };
            let fa = eval_s(n, a).unwrap();
            assert!(
                fa * eval_s(n, b).unwrap() < 0.0,
                "bracket {k} of s_{n} does not straddle a root"
            );
            while b - a > 1e-13 {
                let mid = 0.5 * (a + b);
                let fm = eval_s(n, mid).unwrap();
                if fa.signum() * fm.signum() <= 0.0 {
                    b = mid;
                } else {
                    a = mid;
                }
            }
            let root = 0.5 * (a + b);
            assert!(
                (root - z[k]).abs() <= 1e-10,
                "n={n} k={k}: bisection {root} vs eigenvalue {}",
                z[k]
            );
        }
    }
}

/// Evaluation scale of `S_n`: the recursion run with |c_k|, the standard
/// conditioning measure for polynomial evaluation.
fn s_scale(n: usize, x: f64) -> f64 {
    let x2 = x * x;
    let mut prev = 1.0f64;
    let mut cur = 1.0f64;
    for k in 1..=n {
        let c = 1.0 / ((2.0 * k as f64 + 1.0) * (2.0 * k as f64 + 3.0));
        let next = cur + c * x2 * prev;
        prev = cur;
        cur = next;
    }
    cur
}

#[test]
fn closed_form_agrees_with_recursion_across_validated_range() {
    // plain 1e-9 relative wherever the value is well above the
    // evaluation noise floor; near a root (x = pi sits within 1e-16 of
    // the first root of S_n for large n) agreement is asserted against
    // the conditioning scale instead
    for n in (1..=21usize).step_by(2) {
        for x in [1.0, 2.0, PI, 10.0] {
            let direct = eval_rs(n, x).1;
            let closed = s_closed_form(n, x).unwrap();
            let scale = s_scale(n, x);
            if direct.abs() >= 1e-6 * scale {
                assert!(
                    ((closed - direct) / direct).abs() <= 1e-9,
                    "n={n} x={x}: rel {:e}",
                    ((closed - direct) / direct).abs()
                );
            } else {
                assert!(
                    (closed - direct).abs() <= 1e-9 * scale,
                    "n={n} x={x}: abs {:e} vs scale {scale:e}",
                    (closed - direct).abs()
                );
            }
        }
    }
}

#[test]
fn weyl_pole_rejection_matches_support() {
    for nu in 1..=5i64 {
        let z = 1.0 / (nu * nu) as f64;
        assert!(matches!(weyl(z), Err(Error::PoleProximity { .. })), "nu={nu}");
    }
    assert!(weyl(2.0).is_ok());
    assert!(weyl(0.35).is_ok());
}
