//! Orthogonal-polynomial machinery behind the summation rule.
//!
//! The Weyl function of the measure, `Phi(z) = 1 - (pi/sqrt(z)) cot(pi/sqrt(z))`,
//! has a continued-fraction expansion in `x = pi/sqrt(z)` whose Pade
//! convergents `R_n(x)/S_n(x)` obey
//!
//! ```text
//! R_{n+1} = R_n + c_{n+1} x^2 R_{n-1},    R_{-1} = 0, R_0 = c_0 x^2,
//! S_{n+1} = S_n + c_{n+1} x^2 S_{n-1},    S_{-1} = 1, S_0 = 1,
//! c_0 = 1/3,  c_n = -1/((2n+1)(2n+3))  for n >= 1.
//! ```
//!
//! The odd-index denominators are, up to normalization, the monic
//! orthogonal polynomials: `s_n(z)` is proportional to
//! `z^n S_{2n-1}(pi/sqrt(z))`. An independent closed form evaluates
//! `S_n` through half-integer Bessel functions; everything here exists to
//! cross-validate the rule construction.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::rule::{recurrence_coeffs, RecurrenceCoefficients};

/// Rejection radius around the measure support points for [`weyl`].
pub const POLE_TOLERANCE: f64 = 1e-9;

/// A point carried in both evaluation variables: `x` (argument of the
/// `S_n`, `R_n` polynomials) and `z = (pi/x)^2` (argument of the monic
/// `s_n` and of the Weyl function).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolyEvalPoint {
    x: f64,
    z: f64,
}

impl PolyEvalPoint {
    pub fn from_z(z: f64) -> Result<Self> {
        if !z.is_finite() || z <= 0.0 {
            return Err(Error::Domain(format!("evaluation point needs z > 0, got {z}")));
        }
        Ok(Self { x: PI / z.sqrt(), z })
    }

    pub fn from_x(x: f64) -> Result<Self> {
        if !x.is_finite() || x <= 0.0 {
            return Err(Error::Domain(format!("evaluation point needs x > 0, got {x}")));
        }
        Ok(Self { x, z: (PI / x) * (PI / x) })
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn z(&self) -> f64 {
        self.z
    }
}

/// Continued-fraction coefficients `c_0..c_n` of `1 - x cot(x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ContinuedFractionCoeffs {
    pub c: Vec<f64>,
}

pub fn cf_coeffs(n: usize) -> ContinuedFractionCoeffs {
    let mut c = Vec::with_capacity(n + 1);
    c.push(1.0 / 3.0);
    for k in 1..=n as u64 {
        let k = k as f64;
        c.push(-1.0 / ((2.0 * k + 1.0) * (2.0 * k + 3.0)));
    }
    ContinuedFractionCoeffs { c }
}

/// Numerator and denominator `(R_n(x), S_n(x))` of the n-th convergent,
/// by the forward recursion.
pub fn eval_rs(n: usize, x: f64) -> (f64, f64) {
    let coeffs = cf_coeffs(n + 1);
    let x2 = x * x;
    let mut r_prev = 0.0; // R_{-1}
    let mut r = coeffs.c[0] * x2; // R_0
    let mut s_prev = 1.0; // S_{-1}
    let mut s = 1.0; // S_0
    for k in 1..=n {
        let cx2 = coeffs.c[k] * x2;
        let r_next = r + cx2 * r_prev;
        let s_next = s + cx2 * s_prev;
        r_prev = r;
        r = r_next;
        s_prev = s;
        s = s_next;
    }
    (r, s)
}

/// Monic orthogonal polynomial `s_n(z)` via the three-term recursion
/// with the rule coefficients.
pub fn eval_s(n: usize, z: f64) -> Result<f64> {
    let coeffs = if n == 0 {
        RecurrenceCoefficients { a: vec![], b: vec![] }
    } else {
        recurrence_coeffs(n)?
    };
    Ok(eval_s_with(&coeffs, n, z))
}

pub(crate) fn eval_s_with(coeffs: &RecurrenceCoefficients, n: usize, z: f64) -> f64 {
    let mut prev = 0.0; // s_{-1}
    let mut cur = 1.0; // s_0
    for k in 0..n {
        let b = if k == 0 { 0.0 } else { coeffs.b[k] };
        let next = (z - coeffs.a[k]) * cur - b * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Weyl function `Phi(z) = 1 - (pi/sqrt(z)) cot(pi/sqrt(z))` for `z > 0`
/// away from the support points `1/nu^2`.
pub fn weyl(z: f64) -> Result<f64> {
    if !z.is_finite() || z <= 0.0 {
        return Err(Error::Domain(format!("weyl requires z > 0, got {z}")));
    }
    let nu = (1.0 / z.sqrt()).round();
    if nu >= 1.0 {
        let pole = 1.0 / (nu * nu);
        if (z - pole).abs() < POLE_TOLERANCE {
            return Err(Error::PoleProximity {
                z,
                nu: nu as i64,
                tol: POLE_TOLERANCE,
            });
        }
    }
    let x = PI / z.sqrt();
    Ok(1.0 - x * (x.cos() / x.sin()))
}

/// n-th Pade convergent `R_{2n-1}/S_{2n-1}` of the Weyl function at
/// `x = pi/sqrt(z)`; converges to [`weyl`] for z outside (0, 1].
pub fn pade_convergent(n: usize, z: f64) -> Result<f64> {
    if !z.is_finite() || z <= 0.0 {
        return Err(Error::Domain(format!(
            "pade_convergent requires z > 0, got {z}"
        )));
    }
    if n == 0 {
        // R_{-1}/S_{-1} = 0/1
        return Ok(0.0);
    }
    let x = PI / z.sqrt();
    let (r, s) = eval_rs(2 * n - 1, x);
    // rejection threshold scales with the numerator so that evaluation at a
    // rule node (a true pole of the convergent) is caught reliably
    if s.abs() <= 1e-12 * r.abs().max(1.0) {
        return Err(Error::PadePole { x });
    }
    Ok(r / s)
}

/// Largest odd polynomial index accepted by [`s_closed_form`].
pub const S_CLOSED_FORM_MAX_N: usize = 21;
/// Largest argument accepted by [`s_closed_form`].
pub const S_CLOSED_FORM_MAX_X: f64 = 50.0;

/// Closed-form evaluation of `S_n(x)` for odd `n` through half-integer
/// Bessel functions:
///
/// ```text
/// S_n(x) = -pi x^(n+3/2) / (Gamma(n+5/2) 2^(n+5/2))
///          * [cos(x) J_{n+5/2}(x) + sin(x) Y_{n+5/2}(x)]
/// ```
///
/// The Bessel values come from their finite trigonometric closed forms
/// with polynomial-in-1/x coefficients built by the order-raising
/// recurrence. The admissible range `n <= 21`, `0 < x <= 50` keeps the
/// cancellation growth of those forms bounded.
pub fn s_closed_form(n: usize, x: f64) -> Result<f64> {
    if n.is_multiple_of(2) || !(1..=S_CLOSED_FORM_MAX_N).contains(&n) {
        return Err(Error::Domain(format!(
            "s_closed_form requires odd n in 1..={S_CLOSED_FORM_MAX_N}, got {n}"
        )));
    }
    if x.is_nan() || x <= 0.0 || x > S_CLOSED_FORM_MAX_X {
        return Err(Error::Domain(format!(
            "s_closed_form requires 0 < x <= {S_CLOSED_FORM_MAX_X}, got {x}"
        )));
    }
    let order = n + 2; // J_{n+5/2} = J_{(n+2)+1/2}
    let (j, y) = bessel_half_integer(order, x);
    let bracket = x.cos() * j + x.sin() * y;
    let prefactor = -PI * x.powf(n as f64 + 1.5)
        / (gamma_half_integer(2 * n + 5) * 2f64.powf(n as f64 + 2.5));
    Ok(prefactor * bracket)
}

/// `(J_{k+1/2}(x), Y_{k+1/2}(x))` from the trigonometric closed forms
///
/// ```text
/// J_{k+1/2}(x) = sqrt(2/(pi x)) [ p_k(1/x) sin(x) + q_k(1/x) cos(x) ]
/// Y_{k+1/2}(x) = sqrt(2/(pi x)) [ r_k(1/x) sin(x) + t_k(1/x) cos(x) ]
/// ```
///
/// where the coefficient polynomials obey `p_{k+1}(u) = (2k+1) u p_k(u)
/// - p_{k-1}(u)` (same for the others) with `p_0 = 1, q_0 = 0` and
/// `r_0 = 0, t_0 = -1`.
fn bessel_half_integer(k: usize, x: f64) -> (f64, f64) {
    let u = 1.0 / x;
    // coefficient polynomials evaluated at u, advanced jointly
    let (mut p_prev, mut q_prev) = (1.0, 0.0); // order 1/2
    let (mut r_prev, mut t_prev) = (0.0, -1.0);
    if k == 0 {
        let pref = (2.0 / (PI * x)).sqrt();
        return (
            pref * (p_prev * x.sin() + q_prev * x.cos()),
            pref * (r_prev * x.sin() + t_prev * x.cos()),
        );
    }
    let (mut p, mut q) = (u, -1.0); // order 3/2
    let (mut r, mut t) = (-1.0, -u);
    for m in 1..k {
        let c = (2 * m + 1) as f64 * u;
        let (p_next, q_next) = (c * p - p_prev, c * q - q_prev);
        let (r_next, t_next) = (c * r - r_prev, c * t - t_prev);
        p_prev = p;
        q_prev = q;
        r_prev = r;
        t_prev = t;
        p = p_next;
        q = q_next;
        r = r_next;
        t = t_next;
    }
    let pref = (2.0 / (PI * x)).sqrt();
    (
        pref * (p * x.sin() + q * x.cos()),
        pref * (r * x.sin() + t * x.cos()),
    )
}

/// `Gamma(h/2)` for odd positive `h`, via `Gamma(1/2) = sqrt(pi)` and the
/// ascending product.
pub(crate) fn gamma_half_integer(h: usize) -> f64 {
    debug_assert!(h % 2 == 1);
    let mut value = PI.sqrt();
    let mut arg = 0.5;
    while arg + 1.0 <= h as f64 / 2.0 {
        value *= arg;
        arg += 1.0;
    }
    value
}
