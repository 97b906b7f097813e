//! Symmetric tridiagonal eigensolver (implicit-shift QL).
//!
//! Only the first component of each eigenvector is accumulated: the
//! Golub-Welsch weights need nothing else, and tracking a single row of
//! the rotation product keeps the solve at O(n^2).

use crate::error::{Error, Result};
use crate::rule::JacobiMatrix;

const MAX_ITERATIONS: usize = 50;

/// Eigen-decomposition of a symmetric tridiagonal matrix.
///
/// Returns the eigenvalues in ascending order together with the first
/// component of each corresponding orthonormal eigenvector. Each
/// eigenvalue is converged until its off-diagonal residual falls below
/// `tol` times the local scale `|d_i| + |d_{i+1}|`. Output is a pure
/// function of the input.
pub fn eig_tridiag(matrix: &JacobiMatrix, tol: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = matrix.diag.len();
    if n == 0 {
        return Err(Error::Argument("empty Jacobi matrix".into()));
    }
    if matrix.offdiag.len() + 1 != n {
        return Err(Error::Argument(format!(
            "offdiag length {} does not match diagonal length {}",
            matrix.offdiag.len(),
            n
        )));
    }
    if tol.is_nan() || tol < f64::EPSILON {
        return Err(Error::Argument(format!(
            "eigensolver tolerance must be at least machine epsilon, got {tol}"
        )));
    }

    let mut d = matrix.diag.clone();
    // e[i] couples d[i] and d[i+1]; one sentinel slot simplifies indexing
    let mut e = matrix.offdiag.clone();
    e.push(0.0);
    // first row of the accumulated rotation product
    let mut q = vec![0.0; n];
    q[0] = 1.0;

    for l in 0..n {
        let mut iterations = 0;
        loop {
            // find the first decoupled block boundary at or after l
            let mut m = l;
            while m + 1 < n {
                let scale = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= tol * scale {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iterations += 1;
            if iterations > MAX_ITERATIONS {
                return Err(Error::EigenConvergence {
                    index: l,
                    max_iterations: MAX_ITERATIONS,
                });
            }

            // implicit shift from the leading 2x2
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;
            let mut underflowed = false;
            for i in (l..m).rev() {
                let mut f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    // rotation annihilated to zero; split and restart
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflowed = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;

                f = q[i + 1];
                q[i + 1] = s * q[i] + c * f;
                q[i] = c * q[i] - s * f;
            }
            if underflowed {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }

    // ascending eigenvalue order, first components carried along
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| d[i]).collect();
    let first_components: Vec<f64> = order.iter().map(|&i| q[i]).collect();
    Ok((eigenvalues, first_components))
}
