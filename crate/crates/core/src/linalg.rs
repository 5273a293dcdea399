//! Small dense symmetric kernels for matrices up to 6×6.

use crate::{Error, Result};

/// Largest dimension handled by the fixed-size kernels.
pub const MAX_DIM: usize = 6;

/// Relative pivot threshold of the LDLᵀ factorization.
pub const PIVOT_THRESHOLD: f64 = 1e-12;

pub type Mat6 = [[f64; MAX_DIM]; MAX_DIM];

/// Natural log of the determinant of the principal submatrix of `m` picked by
/// `idx`, via an unpivoted LDLᵀ factorization.
///
/// Any pivot at or below `PIVOT_THRESHOLD * trace` is reported as singular.
/// The empty submatrix has determinant 1.
pub fn ln_det_principal(m: &Mat6, idx: &[usize]) -> Result<f64> {
    let n = idx.len();
    debug_assert!(n <= MAX_DIM);
    if n == 0 {
        return Ok(0.0);
    }
    let mut a = [[0.0; MAX_DIM]; MAX_DIM];
    let mut trace = 0.0;
    for (r, &i) in idx.iter().enumerate() {
        for (c, &j) in idx.iter().enumerate() {
            a[r][c] = m[i][j];
        }
        trace += m[i][i];
    }
    let threshold = PIVOT_THRESHOLD * trace.abs();
    let mut d = [0.0; MAX_DIM];
    let mut l = [[0.0; MAX_DIM]; MAX_DIM];
    let mut ln_det = 0.0;
    for j in 0..n {
        let mut dj = a[j][j];
        for k in 0..j {
            dj -= l[j][k] * l[j][k] * d[k];
        }
        if !(dj > threshold) || !dj.is_finite() {
            return Err(Error::SingularCovariance {
                pivot: dj,
                threshold,
            });
        }
        d[j] = dj;
        ln_det += libm::log(dj);
        for i in (j + 1)..n {
            let mut v = a[i][j];
            for k in 0..j {
                v -= l[i][k] * l[j][k] * d[k];
            }
            l[i][j] = v / dj;
        }
    }
    Ok(ln_det)
}

/// Eigenvalues of the leading `n×n` block of a symmetric matrix by cyclic
/// Jacobi rotations, sorted ascending.
pub fn symmetric_eigenvalues(m: &Mat6, n: usize) -> [f64; MAX_DIM] {
    let mut a = *m;
    for _sweep in 0..64 {
        let mut off = 0.0;
        let mut diag = 0.0;
        for i in 0..n {
            diag += a[i][i] * a[i][i];
            for j in (i + 1)..n {
                off += a[i][j] * a[i][j];
            }
        }
        if off <= 1e-30 * diag || off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                if a[p][q] == 0.0 {
                    continue;
                }
                let tau = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = if tau >= 0.0 {
                    1.0 / (tau + libm::sqrt(1.0 + tau * tau))
                } else {
                    -1.0 / (-tau + libm::sqrt(1.0 + tau * tau))
                };
                let c = 1.0 / libm::sqrt(1.0 + t * t);
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut ev = [0.0; MAX_DIM];
    for i in 0..n {
        ev[i] = a[i][i];
    }
    ev[..n].sort_by(|x, y| x.total_cmp(y));
    ev
}

/// Eigenvalues `(small, large)` of the symmetric 2×2 matrix `[[a, b], [b, c]]`.
pub fn eig2_symmetric(a: f64, b: f64, c: f64) -> (f64, f64) {
    let mean = 0.5 * (a + c);
    let half_diff = 0.5 * (a - c);
    let r = libm::hypot(half_diff, b);
    let large = mean + r;
    // product form keeps the small eigenvalue accurate when it is near zero
    let det = a * c - b * b;
    let small = if large > 0.0 { det / large } else { mean - r };
    (small, large)
}
