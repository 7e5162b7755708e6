//! Eigenvalues of small symmetric matrices by cyclic Jacobi rotations.

use super::matrix::SquareMatrix;
use super::GeometryError;
use crate::real::Real;

const MAX_SWEEPS: usize = 50;

/// Eigenvalues of a symmetric matrix, unsorted.
pub fn symmetric_eigenvalues<T: Real>(m: &SquareMatrix<T>) -> Result<Vec<T>, GeometryError> {
    let n = m.dim();
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut a = m.clone();
    let scale = a.max_abs();
    if scale == T::zero() {
        return Ok(vec![T::zero(); n]);
    }
    let tol = scale * T::epsilon() * T::lit(n as f64);
    for _ in 0..MAX_SWEEPS {
        let mut off = T::zero();
        for p in 0..n {
            for q in (p + 1)..n {
                off = off + a.get(p, q).abs();
            }
        }
        if off <= tol {
            return Ok((0..n).map(|i| a.get(i, i)).collect());
        }
        for p in 0..(n - 1) {
            for q in (p + 1)..n {
                let apq = a.get(p, q);
                if apq.abs() <= tol / T::lit((n * n) as f64) {
                    continue;
                }
                let app = a.get(p, p);
                let aqq = a.get(q, q);
                let theta = (aqq - app) / (T::lit(2.0) * apq);
                // tangent of the rotation angle, smaller root
                let t = {
                    let denom = theta.abs() + (T::one() + theta * theta).sqrt();
                    let t = T::one() / denom;
                    if theta < T::zero() {
                        -t
                    } else {
                        t
                    }
                };
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = t * c;
                let tau = s / (T::one() + c);
                a.set(p, p, app - t * apq);
                a.set(q, q, aqq + t * apq);
                a.set(p, q, T::zero());
                a.set(q, p, T::zero());
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a.get(k, p);
                    let akq = a.get(k, q);
                    let new_kp = akp - s * (akq + tau * akp);
                    let new_kq = akq + s * (akp - tau * akq);
                    a.set(k, p, new_kp);
                    a.set(p, k, new_kp);
                    a.set(k, q, new_kq);
                    a.set(q, k, new_kq);
                }
            }
        }
    }
    Err(GeometryError::EigenNonConvergence { sweeps: MAX_SWEEPS })
}

/// Sylvester signature `(n_pos, n_neg, n_zero)` of a symmetric matrix.
///
/// Eigenvalues within `1e-10 * max|entry|` of zero count as zero.
pub fn matrix_signature<T: Real>(
    m: &SquareMatrix<T>,
) -> Result<(usize, usize, usize), GeometryError> {
    let eigenvalues = symmetric_eigenvalues(m)?;
    let eps = T::lit(1e-10) * m.max_abs();
    let mut pos = 0;
    let mut neg = 0;
    let mut zero = 0;
    for ev in eigenvalues {
        if ev > eps {
            pos += 1;
        } else if ev < -eps {
            neg += 1;
        } else {
            zero += 1;
        }
    }
    Ok((pos, neg, zero))
}
