//! Cyclic Jacobi eigendecomposition for dense real symmetric matrices.
//!
//! Deterministic sweep order, no dependencies. Adequate for the matrix sizes
//! this crate touches (a few hundred at most).

use super::SymMatrix;
use crate::error::{Error, Result};

/// Target off-diagonal Frobenius norm; iteration also stops at the numeric
/// floor if rounding prevents reaching it on large or ill-scaled inputs.
const OFF_NORM_TARGET: f64 = 1e-12;
const MAX_SWEEPS: usize = 64;

pub(crate) struct EigenDecomposition {
    /// Eigenvalues, unsorted (pair `values[k]` with column `k` of `vectors`).
    pub values: Vec<f64>,
    /// Row-major dim×dim matrix whose column k is the eigenvector for
    /// `values[k]`; orthogonal.
    pub vectors: Vec<f64>,
    pub dim: usize,
}

impl EigenDecomposition {
    #[inline]
    pub fn vector_entry(&self, row: usize, k: usize) -> f64 {
        self.vectors[row * self.dim + k]
    }
}

fn off_diagonal_norm(a: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[i * n + j] * a[i * n + j];
            }
        }
    }
    s.sqrt()
}

/// Full eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
pub(crate) fn jacobi_eigen(m: &SymMatrix) -> Result<EigenDecomposition> {
    let n = m.dim();
    let mut a: Vec<f64> = (0..n * n).map(|t| m.get(t / n, t % n)).collect();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    if n <= 1 {
        return Ok(EigenDecomposition {
            values: (0..n).map(|i| a[i * n + i]).collect(),
            vectors: v,
            dim: n,
        });
    }

    let mut prev_off = f64::INFINITY;
    for sweep in 0..MAX_SWEEPS {
        let off = off_diagonal_norm(&a, n);
        if off <= OFF_NORM_TARGET {
            break;
        }
        // Quadratic convergence stalls only at the rounding floor; accept
        // that floor rather than looping forever, but reject if it is still
        // far from diagonal.
        if off >= prev_off && sweep > 2 {
            let scale = a.iter().map(|x| x.abs()).fold(0.0, f64::max).max(1.0);
            if off <= 1e-10 * scale * n as f64 {
                break;
            }
            return Err(Error::NoConvergence { sweeps: sweep, off });
        }
        prev_off = off;

        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq.abs() <= OFF_NORM_TARGET / (n * n) as f64 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let tau = (aqq - app) / (2.0 * apq);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                for i in 0..n {
                    let aip = a[i * n + p];
                    let aiq = a[i * n + q];
                    a[i * n + p] = c * aip - s * aiq;
                    a[i * n + q] = s * aip + c * aiq;
                }
                for j in 0..n {
                    let apj = a[p * n + j];
                    let aqj = a[q * n + j];
                    a[p * n + j] = c * apj - s * aqj;
                    a[q * n + j] = s * apj + c * aqj;
                }
                for i in 0..n {
                    let vip = v[i * n + p];
                    let viq = v[i * n + q];
                    v[i * n + p] = c * vip - s * viq;
                    v[i * n + q] = s * vip + c * viq;
                }
            }
        }
    }

    let off = off_diagonal_norm(&a, n);
    let scale = a.iter().map(|x| x.abs()).fold(0.0, f64::max).max(1.0);
    if off > 1e-8 * scale * n as f64 {
        return Err(Error::NoConvergence {
            sweeps: MAX_SWEEPS,
            off,
        });
    }

    Ok(EigenDecomposition {
        values: (0..n).map(|i| a[i * n + i]).collect(),
        vectors: v,
        dim: n,
    })
}
