//! Takagi factorization A = U diag(λ) Uᵀ for real symmetric matrices.
//!
//! Specialization of the general Autonne decomposition: from A = Q D Qᵀ take
//! λ_k = |D_k| and multiply Q's k-th column by 1 (D_k ≥ 0) or by the
//! imaginary unit (D_k < 0), whose square restores the sign.

use num_complex::Complex64;

use super::{jacobi_eigen, SymMatrix};
use crate::error::Result;

#[derive(Clone, Debug)]
pub struct TakagiDecomposition {
    dim: usize,
    /// Singular values, descending, nonnegative.
    lambdas: Vec<f64>,
    /// Row-major dim×dim unitary; column k pairs with `lambdas[k]`. Entries
    /// are real or purely imaginary.
    unitary: Vec<Complex64>,
}

impl TakagiDecomposition {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn lambdas(&self) -> &[f64] {
        &self.lambdas
    }

    #[inline]
    pub fn unitary_entry(&self, row: usize, k: usize) -> Complex64 {
        self.unitary[row * self.dim + k]
    }

    /// Max-norm error of U diag(λ) Uᵀ against `a`.
    pub fn reconstruction_error(&self, a: &SymMatrix) -> f64 {
        let n = self.dim;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let mut s = Complex64::new(0.0, 0.0);
                for k in 0..n {
                    s += self.unitary_entry(i, k) * self.lambdas[k] * self.unitary_entry(j, k);
                }
                worst = worst.max((s - a.get(i, j)).norm());
            }
        }
        worst
    }
}

/// Decomposes a real symmetric matrix as U diag(λ) Uᵀ with λ ≥ 0 descending.
pub fn takagi(a: &SymMatrix) -> Result<TakagiDecomposition> {
    let eig = jacobi_eigen(a)?;
    let n = a.dim();
    let mut order: Vec<usize> = (0..n).collect();
    // Descending by magnitude; ties keep the eigensolver's order so the
    // result is deterministic.
    order.sort_by(|&x, &y| {
        eig.values[y]
            .abs()
            .partial_cmp(&eig.values[x].abs())
            .unwrap()
            .then(x.cmp(&y))
    });

    let mut lambdas = Vec::with_capacity(n);
    let mut unitary = vec![Complex64::new(0.0, 0.0); n * n];
    for (col, &k) in order.iter().enumerate() {
        lambdas.push(eig.values[k].abs());
        let phase = if eig.values[k] >= 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 1.0)
        };
        for row in 0..n {
            unitary[row * n + col] = phase * eig.vector_entry(row, k);
        }
    }
    Ok(TakagiDecomposition {
        dim: n,
        lambdas,
        unitary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_matrix() {
        let t = takagi(&SymMatrix::zeros(3)).unwrap();
        assert_eq!(t.lambdas(), &[0.0, 0.0, 0.0]);
        assert!(t.reconstruction_error(&SymMatrix::zeros(3)) <= 1e-12);
    }

    #[test]
    fn identity() {
        let id = SymMatrix::from_fn(2, |i, j| if i == j { 1.0 } else { 0.0 });
        let t = takagi(&id).unwrap();
        assert_eq!(t.lambdas(), &[1.0, 1.0]);
        assert!(t.reconstruction_error(&id) <= 1e-12);
    }

    #[test]
    fn swap_matrix_needs_imaginary_phase() {
        let m = SymMatrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let t = takagi(&m).unwrap();
        assert!((t.lambdas()[0] - 1.0).abs() < 1e-12);
        assert!((t.lambdas()[1] - 1.0).abs() < 1e-12);
        assert!(t.reconstruction_error(&m) <= 1e-9);
    }

    #[test]
    fn lambdas_sorted_descending() {
        let m = SymMatrix::from_fn(6, |i, j| ((i * 7 + j * 3) % 5) as f64 - 2.0);
        let t = takagi(&m).unwrap();
        for w in t.lambdas().windows(2) {
            assert!(w[0] >= w[1]);
        }
        assert!(t.lambdas().iter().all(|&l| l >= 0.0));
        assert!(t.reconstruction_error(&m) <= 1e-9);
    }
}
