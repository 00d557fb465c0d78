//! Numerical kernels: dense symmetric matrices, eigendecomposition, the
//! Takagi factorization, hafnians, and the photonic encoding solvers.

mod eigen;
mod encoding;
mod hafnian;
mod takagi;

pub use encoding::{encode_graph, hoffman_bound, mean_photons_at, solve_scaling, GbsEncoding};
pub use hafnian::{
    hafnian, hafnian_expansion, hafnian_inclusion_exclusion, hafnian_with_limit,
    perfect_matching_count, DEFAULT_HAFNIAN_LIMIT,
};
pub use takagi::{takagi, TakagiDecomposition};

pub(crate) use eigen::jacobi_eigen;
pub(crate) use hafnian::{pm_count_compact, pm_counts_all};

use crate::error::{Error, Result};

/// Dense real symmetric matrix, row-major full storage.
#[derive(Clone, Debug, PartialEq)]
pub struct SymMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(dim: usize) -> Self {
        SymMatrix {
            dim,
            data: vec![0.0; dim * dim],
        }
    }

    /// Builds from `f(i, j)`, evaluated once per unordered pair and mirrored.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = SymMatrix::zeros(dim);
        for i in 0..dim {
            for j in i..dim {
                let v = f(i, j);
                m.data[i * dim + j] = v;
                m.data[j * dim + i] = v;
            }
        }
        m
    }

    /// Validates squareness, symmetry (exact equality), and finiteness.
    #[allow(clippy::needless_range_loop)] // symmetric (i, j) scan reads better indexed
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::NotSquare {
                    row: i,
                    got: row.len(),
                    expected: dim,
                });
            }
        }
        for i in 0..dim {
            for j in 0..dim {
                if !rows[i][j].is_finite() {
                    return Err(Error::NonFinite("matrix entry"));
                }
                if rows[i][j] != rows[j][i] {
                    return Err(Error::NotSymmetric { i, j });
                }
            }
        }
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            data.extend_from_slice(row);
        }
        Ok(SymMatrix { dim, data })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    /// Sets both `(i, j)` and `(j, i)`.
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.dim + j] = v;
        self.data[j * self.dim + i] = v;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    /// True if every entry is exactly 0.0 or 1.0.
    pub(crate) fn is_zero_one(&self) -> bool {
        self.data.iter().all(|&x| x == 0.0 || x == 1.0)
    }

    /// Principal submatrix on `idx` (entries in the given order).
    pub fn submatrix(&self, idx: &[usize]) -> SymMatrix {
        SymMatrix::from_fn(idx.len(), |i, j| self.get(idx[i], idx[j]))
    }
}
