//! Small dense square matrices, row-major, for dimensions up to 8.

use crate::real::Real;

pub const MAX_DIMENSION: usize = 8;

#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix<T> {
    dim: usize,
    data: Vec<T>,
}

impl<T: Real> SquareMatrix<T> {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![T::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Self {
        let dim = rows.len();
        let mut m = Self::zeros(dim);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), dim, "row {i} has wrong length");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, *v);
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> T {
        self.data[row * self.dim + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: T) {
        self.data[row * self.dim + col] = value;
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |acc, v| acc.max(v.abs()))
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|i| {
                let mut acc = T::zero();
                for j in 0..self.dim {
                    acc = acc + self.get(i, j) * v[j];
                }
                acc
            })
            .collect()
    }

    /// `Jᵀ · self · J`, the congruence transform used by metric pullbacks.
    pub fn congruence(&self, j: &SquareMatrix<T>) -> SquareMatrix<T> {
        assert_eq!(self.dim, j.dim);
        let n = self.dim;
        let mut out = SquareMatrix::zeros(n);
        for a in 0..n {
            for b in 0..n {
                let mut acc = T::zero();
                for i in 0..n {
                    for k in 0..n {
                        acc = acc + j.get(i, a) * self.get(i, k) * j.get(k, b);
                    }
                }
                out.set(a, b, acc);
            }
        }
        out
    }

    /// Determinant by LU factorization with partial pivoting.
    ///
    /// A singular matrix returns zero; callers that require non-singularity
    /// enforce it themselves.
    pub fn det(&self) -> T {
        let n = self.dim;
        if n == 0 {
            return T::one();
        }
        let mut a = self.data.clone();
        let mut sign = T::one();
        for col in 0..n {
            // partial pivot
            let mut pivot_row = col;
            let mut pivot_mag = a[col * n + col].abs();
            for row in (col + 1)..n {
                let mag = a[row * n + col].abs();
                if mag > pivot_mag {
                    pivot_mag = mag;
                    pivot_row = row;
                }
            }
            if pivot_mag == T::zero() {
                return T::zero();
            }
            if pivot_row != col {
                for k in 0..n {
                    a.swap(col * n + k, pivot_row * n + k);
                }
                sign = -sign;
            }
            let pivot = a[col * n + col];
            for row in (col + 1)..n {
                let factor = a[row * n + col] / pivot;
                for k in col..n {
                    let sub = factor * a[col * n + k];
                    a[row * n + k] = a[row * n + k] - sub;
                }
            }
        }
        let mut det = sign;
        for i in 0..n {
            det = det * a[i * n + i];
        }
        det
    }
}
