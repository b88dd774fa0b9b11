//! Dense linear algebra over the rationals: ranks and kernel bases.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::matrix::SparseIntMatrix;

/// Dense matrix stored as rows.
#[derive(Clone, Debug, PartialEq)]
pub struct QMatrix {
    pub nrows: usize,
    pub ncols: usize,
    pub rows: Vec<Vec<BigRational>>,
}

impl QMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        QMatrix {
            nrows,
            ncols,
            rows: vec![vec![BigRational::zero(); ncols]; nrows],
        }
    }

    pub fn from_sparse(m: &SparseIntMatrix) -> Self {
        let mut q = QMatrix::zeros(m.nrows(), m.ncols());
        for (r, c, v) in m.entries() {
            q.rows[r][c] = BigRational::from_integer(v.clone());
        }
        q
    }

    /// Matrix whose columns are the given vectors of length `nrows`.
    pub fn from_columns(nrows: usize, columns: &[Vec<BigRational>]) -> Self {
        let mut q = QMatrix::zeros(nrows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), nrows);
            for (r, v) in col.iter().enumerate() {
                q.rows[r][c] = v.clone();
            }
        }
        q
    }

    pub fn mul(&self, rhs: &QMatrix) -> QMatrix {
        assert_eq!(self.ncols, rhs.nrows);
        let mut out = QMatrix::zeros(self.nrows, rhs.ncols);
        for (r, row) in self.rows.iter().enumerate() {
            for (k, a) in row.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (c, b) in rhs.rows[k].iter().enumerate() {
                    if !b.is_zero() {
                        out.rows[r][c] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn hcat(&self, rhs: &QMatrix) -> QMatrix {
        assert_eq!(self.nrows, rhs.nrows);
        QMatrix {
            nrows: self.nrows,
            ncols: self.ncols + rhs.ncols,
            rows: self
                .rows
                .iter()
                .zip(&rhs.rows)
                .map(|(a, b)| a.iter().chain(b).cloned().collect())
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.iter().all(Zero::is_zero))
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.ncols {
            if row == m.nrows {
                break;
            }
            let Some(p) = (row..m.nrows).find(|&r| !m.rows[r][col].is_zero()) else {
                continue;
            };
            m.rows.swap(row, p);
            let inv = BigRational::one() / &m.rows[row][col];
            for v in m.rows[row].iter_mut() {
                *v *= &inv;
            }
            let pivot_row = m.rows[row].clone();
            for r in 0..m.nrows {
                if r == row || m.rows[r][col].is_zero() {
                    continue;
                }
                let f = m.rows[r][col].clone();
                for (v, pv) in m.rows[r].iter_mut().zip(&pivot_row) {
                    if !pv.is_zero() {
                        *v -= &f * pv;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{ v : self · v = 0 }`.
    pub fn kernel_basis(&self) -> Vec<Vec<BigRational>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.ncols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.ncols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![BigRational::zero(); self.ncols];
                v[free] = BigRational::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r.rows[i][free].clone();
                }
                v
            })
            .collect()
    }
}

pub fn rational(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}
