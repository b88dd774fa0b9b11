//! Sparse integer matrices. A matrix acts on column vectors: entry
//! `(row, col)` is the coefficient of target basis element `row` in the image
//! of source basis element `col`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparseIntMatrix {
    nrows: usize,
    ncols: usize,
    entries: BTreeMap<(usize, usize), BigInt>,
}

impl SparseIntMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseIntMatrix {
            nrows,
            ncols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.add_to(i, i, BigInt::from(1));
        }
        m
    }

    pub fn from_triplets<I, C>(nrows: usize, ncols: usize, triplets: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, C)>,
        C: Into<BigInt>,
    {
        let mut m = Self::zeros(nrows, ncols);
        for (r, c, v) in triplets {
            m.add_to(r, c, v.into());
        }
        m
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(rows.len(), ncols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged dense matrix");
            for (c, &v) in row.iter().enumerate() {
                m.add_to(r, c, BigInt::from(v));
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Add `v` to entry `(r, c)`, dropping it if the sum vanishes.
    pub fn add_to(&mut self, r: usize, c: usize, v: BigInt) {
        assert!(r < self.nrows && c < self.ncols, "entry ({r}, {c}) out of range");
        if v.is_zero() {
            return;
        }
        let slot = self.entries.entry((r, c)).or_insert_with(BigInt::zero);
        *slot += v;
        if slot.is_zero() {
            self.entries.remove(&(r, c));
        }
    }

    pub fn get(&self, r: usize, c: usize) -> BigInt {
        self.entries.get(&(r, c)).cloned().unwrap_or_default()
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn rows(&self) -> Vec<Vec<(usize, BigInt)>> {
        let mut rows = vec![Vec::new(); self.nrows];
        for (&(r, c), v) in &self.entries {
            rows[r].push((c, v.clone()));
        }
        rows
    }

    /// Column `c` as `(row, value)` pairs.
    pub fn column(&self, c: usize) -> Vec<(usize, BigInt)> {
        self.entries
            .iter()
            .filter(|(&(_, cc), _)| cc == c)
            .map(|(&(r, _), v)| (r, v.clone()))
            .collect()
    }

    pub fn transpose(&self) -> Self {
        SparseIntMatrix {
            nrows: self.ncols,
            ncols: self.nrows,
            entries: self
                .entries
                .iter()
                .map(|(&(r, c), v)| ((c, r), v.clone()))
                .collect(),
        }
    }

    /// `self * rhs`.
    pub fn mul(&self, rhs: &SparseIntMatrix) -> SparseIntMatrix {
        assert_eq!(self.ncols, rhs.nrows, "dimension mismatch in product");
        let rhs_rows = rhs.rows();
        let mut out = SparseIntMatrix::zeros(self.nrows, rhs.ncols);
        for (&(r, k), v) in &self.entries {
            for (c, w) in &rhs_rows[k] {
                out.add_to(r, *c, v * w);
            }
        }
        out
    }

    pub fn sub(&self, rhs: &SparseIntMatrix) -> SparseIntMatrix {
        assert_eq!((self.nrows, self.ncols), (rhs.nrows, rhs.ncols));
        let mut out = self.clone();
        for (&(r, c), v) in &rhs.entries {
            out.add_to(r, c, -v);
        }
        out
    }

    pub fn scale(&self, k: &BigInt) -> SparseIntMatrix {
        let mut out = SparseIntMatrix::zeros(self.nrows, self.ncols);
        for (&(r, c), v) in &self.entries {
            out.add_to(r, c, v * k);
        }
        out
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut d = vec![vec![BigInt::zero(); self.ncols]; self.nrows];
        for (&(r, c), v) in &self.entries {
            d[r][c] = v.clone();
        }
        d
    }

    /// Columns `cols` of the matrix, in that order.
    pub fn select_columns(&self, cols: &[usize]) -> SparseIntMatrix {
        let mut pos = vec![usize::MAX; self.ncols];
        for (i, &c) in cols.iter().enumerate() {
            pos[c] = i;
        }
        let mut out = SparseIntMatrix::zeros(self.nrows, cols.len());
        for (&(r, c), v) in &self.entries {
            if pos[c] != usize::MAX {
                out.add_to(r, pos[c], v.clone());
            }
        }
        out
    }

    /// `[self | rhs]`.
    pub fn hcat(&self, rhs: &SparseIntMatrix) -> SparseIntMatrix {
        assert_eq!(self.nrows, rhs.nrows);
        let mut out = self.clone();
        out.ncols += rhs.ncols;
        for (&(r, c), v) in &rhs.entries {
            out.entries.insert((r, c + self.ncols), v.clone());
        }
        out
    }
}

impl fmt::Display for SparseIntMatrix {
    /// One `row col value` triplet per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (&(r, c), v) in &self.entries {
            writeln!(f, "{r} {c} {v}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_transpose() {
        let a = SparseIntMatrix::from_dense(&[vec![1, 2], vec![0, -1], vec![3, 0]]);
        let b = SparseIntMatrix::from_dense(&[vec![2, 0, 1], vec![1, 1, 0]]);
        let ab = a.mul(&b);
        assert_eq!(
            ab,
            SparseIntMatrix::from_dense(&[vec![4, 2, 1], vec![-1, -1, 0], vec![6, 0, 3]])
        );
        assert_eq!(ab.transpose(), b.transpose().mul(&a.transpose()));
        assert!(ab.sub(&ab).is_zero());
        assert_eq!(a.mul(&SparseIntMatrix::identity(2)), a);
    }

    #[test]
    fn zeros_are_not_stored() {
        let mut m = SparseIntMatrix::zeros(2, 2);
        m.add_to(0, 1, BigInt::from(3));
        m.add_to(0, 1, BigInt::from(-3));
        m.add_to(1, 1, BigInt::from(0));
        assert_eq!(m.nnz(), 0);
    }

    #[test]
    fn column_selection() {
        let a = SparseIntMatrix::from_dense(&[vec![1, 2, 3], vec![4, 5, 6]]);
        assert_eq!(
            a.select_columns(&[2, 0]),
            SparseIntMatrix::from_dense(&[vec![3, 1], vec![6, 4]])
        );
        assert_eq!(a.column(1), vec![(0, BigInt::from(2)), (1, BigInt::from(5))]);
        assert_eq!(
            a.hcat(&SparseIntMatrix::identity(2)),
            SparseIntMatrix::from_dense(&[vec![1, 2, 3, 1, 0], vec![4, 5, 6, 0, 1]])
        );
    }
}
