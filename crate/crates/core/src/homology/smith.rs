//! Invariant factors of sparse integer matrices.
//!
//! Elimination works on a row map plus a column occupancy index. Pivots are
//! the entries of least magnitude, ties broken by the smallest combined row
//! and column fill. A pivot is retired once its row and column are clear;
//! otherwise a nonzero remainder appears that is smaller than the pivot, and
//! elimination restarts from it. The retired pivots form a diagonal that is
//! then brought into divisibility order by gcd/lcm exchanges.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::matrix::SparseIntMatrix;

/// Invariant factors `d₁ | d₂ | … | d_r`, all positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub invariant_factors: Vec<BigInt>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    /// Factors greater than one: the torsion of the cokernel.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariant_factors
            .iter()
            .filter(|d| !d.is_one())
            .cloned()
            .collect()
    }

    pub fn is_unimodular(&self) -> bool {
        self.invariant_factors.iter().all(|d| d.is_one())
    }
}

struct Eliminator {
    rows: Vec<BTreeMap<usize, BigInt>>,
    cols: Vec<BTreeSet<usize>>,
}

impl Eliminator {
    fn new(m: &SparseIntMatrix) -> Self {
        let mut rows = vec![BTreeMap::new(); m.nrows()];
        let mut cols = vec![BTreeSet::new(); m.ncols()];
        for (r, c, v) in m.entries() {
            rows[r].insert(c, v.clone());
            cols[c].insert(r);
        }
        Eliminator { rows, cols }
    }

    fn pivot(&self) -> Option<(usize, usize)> {
        let mut best: Option<(BigInt, usize, usize, usize)> = None;
        for (r, row) in self.rows.iter().enumerate() {
            for (&c, v) in row {
                let mag = v.abs();
                let fill = row.len() + self.cols[c].len();
                let better = match &best {
                    None => true,
                    Some((bm, bf, _, _)) => mag < *bm || (mag == *bm && fill < *bf),
                };
                if better {
                    let unit = mag.is_one() && fill == 2;
                    best = Some((mag, fill, r, c));
                    if unit {
                        break;
                    }
                }
            }
        }
        best.map(|(_, _, r, c)| (r, c))
    }

    fn set(&mut self, r: usize, c: usize, v: BigInt) {
        if v.is_zero() {
            if self.rows[r].remove(&c).is_some() {
                self.cols[c].remove(&r);
            }
        } else {
            self.rows[r].insert(c, v);
            self.cols[c].insert(r);
        }
    }

    /// `row[target] -= q * row[source]`.
    fn row_axpy(&mut self, target: usize, q: &BigInt, source: usize) {
        let src: Vec<(usize, BigInt)> = self.rows[source]
            .iter()
            .map(|(&c, v)| (c, v.clone()))
            .collect();
        for (c, v) in src {
            let cur = self.rows[target].get(&c).cloned().unwrap_or_default();
            self.set(target, c, cur - q * v);
        }
    }

    fn clear_row(&mut self, r: usize) {
        for (c, _) in std::mem::take(&mut self.rows[r]) {
            self.cols[c].remove(&r);
        }
    }

    fn run(mut self) -> Vec<BigInt> {
        let mut diagonal = Vec::new();
        while let Some((p, c)) = self.pivot() {
            let v = self.rows[p][&c].clone();
            let mut clean = true;
            let others: Vec<usize> = self.cols[c].iter().copied().filter(|&r| r != p).collect();
            for r in others {
                let (q, rem) = self.rows[r][&c].div_rem(&v);
                if !rem.is_zero() {
                    clean = false;
                }
                if !q.is_zero() {
                    self.row_axpy(r, &q, p);
                }
            }
            if !clean {
                continue;
            }
            // Column c holds only the pivot, so column operations against it
            // touch row p alone.
            let rest: Vec<(usize, BigInt)> = self.rows[p]
                .iter()
                .filter(|(&cc, _)| cc != c)
                .map(|(&cc, w)| (cc, w.clone()))
                .collect();
            let mut divisible = true;
            for (cc, w) in rest {
                let rem = w % &v;
                if !rem.is_zero() {
                    divisible = false;
                }
                self.set(p, cc, rem);
            }
            if divisible {
                self.clear_row(p);
                diagonal.push(v.abs());
            }
        }
        diagonal
    }
}

/// Bring a diagonal of positive integers into divisibility order.
fn normalize_diagonal(mut d: Vec<BigInt>) -> Vec<BigInt> {
    d.sort();
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            if (&d[j] % &d[i]).is_zero() {
                continue;
            }
            let g = d[i].gcd(&d[j]);
            let l = &d[i] / &g * &d[j];
            d[i] = g;
            d[j] = l;
        }
    }
    d
}

pub fn smith_normal_form(m: &SparseIntMatrix) -> SmithForm {
    let diagonal = Eliminator::new(m).run();
    SmithForm {
        invariant_factors: normalize_diagonal(diagonal),
    }
}
