//! Integer cohomology of cube complexes, block by bidegree.

pub mod rational;
pub mod smith;

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::bipoly::{serialize_bigint, BiPoly};
use crate::coeff::Bidegree;
use crate::complex::{ChainComplex, GradedMap};
use crate::error::{Error, Result};
use crate::matrix::SparseIntMatrix;
use rational::QMatrix;
pub use smith::{smith_normal_form, SmithForm};

/// One group `Z^free ⊕ Z/t₁ ⊕ … ⊕ Z/t_k`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct HomologyGroup {
    pub free: usize,
    /// Invariant factors greater than one, in divisibility order.
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.free == 0 && self.torsion.is_empty()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BigradedHomology {
    entries: BTreeMap<(usize, Bidegree), HomologyGroup>,
}

impl BigradedHomology {
    /// Build from explicit nonzero groups; zero groups are dropped.
    pub fn from_entries<I>(entries: I) -> Self
    where
        I: IntoIterator<Item = ((usize, Bidegree), HomologyGroup)>,
    {
        BigradedHomology {
            entries: entries.into_iter().filter(|(_, g)| !g.is_zero()).collect(),
        }
    }

    pub fn group(&self, i: usize, deg: Bidegree) -> HomologyGroup {
        self.entries.get(&(i, deg)).cloned().unwrap_or_default()
    }

    pub fn free_rank(&self, i: usize, deg: Bidegree) -> usize {
        self.entries.get(&(i, deg)).map_or(0, |g| g.free)
    }

    pub fn torsion(&self, i: usize, deg: Bidegree) -> &[BigInt] {
        self.entries.get(&(i, deg)).map_or(&[], |g| g.torsion.as_slice())
    }

    /// Nonzero groups sorted by `(i, p, q)`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, Bidegree, &HomologyGroup)> {
        self.entries.iter().map(|(&(i, d), g)| (i, d, g))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Nonzero groups in degree `i`.
    pub fn degree(&self, i: usize) -> impl Iterator<Item = (Bidegree, &HomologyGroup)> {
        self.iter().filter(move |&(j, _, _)| j == i).map(|(_, d, g)| (d, g))
    }

    /// The same groups with every bidegree moved by `shift`.
    pub fn shifted(&self, shift: Bidegree) -> Self {
        BigradedHomology {
            entries: self
                .entries
                .iter()
                .map(|(&(i, d), g)| ((i, d + shift), g.clone()))
                .collect(),
        }
    }

    /// Restriction to cohomological degrees `< bound`.
    pub fn below(&self, bound: usize) -> Self {
        BigradedHomology {
            entries: self
                .entries
                .iter()
                .filter(|(&(i, _), _)| i < bound)
                .map(|(k, g)| (*k, g.clone()))
                .collect(),
        }
    }

    /// `Σ (-1)^i free(i, p, q) x^p y^q`.
    pub fn graded_euler(&self) -> BiPoly {
        let mut out = BiPoly::zero();
        for (i, d, g) in self.iter() {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            out.add_term(d.p as u32, d.q as u32, BigInt::from(sign * g.free as i64));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("homology serializes")
    }

    /// Rows `i p q free torsion` followed by one summary line per degree in
    /// `Z{(p,q)}` notation.
    pub fn to_table(&self, top_degree: usize) -> String {
        let mut out = String::from("i\tp\tq\tfree\ttorsion\n");
        for (i, d, g) in self.iter() {
            let t: Vec<String> = g.torsion.iter().map(ToString::to_string).collect();
            writeln!(out, "{i}\t{}\t{}\t{}\t[{}]", d.p, d.q, g.free, t.join(",")).unwrap();
        }
        out.push('\n');
        for i in 0..=top_degree {
            writeln!(out, "H^{i} = {}", self.describe_degree(i)).unwrap();
        }
        out
    }

    /// `Z{(1,0)} ⊕ Z_2{(2,0)}`, or `0`.
    pub fn describe_degree(&self, i: usize) -> String {
        let mut parts = Vec::new();
        for (d, g) in self.degree(i) {
            match g.free {
                0 => {}
                1 => parts.push(format!("Z{{{d}}}")),
                r => parts.push(format!("Z^{r}{{{d}}}")),
            }
            for t in &g.torsion {
                parts.push(format!("Z_{t}{{{d}}}"));
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" ⊕ ")
        }
    }
}

impl fmt::Display for BigradedHomology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let top = self.entries.keys().map(|&(i, _)| i).max().unwrap_or(0);
        let lines: Vec<String> = (0..=top)
            .map(|i| format!("H^{i} = {}", self.describe_degree(i)))
            .collect();
        f.write_str(&lines.join("\n"))
    }
}

struct Torsion<'a>(&'a [BigInt]);

impl Serialize for Torsion<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        struct One<'a>(&'a BigInt);
        impl Serialize for One<'_> {
            fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
                serialize_bigint(self.0, serializer)
            }
        }
        let mut seq = serializer.serialize_seq(Some(self.0.len()))?;
        for t in self.0 {
            seq.serialize_element(&One(t))?;
        }
        seq.end()
    }
}

struct Row<'a>(usize, Bidegree, &'a HomologyGroup);

impl Serialize for Row<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Row", 5)?;
        st.serialize_field("i", &self.0)?;
        st.serialize_field("p", &self.1.p)?;
        st.serialize_field("q", &self.1.q)?;
        st.serialize_field("free", &self.2.free)?;
        st.serialize_field("torsion", &Torsion(&self.2.torsion))?;
        st.end()
    }
}

impl Serialize for BigradedHomology {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Row> = self.iter().map(|(i, d, g)| Row(i, d, g)).collect();
        let mut st = serializer.serialize_struct("BigradedHomology", 1)?;
        st.serialize_field("homology", &rows)?;
        st.end()
    }
}

/// Cohomology of `C`, refusing complexes with `d² ≠ 0`.
pub fn homology(c: &ChainComplex) -> Result<BigradedHomology> {
    let report = c.verify_d_squared();
    if let Some(w) = report.failures.first() {
        return Err(Error::NotAComplex(w.clone()));
    }
    Ok(homology_unchecked(c))
}

/// Cohomology of `C` without re-checking `d² = 0`.
pub fn homology_unchecked(c: &ChainComplex) -> BigradedHomology {
    let top = c.top_degree();
    let blocks: Vec<(usize, Bidegree)> = (0..=top)
        .flat_map(|i| c.bidegrees(i).map(move |d| (i, d)))
        .collect();
    let smith: BTreeMap<(usize, Bidegree), SmithForm> = blocks
        .par_iter()
        .filter(|&&(i, _)| i < top)
        .map(|&(i, d)| ((i, d), smith_normal_form(&c.differential_or_zero(i, d))))
        .collect();
    let rank = |i: usize, d: Bidegree| smith.get(&(i, d)).map_or(0, SmithForm::rank);
    BigradedHomology::from_entries(blocks.iter().map(|&(i, d)| {
        let incoming = if i == 0 { 0 } else { rank(i - 1, d) };
        let torsion = match i {
            0 => Vec::new(),
            _ => smith.get(&(i - 1, d)).map(SmithForm::torsion).unwrap_or_default(),
        };
        let group = HomologyGroup {
            free: c.dim(i, d) - rank(i, d) - incoming,
            torsion,
        };
        ((i, d), group)
    }))
}

/// Graded Euler characteristic from chain group dimensions.
pub fn graded_euler_chain(c: &ChainComplex) -> BiPoly {
    c.euler_characteristic()
}

/// Graded Euler characteristic from free ranks.
pub fn graded_euler(h: &BigradedHomology) -> BiPoly {
    h.graded_euler()
}

/// Rank over the rationals of the map induced on cohomology by `f`, where
/// `f` sends the source block to the target block, `source_out` is the
/// differential leaving the source block and `target_in` the differential
/// entering the target block.
pub fn induced_rank(f: &SparseIntMatrix, source_out: &SparseIntMatrix, target_in: &SparseIntMatrix) -> usize {
    let z = QMatrix::from_sparse(source_out).kernel_basis();
    let fz = QMatrix::from_sparse(f).mul(&QMatrix::from_columns(f.ncols(), &z));
    let b = QMatrix::from_sparse(target_in);
    fz.hcat(&b).rank() - b.rank()
}

fn incoming(c: &ChainComplex, i: usize, d: Bidegree) -> SparseIntMatrix {
    match i {
        0 => SparseIntMatrix::zeros(c.dim(0, d), 0),
        _ => c.differential_or_zero(i - 1, d),
    }
}

/// Ranks of the maps induced on rational cohomology by `map : src → tgt`,
/// keyed by source degree and bidegree. Fails unless `map` sends cycles to
/// cycles and boundaries to boundaries.
pub fn rational_ranks_of_map(
    map: &GradedMap,
    src: &ChainComplex,
    tgt: &ChainComplex,
) -> Result<BTreeMap<(usize, Bidegree), usize>> {
    let mut out = BTreeMap::new();
    for i in 0..=src.top_degree() {
        for d in src.bidegrees(i) {
            let j = i + map.shift;
            let f = map.block_or_zero(i, d, src, tgt);
            let d_out = src.differential_or_zero(i, d);
            let z = QMatrix::from_columns(f.ncols(), &QMatrix::from_sparse(&d_out).kernel_basis());
            let fz = QMatrix::from_sparse(&f).mul(&z);
            if !QMatrix::from_sparse(&tgt.differential_or_zero(j, d)).mul(&fz).is_zero() {
                return Err(Error::NotChainMap(format!("a cycle in degree {i}, bidegree {d} maps to a non-cycle")));
            }
            let b_tgt = QMatrix::from_sparse(&incoming(tgt, j, d));
            let b_src = QMatrix::from_sparse(&f).mul(&QMatrix::from_sparse(&incoming(src, i, d)));
            let base = b_tgt.rank();
            if b_src.hcat(&b_tgt).rank() != base {
                return Err(Error::NotChainMap(format!("a boundary in degree {i}, bidegree {d} maps to a non-boundary")));
            }
            out.insert((i, d), fz.hcat(&b_tgt).rank() - base);
        }
    }
    Ok(out)
}
