//! The cube of states of a graph and its bigraded cochain complex.
//!
//! A state `s ⊆ E(G)` carries `A^{⊗ b0(s)} ⊗ B^{⊗ b1(s)}`. Its basis elements
//! label every component of `[G:s]` (ordered by least vertex) with an
//! `A`-basis index and every independent cycle with a `B`-basis index; cycle
//! labels are kept in creation order, and a new cycle appends its label at
//! the end. Adding an edge that merges two components multiplies their labels
//! in `A`; adding an edge inside a component appends `b₀`. The differential
//! `d^i` is the signed sum of these per-edge maps over all cube edges of
//! height `i`, and is stored as one sparse matrix per bidegree.

mod maps;

pub use maps::{
    alpha_nonloop, beta_restriction, connecting_map, connecting_map_by_edge_maps,
    functorial_beta, ChainMapData, DeletionContractionSes, GradedMap, Subgraph,
};

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use num_bigint::BigInt;

use crate::bipoly::BiPoly;
use crate::coeff::{Bidegree, CoefficientSystem};
use crate::error::{Error, Result};
use crate::graph::{EdgeSubset, Graph, SubgraphSummary, MAX_CUBE_EDGES};
use crate::matrix::SparseIntMatrix;

/// Default bound on the number of edges accepted by [`build_complex`].
pub const DEFAULT_EDGE_BOUND: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChainBasisElement {
    pub state: EdgeSubset,
    /// One `A`-basis index per component, in canonical component order.
    pub a_labels: Vec<usize>,
    /// One `B`-basis index per cycle factor, in creation order.
    pub b_labels: Vec<usize>,
}

impl ChainBasisElement {
    pub fn bidegree(&self, system: &CoefficientSystem) -> Bidegree {
        let a = self
            .a_labels
            .iter()
            .map(|&l| system.algebra.degrees[l])
            .fold(Bidegree::ZERO, |acc, d| acc + d);
        self.b_labels
            .iter()
            .map(|&l| system.module.degrees[l])
            .fold(a, |acc, d| acc + d)
    }

    /// Human-readable form such as `101:1⊗x|y`.
    pub fn describe(&self, system: &CoefficientSystem) -> String {
        let a: Vec<&str> = self
            .a_labels
            .iter()
            .map(|&l| system.algebra.basis[l].as_str())
            .collect();
        let b: Vec<&str> = self
            .b_labels
            .iter()
            .map(|&l| system.module.basis[l].as_str())
            .collect();
        let mut out = format!("{}:{}", self.state.cube_label(None), a.join("⊗"));
        if !b.is_empty() {
            out.push('|');
            out.push_str(&b.join("⊗"));
        }
        out
    }
}

#[derive(Clone, Debug)]
struct StateData {
    subset: EdgeSubset,
    summary: SubgraphSummary,
    /// Local (mixed-radix) index -> (bidegree, position in that block).
    slots: Vec<(Bidegree, usize)>,
}

#[derive(Clone, Debug, Default)]
struct Height {
    states: Vec<StateData>,
    index: HashMap<u64, usize>,
    blocks: BTreeMap<Bidegree, Vec<ChainBasisElement>>,
}

/// Mixed-radix layout of a state's basis: `a_len` digits in base `da`
/// followed by `b_len` digits in base `db`, most significant first.
#[derive(Clone, Copy, Debug)]
struct Layout {
    da: usize,
    db: usize,
    a_len: usize,
    b_len: usize,
}

impl Layout {
    fn size(&self) -> usize {
        self.da.pow(self.a_len as u32) * self.db.pow(self.b_len as u32)
    }

    fn decode(&self, mut index: usize) -> (Vec<usize>, Vec<usize>) {
        let mut b = vec![0; self.b_len];
        for slot in b.iter_mut().rev() {
            *slot = index % self.db;
            index /= self.db;
        }
        let mut a = vec![0; self.a_len];
        for slot in a.iter_mut().rev() {
            *slot = index % self.da;
            index /= self.da;
        }
        (a, b)
    }

    fn encode(&self, a: &[usize], b: &[usize]) -> usize {
        debug_assert_eq!((a.len(), b.len()), (self.a_len, self.b_len));
        let idx = a.iter().fold(0, |acc, &l| acc * self.da + l);
        b.iter().fold(idx, |acc, &l| acc * self.db + l)
    }
}

#[derive(Clone, Debug)]
pub struct ChainComplex {
    graph: Graph,
    system: CoefficientSystem,
    extra_b: usize,
    heights: Vec<Height>,
    /// `differentials[i][b]` maps block `(i, b)` to block `(i + 1, b)`.
    differentials: Vec<BTreeMap<Bidegree, SparseIntMatrix>>,
}

/// Image of a basis element under the unsigned per-edge map adding `e`.
pub(crate) fn edge_action(
    system: &CoefficientSystem,
    graph: &Graph,
    src: &SubgraphSummary,
    e: usize,
    a: &[usize],
    b: &[usize],
) -> Vec<(Vec<usize>, Vec<usize>, i64)> {
    let (u, v) = graph.edges()[e];
    let (cu, cv) = (src.component_of[u], src.component_of[v]);
    if cu == cv {
        system
            .module
            .b0
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c != 0)
            .map(|(k, &c)| {
                let mut nb = b.to_vec();
                nb.push(k);
                (a.to_vec(), nb, c)
            })
            .collect()
    } else {
        let (lo, hi) = (src.position_of(cu.min(cv)), src.position_of(cu.max(cv)));
        system
            .algebra
            .product(a[lo], a[hi])
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c != 0)
            .map(|(k, &c)| {
                let mut na = a.to_vec();
                na[lo] = k;
                na.remove(hi);
                (na, b.to_vec(), c)
            })
            .collect()
    }
}

/// Sign of a cube edge written as a word over `{0, 1, *}` with exactly one
/// `*`: `(-1)^(number of 1s before the *)`.
pub fn edge_sign(label: &str) -> Result<i32> {
    let bad = || Error::CubeLabel(label.to_string());
    if label.chars().filter(|&c| c == '*').count() != 1
        || label.chars().any(|c| !matches!(c, '0' | '1' | '*'))
    {
        return Err(bad());
    }
    let ones = label.chars().take_while(|&c| c != '*').filter(|&c| c == '1').count();
    Ok(if ones % 2 == 0 { 1 } else { -1 })
}

fn sign_of(s: &EdgeSubset, e: usize) -> i64 {
    if s.count_before(e) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The unsigned per-edge map `C^s(G) -> C^{s ∪ {e}}(G)` in the local
/// mixed-radix bases of the two states.
pub fn per_edge_map(
    graph: &Graph,
    system: &CoefficientSystem,
    s: &EdgeSubset,
    e: usize,
) -> Result<SparseIntMatrix> {
    graph.edge(e)?;
    if s.contains(e) {
        return Err(Error::EdgeIndex {
            index: e,
            len: graph.num_edges(),
        });
    }
    let src = graph.subgraph_summary(s)?;
    let tgt = graph.subgraph_summary(&s.with(e))?;
    let (da, db) = (system.algebra.dim(), system.module.dim());
    let src_layout = Layout { da, db, a_len: src.b0, b_len: src.b1 };
    let tgt_layout = Layout { da, db, a_len: tgt.b0, b_len: tgt.b1 };
    let mut m = SparseIntMatrix::zeros(tgt_layout.size(), src_layout.size());
    for col in 0..src_layout.size() {
        let (a, b) = src_layout.decode(col);
        for (na, nb, c) in edge_action(system, graph, &src, e, &a, &b) {
            m.add_to(tgt_layout.encode(&na, &nb), col, BigInt::from(c));
        }
    }
    Ok(m)
}

/// Build `C(G)` for graphs with at most [`DEFAULT_EDGE_BOUND`] edges.
pub fn build_complex(graph: &Graph, system: &CoefficientSystem) -> Result<ChainComplex> {
    build_complex_with_bound(graph, system, DEFAULT_EDGE_BOUND)
}

pub fn build_complex_with_bound(
    graph: &Graph,
    system: &CoefficientSystem,
    bound: usize,
) -> Result<ChainComplex> {
    check_bound(graph, bound)?;
    system.ensure_valid()?;
    ChainComplex::build(graph, system, 0)
}

/// Build `C(G) ⊗ B`: every state carries one extra `B` factor in the first
/// cycle position; merges act as in `C(G)` and new cycles append `b₀` after
/// all existing factors.
pub fn build_loop_tensor_complex(graph: &Graph, system: &CoefficientSystem) -> Result<ChainComplex> {
    check_bound(graph, DEFAULT_EDGE_BOUND)?;
    system.ensure_valid()?;
    ChainComplex::build(graph, system, 1)
}

fn check_bound(graph: &Graph, bound: usize) -> Result<()> {
    let bound = bound.min(MAX_CUBE_EDGES);
    if graph.num_edges() > bound {
        return Err(Error::TooManyEdges {
            edges: graph.num_edges(),
            bound,
        });
    }
    Ok(())
}

impl ChainComplex {
    fn layout(&self, summary: &SubgraphSummary) -> Layout {
        Layout {
            da: self.system.algebra.dim(),
            db: self.system.module.dim(),
            a_len: summary.b0,
            b_len: summary.b1 + self.extra_b,
        }
    }

    fn build(graph: &Graph, system: &CoefficientSystem, extra_b: usize) -> Result<Self> {
        let n = graph.num_edges();
        let mut cx = ChainComplex {
            graph: graph.clone(),
            system: system.clone(),
            extra_b,
            heights: Vec::with_capacity(n + 1),
            differentials: Vec::with_capacity(n),
        };
        for h in 0..=n {
            let mut height = Height::default();
            for subset in EdgeSubset::of_height(n, h) {
                let summary = graph.summary_unchecked(&subset);
                let layout = cx.layout(&summary);
                let mut slots = Vec::with_capacity(layout.size());
                for local in 0..layout.size() {
                    let (a_labels, b_labels) = layout.decode(local);
                    let elem = ChainBasisElement {
                        state: subset,
                        a_labels,
                        b_labels,
                    };
                    let deg = elem.bidegree(system);
                    let block = height.blocks.entry(deg).or_default();
                    slots.push((deg, block.len()));
                    block.push(elem);
                }
                height.index.insert(subset.bits(), height.states.len());
                height.states.push(StateData {
                    subset,
                    summary,
                    slots,
                });
            }
            cx.heights.push(height);
        }
        for h in 0..n {
            let d = cx.assemble_differential(h)?;
            cx.differentials.push(d);
        }
        Ok(cx)
    }

    fn assemble_differential(&self, h: usize) -> Result<BTreeMap<Bidegree, SparseIntMatrix>> {
        let src_height = &self.heights[h];
        let tgt_height = &self.heights[h + 1];
        let mut mats: BTreeMap<Bidegree, SparseIntMatrix> = src_height
            .blocks
            .iter()
            .map(|(&deg, block)| (deg, SparseIntMatrix::zeros(self.dim(h + 1, deg), block.len())))
            .collect();
        for state in &src_height.states {
            let src_layout = self.layout(&state.summary);
            for e in (0..self.graph.num_edges()).filter(|&e| !state.subset.contains(e)) {
                let target = &tgt_height.states[tgt_height.index[&state.subset.with(e).bits()]];
                let tgt_layout = self.layout(&target.summary);
                let sign = sign_of(&state.subset, e);
                for (local, &(deg, col)) in state.slots.iter().enumerate() {
                    let (a, b) = src_layout.decode(local);
                    for (na, nb, c) in edge_action(&self.system, &self.graph, &state.summary, e, &a, &b) {
                        let (tdeg, row) = target.slots[tgt_layout.encode(&na, &nb)];
                        if tdeg != deg {
                            return Err(Error::InvalidSystem(format!(
                                "per-edge map for edge {} sends degree {deg} to {tdeg}",
                                e + 1
                            )));
                        }
                        mats.get_mut(&deg)
                            .expect("block exists")
                            .add_to(row, col, BigInt::from(sign * c));
                    }
                }
            }
        }
        Ok(mats)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn system(&self) -> &CoefficientSystem {
        &self.system
    }

    /// Number of extra `B` factors carried by every state (1 for `C(G) ⊗ B`).
    pub fn extra_b_factors(&self) -> usize {
        self.extra_b
    }

    /// Highest cohomological degree, `|E(G)|`.
    pub fn top_degree(&self) -> usize {
        self.graph.num_edges()
    }

    pub fn bidegrees(&self, i: usize) -> impl Iterator<Item = Bidegree> + '_ {
        self.heights.get(i).into_iter().flat_map(|h| h.blocks.keys().copied())
    }

    pub fn all_bidegrees(&self) -> BTreeSet<Bidegree> {
        self.heights
            .iter()
            .flat_map(|h| h.blocks.keys().copied())
            .collect()
    }

    pub fn block(&self, i: usize, deg: Bidegree) -> &[ChainBasisElement] {
        self.heights
            .get(i)
            .and_then(|h| h.blocks.get(&deg))
            .map_or(&[], |v| v.as_slice())
    }

    pub fn dim(&self, i: usize, deg: Bidegree) -> usize {
        self.block(i, deg).len()
    }

    /// Total rank of `C^i`.
    pub fn total_dim(&self, i: usize) -> usize {
        self.heights
            .get(i)
            .map_or(0, |h| h.blocks.values().map(Vec::len).sum())
    }

    /// `d^i` restricted to bidegree `deg`, or `None` outside the complex.
    pub fn differential(&self, i: usize, deg: Bidegree) -> Option<&SparseIntMatrix> {
        self.differentials.get(i).and_then(|m| m.get(&deg))
    }

    /// `d^i` on bidegree `deg`, a zero matrix of the right shape where the
    /// complex has nothing.
    pub fn differential_or_zero(&self, i: usize, deg: Bidegree) -> SparseIntMatrix {
        self.differential(i, deg)
            .cloned()
            .unwrap_or_else(|| SparseIntMatrix::zeros(self.dim(i + 1, deg), self.dim(i, deg)))
    }

    pub fn locate(&self, elem: &ChainBasisElement) -> Option<(Bidegree, usize)> {
        let height = self.heights.get(elem.state.height())?;
        if elem.state.len() != self.graph.num_edges() {
            return None;
        }
        let state = &height.states[*height.index.get(&elem.state.bits())?];
        let layout = self.layout(&state.summary);
        if elem.a_labels.len() != layout.a_len
            || elem.b_labels.len() != layout.b_len
            || elem.a_labels.iter().any(|&l| l >= layout.da)
            || elem.b_labels.iter().any(|&l| l >= layout.db)
        {
            return None;
        }
        Some(state.slots[layout.encode(&elem.a_labels, &elem.b_labels)])
    }

    pub(crate) fn summary(&self, s: &EdgeSubset) -> &SubgraphSummary {
        let height = &self.heights[s.height()];
        &height.states[height.index[&s.bits()]].summary
    }

    /// `qdim C^i`.
    pub fn qdim(&self, i: usize) -> BiPoly {
        let mut out = BiPoly::zero();
        for deg in self.bidegrees(i) {
            out.add_term(deg.p as u32, deg.q as u32, BigInt::from(self.dim(i, deg)));
        }
        out
    }

    /// Differentials as `i p q : row col value` lines.
    pub fn dump_triplets(&self) -> String {
        let mut out = String::new();
        for (i, mats) in self.differentials.iter().enumerate() {
            for (deg, m) in mats {
                for (r, c, v) in m.entries() {
                    writeln!(out, "{i} {} {} : {r} {c} {v}", deg.p, deg.q).unwrap();
                }
            }
        }
        out
    }

    /// Check `d^{i+1} d^i = 0` on every bidegree block.
    pub fn verify_d_squared(&self) -> DSquaredReport {
        let mut failures = Vec::new();
        for i in 0..self.differentials.len().saturating_sub(1) {
            for (&deg, d0) in &self.differentials[i] {
                let d1 = self.differential_or_zero(i + 1, deg);
                let comp = d1.mul(d0);
                let witness = comp.entries().next().map(|(_, col, _)| col);
                if let Some(col) = witness {
                    failures.push(format!(
                        "d^{}d^{} != 0 in bidegree {deg}, witness {}",
                        i + 1,
                        i,
                        self.block(i, deg)[col].describe(&self.system)
                    ));
                }
            }
        }
        DSquaredReport { failures }
    }

    /// Recompute every per-edge image and confirm it has the bidegree of its
    /// source. Returns the violations found.
    pub fn verify_degree_preservation(&self) -> Vec<String> {
        let mut out = Vec::new();
        for height in &self.heights {
            for state in &height.states {
                let layout = self.layout(&state.summary);
                for e in (0..self.graph.num_edges()).filter(|&e| !state.subset.contains(e)) {
                    for local in 0..layout.size() {
                        let (a, b) = layout.decode(local);
                        let src = ChainBasisElement { state: state.subset, a_labels: a.clone(), b_labels: b.clone() };
                        for (na, nb, _) in edge_action(&self.system, &self.graph, &state.summary, e, &a, &b) {
                            let tgt = ChainBasisElement { state: state.subset.with(e), a_labels: na, b_labels: nb };
                            if tgt.bidegree(&self.system) != src.bidegree(&self.system) {
                                out.push(format!(
                                    "edge {}: {} -> {}",
                                    e + 1,
                                    src.describe(&self.system),
                                    tgt.describe(&self.system)
                                ));
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// For every state and pair of absent edges, the two unsigned composites
    /// around the square agree. Returns the failing squares.
    pub fn verify_squares_commute(&self) -> Vec<String> {
        let n = self.graph.num_edges();
        let mut out = Vec::new();
        for height in &self.heights {
            for state in &height.states {
                let s = state.subset;
                for k in (0..n).filter(|&k| !s.contains(k)) {
                    for j in (k + 1..n).filter(|&j| !s.contains(j)) {
                        let first = self.apply_edges(&s, &[k, j]);
                        let second = self.apply_edges(&s, &[j, k]);
                        if first != second {
                            out.push(format!("square at {} with edges {} and {}", s.cube_label(None), k + 1, j + 1));
                        }
                    }
                }
            }
        }
        out
    }

    /// Unsigned composite of per-edge maps starting at state `s`, as a map
    /// from local source index to a sorted list of (target element, coefficient).
    fn apply_edges(&self, s: &EdgeSubset, edges: &[usize]) -> Vec<BTreeMap<(Vec<usize>, Vec<usize>), i64>> {
        let layout = self.layout(self.summary(s));
        (0..layout.size())
            .map(|local| {
                let mut current: BTreeMap<(Vec<usize>, Vec<usize>), i64> = BTreeMap::new();
                current.insert(layout.decode(local), 1);
                let mut state = *s;
                for &e in edges {
                    let summary = self.summary(&state).clone();
                    let mut next = BTreeMap::new();
                    for ((a, b), c) in current {
                        for (na, nb, k) in edge_action(&self.system, &self.graph, &summary, e, &a, &b) {
                            *next.entry((na, nb)).or_insert(0) += c * k;
                        }
                    }
                    next.retain(|_, v| *v != 0);
                    current = next;
                    state = state.with(e);
                }
                current
            })
            .collect()
    }

    /// `Σ_i (-1)^i qdim C^i`.
    pub fn euler_characteristic(&self) -> BiPoly {
        let mut out = BiPoly::zero();
        for i in 0..self.heights.len() {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            for deg in self.bidegrees(i) {
                out.add_term(deg.p as u32, deg.q as u32, BigInt::from(sign * self.dim(i, deg) as i64));
            }
        }
        out
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DSquaredReport {
    pub failures: Vec<String>,
}

impl DSquaredReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[cfg(test)]
mod tests;
