//! Maps between cube complexes: the deletion-contraction short exact
//! sequence, its connecting map, and restriction to subgraphs.

use std::collections::{BTreeMap, HashMap};
use std::ops::Deref;

use num_bigint::BigInt;
use num_traits::One;

use super::{build_complex, build_loop_tensor_complex, edge_action, ChainBasisElement, ChainComplex};
use crate::coeff::{Bidegree, CoefficientSystem};
use crate::error::{Error, Result};
use crate::graph::{EdgeKind, EdgeSubset, Graph};
use crate::matrix::SparseIntMatrix;

/// A degree-preserving map of bigraded groups that raises cohomological
/// degree by `shift`. `blocks[i][b]` sends source block `(i, b)` to target
/// block `(i + shift, b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap {
    pub shift: usize,
    pub blocks: Vec<BTreeMap<Bidegree, SparseIntMatrix>>,
}

impl GradedMap {
    pub fn block(&self, i: usize, deg: Bidegree) -> Option<&SparseIntMatrix> {
        self.blocks.get(i).and_then(|m| m.get(&deg))
    }

    pub fn block_or_zero(&self, i: usize, deg: Bidegree, src: &ChainComplex, tgt: &ChainComplex) -> SparseIntMatrix {
        self.block(i, deg)
            .cloned()
            .unwrap_or_else(|| SparseIntMatrix::zeros(tgt.dim(i + self.shift, deg), src.dim(i, deg)))
    }

    /// Build a map by sending every source basis element to a combination
    /// of target basis elements.
    pub fn from_basis_fn<F>(src: &ChainComplex, tgt: &ChainComplex, shift: usize, f: F) -> Result<Self>
    where
        F: Fn(&ChainBasisElement) -> Result<Vec<(ChainBasisElement, BigInt)>>,
    {
        let mut blocks = Vec::with_capacity(src.top_degree() + 1);
        for i in 0..=src.top_degree() {
            let mut level = BTreeMap::new();
            for deg in src.bidegrees(i) {
                let source = src.block(i, deg);
                let mut m = SparseIntMatrix::zeros(tgt.dim(i + shift, deg), source.len());
                for (col, elem) in source.iter().enumerate() {
                    for (image, c) in f(elem)? {
                        let (tdeg, row) = tgt.locate(&image).ok_or_else(|| {
                            Error::NotChainMap(format!("image of {} is not a basis element", elem.describe(src.system())))
                        })?;
                        if tdeg != deg {
                            return Err(Error::NotChainMap(format!(
                                "{} in degree {deg} maps to degree {tdeg}",
                                elem.describe(src.system())
                            )));
                        }
                        m.add_to(row, col, c);
                    }
                }
                level.insert(deg, m);
            }
            blocks.push(level);
        }
        Ok(GradedMap { shift, blocks })
    }

    /// First block where `d f` and `f d` differ, or `d f` and `-f d` when
    /// `anti` is set.
    fn commutation_failure(&self, src: &ChainComplex, tgt: &ChainComplex, anti: bool) -> Option<String> {
        for i in 0..=src.top_degree() {
            for deg in src.bidegrees(i) {
                let f_i = self.block_or_zero(i, deg, src, tgt);
                let f_next = self.block_or_zero(i + 1, deg, src, tgt);
                let lhs = tgt.differential_or_zero(i + self.shift, deg).mul(&f_i);
                let mut rhs = f_next.mul(&src.differential_or_zero(i, deg));
                if anti {
                    rhs = rhs.scale(&BigInt::from(-1));
                }
                if let Some((_, col, _)) = lhs.sub(&rhs).entries().next() {
                    return Some(format!(
                        "degree {i}, bidegree {deg}, basis element {}",
                        src.block(i, deg)[col].describe(src.system())
                    ));
                }
            }
        }
        None
    }

    /// `d f = f d` on every block.
    pub fn commutes(&self, src: &ChainComplex, tgt: &ChainComplex) -> bool {
        self.commutation_failure(src, tgt, false).is_none()
    }

    /// `d f = -f d` on every block.
    pub fn anticommutes(&self, src: &ChainComplex, tgt: &ChainComplex) -> bool {
        self.commutation_failure(src, tgt, true).is_none()
    }

    /// `self ∘ first` as blocks on the source of `first`.
    pub fn compose(&self, first: &GradedMap, src: &ChainComplex, mid: &ChainComplex, tgt: &ChainComplex) -> GradedMap {
        let blocks = (0..=src.top_degree())
            .map(|i| {
                src.bidegrees(i)
                    .map(|deg| {
                        let a = first.block_or_zero(i, deg, src, mid);
                        let b = self.block_or_zero(i + first.shift, deg, mid, tgt);
                        (deg, b.mul(&a))
                    })
                    .collect()
            })
            .collect();
        GradedMap {
            shift: self.shift + first.shift,
            blocks,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|l| l.values().all(SparseIntMatrix::is_zero))
    }
}

/// A [`GradedMap`] known to commute with both differentials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMapData(GradedMap);

impl ChainMapData {
    pub fn new(map: GradedMap, src: &ChainComplex, tgt: &ChainComplex) -> Result<Self> {
        match map.commutation_failure(src, tgt, false) {
            Some(w) => Err(Error::NotChainMap(w)),
            None => Ok(ChainMapData(map)),
        }
    }

    pub fn into_inner(self) -> GradedMap {
        self.0
    }
}

impl Deref for ChainMapData {
    type Target = GradedMap;

    fn deref(&self) -> &GradedMap {
        &self.0
    }
}

fn append_edge(s: &EdgeSubset, e: usize, len: usize) -> EdgeSubset {
    let mut idx: Vec<usize> = s.iter().collect();
    idx.push(e);
    EdgeSubset::from_indices(&idx, len)
}

fn unit() -> BigInt {
    BigInt::one()
}

/// `0 → C(G/e) → C(G) → C(G − e) → 0` (or `C(G − e) ⊗ B` on the left when
/// `e` is a loop), with `e` moved to the last position of `G`.
#[derive(Clone, Debug)]
pub struct DeletionContractionSes {
    /// Index of `e` in the original graph.
    pub edge: usize,
    pub kind: EdgeKind,
    /// `C(G)` with `e` last.
    pub whole: ChainComplex,
    /// `C(G − e)`.
    pub deleted: ChainComplex,
    /// `C(G/e)`, or `C(G − e) ⊗ B` when `e` is a loop.
    pub contracted: ChainComplex,
    /// `contracted → whole`, raising degree by one.
    pub alpha: ChainMapData,
    /// `whole → deleted`.
    pub beta: ChainMapData,
}

impl DeletionContractionSes {
    pub fn new(graph: &Graph, e: usize, system: &CoefficientSystem) -> Result<Self> {
        let kind = graph.classify_edge(e)?;
        let n = graph.num_edges();
        let order: Vec<usize> = (0..n).filter(|&k| k != e).chain([e]).collect();
        let g = graph.permute_edges(&order)?;
        let last = n - 1;
        let whole = build_complex(&g, system)?;
        let deleted = build_complex(&g.delete_edge(last)?, system)?;
        let (contracted, alpha) = if kind == EdgeKind::Loop {
            let contracted = build_loop_tensor_complex(&g.delete_edge(last)?, system)?;
            let alpha = GradedMap::from_basis_fn(&contracted, &whole, 1, |x| {
                Ok(vec![(
                    ChainBasisElement {
                        state: append_edge(&x.state, last, n),
                        a_labels: x.a_labels.clone(),
                        b_labels: x.b_labels.clone(),
                    },
                    unit(),
                )])
            })?;
            (contracted, alpha)
        } else {
            let contracted = build_complex(&g.contract_edge(last)?, system)?;
            let alpha = GradedMap::from_basis_fn(&contracted, &whole, 1, |x| {
                let state = append_edge(&x.state, last, n);
                let big = whole.summary(&state);
                let small = contracted.summary(&x.state);
                let a_labels = big
                    .component_ids()
                    .into_iter()
                    .map(|c| {
                        let image = g.contraction_vertex_map(last, c)?;
                        Ok(x.a_labels[small.position_of(small.component_of[image])])
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(vec![(
                    ChainBasisElement {
                        state,
                        a_labels,
                        b_labels: x.b_labels.clone(),
                    },
                    unit(),
                )])
            })?;
            (contracted, alpha)
        };
        let alpha = ChainMapData::new(alpha, &contracted, &whole)?;
        let beta = GradedMap::from_basis_fn(&whole, &deleted, 0, |x| {
            if x.state.contains(last) {
                return Ok(Vec::new());
            }
            Ok(vec![(
                ChainBasisElement {
                    state: EdgeSubset::from_indices(&x.state.iter().collect::<Vec<_>>(), last),
                    a_labels: x.a_labels.clone(),
                    b_labels: x.b_labels.clone(),
                },
                unit(),
            )])
        })?;
        let beta = ChainMapData::new(beta, &whole, &deleted)?;
        Ok(DeletionContractionSes {
            edge: e,
            kind,
            whole,
            deleted,
            contracted,
            alpha,
            beta,
        })
    }

    /// Inverse of `alpha` on its image: (degree, bidegree, row in `whole`)
    /// to the column in `contracted`.
    fn alpha_inverse(&self) -> HashMap<(usize, Bidegree, usize), usize> {
        let mut inv = HashMap::new();
        for (i, level) in self.alpha.blocks.iter().enumerate() {
            for (&deg, m) in level {
                for (r, c, v) in m.entries() {
                    debug_assert!(v.is_one());
                    inv.insert((i + 1, deg, r), c);
                }
            }
        }
        inv
    }

    fn last_edge(&self) -> usize {
        self.whole.top_degree() - 1
    }

    /// Section of `beta`: a state of `G − e` viewed as a state of `G`.
    fn lift(&self, x: &ChainBasisElement) -> ChainBasisElement {
        let n = self.whole.top_degree();
        ChainBasisElement {
            state: EdgeSubset::from_indices(&x.state.iter().collect::<Vec<_>>(), n),
            a_labels: x.a_labels.clone(),
            b_labels: x.b_labels.clone(),
        }
    }
}

/// `α : C^{i-1}(G/e) → C^i(G)` for a non-loop edge `e`; the complexes are
/// those of [`DeletionContractionSes`].
pub fn alpha_nonloop(graph: &Graph, e: usize, system: &CoefficientSystem) -> Result<ChainMapData> {
    if graph.classify_edge(e)? == EdgeKind::Loop {
        return Err(Error::LoopEdge(e + 1));
    }
    Ok(DeletionContractionSes::new(graph, e, system)?.alpha)
}

/// `β : C^i(G) → C^i(G − e)`, projection onto states without `e`.
pub fn beta_restriction(graph: &Graph, e: usize, system: &CoefficientSystem) -> Result<ChainMapData> {
    Ok(DeletionContractionSes::new(graph, e, system)?.beta)
}

/// Connecting map `C^i(G − e) → C^i(G/e)` by the zig-zag: lift through
/// `β`, apply the differential of `G`, and pull back through `α`.
pub fn connecting_map(ses: &DeletionContractionSes) -> Result<GradedMap> {
    let inv = ses.alpha_inverse();
    let last = ses.last_edge();
    let mut blocks = Vec::new();
    for i in 0..=ses.deleted.top_degree() {
        let mut level = BTreeMap::new();
        for deg in ses.deleted.bidegrees(i) {
            let src = ses.deleted.block(i, deg);
            let d = ses.whole.differential_or_zero(i, deg);
            let mut m = SparseIntMatrix::zeros(ses.contracted.dim(i, deg), src.len());
            for (col, x) in src.iter().enumerate() {
                let (_, lifted) = ses.whole.locate(&ses.lift(x)).expect("lift is a basis element");
                let targets = ses.whole.block(i + 1, deg);
                for (row, v) in d.column(lifted) {
                    if !targets[row].state.contains(last) {
                        continue;
                    }
                    let pre = inv.get(&(i + 1, deg, row)).ok_or_else(|| {
                        Error::NotChainMap(format!("{} is outside the image of alpha", targets[row].describe(ses.whole.system())))
                    })?;
                    m.add_to(*pre, col, v);
                }
            }
            level.insert(deg, m);
        }
        blocks.push(level);
    }
    Ok(GradedMap { shift: 0, blocks })
}

/// Connecting map built edge-wise: add `e` to each state, apply the
/// unsigned per-edge map, and read the result in `C(G/e)`. It agrees with
/// [`connecting_map`] up to the sign `(-1)^i`.
pub fn connecting_map_by_edge_maps(ses: &DeletionContractionSes) -> Result<GradedMap> {
    let inv = ses.alpha_inverse();
    let last = ses.last_edge();
    let whole = &ses.whole;
    GradedMap::from_basis_fn(&ses.deleted, &ses.contracted, 0, |x| {
        let lifted = ses.lift(x);
        let summary = whole.summary(&lifted.state);
        let i = lifted.state.height();
        let mut out = Vec::new();
        for (a, b, c) in edge_action(whole.system(), whole.graph(), summary, last, &lifted.a_labels, &lifted.b_labels) {
            let image = ChainBasisElement {
                state: lifted.state.with(last),
                a_labels: a,
                b_labels: b,
            };
            let (deg, row) = whole.locate(&image).expect("per-edge image is a basis element");
            let col = inv[&(i + 1, deg, row)];
            out.push((ses.contracted.block(i, deg)[col].clone(), BigInt::from(c)));
        }
        Ok(out)
    })
}

/// A subgraph of `G`: a vertex set and an edge set whose endpoints lie in it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgraph {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

impl Subgraph {
    pub fn new(graph: &Graph, mut vertices: Vec<usize>, mut edges: Vec<usize>) -> Result<Self> {
        vertices.sort_unstable();
        vertices.dedup();
        edges.sort_unstable();
        edges.dedup();
        if let Some(&v) = vertices.iter().find(|&&v| v >= graph.num_vertices()) {
            return Err(Error::NotSubgraph(format!("vertex {v} is not in the graph")));
        }
        for &e in &edges {
            let (u, v) = graph.edge(e)?;
            if vertices.binary_search(&u).is_err() || vertices.binary_search(&v).is_err() {
                return Err(Error::NotSubgraph(format!("edge {} has an endpoint outside the vertex set", e + 1)));
            }
        }
        Ok(Subgraph { vertices, edges })
    }

    pub fn whole(graph: &Graph) -> Self {
        Subgraph {
            vertices: (0..graph.num_vertices()).collect(),
            edges: (0..graph.num_edges()).collect(),
        }
    }

    /// The subgraph as a graph in its own right: vertices renumbered in
    /// increasing order, edges kept in their order in `G`.
    pub fn graph(&self, graph: &Graph) -> Graph {
        let pos = |v: usize| self.vertices.binary_search(&v).expect("validated subgraph");
        let edges = self
            .edges
            .iter()
            .map(|&e| {
                let (u, v) = graph.edges()[e];
                (pos(u), pos(v))
            })
            .collect();
        Graph::new(self.vertices.len(), edges).expect("validated subgraph")
    }

    /// `self` expressed inside `outer`, when `self ⊆ outer`.
    pub fn relative_to(&self, outer: &Subgraph) -> Result<Subgraph> {
        let find = |xs: &[usize], x: usize, what: &str| {
            xs.binary_search(&x)
                .map_err(|_| Error::NotSubgraph(format!("{what} {x} is missing from the larger subgraph")))
        };
        Ok(Subgraph {
            vertices: self
                .vertices
                .iter()
                .map(|&v| find(&outer.vertices, v, "vertex"))
                .collect::<Result<_>>()?,
            edges: self
                .edges
                .iter()
                .map(|&e| find(&outer.edges, e, "edge"))
                .collect::<Result<_>>()?,
        })
    }
}

/// `β : C(G) → C(K)` for a subgraph `K ⊆ G`. A state with an edge outside
/// `K` maps to zero; otherwise every component made of a single vertex
/// outside `K` must carry the unit and is dropped, and the remaining labels
/// pass through. `tgt` must be the complex of `K` as built by
/// [`Subgraph::graph`].
pub fn functorial_beta(src: &ChainComplex, k: &Subgraph, tgt: &ChainComplex) -> Result<ChainMapData> {
    let g = src.graph();
    let sub = Subgraph::new(g, k.vertices.clone(), k.edges.clone())?;
    if &sub.graph(g) != tgt.graph() {
        return Err(Error::NotSubgraph("target complex is not built on the subgraph".into()));
    }
    let unit = src
        .system()
        .algebra
        .unit_basis_index()
        .ok_or_else(|| Error::InvalidSystem("restriction needs the unit to be a basis element".into()))?;
    let edge_pos: HashMap<usize, usize> = sub.edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let map = GradedMap::from_basis_fn(src, tgt, 0, |x| {
        let Some(kept) = x.state.iter().map(|e| edge_pos.get(&e).copied()).collect::<Option<Vec<_>>>() else {
            return Ok(Vec::new());
        };
        let state = EdgeSubset::from_indices(&kept, sub.edges.len());
        let big = src.summary(&x.state);
        let small = tgt.summary(&state);
        let mut a_labels = vec![usize::MAX; small.b0];
        for (pos, c) in big.component_ids().into_iter().enumerate() {
            match sub.vertices.binary_search(&c) {
                Ok(kc) => a_labels[small.position_of(small.component_of[kc])] = x.a_labels[pos],
                Err(_) if x.a_labels[pos] == unit => {}
                Err(_) => return Ok(Vec::new()),
            }
        }
        Ok(vec![(
            ChainBasisElement {
                state,
                a_labels,
                b_labels: x.b_labels.clone(),
            },
            BigInt::one(),
        )])
    })?;
    ChainMapData::new(map, src, tgt)
}
