//! Multigraphs with a fixed edge order, spanning-subgraph combinatorics and
//! the edge-list text format.
//!
//! Edges are stored as unordered pairs normalized to `(min, max)`; a pair
//! with equal endpoints is a loop, and repeated pairs are parallel edges.
//! The position of an edge in [`Graph::edges`] is its index in the cube
//! construction and drives every sign.

use std::fmt;

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::error::{Error, Result};

/// Hard cap on the number of edges of a graph fed to the cube construction.
pub const MAX_CUBE_EDGES: usize = 14;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Graph {
    num_vertices: usize,
    edges: Vec<(usize, usize)>,
}

/// How an edge sits in its graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeKind {
    Loop,
    Isthmus,
    Ordinary,
}

/// Length of the shortest cycle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Girth {
    Finite(usize),
    Infinite,
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Finite(n) => write!(f, "{n}"),
            Girth::Infinite => write!(f, "inf"),
        }
    }
}

/// A subset `s` of the edges, i.e. a vertex of the cube `{0,1}^E`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeSubset {
    bits: u64,
    len: usize,
}

impl EdgeSubset {
    pub fn empty(len: usize) -> Self {
        assert!(len <= 64, "edge subsets are limited to 64 edges");
        EdgeSubset { bits: 0, len }
    }

    pub fn full(len: usize) -> Self {
        let bits = if len == 64 { u64::MAX } else { (1u64 << len) - 1 };
        EdgeSubset { bits, len }
    }

    pub fn from_bits(bits: u64, len: usize) -> Self {
        assert!(len <= 64);
        assert!(len == 64 || bits >> len == 0, "bits beyond subset length");
        EdgeSubset { bits, len }
    }

    pub fn from_indices(indices: &[usize], len: usize) -> Self {
        let mut s = EdgeSubset::empty(len);
        for &i in indices {
            s = s.with(i);
        }
        s
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Number of member edges (the height of the cube vertex).
    pub fn height(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn contains(&self, e: usize) -> bool {
        e < self.len && self.bits >> e & 1 == 1
    }

    pub fn with(&self, e: usize) -> Self {
        assert!(e < self.len);
        EdgeSubset {
            bits: self.bits | 1 << e,
            len: self.len,
        }
    }

    pub fn without(&self, e: usize) -> Self {
        assert!(e < self.len);
        EdgeSubset {
            bits: self.bits & !(1 << e),
            len: self.len,
        }
    }

    /// Member edges strictly before position `e`.
    pub fn count_before(&self, e: usize) -> usize {
        (self.bits & ((1u64 << e) - 1)).count_ones() as usize
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&e| self.contains(e))
    }

    /// All subsets of `len` edges of the given height, ordered
    /// lexicographically on `(α_1, …, α_n)` with `α_1` the first edge.
    pub fn of_height(len: usize, height: usize) -> Vec<EdgeSubset> {
        assert!(len <= 30, "too many edges to enumerate the cube");
        let mut out: Vec<EdgeSubset> = (0u64..1 << len)
            .filter(|b| b.count_ones() as usize == height)
            .map(|bits| EdgeSubset { bits, len })
            .collect();
        out.sort_by_key(|s| s.lex_key());
        out
    }

    fn lex_key(&self) -> u64 {
        (0..self.len).fold(0u64, |acc, e| acc << 1 | (self.bits >> e & 1))
    }

    /// Cube label such as `10*`: `1` for members, `0` otherwise, with `*`
    /// at position `star`.
    pub fn cube_label(&self, star: Option<usize>) -> String {
        (0..self.len)
            .map(|e| {
                if Some(e) == star {
                    '*'
                } else if self.contains(e) {
                    '1'
                } else {
                    '0'
                }
            })
            .collect()
    }
}

/// Components and Betti numbers of a spanning subgraph `[G:s]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgraphSummary {
    /// Component id of each vertex; the id is the least vertex of the component.
    pub component_of: Vec<usize>,
    pub b0: usize,
    pub b1: usize,
}

impl SubgraphSummary {
    /// Canonical component ids in increasing order.
    pub fn component_ids(&self) -> Vec<usize> {
        self.component_of
            .iter()
            .enumerate()
            .filter(|&(v, &c)| v == c)
            .map(|(v, _)| v)
            .collect()
    }

    /// Position of the component with id `id` among [`Self::component_ids`].
    pub fn position_of(&self, id: usize) -> usize {
        self.component_of
            .iter()
            .enumerate()
            .take(id)
            .filter(|&(v, &c)| v == c)
            .count()
    }

    /// Rank `r(s) = |V| - b0(s)`.
    pub fn rank(&self) -> usize {
        self.component_of.len() - self.b0
    }
}

impl Graph {
    pub fn new(num_vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut normalized = Vec::with_capacity(edges.len());
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u >= num_vertices || v >= num_vertices {
                return Err(Error::Parse {
                    line: 0,
                    message: format!(
                        "edge {} has endpoint out of range ({u}, {v}) for {num_vertices} vertices",
                        i + 1
                    ),
                });
            }
            normalized.push((u.min(v), u.max(v)));
        }
        Ok(Graph {
            num_vertices,
            edges: normalized,
        })
    }

    pub fn edgeless(num_vertices: usize) -> Self {
        Graph {
            num_vertices,
            edges: Vec::new(),
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> Result<(usize, usize)> {
        self.edges.get(e).copied().ok_or(Error::EdgeIndex {
            index: e,
            len: self.edges.len(),
        })
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|&(a, b)| (a == v) as usize + (b == v) as usize)
            .sum()
    }

    /// Parse the edge-list format: `# comment`, `vertices N`, `edge U V`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut num_vertices: Option<usize> = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim_end_matches('\r').trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| Error::Parse {
                line: line_no,
                message,
            };
            let mut words = line.split_whitespace();
            match words.next() {
                Some("vertices") => {
                    if num_vertices.is_some() {
                        return Err(err("duplicate `vertices` header".into()));
                    }
                    let n = words
                        .next()
                        .ok_or_else(|| err("missing vertex count".into()))?
                        .parse::<usize>()
                        .map_err(|e| err(format!("bad vertex count: {e}")))?;
                    if words.next().is_some() {
                        return Err(err("trailing tokens".into()));
                    }
                    num_vertices = Some(n);
                }
                Some("edge") => {
                    let n = num_vertices
                        .ok_or_else(|| err("`edge` before `vertices` header".into()))?;
                    let mut endpoint = || -> Result<usize> {
                        let tok = words
                            .next()
                            .ok_or_else(|| err("edge needs two endpoints".into()))?;
                        let v = tok
                            .parse::<usize>()
                            .map_err(|e| err(format!("bad endpoint `{tok}`: {e}")))?;
                        if v >= n {
                            return Err(err(format!(
                                "endpoint {v} out of range (vertices {n})"
                            )));
                        }
                        Ok(v)
                    };
                    let u = endpoint()?;
                    let v = endpoint()?;
                    if words.next().is_some() {
                        return Err(err("trailing tokens".into()));
                    }
                    edges.push((u.min(v), u.max(v)));
                }
                Some(other) => return Err(err(format!("unknown directive `{other}`"))),
                None => unreachable!(),
            }
        }
        let num_vertices = num_vertices.ok_or(Error::Parse {
            line: text.lines().count().max(1),
            message: "missing `vertices` header".into(),
        })?;
        Ok(Graph {
            num_vertices,
            edges,
        })
    }

    /// Serialize back to the edge-list format.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("vertices {}\n", self.num_vertices);
        for &(u, v) in &self.edges {
            out.push_str(&format!("edge {u} {v}\n"));
        }
        out
    }

    pub fn subgraph_summary(&self, s: &EdgeSubset) -> Result<SubgraphSummary> {
        if s.len() != self.edges.len() {
            return Err(Error::SubsetLength {
                got: s.len(),
                expected: self.edges.len(),
            });
        }
        Ok(self.summary_unchecked(s))
    }

    pub(crate) fn summary_unchecked(&self, s: &EdgeSubset) -> SubgraphSummary {
        let n = self.num_vertices;
        let mut uf = UnionFind::<usize>::new(n);
        for e in s.iter() {
            let (u, v) = self.edges[e];
            uf.union(u, v);
        }
        let mut least = vec![usize::MAX; n];
        for v in 0..n {
            let r = uf.find(v);
            least[r] = least[r].min(v);
        }
        let component_of: Vec<usize> = (0..n).map(|v| least[uf.find(v)]).collect();
        let b0 = component_of
            .iter()
            .enumerate()
            .filter(|&(v, &c)| v == c)
            .count();
        let b1 = s.height() + b0 - n;
        SubgraphSummary {
            component_of,
            b0,
            b1,
        }
    }

    /// Number of connected components of the whole graph.
    pub fn num_components(&self) -> usize {
        self.summary_unchecked(&EdgeSubset::full(self.edges.len())).b0
    }

    pub fn classify_edge(&self, e: usize) -> Result<EdgeKind> {
        let (u, v) = self.edge(e)?;
        if u == v {
            return Ok(EdgeKind::Loop);
        }
        let all = EdgeSubset::full(self.edges.len());
        let before = self.summary_unchecked(&all).b0;
        let after = self.summary_unchecked(&all.without(e)).b0;
        Ok(if after > before {
            EdgeKind::Isthmus
        } else {
            EdgeKind::Ordinary
        })
    }

    /// An edge joining a degree-one vertex to another vertex.
    pub fn is_pendant(&self, e: usize) -> Result<bool> {
        let (u, v) = self.edge(e)?;
        Ok(u != v && (self.degree(u) == 1 || self.degree(v) == 1))
    }

    pub fn delete_edge(&self, e: usize) -> Result<Graph> {
        self.edge(e)?;
        let mut edges = self.edges.clone();
        edges.remove(e);
        Ok(Graph {
            num_vertices: self.num_vertices,
            edges,
        })
    }

    /// Contract edge `e`. Endpoints merge into the smaller index and the
    /// remaining vertices are renumbered preserving order. A loop is deleted.
    pub fn contract_edge(&self, e: usize) -> Result<Graph> {
        let (keep, gone) = self.edge(e)?;
        if keep == gone {
            return self.delete_edge(e);
        }
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != e)
            .map(|(_, &(a, b))| {
                let (a, b) = (contract_vertex(a, keep, gone), contract_vertex(b, keep, gone));
                (a.min(b), a.max(b))
            })
            .collect();
        Ok(Graph {
            num_vertices: self.num_vertices - 1,
            edges,
        })
    }

    /// Image of vertex `v` under contraction of edge `e` (identity for loops).
    pub fn contraction_vertex_map(&self, e: usize, v: usize) -> Result<usize> {
        let (keep, gone) = self.edge(e)?;
        if keep == gone {
            return Ok(v);
        }
        Ok(contract_vertex(v, keep, gone))
    }

    /// The same graph with edges listed in the order `order[0], order[1], …`.
    pub fn permute_edges(&self, order: &[usize]) -> Result<Graph> {
        let mut seen = vec![false; self.edges.len()];
        for &i in order {
            if i >= self.edges.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::EdgeIndex {
                    index: i,
                    len: self.edges.len(),
                });
            }
        }
        if order.len() != self.edges.len() {
            return Err(Error::SubsetLength {
                got: order.len(),
                expected: self.edges.len(),
            });
        }
        Ok(Graph {
            num_vertices: self.num_vertices,
            edges: order.iter().map(|&i| self.edges[i]).collect(),
        })
    }

    /// Disjoint union; the vertices of `other` follow those of `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.num_vertices;
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(u, v)| (u + shift, v + shift)));
        Graph {
            num_vertices: self.num_vertices + other.num_vertices,
            edges,
        }
    }

    pub fn girth(&self) -> Girth {
        if self.edges.iter().any(|&(u, v)| u == v) {
            return Girth::Finite(1);
        }
        let mut sorted = self.edges.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Girth::Finite(2);
        }
        let n = self.num_vertices;
        let mut adj = vec![Vec::new(); n];
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            adj[u].push((v, i));
            adj[v].push((u, i));
        }
        let mut best = usize::MAX;
        let mut dist = vec![usize::MAX; n];
        let mut via = vec![usize::MAX; n];
        for root in 0..n {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            dist[root] = 0;
            let mut queue = std::collections::VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                for &(w, edge) in &adj[u] {
                    if edge == via[u] {
                        continue;
                    }
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        via[w] = edge;
                        queue.push_back(w);
                    } else {
                        best = best.min(dist[u] + dist[w] + 1);
                    }
                }
            }
            via.iter_mut().for_each(|x| *x = usize::MAX);
        }
        if best == usize::MAX {
            Girth::Infinite
        } else {
            Girth::Finite(best)
        }
    }
}

fn contract_vertex(v: usize, keep: usize, gone: usize) -> usize {
    let v = if v == gone { keep } else { v };
    if v > gone {
        v - 1
    } else {
        v
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "V={} E=[", self.num_vertices)?;
        for (i, (u, v)) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "]")
    }
}

/// Built-in graph families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// Path with `n` edges.
    TreePath,
    /// Cycle with `n` edges; `n = 1` is a loop, `n = 2` a pair of parallel edges.
    Cycle,
    /// One vertex with `n` loops.
    Bouquet,
    /// Complete simple graph on `n` vertices.
    Complete,
    /// Two hubs joined by three internally disjoint paths, `n` edges in total.
    Theta,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::TreePath,
        Family::Cycle,
        Family::Bouquet,
        Family::Complete,
        Family::Theta,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Family::TreePath => "tree_path",
            Family::Cycle => "cycle",
            Family::Bouquet => "bouquet",
            Family::Complete => "complete",
            Family::Theta => "theta",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == name)
            .ok_or_else(|| Error::UnknownFamily(name.to_string()))
    }

    /// Inclusive range of admissible sizes.
    pub fn bounds(&self) -> (usize, usize) {
        match self {
            Family::TreePath => (0, 12),
            Family::Cycle => (1, 12),
            Family::Bouquet => (0, 12),
            Family::Complete => (1, 5),
            Family::Theta => (3, 12),
        }
    }

    /// Number of edges of the member of size `n`.
    pub fn edge_count(&self, n: usize) -> usize {
        match self {
            Family::Complete => n * n.saturating_sub(1) / 2,
            _ => n,
        }
    }
}

pub fn generate_family(family: Family, n: usize) -> Result<Graph> {
    let (lo, hi) = family.bounds();
    if n < lo || n > hi {
        return Err(Error::FamilySize {
            family: family.name().to_string(),
            size: n,
            bounds: format!("{lo}..={hi}"),
        });
    }
    let g = match family {
        Family::TreePath => Graph::new(n + 1, (0..n).map(|i| (i, i + 1)).collect()),
        Family::Cycle => Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)).collect()),
        Family::Bouquet => Graph::new(1, vec![(0, 0); n]),
        Family::Complete => {
            let edges = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .collect();
            Graph::new(n, edges)
        }
        Family::Theta => {
            let mut lengths: Vec<usize> = (0..3).map(|k| n / 3 + usize::from(k < n % 3)).collect();
            lengths.sort_unstable_by(|a, b| b.cmp(a));
            let mut next = 2;
            let mut edges = Vec::new();
            for len in lengths {
                let mut prev = 0;
                for _ in 1..len {
                    edges.push((prev, next));
                    prev = next;
                    next += 1;
                }
                edges.push((prev, 1));
            }
            Graph::new(next, edges)
        }
    }?;
    Ok(g)
}

pub fn generate_family_by_name(name: &str, n: usize) -> Result<Graph> {
    generate_family(Family::from_name(name)?, n)
}
