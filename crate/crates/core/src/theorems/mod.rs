//! Mechanical checks of the structural theorems on concrete graphs.
//!
//! Every check returns a [`CheckReport`]. Violated preconditions (a loop
//! handed to a non-loop check, a non-pendant edge, non-nested subgraphs) are
//! errors; anything that goes wrong while checking is a failing report with
//! a witness.

pub mod corpus;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bipoly::{tutte_hat, BiPoly};
use crate::coeff::{Bidegree, CoefficientSystem};
use crate::complex::{
    build_complex, connecting_map, connecting_map_by_edge_maps, functorial_beta, ChainComplex,
    DeletionContractionSes, GradedMap, Subgraph,
};
use crate::error::{Error, Result};
use crate::graph::{generate_family, EdgeKind, Family, Girth, Graph};
use crate::homology::{homology, rational_ranks_of_map, smith_normal_form, BigradedHomology};
use crate::matrix::SparseIntMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub graph: String,
    pub verdict: Verdict,
    /// Present exactly when the check failed.
    pub witness: Option<String>,
    /// Extra information for human readers; not part of the JSON form.
    #[serde(skip)]
    pub detail: Option<String>,
}

impl CheckReport {
    pub fn pass(check: &str, graph: impl fmt::Display) -> Self {
        CheckReport {
            check: check.into(),
            graph: graph.to_string(),
            verdict: Verdict::Pass,
            witness: None,
            detail: None,
        }
    }

    pub fn fail(check: &str, graph: impl fmt::Display, witness: impl Into<String>) -> Self {
        CheckReport {
            check: check.into(),
            graph: graph.to_string(),
            verdict: Verdict::Fail,
            witness: Some(witness.into()),
            detail: None,
        }
    }

    fn from_witness(check: &str, graph: impl fmt::Display, witness: Option<String>) -> Self {
        match witness {
            None => Self::pass(check, graph),
            Some(w) => Self::fail(check, graph, w),
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "pass" } else { "FAIL" };
        write!(f, "{verdict:4} {:<22} {}", self.check, self.graph)?;
        if let Some(w) = &self.witness {
            write!(f, "\n     witness: {w}")?;
        }
        if let Some(d) = &self.detail {
            write!(f, "\n     {d}")?;
        }
        Ok(())
    }
}

/// Run `body`, turning an error into a failing report.
fn guarded(check: &str, graph: &Graph, body: impl FnOnce() -> Result<CheckReport>) -> CheckReport {
    body().unwrap_or_else(|e| CheckReport::fail(check, graph, e.to_string()))
}

fn describe_group(h: &BigradedHomology, i: usize, d: Bidegree) -> String {
    let g = h.group(i, d);
    let t: Vec<String> = g.torsion.iter().map(ToString::to_string).collect();
    format!("free {} torsion [{}]", g.free, t.join(","))
}

/// First `(i, p, q)` where the two homologies differ.
pub fn homology_difference(a: &BigradedHomology, b: &BigradedHomology) -> Option<String> {
    let keys: BTreeSet<(usize, Bidegree)> = a.iter().chain(b.iter()).map(|(i, d, _)| (i, d)).collect();
    keys.into_iter()
        .find(|&(i, d)| a.group(i, d) != b.group(i, d))
        .map(|(i, d)| format!("H^{i} at {d}: {} vs {}", describe_group(a, i, d), describe_group(b, i, d)))
}

/// `T̂(G; qdim A − 1, qdim B − 1)`.
pub fn expected_euler(graph: &Graph, system: &CoefficientSystem) -> BiPoly {
    let x = system.algebra.qdim() - BiPoly::one();
    let y = system.module.qdim() - BiPoly::one();
    tutte_hat(graph).substitute(&x, &y)
}

/// Graded Euler characteristic of `C(G)`, from chain groups and from
/// homology, against the substituted `T̂`.
pub fn check_euler(graph: &Graph, system: &CoefficientSystem) -> CheckReport {
    guarded("euler", graph, || {
        let c = build_complex(graph, system)?;
        let chain = c.euler_characteristic();
        let expected = expected_euler(graph, system);
        if chain != expected {
            return Ok(CheckReport::fail("euler", graph, format!("chain form {chain} but expected {expected}")));
        }
        let from_h = homology(&c)?.graded_euler();
        if from_h != chain {
            return Ok(CheckReport::fail("euler", graph, format!("homology form {from_h} but chain form {chain}")));
        }
        Ok(CheckReport::pass("euler", graph).with_detail(format!("chi = {chain}")))
    })
}

/// `d² = 0`, degree preservation of every per-edge map, and commuting
/// unsigned squares.
pub fn check_d_squared(graph: &Graph, system: &CoefficientSystem) -> CheckReport {
    guarded("d2", graph, || {
        let c = build_complex(graph, system)?;
        let witness = c
            .verify_d_squared()
            .failures
            .into_iter()
            .chain(c.verify_degree_preservation())
            .chain(c.verify_squares_commute())
            .next();
        Ok(CheckReport::from_witness("d2", graph, witness))
    })
}

fn compare_orders<I>(graph: &Graph, system: &CoefficientSystem, orders: I) -> Result<Option<String>>
where
    I: IntoIterator<Item = Vec<usize>>,
{
    let base = homology(&build_complex(graph, system)?)?;
    for order in orders {
        let h = homology(&build_complex(&graph.permute_edges(&order)?, system)?)?;
        if let Some(w) = homology_difference(&base, &h) {
            let order: Vec<String> = order.iter().map(|e| (e + 1).to_string()).collect();
            return Ok(Some(format!("edge order {}: {w}", order.join(","))));
        }
    }
    Ok(None)
}

/// Homology is unchanged under `trials` random edge orders drawn from `seed`.
pub fn check_reorder(graph: &Graph, system: &CoefficientSystem, trials: usize, seed: u64) -> CheckReport {
    guarded("reorder", graph, || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let orders: Vec<Vec<usize>> = (0..trials)
            .map(|_| {
                let mut order: Vec<usize> = (0..graph.num_edges()).collect();
                order.shuffle(&mut rng);
                order
            })
            .collect();
        let witness = compare_orders(graph, system, orders)?;
        Ok(CheckReport::from_witness("reorder", graph, witness).with_detail(format!("{trials} orders")))
    })
}

/// Homology is unchanged under every edge order.
pub fn check_reorder_exhaustive(graph: &Graph, system: &CoefficientSystem) -> CheckReport {
    guarded("reorder", graph, || {
        let n = graph.num_edges();
        let witness = compare_orders(graph, system, (0..n).permutations(n))?;
        Ok(CheckReport::from_witness("reorder", graph, witness).with_detail("all orders"))
    })
}

fn ses_witness(ses: &DeletionContractionSes) -> Option<String> {
    let n = ses.whole.top_degree();
    for i in 0..=n {
        let mut degs: BTreeSet<Bidegree> = ses.whole.bidegrees(i).collect();
        degs.extend(ses.deleted.bidegrees(i));
        if i > 0 {
            degs.extend(ses.contracted.bidegrees(i - 1));
        }
        for deg in degs {
            let alpha = match i {
                0 => SparseIntMatrix::zeros(ses.whole.dim(0, deg), 0),
                _ => ses.alpha.block_or_zero(i - 1, deg, &ses.contracted, &ses.whole),
            };
            let beta = ses.beta.block_or_zero(i, deg, &ses.whole, &ses.deleted);
            let (sa, sb) = (smith_normal_form(&alpha), smith_normal_form(&beta));
            let at = format!("degree {i}, bidegree {deg}");
            if !sa.is_unimodular() || sa.rank() != alpha.ncols() {
                return Some(format!("{at}: alpha is not a split injection"));
            }
            if !sb.is_unimodular() || sb.rank() != beta.nrows() {
                return Some(format!("{at}: beta is not a split surjection"));
            }
            if sa.rank() + sb.rank() != ses.whole.dim(i, deg) {
                return Some(format!(
                    "{at}: rank alpha {} + rank beta {} != {}",
                    sa.rank(),
                    sb.rank(),
                    ses.whole.dim(i, deg)
                ));
            }
            if !beta.mul(&alpha).is_zero() {
                return Some(format!("{at}: beta alpha != 0"));
            }
        }
    }
    None
}

fn ses_check(name: &str, graph: &Graph, e: usize, system: &CoefficientSystem) -> CheckReport {
    guarded(name, graph, || {
        let ses = DeletionContractionSes::new(graph, e, system)?;
        Ok(CheckReport::from_witness(name, graph, ses_witness(&ses).map(|w| format!("edge {}: {w}", e + 1))))
    })
}

/// Integral exactness of `0 → C(G/e) → C(G) → C(G − e) → 0` at chain level.
pub fn check_ses_nonloop(graph: &Graph, e: usize, system: &CoefficientSystem) -> Result<CheckReport> {
    if graph.classify_edge(e)? == EdgeKind::Loop {
        return Err(Error::LoopEdge(e + 1));
    }
    Ok(ses_check("ses", graph, e, system))
}

/// Integral exactness of `0 → C(G/e) ⊗ B → C(G) → C(G − e) → 0` for a loop.
pub fn check_ses_loop(graph: &Graph, e: usize, system: &CoefficientSystem) -> Result<CheckReport> {
    if graph.classify_edge(e)? != EdgeKind::Loop {
        return Err(Error::NotLoop(e + 1));
    }
    Ok(ses_check("ses-loop", graph, e, system))
}

/// Whichever of the two short exact sequences applies to `e`.
pub fn check_ses(graph: &Graph, e: usize, system: &CoefficientSystem) -> Result<CheckReport> {
    match graph.classify_edge(e)? {
        EdgeKind::Loop => check_ses_loop(graph, e, system),
        _ => check_ses_nonloop(graph, e, system),
    }
}

/// Ranks over the rationals of the maps in the long exact sequence.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LesRanks {
    /// `α* : H^i(G/e) → H^{i+1}(G)`, keyed by `i`.
    pub alpha: BTreeMap<(usize, Bidegree), usize>,
    /// `β* : H^i(G) → H^i(G − e)`.
    pub beta: BTreeMap<(usize, Bidegree), usize>,
    /// `γ* : H^i(G − e) → H^i(G/e)`.
    pub gamma: BTreeMap<(usize, Bidegree), usize>,
}

impl LesRanks {
    /// Total rank of `γ*` in degree `i`.
    pub fn gamma_rank(&self, i: usize) -> usize {
        self.gamma.iter().filter(|(&(j, _), _)| j == i).map(|(_, r)| r).sum()
    }
}

fn sign_twisted(a: &GradedMap, b: &GradedMap) -> bool {
    a.blocks.iter().enumerate().all(|(i, level)| {
        let sign = BigInt::from(if i % 2 == 0 { 1 } else { -1 });
        level.iter().all(|(d, m)| b.block(i, *d).is_some_and(|other| *m == other.scale(&sign)))
    })
}

fn rank_at(m: &BTreeMap<(usize, Bidegree), usize>, i: usize, d: Bidegree) -> usize {
    m.get(&(i, d)).copied().unwrap_or(0)
}

/// The long exact sequence of `e`: ranks of `α*`, `β*`, `γ*`, with `γ*`
/// built from per-edge maps, and the first failure of exactness if any.
pub fn long_exact_sequence(graph: &Graph, e: usize, system: &CoefficientSystem) -> Result<(LesRanks, Option<String>)> {
    let ses = DeletionContractionSes::new(graph, e, system)?;
    let (w, del, con) = (&ses.whole, &ses.deleted, &ses.contracted);
    let gamma = connecting_map_by_edge_maps(&ses)?;
    let zigzag = connecting_map(&ses)?;
    let ranks = LesRanks {
        alpha: rational_ranks_of_map(&ses.alpha, con, w)?,
        beta: rational_ranks_of_map(&ses.beta, w, del)?,
        gamma: rational_ranks_of_map(&gamma, del, con)?,
    };
    if !sign_twisted(&zigzag, &gamma) {
        return Ok((ranks, Some("zig-zag and per-edge connecting maps differ beyond (-1)^i".into())));
    }
    if !gamma.commutes(del, con) || !zigzag.anticommutes(del, con) {
        return Ok((ranks, Some("connecting map is not compatible with the differentials".into())));
    }
    let composites = [
        ("gamma beta", gamma.compose(&ses.beta, w, del, con), w, con),
        ("alpha gamma", ses.alpha.compose(&gamma, del, con, w), del, w),
    ];
    for (name, map, src, tgt) in &composites {
        if let Some(((i, d), _)) = rational_ranks_of_map(map, src, tgt)?.into_iter().find(|&(_, r)| r != 0) {
            return Ok((ranks, Some(format!("{name} is nonzero on H^{i} at {d}"))));
        }
    }
    let (hw, hd, hc) = (homology(w)?, homology(del)?, homology(con)?);
    for i in 0..=w.top_degree() {
        let degs: BTreeSet<Bidegree> = [w, del, con].iter().flat_map(|c| c.bidegrees(i)).collect();
        for d in degs {
            let a_in = if i == 0 { 0 } else { rank_at(&ranks.alpha, i - 1, d) };
            let (b, g, a_out) = (rank_at(&ranks.beta, i, d), rank_at(&ranks.gamma, i, d), rank_at(&ranks.alpha, i, d));
            let nodes = [
                ("H(G)", a_in + b, hw.free_rank(i, d)),
                ("H(G-e)", b + g, hd.free_rank(i, d)),
                ("H(G/e)", g + a_out, hc.free_rank(i, d)),
            ];
            if let Some((node, sum, dim)) = nodes.into_iter().find(|&(_, s, dim)| s != dim) {
                return Ok((ranks, Some(format!("not exact at {node} degree {i}, bidegree {d}: ranks sum {sum}, dimension {dim}"))));
            }
        }
    }
    Ok((ranks, None))
}

fn les_check(graph: &Graph, e: usize, system: &CoefficientSystem) -> CheckReport {
    guarded("les", graph, || {
        let (ranks, witness) = long_exact_sequence(graph, e, system)?;
        let gamma: Vec<String> = (0..graph.num_edges())
            .filter(|&i| ranks.gamma_rank(i) > 0)
            .map(|i| format!("i={i}: {}", ranks.gamma_rank(i)))
            .collect();
        let detail = format!(
            "edge {}: gamma* rank {}",
            e + 1,
            if gamma.is_empty() { "0 everywhere".into() } else { gamma.join(", ") }
        );
        Ok(CheckReport::from_witness("les", graph, witness.map(|w| format!("edge {}: {w}", e + 1))).with_detail(detail))
    })
}

/// Rational exactness of the long exact sequence of a non-loop edge.
pub fn check_les_nonloop(graph: &Graph, e: usize, system: &CoefficientSystem) -> Result<CheckReport> {
    if graph.classify_edge(e)? == EdgeKind::Loop {
        return Err(Error::LoopEdge(e + 1));
    }
    Ok(les_check(graph, e, system))
}

/// Rational exactness of the long exact sequence of any edge, loops
/// included.
pub fn check_les(graph: &Graph, e: usize, system: &CoefficientSystem) -> Result<CheckReport> {
    graph.edge(e)?;
    Ok(les_check(graph, e, system))
}

/// `H(G) ≅ H(G/e)` shifted by `(1, 0)` for a pendant edge `e`.
pub fn check_pendant(graph: &Graph, e: usize, system: &CoefficientSystem) -> Result<CheckReport> {
    if !graph.is_pendant(e)? {
        return Err(Error::NotPendant(e + 1));
    }
    Ok(guarded("pendant", graph, || {
        let h = homology(&build_complex(graph, system)?)?;
        let small = homology(&build_complex(&graph.contract_edge(e)?, system)?)?;
        let witness = homology_difference(&h, &small.shifted(Bidegree::new(1, 0)));
        Ok(CheckReport::from_witness("pendant", graph, witness.map(|w| format!("edge {}: {w}", e + 1))))
    }))
}

/// The path with `n` edges has `H⁰ = Z(n,0) ⊕ Z(n+1,0)` and nothing else.
pub fn check_tree(n: usize) -> CheckReport {
    let path = match generate_family(Family::TreePath, n) {
        Ok(g) => g,
        Err(e) => return CheckReport::fail("tree", format!("path n={n}"), e.to_string()),
    };
    guarded("tree", &path, || {
        let h = homology(&build_complex(&path, &CoefficientSystem::default_system())?)?;
        let one = |p: usize| ((0, Bidegree::new(p as i32, 0)), crate::homology::HomologyGroup { free: 1, torsion: vec![] });
        let want = BigradedHomology::from_entries([one(n), one(n + 1)]);
        Ok(CheckReport::from_witness("tree", &path, homology_difference(&h, &want)))
    })
}

/// Tutte and chromatic homology agree in degrees below `girth − 1`.
pub fn check_chromatic_overlap(graph: &Graph) -> CheckReport {
    guarded("chromatic", graph, || {
        let bound = match graph.girth() {
            Girth::Finite(l) => l.saturating_sub(1),
            Girth::Infinite => graph.num_edges() + 1,
        };
        let tutte = homology(&build_complex(graph, &CoefficientSystem::default_system())?)?.below(bound);
        let chrom = homology(&build_complex(graph, &CoefficientSystem::chromatic_system())?)?.below(bound);
        Ok(CheckReport::from_witness("chromatic", graph, homology_difference(&tutte, &chrom))
            .with_detail(format!("degrees below {bound}")))
    })
}

/// Restrictions `G → K → L` are chain maps and compose to `G → L`, at chain
/// level and on rational homology.
pub fn check_functorial(graph: &Graph, k: &Subgraph, l: &Subgraph, system: &CoefficientSystem) -> Result<CheckReport> {
    let k = Subgraph::new(graph, k.vertices.clone(), k.edges.clone())?;
    let l = Subgraph::new(graph, l.vertices.clone(), l.edges.clone())?;
    let l_in_k = l.relative_to(&k)?;
    Ok(guarded("functorial", graph, || {
        let kg = k.graph(graph);
        let cg = build_complex(graph, system)?;
        let ck = build_complex(&kg, system)?;
        let cl = build_complex(&l.graph(graph), system)?;
        let gk = functorial_beta(&cg, &k, &ck)?;
        let kl = functorial_beta(&ck, &l_in_k, &cl)?;
        let gl = functorial_beta(&cg, &l, &cl)?;
        let composite = kl.compose(&gk, &cg, &ck, &cl);
        if composite != *gl {
            return Ok(CheckReport::fail("functorial", graph, "chain-level composite differs from the direct restriction"));
        }
        let difference = difference(&composite, &gl, &cg, &cl);
        let witness = rational_ranks_of_map(&difference, &cg, &cl)?
            .into_iter()
            .find(|&(_, r)| r != 0)
            .map(|((i, d), _)| format!("induced maps differ on H^{i} at {d}"));
        Ok(CheckReport::from_witness("functorial", graph, witness))
    }))
}

fn difference(a: &GradedMap, b: &GradedMap, src: &ChainComplex, tgt: &ChainComplex) -> GradedMap {
    GradedMap {
        shift: a.shift,
        blocks: (0..=src.top_degree())
            .map(|i| {
                src.bidegrees(i)
                    .map(|d| (d, a.block_or_zero(i, d, src, tgt).sub(&b.block_or_zero(i, d, src, tgt))))
                    .collect()
            })
            .collect(),
    }
}

/// A nested pair `L ⊆ K ⊆ G`: `K` drops the last edge, `L` drops the last
/// two edges and every vertex other than 0 that no remaining edge touches.
pub fn default_nested_subgraphs(graph: &Graph) -> (Subgraph, Subgraph) {
    let n = graph.num_edges();
    let k = Subgraph {
        vertices: (0..graph.num_vertices()).collect(),
        edges: (0..n.saturating_sub(1)).collect(),
    };
    let l_edges: Vec<usize> = (0..n.saturating_sub(2)).collect();
    let mut l_vertices: BTreeSet<usize> = l_edges
        .iter()
        .flat_map(|&e| {
            let (u, v) = graph.edges()[e];
            [u, v]
        })
        .collect();
    if graph.num_vertices() > 0 {
        l_vertices.insert(0);
    }
    (
        k,
        Subgraph {
            vertices: l_vertices.into_iter().collect(),
            edges: l_edges,
        },
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckKind {
    Euler,
    DSquared,
    Reorder,
    Ses,
    Les,
    Pendant,
    Chromatic,
    Functorial,
}

impl CheckKind {
    pub const ALL: [CheckKind; 8] = [
        CheckKind::Euler,
        CheckKind::DSquared,
        CheckKind::Reorder,
        CheckKind::Ses,
        CheckKind::Les,
        CheckKind::Pendant,
        CheckKind::Chromatic,
        CheckKind::Functorial,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            CheckKind::Euler => "euler",
            CheckKind::DSquared => "d2",
            CheckKind::Reorder => "reorder",
            CheckKind::Ses => "ses",
            CheckKind::Les => "les",
            CheckKind::Pendant => "pendant",
            CheckKind::Chromatic => "chromatic",
            CheckKind::Functorial => "functorial",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == name)
            .ok_or_else(|| Error::UnknownCheck(name.to_string()))
    }

    /// Comma-separated names, as on the command line.
    pub fn parse_list(csv: &str) -> Result<Vec<Self>> {
        csv.split(',').map(str::trim).filter(|s| !s.is_empty()).map(Self::from_name).collect()
    }
}

/// Number of random edge orders tried by the reorder check in batch runs.
pub const REORDER_TRIALS: usize = 5;

/// Every requested check on one graph. Edge-wise checks run over all
/// applicable edges; checks tied to a fixed system (chromatic overlap) ignore
/// `system`.
pub fn run_checks(graph: &Graph, kinds: &[CheckKind], system: &CoefficientSystem, seed: u64) -> Vec<CheckReport> {
    let mut out = Vec::new();
    let edges = 0..graph.num_edges();
    for kind in kinds {
        match kind {
            CheckKind::Euler => out.push(check_euler(graph, system)),
            CheckKind::DSquared => out.push(check_d_squared(graph, system)),
            CheckKind::Reorder => out.push(check_reorder(graph, system, REORDER_TRIALS, seed)),
            CheckKind::Ses => out.extend(edges.clone().filter_map(|e| check_ses(graph, e, system).ok())),
            CheckKind::Les => out.extend(edges.clone().filter_map(|e| check_les(graph, e, system).ok())),
            CheckKind::Pendant => out.extend(
                edges
                    .clone()
                    .filter(|&e| graph.is_pendant(e).unwrap_or(false))
                    .filter_map(|e| check_pendant(graph, e, system).ok()),
            ),
            CheckKind::Chromatic => out.push(check_chromatic_overlap(graph)),
            CheckKind::Functorial => {
                let (k, l) = default_nested_subgraphs(graph);
                out.push(
                    check_functorial(graph, &k, &l, system)
                        .unwrap_or_else(|e| CheckReport::fail("functorial", graph, e.to_string())),
                );
            }
        }
    }
    out
}

/// [`run_checks`] over many graphs in parallel; reports keep corpus order.
pub fn run_corpus(graphs: &[Graph], kinds: &[CheckKind], system: &CoefficientSystem, seed: u64) -> Vec<CheckReport> {
    graphs
        .par_iter()
        .map(|g| run_checks(g, kinds, system, seed))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}
