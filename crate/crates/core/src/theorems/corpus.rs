//! Graph collections the checks are run over.

use std::collections::BTreeSet;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{generate_family, Family, Graph};

pub const CORPUS_SEED: u64 = 0x7477_7465;
pub const RANDOM_GRAPHS: usize = 50;
pub const RANDOM_MAX_VERTICES: usize = 5;
pub const RANDOM_MAX_EDGES: usize = 6;
pub const FAMILY_MAX_EDGES: usize = 8;

/// Least sorted edge list over all relabellings of the vertices.
fn canonical_form(n: usize, edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
    (0..n)
        .permutations(n)
        .map(|perm| {
            let mut e: Vec<(usize, usize)> = edges
                .iter()
                .map(|&(u, v)| {
                    let (a, b) = (perm[u], perm[v]);
                    (a.min(b), a.max(b))
                })
                .collect();
            e.sort_unstable();
            e
        })
        .min()
        .unwrap_or_default()
}

/// Every multigraph with `1..=max_vertices` vertices and at most
/// `max_edges` edges, one per isomorphism class, in canonical edge order.
pub fn enumerated_corpus(max_vertices: usize, max_edges: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    for n in 1..=max_vertices {
        let slots: Vec<(usize, usize)> = (0..n).flat_map(|u| (u..n).map(move |v| (u, v))).collect();
        let mut seen = BTreeSet::new();
        for k in 0..=max_edges {
            for multiset in slots.iter().copied().combinations_with_replacement(k) {
                let canon = canonical_form(n, &multiset);
                if seen.insert(canon.clone()) {
                    out.push(Graph::new(n, canon).expect("slots are in range"));
                }
            }
        }
    }
    out
}

/// Every family instance with at most `max_edges` edges.
pub fn family_corpus(max_edges: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    for family in Family::ALL {
        let (lo, hi) = family.bounds();
        for n in lo..=hi {
            if family.edge_count(n) <= max_edges {
                out.push(generate_family(family, n).expect("within bounds"));
            }
        }
    }
    out
}

/// `count` random multigraphs with `1..=max_vertices` vertices and
/// `0..=max_edges` edges, reproducible from `seed`.
pub fn random_corpus(count: usize, seed: u64, max_vertices: usize, max_edges: usize) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=max_vertices);
            let m = rng.gen_range(0..=max_edges);
            let edges = (0..m).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect();
            Graph::new(n, edges).expect("endpoints are in range")
        })
        .collect()
}

/// Family instances with at most [`FAMILY_MAX_EDGES`] edges followed by
/// [`RANDOM_GRAPHS`] random multigraphs from `seed`.
pub fn standard_corpus(seed: u64) -> Vec<Graph> {
    let mut out = family_corpus(FAMILY_MAX_EDGES);
    out.extend(random_corpus(RANDOM_GRAPHS, seed, RANDOM_MAX_VERTICES, RANDOM_MAX_EDGES));
    out
}
