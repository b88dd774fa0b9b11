//! Acceptance gate: one line per criterion, nonzero exit if any fails.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use tutte_core::complex::{build_complex, ChainBasisElement, DeletionContractionSes, Subgraph};
use tutte_core::graph::{Girth, Graph};
use tutte_core::homology::{homology, BigradedHomology, HomologyGroup};
use tutte_core::theorems::corpus::{enumerated_corpus, family_corpus, standard_corpus, CORPUS_SEED};
use tutte_core::theorems::{
    check_chromatic_overlap, check_d_squared, check_euler, check_functorial, check_les, check_pendant,
    check_reorder, check_reorder_exhaustive, check_ses, check_tree, homology_difference, long_exact_sequence,
    CheckReport,
};
use tutte_core::{
    chromatic_state_sum, recover_tutte, tutte_deletion_contraction, tutte_hat, tutte_state_sum, Bidegree, BiPoly,
    CoefficientSystem,
};

type Outcome = Result<(), String>;

fn load(name: &str) -> Graph {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../graphs").join(name);
    Graph::parse(&std::fs::read_to_string(&path).expect("graph file")).expect("valid graph file")
}

fn default() -> CoefficientSystem {
    CoefficientSystem::default_system()
}

/// `(i, p, q, free, torsion)` rows.
fn expected(rows: &[(usize, i32, i32, usize, &[i64])]) -> BigradedHomology {
    BigradedHomology::from_entries(rows.iter().map(|&(i, p, q, free, t)| {
        let torsion = t.iter().map(|&v| BigInt::from(v)).collect();
        ((i, Bidegree::new(p, q)), HomologyGroup { free, torsion })
    }))
}

fn poly(terms: &[(u32, u32, i64)]) -> BiPoly {
    BiPoly::from_terms(terms.iter().map(|&(i, j, c)| ((i, j), c)))
}

fn golden(name: &str, want: BigradedHomology, euler: BiPoly) -> Outcome {
    let g = load(name);
    let h = homology(&build_complex(&g, &default()).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    if let Some(w) = homology_difference(&h, &want) {
        return Err(format!("{name}: {w}"));
    }
    if h.graded_euler() != euler {
        return Err(format!("{name}: euler {} but expected {euler}", h.graded_euler()));
    }
    Ok(())
}

fn all_pass(reports: &[CheckReport]) -> Outcome {
    match reports.iter().find(|r| !r.passed()) {
        None => Ok(()),
        Some(r) => Err(r.to_string()),
    }
}

fn sweep_corpus() -> Vec<Graph> {
    let mut graphs = enumerated_corpus(5, 6);
    graphs.extend(family_corpus(8));
    graphs
}

fn c1() -> Outcome {
    golden("l1.g", expected(&[(1, 0, 1, 1, &[]), (1, 1, 1, 1, &[])]), poly(&[(0, 1, -1), (1, 1, -1)]))
}

fn c2() -> Outcome {
    golden(
        "p2.g",
        expected(&[(0, 1, 0, 1, &[]), (0, 2, 0, 1, &[]), (2, 0, 1, 1, &[]), (2, 1, 1, 1, &[])]),
        poly(&[(2, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 1)]),
    )
}

fn c3() -> Outcome {
    golden(
        "l2.g",
        expected(&[
            (1, 0, 1, 1, &[]),
            (1, 1, 1, 1, &[]),
            (2, 0, 1, 1, &[]),
            (2, 1, 1, 1, &[]),
            (2, 0, 2, 1, &[]),
            (2, 1, 2, 1, &[]),
        ]),
        poly(&[(1, 2, 1), (0, 2, 1)]),
    )
}

fn c4() -> Outcome {
    golden("ex4.g", expected(&[(1, 1, 1, 1, &[]), (1, 2, 1, 1, &[])]), poly(&[(1, 1, -1), (2, 1, -1)]))?;
    let g = load("ex4.g");
    if g.contract_edge(0).map_err(|e| e.to_string())? != load("l1.g") {
        return Err("contracting the pendant edge does not give the single loop".into());
    }
    let r = check_pendant(&g, 0, &default()).map_err(|e| e.to_string())?;
    all_pass(&[r])
}

fn c5() -> Outcome {
    golden(
        "fig1.g",
        expected(&[
            (1, 1, 1, 1, &[]),
            (1, 2, 1, 1, &[]),
            (2, 0, 1, 1, &[]),
            (2, 1, 1, 1, &[]),
            (3, 0, 1, 1, &[]),
            (3, 1, 1, 1, &[]),
            (3, 0, 2, 1, &[]),
            (3, 1, 2, 1, &[]),
        ]),
        // -y(1+x)(x+y)
        poly(&[(1, 1, -1), (0, 2, -1), (2, 1, -1), (1, 2, -1)]),
    )
}

fn c6() -> Outcome {
    golden(
        "k3.g",
        expected(&[
            (0, 3, 0, 1, &[]),
            (1, 1, 0, 1, &[]),
            (1, 2, 0, 0, &[2]),
            (3, 0, 1, 1, &[]),
            (3, 1, 1, 1, &[]),
        ]),
        poly(&[(3, 0, 1), (1, 0, -1), (1, 1, -1), (0, 1, -1)]),
    )
}

fn c7() -> Outcome {
    let reports: Vec<CheckReport> = sweep_corpus().par_iter().map(|g| check_euler(g, &default())).collect();
    all_pass(&reports)?;
    // the chain-level identity against T-hat itself, independent of the substitution helper
    let bad = sweep_corpus().into_par_iter().find_any(|g| {
        build_complex(g, &default()).map(|c| c.euler_characteristic()) != Ok(tutte_hat(g))
    });
    match bad {
        None => Ok(()),
        Some(g) => Err(format!("euler differs from T-hat on {g}")),
    }
}

fn c8() -> Outcome {
    let graphs = sweep_corpus();
    for system in CoefficientSystem::builtins() {
        let reports: Vec<CheckReport> = graphs.par_iter().map(|g| check_d_squared(g, &system)).collect();
        all_pass(&reports).map_err(|e| format!("{}: {e}", system.name))?;
    }
    Ok(())
}

fn c9() -> Outcome {
    let k3 = load("k3.g");
    let mut reports = vec![check_reorder_exhaustive(&k3, &default())];
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED);
    let corpus: Vec<Graph> = enumerated_corpus(5, 6).into_iter().filter(|g| g.num_edges() >= 2).collect();
    let picks: Vec<&Graph> = corpus.choose_multiple(&mut rng, 20).collect();
    reports.par_extend(
        picks
            .par_iter()
            .enumerate()
            .map(|(i, g)| check_reorder(g, &default(), 5, CORPUS_SEED + i as u64)),
    );
    all_pass(&reports)
}

fn c10() -> Outcome {
    let graphs: Vec<Graph> = standard_corpus(CORPUS_SEED).into_iter().filter(|g| g.num_edges() <= 5).collect();
    let reports: Vec<CheckReport> = graphs
        .par_iter()
        .flat_map_iter(|g| {
            (0..g.num_edges()).flat_map(move |e| {
                [check_ses(g, e, &default()), check_les(g, e, &default())]
                    .into_iter()
                    .map(|r| r.expect("edge in range"))
            })
        })
        .collect();
    all_pass(&reports)?;

    // the connecting map of the parallel edge vanishes on H^1
    let (ranks, w) = long_exact_sequence(&load("fig1.g"), 0, &default()).map_err(|e| e.to_string())?;
    if let Some(w) = w {
        return Err(w);
    }
    if ranks.gamma_rank(1) != 0 {
        return Err(format!("gamma* on H^1 of the parallel edge has rank {}", ranks.gamma_rank(1)));
    }

    // triangle, edge joining the two ends of the remaining path
    let k3 = load("k3.g");
    let (ranks, w) = long_exact_sequence(&k3, 2, &default()).map_err(|e| e.to_string())?;
    if let Some(w) = w {
        return Err(w);
    }
    if ranks.gamma_rank(0) != 1 {
        return Err(format!("gamma* on H^0 has rank {}, expected 1", ranks.gamma_rank(0)));
    }
    let system = default();
    let ses = DeletionContractionSes::new(&k3, 2, &system).map_err(|e| e.to_string())?;
    let gamma = tutte_core::complex::connecting_map_by_edge_maps(&ses).map_err(|e| e.to_string())?;
    let x = system.algebra.basis.iter().position(|b| b == "x").expect("x in A");
    let deg = Bidegree::new(2, 0);
    let elem = |labels: [usize; 3]| ChainBasisElement {
        state: tutte_core::EdgeSubset::empty(2),
        a_labels: labels.to_vec(),
        b_labels: vec![],
    };
    // 1⊗x⊗x − x⊗1⊗x + x⊗x⊗1
    let cycle = [(elem([0, x, x]), 1), (elem([x, 0, x]), -1), (elem([x, x, 0]), 1)];
    let block = gamma.block(0, deg).ok_or("no gamma block at (2,0)")?;
    let mut image = vec![BigInt::from(0); block.nrows()];
    for (e, c) in &cycle {
        let (d, col) = ses.deleted.locate(e).ok_or("cycle element missing")?;
        assert_eq!(d, deg);
        for (row, v) in block.column(col) {
            image[row] += v * c;
        }
    }
    let targets = ses.contracted.block(0, deg);
    let nonzero: Vec<(Vec<usize>, BigInt)> = image
        .into_iter()
        .enumerate()
        .filter(|(_, v)| *v != BigInt::from(0))
        .map(|(row, v)| (targets[row].a_labels.clone(), v))
        .collect();
    if nonzero != vec![(vec![x, x], BigInt::from(2))] {
        return Err(format!("gamma of the cycle is {nonzero:?}, expected 2 x⊗x"));
    }
    Ok(())
}

fn c11() -> Outcome {
    all_pass(&(0..=6).map(check_tree).collect::<Vec<_>>())
}

fn c12() -> Outcome {
    let mut reports = vec![check_chromatic_overlap(&load("k3.g")), check_chromatic_overlap(&load("c4.g"))];
    let forests: Vec<Graph> = enumerated_corpus(5, 6)
        .into_iter()
        .filter(|g| g.girth() == Girth::Infinite)
        .collect();
    reports.par_extend(forests.par_iter().map(check_chromatic_overlap));
    all_pass(&reports)?;
    let chromatic = CoefficientSystem::chromatic_system();
    let bad = sweep_corpus().into_par_iter().find_any(|g| {
        build_complex(g, &chromatic).map(|c| c.euler_characteristic()) != Ok(chromatic_state_sum(g))
    });
    match bad {
        None => Ok(()),
        Some(g) => Err(format!("chromatic euler differs from the chromatic state sum on {g}")),
    }
}

fn c13() -> Outcome {
    let bad = sweep_corpus().into_par_iter().find_any(|g| {
        let dc = tutte_deletion_contraction(g);
        recover_tutte(&tutte_hat(g)).ok() != Some(dc.clone()) || tutte_state_sum(g) != dc
    });
    match bad {
        None => Ok(()),
        Some(g) => Err(format!("tutte recovery fails on {g}")),
    }
}

fn c14() -> Outcome {
    let sys = default();
    let mut reports = Vec::new();
    // triangle plus an isolated vertex, restricted to the triangle and then an edge
    let g = Graph::new(4, vec![(0, 1), (1, 2), (0, 2)]).map_err(|e| e.to_string())?;
    let k = Subgraph::new(&g, vec![0, 1, 2], vec![0, 1, 2]).map_err(|e| e.to_string())?;
    let l = Subgraph::new(&g, vec![0, 1], vec![0]).map_err(|e| e.to_string())?;
    reports.push(check_functorial(&g, &k, &l, &sys).map_err(|e| e.to_string())?);
    // parallel pair and loop, restricted to the parallel pair and then one edge
    let g = load("fig1.g");
    let k = Subgraph::new(&g, vec![0, 1], vec![0, 1]).map_err(|e| e.to_string())?;
    let l = Subgraph::new(&g, vec![0, 1], vec![1]).map_err(|e| e.to_string())?;
    reports.push(check_functorial(&g, &k, &l, &sys).map_err(|e| e.to_string())?);
    // 4-cycle, identities
    let g = load("c4.g");
    let whole = Subgraph::whole(&g);
    reports.push(check_functorial(&g, &whole, &whole, &sys).map_err(|e| e.to_string())?);
    all_pass(&reports)
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let secs = Duration::from_secs_f64;
    let criteria = [
        Criterion { id: 1, name: "golden homology, single loop", limit: secs(0.1), run: c1 },
        Criterion { id: 2, name: "golden homology, parallel pair", limit: secs(0.1), run: c2 },
        Criterion { id: 3, name: "golden homology, two loops", limit: secs(0.1), run: c3 },
        Criterion { id: 4, name: "golden homology, loop with pendant edge", limit: secs(0.1), run: c4 },
        Criterion { id: 5, name: "golden homology, parallel pair with loop", limit: secs(0.5), run: c5 },
        Criterion { id: 6, name: "golden homology with torsion, triangle", limit: secs(0.5), run: c6 },
        Criterion { id: 7, name: "euler identity sweep", limit: secs(120.0), run: c7 },
        Criterion { id: 8, name: "d^2 = 0 and degree preservation, all systems", limit: secs(120.0), run: c8 },
        Criterion { id: 9, name: "reorder invariance", limit: secs(60.0), run: c9 },
        Criterion { id: 10, name: "short and long exact sequences", limit: secs(120.0), run: c10 },
        Criterion { id: 11, name: "tree corollary", limit: secs(5.0), run: c11 },
        Criterion { id: 12, name: "chromatic overlap", limit: secs(60.0), run: c12 },
        Criterion { id: 13, name: "tutte recovery", limit: secs(60.0), run: c13 },
        Criterion { id: 14, name: "functoriality", limit: secs(10.0), run: c14 },
    ];
    let mut failed = 0;
    let mut sweep_7_8 = Duration::ZERO;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        if c.id == 7 || c.id == 8 {
            sweep_7_8 += elapsed;
        }
        let outcome = outcome.and_then(|()| {
            if elapsed > c.limit {
                Err(format!("took {elapsed:.2?}, limit {:.2?}", c.limit))
            } else if c.id == 8 && sweep_7_8 > secs(120.0) {
                Err(format!("criteria 7 and 8 took {sweep_7_8:.2?} combined, limit 120s"))
            } else {
                Ok(())
            }
        });
        match outcome {
            Ok(()) => println!("PASS  criterion {:2}  {:<46} {elapsed:>10.3?}", c.id, c.name),
            Err(w) => {
                failed += 1;
                println!("FAIL  criterion {:2}  {:<46} {elapsed:>10.3?}\n      {w}", c.id, c.name);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
