use super::*;
use crate::coeff::CoefficientSystem;

fn k3() -> Graph {
    Graph::new(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap()
}

#[test]
fn edge_signs() {
    assert_eq!(edge_sign("*").unwrap(), 1);
    assert_eq!(edge_sign("1*0").unwrap(), -1);
    assert_eq!(edge_sign("11*").unwrap(), 1);
    assert_eq!(edge_sign("0*1").unwrap(), 1);
    assert!(edge_sign("1*0*").is_err());
    assert!(edge_sign("120*").is_err());
    assert!(edge_sign("10").is_err());
}

#[test]
fn chain_group_dimensions() {
    let sys = CoefficientSystem::default_system();
    let c = build_complex(&k3(), &sys).unwrap();
    // heights 0..3: 2^3, 3 * 2^2, 3 * 2, 2 * 2
    let dims: Vec<usize> = (0..=3).map(|i| c.total_dim(i)).collect();
    assert_eq!(dims, vec![8, 12, 6, 4]);
    for i in 0..=3 {
        assert_eq!(c.qdim(i).terms().map(|(_, _, v)| v.clone()).sum::<BigInt>(), BigInt::from(dims[i]));
    }
}

#[test]
fn d_squared_and_degrees_on_small_graphs() {
    let graphs = [
        k3(),
        Graph::new(2, vec![(0, 1), (0, 1), (1, 1)]).unwrap(),
        Graph::new(1, vec![(0, 0), (0, 0)]).unwrap(),
        Graph::new(4, vec![(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)]).unwrap(),
    ];
    for sys in CoefficientSystem::builtins() {
        for g in &graphs {
            let c = build_complex(g, &sys).unwrap();
            assert!(c.verify_d_squared().passed(), "{} {g}", sys.name);
            assert!(c.verify_degree_preservation().is_empty());
            assert!(c.verify_squares_commute().is_empty());
        }
    }
}

#[test]
fn merge_multiplies_labels() {
    let sys = CoefficientSystem::default_system();
    let g = Graph::new(2, vec![(0, 1)]).unwrap();
    let m = per_edge_map(&g, &sys, &EdgeSubset::empty(1), 0).unwrap();
    // basis 1⊗1, 1⊗x, x⊗1, x⊗x -> 1, x
    assert_eq!(
        m,
        SparseIntMatrix::from_dense(&[vec![1, 0, 0, 0], vec![0, 1, 1, 0]])
    );
}

#[test]
fn cycle_appends_b0() {
    let sys = CoefficientSystem::default_system();
    let g = Graph::new(1, vec![(0, 0)]).unwrap();
    let m = per_edge_map(&g, &sys, &EdgeSubset::empty(1), 0).unwrap();
    // 1 -> 1|1 + 1|y, x -> x|1 + x|y when b0 = 1 + y
    let b0 = &sys.module.b0;
    let mut want = SparseIntMatrix::zeros(4, 2);
    for (k, &c) in b0.iter().enumerate() {
        want.add_to(k, 0, BigInt::from(c));
        want.add_to(2 + k, 1, BigInt::from(c));
    }
    assert_eq!(m, want);
}

#[test]
fn locate_round_trips() {
    let sys = CoefficientSystem::default_system();
    let c = build_complex(&k3(), &sys).unwrap();
    for i in 0..=3 {
        for deg in c.bidegrees(i).collect::<Vec<_>>() {
            for (pos, elem) in c.block(i, deg).iter().enumerate() {
                assert_eq!(c.locate(elem), Some((deg, pos)));
                assert_eq!(elem.bidegree(&sys), deg);
            }
        }
    }
}

#[test]
fn edge_bound_is_enforced() {
    let sys = CoefficientSystem::default_system();
    let g = Graph::new(1, vec![(0, 0); 13]).unwrap();
    assert!(matches!(build_complex(&g, &sys), Err(Error::TooManyEdges { edges: 13, bound: 12 })));
    let g = Graph::new(1, vec![(0, 0); 15]).unwrap();
    assert!(matches!(
        build_complex_with_bound(&g, &sys, 20),
        Err(Error::TooManyEdges { bound: 14, .. })
    ));
}

#[test]
fn triplet_dump() {
    let sys = CoefficientSystem::default_system();
    let g = Graph::new(1, vec![(0, 0)]).unwrap();
    let dump = build_complex(&g, &sys).unwrap().dump_triplets();
    assert!(dump.lines().all(|l| l.split(" : ").count() == 2));
    assert!(dump.contains("0 0 0 : 0 0 1"));
}

#[test]
fn ses_maps_are_chain_maps() {
    let sys = CoefficientSystem::default_system();
    let g = Graph::new(2, vec![(0, 1), (0, 1), (1, 1)]).unwrap();
    for e in 0..3 {
        let ses = DeletionContractionSes::new(&g, e, &sys).unwrap();
        assert!(ses.beta.compose(&ses.alpha, &ses.contracted, &ses.whole, &ses.deleted).is_zero());
        let zigzag = connecting_map(&ses).unwrap();
        let by_edges = connecting_map_by_edge_maps(&ses).unwrap();
        for (i, level) in zigzag.blocks.iter().enumerate() {
            for (deg, m) in level {
                let other = by_edges.block(i, *deg).unwrap();
                let sign = BigInt::from(if i % 2 == 0 { 1 } else { -1 });
                assert_eq!(m, &other.scale(&sign));
            }
        }
    }
}

#[test]
fn restriction_kills_nonunit_isolated_labels() {
    let sys = CoefficientSystem::default_system();
    let g = Graph::new(4, vec![(0, 1), (1, 2), (0, 2)]).unwrap();
    let k = Subgraph::new(&g, vec![0, 1, 2], vec![0, 1, 2]).unwrap();
    let src = build_complex(&g, &sys).unwrap();
    let tgt = build_complex(&k.graph(&g), &sys).unwrap();
    let beta = functorial_beta(&src, &k, &tgt).unwrap();
    // on the empty state, half of the basis (x on vertex 3) dies
    let deg_total: usize = src.bidegrees(0).map(|d| beta.block(0, d).unwrap().nnz()).sum();
    assert_eq!(deg_total, 8);
    assert!(Subgraph::new(&g, vec![0, 1], vec![1]).is_err());
}
