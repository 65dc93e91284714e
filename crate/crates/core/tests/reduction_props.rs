mod common;

use rand::seq::SliceRandom;
use tfik::catalog;
use tfik::enumeration::{enumerate, DegreeProfile, EnumOptions, Regime};
use tfik::planarity::is_planar;
use tfik::reduction::{neighborhood_partition, pair_ledger, reduce_pair, reduce_pair_with_priority};
use tfik::{canonicalize, SimpleGraph};

/// Every connected triangle-free 22-edge graph with minimum degree 3.
fn in_regime_graphs() -> Vec<SimpleGraph> {
    let e = enumerate(&Regime::new(22, DegreeProfile::Any), EnumOptions::default());
    assert!(!e.truncated);
    e.graphs.into_iter().map(|(_, g)| g).collect()
}

#[test]
fn count_equation_on_random_in_regime_graphs() {
    let all = in_regime_graphs();
    let mut rng = common::rng(2024);
    let sample: Vec<&SimpleGraph> = all.choose_multiple(&mut rng, 600).collect();
    let mut pairs = 0;
    let mut exact = 0;
    for g in sample {
        let perm = common::random_perm(&mut rng, g.order());
        let g = g.permuted(&perm);
        let identity: Vec<usize> = (0..g.order()).collect();
        for a in 0..g.order() {
            for b in a + 1..g.order() {
                let l = pair_ledger(&g, a, b).unwrap();
                assert!(l.in_regime);
                assert!(l.actual as i64 <= l.predicted, "{g:?} {l:?}");
                if !l.degenerate {
                    assert_eq!(l.actual as i64, l.predicted, "{g:?} {l:?}");
                    exact += 1;
                }
                let traced = common::traced_reduction(&g, a, b, &identity);
                assert_eq!(traced.edge_count(), l.actual);
                pairs += 1;
            }
        }
    }
    assert!(pairs > 30_000 && exact > 0);
}

#[test]
fn adjacent_pairs_have_empty_common_classes() {
    let all = in_regime_graphs();
    for g in all.iter().step_by(97) {
        for (a, b) in g.edges() {
            let l = pair_ledger(g, a, b).unwrap();
            assert_eq!((l.v4, l.vy), (0, 0));
            let p = neighborhood_partition(g, a, b).unwrap();
            assert_eq!((p.x, p.y, p.z), (0, 0, 0));
            assert!(!p.full);
        }
    }
}

#[test]
fn fixpoint_is_order_independent() {
    let mut rng = common::rng(99);
    for i in 0..200 {
        let n = 8 + i % 7;
        let g = common::random_graph(&mut rng, n, 0.25 + 0.05 * (i % 4) as f64);
        let (a, b) = (0, 1 + i % (n - 1));
        let base = canonicalize(&reduce_pair(&g, a, b).unwrap());
        for _ in 0..50 {
            let pri = common::random_perm(&mut rng, n);
            let r = reduce_pair_with_priority(&g, a, b, &pri).unwrap();
            assert_eq!(canonicalize(&r.graph), base);
        }
        let pri = common::random_perm(&mut rng, n);
        assert_eq!(canonicalize(&common::traced_reduction(&g, a, b, &pri)), base);
    }
}

#[test]
fn reduction_output_shape() {
    let mut rng = common::rng(17);
    for _ in 0..300 {
        let g = common::random_graph(&mut rng, 11, 0.35);
        let r = reduce_pair(&g, 2, 5).unwrap();
        assert!(r.order() == 0 || r.min_degree() >= 3);
        let lost = g.degree(2) + g.degree(5) - usize::from(g.has_edge(2, 5));
        assert!(r.edge_count() <= g.edge_count() - lost);
        if r.edge_count() <= 8 {
            assert!(is_planar(&r));
        }
    }
}

#[test]
fn partition_profiles_of_theorem_graphs() {
    let m11 = catalog::build("M_11").unwrap().graph;
    let p = neighborhood_partition(&m11, 0, 1).unwrap();
    assert_eq!((p.x, p.y, p.z), (1, 2, 2));
    assert_eq!((p.ua, p.ub, p.wa, p.wb), (Some(0), Some(0), Some(0), Some(0)));

    let c110 = catalog::build("cousin110").unwrap().graph;
    let p = neighborhood_partition(&c110, 0, 1).unwrap();
    assert_eq!((p.x, p.y, p.z), (1, 1, 3));
    assert_eq!((p.ua, p.wa), (Some(0), Some(0)));
    assert_eq!(p.boundary_degrees, Some(vec![5, 4, 3]));
    assert_eq!(p.extra_edges, Some(0));

    let l = pair_ledger(&c110, 0, 1).unwrap();
    assert_eq!(l.ne, 10);
    assert!(l.nv3 >= 1);
    assert!(l.actual as i64 <= l.predicted);
}

#[test]
fn partition_identities_at_max_degree_five() {
    let mut pairs = 0;
    for g in in_regime_graphs().iter().filter(|g| g.max_degree() == 5) {
        for a in 0..g.order() {
            for b in a + 1..g.order() {
                if g.degree(a) != 5 || g.degree(b) != 5 || g.distance(a, b) != Some(2) {
                    continue;
                }
                let p = neighborhood_partition(g, a, b).unwrap();
                assert!(p.full);
                assert_eq!(p.x + p.y + p.z + p.ua.unwrap() + p.wa.unwrap(), 5);
                assert_eq!(p.x + p.y + p.z + p.ub.unwrap() + p.wb.unwrap(), 5);
                assert!(p.weight().unwrap() <= 7);
                pairs += 1;
            }
        }
    }
    assert!(pairs > 100);
}
