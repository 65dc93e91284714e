mod common;

use proptest::prelude::*;
use tfik::graph6;
use tfik::{are_isomorphic, canonical_labeling, canonicalize, SimpleGraph};

fn arb_graph(max_n: usize) -> impl Strategy<Value = SimpleGraph> {
    (0..=max_n).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            SimpleGraph::from_edges(n, &edges).unwrap()
        })
    })
}

fn arb_graph_and_perm(max_n: usize) -> impl Strategy<Value = (SimpleGraph, Vec<usize>)> {
    arb_graph(max_n).prop_flat_map(|g| {
        let n = g.order();
        (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 1000, ..ProptestConfig::default() })]

    #[test]
    fn canonical_form_is_relabeling_invariant((g, p) in arb_graph_and_perm(12)) {
        let h = g.permuted(&p);
        prop_assert_eq!(canonicalize(&g), canonicalize(&h));
        prop_assert!(canonicalize(&g).to_graph() == *canonical_labeling(&h).canonical_graph());
    }

    #[test]
    fn graph6_round_trip(g in arb_graph(14)) {
        let bytes = graph6::encode(&g);
        prop_assert_eq!(graph6::decode(&bytes).unwrap(), g);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 300, ..ProptestConfig::default() })]

    #[test]
    fn degree_sequence_sums_to_twice_edges(g in arb_graph(14)) {
        let s = g.degree_sequence();
        prop_assert_eq!(s.len(), g.order());
        prop_assert_eq!(s.iter().sum::<usize>(), 2 * g.edge_count());
        prop_assert!(s.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn triangle_free_agrees_with_triples(g in arb_graph(10)) {
        let n = g.order();
        let mut found = false;
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    found |= g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c);
                }
            }
        }
        prop_assert_eq!(g.is_triangle_free(), !found);
    }

    #[test]
    fn contraction_stays_simple(g in arb_graph(10)) {
        for (u, v) in g.edges() {
            let c = g.contract_edge(u, v).unwrap();
            prop_assert_eq!(c.order(), g.order() - 1);
            for x in 0..c.order() {
                prop_assert!(!c.has_edge(x, x));
            }
            let shared = (g.neighbors(u) & g.neighbors(v)).count_ones() as usize;
            prop_assert_eq!(c.edge_count(), g.edge_count() - 1 - shared);
        }
    }

    #[test]
    fn isomorphism_matches_canonical_equality((g, p) in arb_graph_and_perm(9)) {
        let h = g.permuted(&p);
        prop_assert!(are_isomorphic(&g, &h));
        if g.edge_count() > 0 {
            let (u, v) = g.edges().next().unwrap();
            let d = g.delete_edge(u, v).unwrap();
            prop_assert!(!are_isomorphic(&d, &h));
        }
    }
}

#[test]
fn petersen_form_stable_under_random_relabeling() {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    let p = SimpleGraph::from_edges(10, &edges).unwrap();
    let f = canonicalize(&p);
    let mut rng = common::rng(7);
    for _ in 0..100 {
        let perm = common::random_perm(&mut rng, 10);
        assert_eq!(canonicalize(&p.permuted(&perm)), f);
    }
}

#[test]
fn graph_counts_on_small_orders() {
    // unlabelled graphs on n vertices: 1, 2, 4, 11, 34, 156
    use std::collections::HashSet;
    for (n, expected) in [(1usize, 1usize), (2, 2), (3, 4), (4, 11), (5, 34), (6, 156)] {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let mut forms = HashSet::new();
        for mask in 0u32..(1 << pairs.len()) {
            let edges: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
            forms.insert(canonicalize(&SimpleGraph::from_edges(n, &edges).unwrap()));
        }
        assert_eq!(forms.len(), expected, "order {n}");
    }
}

#[test]
fn graph6_file_round_trip() {
    let graphs = vec![
        SimpleGraph::complete(7).unwrap(),
        SimpleGraph::complete_multipartite(&[3, 3]).unwrap(),
        SimpleGraph::empty(0).unwrap(),
        SimpleGraph::cycle(13).unwrap(),
    ];
    let mut buf = Vec::new();
    graph6::write_all(&mut buf, graphs.iter()).unwrap();
    assert_eq!(buf.iter().filter(|&&b| b == b'\n').count(), graphs.len());
    let back = graph6::read_all(&buf[..]).unwrap();
    assert_eq!(back, graphs);
}
