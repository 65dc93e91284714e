#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tfik::{canonicalize, CanonicalForm, SimpleGraph};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> SimpleGraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    SimpleGraph::from_edges(n, &edges).unwrap()
}

pub fn random_perm(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

pub fn edge_set(g: &SimpleGraph) -> BTreeSet<(usize, usize)> {
    g.edges().collect()
}

/// Planarity by Wagner's theorem: a graph is non-planar iff it is K5 or
/// K33, or some single edge deletion or contraction is non-planar.
pub struct MinorOracle {
    memo: HashMap<CanonicalForm, bool>,
    k5: CanonicalForm,
    k33: CanonicalForm,
}

impl MinorOracle {
    pub fn new() -> Self {
        MinorOracle {
            memo: HashMap::new(),
            k5: canonicalize(&SimpleGraph::complete(5).unwrap()),
            k33: canonicalize(&SimpleGraph::complete_multipartite(&[3, 3]).unwrap()),
        }
    }

    pub fn planar(&mut self, g: &SimpleGraph) -> bool {
        let g = strip(g);
        let (n, m) = (g.order(), g.edge_count());
        if m < 9 {
            return true;
        }
        if n >= 3 && m > 3 * n - 6 {
            return false;
        }
        let f = canonicalize(&g);
        if f == self.k5 || f == self.k33 {
            return false;
        }
        if let Some(&r) = self.memo.get(&f) {
            return r;
        }
        let edges: Vec<_> = g.edges().collect();
        let mut planar = true;
        for &(u, v) in &edges {
            if !self.planar(&g.delete_edge(u, v).unwrap()) || !self.planar(&g.contract_edge(u, v).unwrap()) {
                planar = false;
                break;
            }
        }
        self.memo.insert(f, planar);
        planar
    }
}

/// Removes vertices of degree at most 1 and smooths degree-2 vertices,
/// working on an explicit edge list. Planarity is unchanged.
fn strip(g: &SimpleGraph) -> SimpleGraph {
    let mut edges = edge_set(g);
    let mut alive: BTreeSet<usize> = (0..g.order()).collect();
    loop {
        let deg = |v: usize, e: &BTreeSet<(usize, usize)>| e.iter().filter(|&&(a, b)| a == v || b == v).count();
        let Some(&v) = alive.iter().find(|&&v| deg(v, &edges) <= 2) else { break };
        let nb: Vec<usize> = edges
            .iter()
            .filter_map(|&(a, b)| if a == v { Some(b) } else if b == v { Some(a) } else { None })
            .collect();
        edges.retain(|&(a, b)| a != v && b != v);
        alive.remove(&v);
        if nb.len() == 2 {
            edges.insert((nb[0].min(nb[1]), nb[0].max(nb[1])));
        }
    }
    compact(&alive, &edges)
}

pub fn compact(alive: &BTreeSet<usize>, edges: &BTreeSet<(usize, usize)>) -> SimpleGraph {
    let index: HashMap<usize, usize> = alive.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let list: Vec<(usize, usize)> = edges.iter().map(|&(a, b)| (index[&a], index[&b])).collect();
    SimpleGraph::from_edges(alive.len(), &list).unwrap()
}

/// The pair reduction on an explicit edge set, processing pending vertices
/// in the order given by `priority` (lower first).
pub fn traced_reduction(g: &SimpleGraph, a: usize, b: usize, priority: &[usize]) -> SimpleGraph {
    let mut edges: BTreeSet<(usize, usize)> = edge_set(g).into_iter().filter(|&(x, y)| x != a && x != b && y != a && y != b).collect();
    let mut alive: BTreeSet<usize> = (0..g.order()).filter(|&v| v != a && v != b).collect();
    loop {
        let nbrs = |v: usize, e: &BTreeSet<(usize, usize)>| -> Vec<usize> {
            e.iter()
                .filter_map(|&(x, y)| if x == v { Some(y) } else if y == v { Some(x) } else { None })
                .collect()
        };
        let pending = alive
            .iter()
            .copied()
            .filter(|&v| nbrs(v, &edges).len() <= 2)
            .min_by_key(|&v| priority[v]);
        let Some(v) = pending else { break };
        let nb = nbrs(v, &edges);
        edges.retain(|&(x, y)| x != v && y != v);
        alive.remove(&v);
        if nb.len() == 2 {
            // an existing edge absorbs the new one
            edges.insert((nb[0].min(nb[1]), nb[0].max(nb[1])));
        }
    }
    compact(&alive, &edges)
}

/// All graphs on `n` vertices with exactly `m` edges, maximum degree at
/// most `max_deg` and optionally triangle-free, by breadth-first edge
/// addition with canonical deduplication.
pub fn edge_addition_layers(n: usize, m: usize, triangle_free: bool, max_deg: usize) -> Vec<SimpleGraph> {
    let mut layer: Vec<SimpleGraph> = vec![SimpleGraph::empty(n).unwrap()];
    for _ in 0..m {
        let mut seen: HashSet<CanonicalForm> = HashSet::new();
        let mut next = Vec::new();
        for g in &layer {
            for u in 0..n {
                if g.degree(u) >= max_deg {
                    continue;
                }
                for v in u + 1..n {
                    if g.has_edge(u, v) || g.degree(v) >= max_deg {
                        continue;
                    }
                    if triangle_free && g.neighbors(u) & g.neighbors(v) != 0 {
                        continue;
                    }
                    let mut edges: Vec<_> = g.edges().collect();
                    edges.push((u, v));
                    let h = SimpleGraph::from_edges(n, &edges).unwrap();
                    let f = canonicalize(&h);
                    if seen.insert(f.clone()) {
                        next.push(f.to_graph());
                    }
                }
            }
        }
        layer = next;
    }
    layer
}
