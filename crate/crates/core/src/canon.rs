//! Exact canonical labelling by partition refinement and individualisation,
//! with automorphism pruning.
//!
//! The search tree is the usual one: refine the unit partition to an
//! equitable one, individualise each vertex of the first non-singleton cell,
//! refine again, and so on down to discrete partitions. Every leaf defines a
//! relabelling; the canonical graph is the lexicographically largest
//! relabelled adjacency matrix. Leaves that reproduce the first or the best
//! leaf yield automorphisms, which prune the rest of the tree.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::graph::{bits, SimpleGraph, MAX_ORDER};
use crate::graph6;

type Perm = [u8; MAX_ORDER];
type Key = [u32; MAX_ORDER];

/// Relabelling-invariant fingerprint: the graph6 bytes of the canonical
/// relabelling. Equal iff the graphs are isomorphic.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn as_str(&self) -> &str {
        // graph6 output is printable ASCII
        std::str::from_utf8(&self.0).expect("graph6 is ASCII")
    }

    /// The canonical representative itself.
    pub fn to_graph(&self) -> SimpleGraph {
        graph6::decode(&self.0).expect("canonical form holds valid graph6")
    }

    pub fn from_graph6(bytes: &[u8]) -> crate::Result<Self> {
        let g = graph6::decode(bytes)?;
        Ok(canonicalize(&g))
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", self.as_str())
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for CanonicalForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for CanonicalForm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        CanonicalForm::from_graph6(s.as_bytes()).map_err(serde::de::Error::custom)
    }
}

/// Full output of the labelling search.
#[derive(Clone, Debug)]
pub struct Labeling {
    n: usize,
    /// `position[v]` is the canonical index of vertex `v`.
    position: Perm,
    generators: Vec<Perm>,
    orbit: Perm,
    canonical: SimpleGraph,
}

impl Labeling {
    pub fn canonical_graph(&self) -> &SimpleGraph {
        &self.canonical
    }

    pub fn form(&self) -> CanonicalForm {
        CanonicalForm(graph6::encode(&self.canonical))
    }

    pub fn position(&self, v: usize) -> usize {
        self.position[v] as usize
    }

    /// Smallest vertex in the automorphism orbit of `v`.
    pub fn orbit_rep(&self, v: usize) -> usize {
        self.orbit[v] as usize
    }

    pub fn is_trivial_group(&self) -> bool {
        self.generators.is_empty()
    }

    /// Generators of the automorphism group; `gen[v]` is the image of `v`.
    pub fn generators(&self) -> impl Iterator<Item = &[u8]> + '_ {
        self.generators.iter().map(move |g| &g[..self.n])
    }

    pub fn orbit_count(&self) -> usize {
        (0..self.n).filter(|&v| self.orbit[v] as usize == v).count()
    }
}

pub fn canonicalize(g: &SimpleGraph) -> CanonicalForm {
    canonical_labeling(g).form()
}

pub fn are_isomorphic(a: &SimpleGraph, b: &SimpleGraph) -> bool {
    a.order() == b.order()
        && a.edge_count() == b.edge_count()
        && a.degree_sequence() == b.degree_sequence()
        && canonicalize(a) == canonicalize(b)
}

pub fn canonical_labeling(g: &SimpleGraph) -> Labeling {
    let n = g.order();
    let mut adj = [0u32; MAX_ORDER];
    for (v, row) in adj.iter_mut().enumerate().take(n) {
        *row = g.neighbors(v);
    }
    let mut cells = if n == 0 { Vec::new() } else { vec![g.vertex_mask()] };
    refine(&adj, n, &mut cells);

    let mut search = Search {
        adj,
        n,
        first: None,
        best: None,
        generators: Vec::new(),
    };
    let mut path = Vec::with_capacity(n);
    search.descend(cells, &mut path);

    let mut position = [0u8; MAX_ORDER];
    let (best_lab, canonical) = match search.best {
        Some(leaf) => (leaf.lab, key_to_graph(&leaf.key, n)),
        None => ([0; MAX_ORDER], *g),
    };
    for (i, &v) in best_lab.iter().enumerate().take(n) {
        position[v as usize] = i as u8;
    }
    let orbit = orbits_of(&search.generators, n, &[]);
    Labeling {
        n,
        position,
        generators: search.generators,
        orbit,
        canonical,
    }
}

fn key_to_graph(key: &Key, n: usize) -> SimpleGraph {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| bits(key[i]).filter(move |&j| j > i).map(move |j| (i, j)))
        .collect();
    SimpleGraph::from_edges(n, &edges).expect("relabelled graph is simple")
}

/// Refines an ordered partition (cells as vertex masks) to the coarsest
/// equitable refinement. New fragments are ordered by neighbour count, so the
/// result commutes with relabelling.
fn refine(adj: &Key, n: usize, cells: &mut Vec<u32>) {
    let mut scratch: Vec<u32> = Vec::with_capacity(n);
    loop {
        let mut changed = false;
        let mut s = 0;
        while s < cells.len() {
            if cells.len() == n {
                return;
            }
            let splitter = cells[s];
            scratch.clear();
            for &cell in cells.iter() {
                if cell & (cell - 1) == 0 {
                    scratch.push(cell);
                    continue;
                }
                let mut buckets = [0u32; MAX_ORDER + 1];
                let mut used = 0u64;
                for v in bits(cell) {
                    let k = (adj[v] & splitter).count_ones() as usize;
                    buckets[k] |= 1 << v;
                    used |= 1 << k;
                }
                if used & (used - 1) == 0 {
                    scratch.push(cell);
                } else {
                    changed = true;
                    while used != 0 {
                        let k = used.trailing_zeros() as usize;
                        used &= used - 1;
                        scratch.push(buckets[k]);
                    }
                }
            }
            std::mem::swap(cells, &mut scratch);
            s += 1;
        }
        if !changed {
            return;
        }
    }
}

/// Orbit representatives (smallest member) of the group generated by those
/// `generators` that fix every vertex of `fixed`.
fn orbits_of(generators: &[Perm], n: usize, fixed: &[u8]) -> Perm {
    let mut parent: Perm = [0; MAX_ORDER];
    for (v, p) in parent.iter_mut().enumerate().take(n) {
        *p = v as u8;
    }
    fn find(parent: &mut Perm, mut v: usize) -> usize {
        while parent[v] as usize != v {
            parent[v] = parent[parent[v] as usize];
            v = parent[v] as usize;
        }
        v
    }
    for gen in generators {
        if fixed.iter().any(|&v| gen[v as usize] != v) {
            continue;
        }
        for v in 0..n {
            let a = find(&mut parent, v);
            let b = find(&mut parent, gen[v] as usize);
            if a != b {
                let (lo, hi) = (a.min(b), a.max(b));
                parent[hi] = lo as u8;
            }
        }
    }
    let mut rep = [0u8; MAX_ORDER];
    for (v, r) in rep.iter_mut().enumerate().take(n) {
        *r = find(&mut parent, v) as u8;
    }
    rep
}

struct Leaf {
    key: Key,
    lab: Perm,
    path: Vec<u8>,
}

struct Search {
    adj: Key,
    n: usize,
    first: Option<Leaf>,
    best: Option<Leaf>,
    generators: Vec<Perm>,
}

fn common_prefix(a: &[u8], b: &[u8]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

impl Search {
    /// Explores the subtree below `cells`. Returns `Some(level)` when an
    /// automorphism shows that everything up to tree depth `level` is
    /// already covered.
    fn descend(&mut self, mut cells: Vec<u32>, path: &mut Vec<u8>) -> Option<usize> {
        if cells.len() == self.n {
            return self.leaf(&cells, path);
        }
        let depth = path.len();
        let target = cells
            .iter()
            .position(|c| c & (c - 1) != 0)
            .expect("non-discrete partition has a non-singleton cell");
        let cell = cells[target];
        let mut explored = 0u32;
        for v in bits(cell) {
            if explored != 0 && !self.generators.is_empty() {
                let orbit = orbits_of(&self.generators, self.n, path);
                if bits(explored).any(|u| orbit[u] == orbit[v]) {
                    continue;
                }
            }
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..target]);
            child.push(1 << v);
            child.push(cell & !(1 << v));
            child.extend_from_slice(&cells[target + 1..]);
            refine(&self.adj, self.n, &mut child);
            path.push(v as u8);
            let jump = self.descend(child, path);
            path.pop();
            explored |= 1 << v;
            if let Some(level) = jump {
                if level < depth {
                    return Some(level);
                }
            }
        }
        cells.clear();
        None
    }

    fn leaf(&mut self, cells: &[u32], path: &[u8]) -> Option<usize> {
        let n = self.n;
        let mut lab = [0u8; MAX_ORDER];
        let mut pos = [0u8; MAX_ORDER];
        for (i, &c) in cells.iter().enumerate() {
            let v = c.trailing_zeros() as u8;
            lab[i] = v;
            pos[v as usize] = i as u8;
        }
        let mut key = [0u32; MAX_ORDER];
        for i in 0..n {
            let mut row = 0;
            for w in bits(self.adj[lab[i] as usize]) {
                row |= 1 << pos[w];
            }
            key[i] = row;
        }
        let Some(first) = &self.first else {
            let leaf = Leaf {
                key,
                lab,
                path: path.to_vec(),
            };
            self.best = Some(Leaf {
                key,
                lab,
                path: leaf.path.clone(),
            });
            self.first = Some(leaf);
            return None;
        };
        if first.key == key {
            let auto = automorphism(&first.lab, &lab, n);
            let level = common_prefix(&first.path, path);
            self.generators.push(auto);
            return Some(level);
        }
        let best = self.best.as_mut().expect("best is set with first");
        match key[..n].cmp(&best.key[..n]) {
            std::cmp::Ordering::Greater => {
                *best = Leaf {
                    key,
                    lab,
                    path: path.to_vec(),
                };
                None
            }
            std::cmp::Ordering::Equal => {
                let auto = automorphism(&best.lab, &lab, n);
                let level = common_prefix(&best.path, path);
                self.generators.push(auto);
                Some(level)
            }
            std::cmp::Ordering::Less => None,
        }
    }
}

fn automorphism(from: &Perm, to: &Perm, n: usize) -> Perm {
    let mut gamma = [0u8; MAX_ORDER];
    for i in 0..n {
        gamma[from[i] as usize] = to[i];
    }
    gamma
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_perm(n: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
        let mut p: Vec<usize> = (0..n).collect();
        p.shuffle(rng);
        p
    }

    fn random_graph(n: usize, p: f64, rng: &mut ChaCha8Rng) -> SimpleGraph {
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

    fn all_perms(n: usize) -> Vec<Vec<usize>> {
        fn rec(prefix: &mut Vec<usize>, used: u32, n: usize, out: &mut Vec<Vec<usize>>) {
            if prefix.len() == n {
                out.push(prefix.clone());
                return;
            }
            for v in 0..n {
                if used >> v & 1 == 0 {
                    prefix.push(v);
                    rec(prefix, used | 1 << v, n, out);
                    prefix.pop();
                }
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::new(), 0, n, &mut out);
        out
    }

    #[test]
    fn relabelling_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let k33 = SimpleGraph::complete_multipartite(&[3, 3]).unwrap();
        let c = canonicalize(&k33);
        for _ in 0..50 {
            let p = random_perm(6, &mut rng);
            assert_eq!(canonicalize(&k33.permuted(&p)), c);
        }
        for trial in 0..300 {
            let n = 1 + trial % 14;
            let g = random_graph(n, 0.35, &mut rng);
            let c = canonicalize(&g);
            let p = random_perm(n, &mut rng);
            assert_eq!(canonicalize(&g.permuted(&p)), c, "{g:?}");
            assert!(are_isomorphic(&g, &c.to_graph()));
        }
    }

    #[test]
    fn distinguishes_same_degree_sequence() {
        let c6 = SimpleGraph::cycle(6).unwrap();
        let tri = SimpleGraph::complete(3).unwrap();
        let two = tri.disjoint_union(&tri).unwrap();
        assert_ne!(canonicalize(&c6), canonicalize(&two));
    }

    #[test]
    fn empty_and_tiny_graphs() {
        let e0 = SimpleGraph::empty(0).unwrap();
        assert_eq!(canonicalize(&e0).as_bytes(), b"?");
        let e1 = SimpleGraph::empty(1).unwrap();
        assert_eq!(canonical_labeling(&e1).orbit_count(), 1);
    }

    #[test]
    fn orbits_match_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for trial in 0..120 {
            let n = 1 + trial % 7;
            let g = random_graph(n, 0.4, &mut rng);
            let lab = canonical_labeling(&g);
            // the automorphisms form a group, so orbit(v) = { p(v) : p in Aut }
            let mut rep: Vec<usize> = (0..n).collect();
            let mut group_size = 0;
            for p in all_perms(n) {
                if g.permuted(&p) == g {
                    group_size += 1;
                    for v in 0..n {
                        rep[v] = rep[v].min(p[v]);
                    }
                }
            }
            for v in 0..n {
                assert_eq!(lab.orbit_rep(v), rep[v], "{g:?} vertex {v}");
            }
            assert_eq!(lab.is_trivial_group(), group_size == 1);
            for gen in lab.generators() {
                let p: Vec<usize> = gen.iter().map(|&x| x as usize).collect();
                assert_eq!(g.permuted(&p), g);
            }
        }
    }

    #[test]
    fn exact_on_all_small_graphs() {
        // every labelled graph on 5 vertices: classes must number exactly 34
        let pairs: Vec<(usize, usize)> =
            (0..5).flat_map(|u| (u + 1..5).map(move |v| (u, v))).collect();
        let mut forms = std::collections::HashSet::new();
        for mask in 0u32..1 << pairs.len() {
            let edges: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            forms.insert(canonicalize(&SimpleGraph::from_edges(5, &edges).unwrap()));
        }
        assert_eq!(forms.len(), 34);
    }

    #[test]
    fn symmetric_graphs() {
        let k7 = SimpleGraph::complete(7).unwrap();
        let lab = canonical_labeling(&k7);
        assert_eq!(lab.orbit_count(), 1);
        let k44 = SimpleGraph::complete_multipartite(&[4, 4]).unwrap();
        assert_eq!(canonical_labeling(&k44).orbit_count(), 1);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        let petersen = SimpleGraph::from_edges(10, &edges).unwrap();
        let c = canonicalize(&petersen);
        for _ in 0..100 {
            let p = random_perm(10, &mut rng);
            assert_eq!(canonicalize(&petersen.permuted(&p)), c);
        }
        assert_eq!(canonical_labeling(&petersen).orbit_count(), 1);
    }
}
