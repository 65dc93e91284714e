//! Triangle-Y and Y-triangle moves, and closure of a graph under them.

use std::collections::HashMap;
use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::{canonical_labeling, CanonicalForm};
use crate::error::{Error, Result};
use crate::graph::{bits, SimpleGraph};
use crate::graph6;

/// One move, expressed in the labelling of the graph it is applied to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Move {
    /// Replace triangle `abc` by a new vertex joined to `a`, `b`, `c`.
    TriangleY([usize; 3]),
    /// Replace degree-3 vertex `v` by a triangle on its neighbours.
    YTriangle(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveSet {
    pub triangle_y: bool,
    pub y_triangle: bool,
}

impl MoveSet {
    pub const TRIANGLE_Y: MoveSet = MoveSet {
        triangle_y: true,
        y_triangle: false,
    };
    pub const BOTH: MoveSet = MoveSet {
        triangle_y: true,
        y_triangle: true,
    };
}

pub fn triangle_y(g: &SimpleGraph, t: [usize; 3]) -> Result<SimpleGraph> {
    let [a, b, c] = t;
    if a == b || b == c || a == c || !(g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c)) {
        return Err(Error::NotATriangle(t));
    }
    let mut h = *g;
    h.remove_edge_unchecked(a, b);
    h.remove_edge_unchecked(b, c);
    h.remove_edge_unchecked(a, c);
    let v = h.push_vertex()?;
    for x in t {
        h.insert_edge(v, x);
    }
    Ok(h)
}

/// Refused when two neighbours of `v` are already adjacent: the move would
/// create a parallel edge and change the edge count.
pub fn y_triangle(g: &SimpleGraph, v: usize) -> Result<SimpleGraph> {
    if v >= g.order() {
        return Err(Error::BadVertex {
            vertex: v,
            order: g.order(),
        });
    }
    if g.degree(v) != 3 {
        return Err(Error::NotAYVertex(v));
    }
    let nb = g.neighbor_list(v);
    if nb.iter().any(|&x| g.neighbors(x) & g.neighbors(v) != 0) {
        return Err(Error::WouldCreateParallel(v));
    }
    let mut h = *g;
    h.insert_edge(nb[0], nb[1]);
    h.insert_edge(nb[1], nb[2]);
    h.insert_edge(nb[0], nb[2]);
    h.delete_vertex(v)
}

pub fn apply(g: &SimpleGraph, m: Move) -> Result<SimpleGraph> {
    match m {
        Move::TriangleY(t) => triangle_y(g, t),
        Move::YTriangle(v) => y_triangle(g, v),
    }
}

/// Replays a provenance sequence from `start`, relabelling canonically
/// before each move as the closure does.
pub fn replay(start: &SimpleGraph, seq: &[Move]) -> Result<SimpleGraph> {
    let mut g = *canonical_labeling(start).canonical_graph();
    for &m in seq {
        g = *canonical_labeling(&apply(&g, m)?).canonical_graph();
    }
    Ok(g)
}

pub fn triangles(g: &SimpleGraph) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for (a, b) in g.edges() {
        let common = g.neighbors(a) & g.neighbors(b);
        for c in bits(common).filter(|&c| c > b) {
            out.push([a, b, c]);
        }
    }
    out
}

/// Every legal move of the selected kinds, in a fixed order.
pub fn legal_moves(g: &SimpleGraph, moves: MoveSet) -> Vec<Move> {
    let mut out = Vec::new();
    if moves.triangle_y && g.order() < crate::MAX_ORDER {
        out.extend(triangles(g).into_iter().map(Move::TriangleY));
    }
    if moves.y_triangle {
        for v in 0..g.order() {
            let nb = g.neighbors(v);
            if nb.count_ones() == 3 && bits(nb).all(|x| g.neighbors(x) & nb == 0) {
                out.push(Move::YTriangle(v));
            }
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct FamilyMember {
    pub form: CanonicalForm,
    /// Canonical representative; provenance moves refer to its labelling.
    pub graph: SimpleGraph,
    pub parent: Option<usize>,
    pub via: Option<Move>,
    pub depth: usize,
}

/// Closure of a seed graph under a set of moves, with one witnessing move
/// sequence per member.
#[derive(Clone, Debug)]
pub struct FamilyClosure {
    pub name: String,
    pub seed: CanonicalForm,
    pub moves: MoveSet,
    members: Vec<FamilyMember>,
    index: HashMap<CanonicalForm, usize>,
    /// Exploration stopped at the member budget; the set is partial.
    pub truncated: bool,
}

impl FamilyClosure {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[FamilyMember] {
        &self.members
    }

    pub fn contains(&self, form: &CanonicalForm) -> bool {
        self.index.contains_key(form)
    }

    pub fn find(&self, form: &CanonicalForm) -> Option<&FamilyMember> {
        self.index.get(form).map(|&i| &self.members[i])
    }

    pub fn require_complete(&self) -> Result<&Self> {
        if self.truncated {
            Err(Error::ClosureBudget(self.members.len()))
        } else {
            Ok(self)
        }
    }

    /// Moves leading from the seed representative to member `i`; each move is
    /// in the canonical labelling of the previous graph (see [`replay`]).
    pub fn provenance(&self, i: usize) -> Vec<Move> {
        let mut seq = Vec::new();
        let mut cur = i;
        while let (Some(p), Some(m)) = (self.members[cur].parent, self.members[cur].via) {
            seq.push(m);
            cur = p;
        }
        seq.reverse();
        seq
    }

    pub fn triangle_free_members(&self) -> Vec<CanonicalForm> {
        self.members
            .iter()
            .filter(|m| m.graph.is_triangle_free())
            .map(|m| m.form.clone())
            .collect()
    }

    /// Graph6 lines, one member per line in member order.
    pub fn write_graph6<W: Write>(&self, w: W) -> std::io::Result<()> {
        graph6::write_all(w, self.members.iter().map(|m| &m.graph))
    }

    pub fn provenance_json(&self) -> serde_json::Value {
        let members: Vec<_> = self
            .members
            .iter()
            .enumerate()
            .map(|(i, m)| {
                serde_json::json!({
                    "index": i,
                    "graph6": m.form.as_str(),
                    "order": m.graph.order(),
                    "edges": m.graph.edge_count(),
                    "triangle_free": m.graph.is_triangle_free(),
                    "degree_sequence": m.graph.degree_sequence(),
                    "depth": m.depth,
                    "parent": m.parent,
                    "moves": self.provenance(i),
                })
            })
            .collect();
        serde_json::json!({
            "name": self.name,
            "seed": self.seed.as_str(),
            "moves": self.moves,
            "size": self.members.len(),
            "truncated": self.truncated,
            "members": members,
        })
    }
}

pub fn family_closure(name: &str, seed: &SimpleGraph, moves: MoveSet) -> FamilyClosure {
    family_closure_with_budget(name, seed, moves, None)
}

/// Breadth-first closure. Each level is sorted by canonical form; a new
/// member's provenance is the first (parent, move) pair in that order.
pub fn family_closure_with_budget(
    name: &str,
    seed: &SimpleGraph,
    moves: MoveSet,
    budget: Option<usize>,
) -> FamilyClosure {
    let lab = canonical_labeling(seed);
    let seed_form = lab.form();
    let mut fam = FamilyClosure {
        name: name.to_string(),
        seed: seed_form.clone(),
        moves,
        members: vec![FamilyMember {
            form: seed_form.clone(),
            graph: *lab.canonical_graph(),
            parent: None,
            via: None,
            depth: 0,
        }],
        index: HashMap::from([(seed_form, 0)]),
        truncated: false,
    };
    let mut frontier = vec![0usize];
    let mut depth = 0;
    while !frontier.is_empty() {
        depth += 1;
        let expansions: Vec<Vec<(Move, CanonicalForm, SimpleGraph)>> = frontier
            .par_iter()
            .map(|&i| {
                let g = fam.members[i].graph;
                legal_moves(&g, moves)
                    .into_iter()
                    .map(|m| {
                        let child = apply(&g, m).expect("legal move applies");
                        let l = canonical_labeling(&child);
                        (m, l.form(), *l.canonical_graph())
                    })
                    .collect()
            })
            .collect();
        let mut fresh: Vec<FamilyMember> = Vec::new();
        let mut seen: HashMap<CanonicalForm, usize> = HashMap::new();
        for (&parent, children) in frontier.iter().zip(expansions) {
            for (m, form, graph) in children {
                if fam.index.contains_key(&form) || seen.contains_key(&form) {
                    continue;
                }
                seen.insert(form.clone(), fresh.len());
                fresh.push(FamilyMember {
                    form,
                    graph,
                    parent: Some(parent),
                    via: Some(m),
                    depth,
                });
            }
        }
        fresh.sort_by(|a, b| a.form.cmp(&b.form));
        frontier.clear();
        for m in fresh {
            if budget.is_some_and(|b| fam.members.len() >= b) {
                fam.truncated = true;
                return fam;
            }
            fam.index.insert(m.form.clone(), fam.members.len());
            frontier.push(fam.members.len());
            fam.members.push(m);
        }
    }
    fam
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::{are_isomorphic, canonicalize};

    #[test]
    fn triangle_y_on_k7() {
        let k7 = SimpleGraph::complete(7).unwrap();
        let h = triangle_y(&k7, [0, 1, 2]).unwrap();
        assert_eq!((h.order(), h.edge_count()), (8, 21));
        let back = y_triangle(&h, 7).unwrap();
        assert!(are_isomorphic(&back, &k7));
        assert_eq!(triangle_y(&k7.delete_edge(0, 1).unwrap(), [0, 1, 2]), Err(Error::NotATriangle([0, 1, 2])));
    }

    #[test]
    fn y_triangle_on_k33() {
        let k33 = SimpleGraph::complete_multipartite(&[3, 3]).unwrap();
        let h = y_triangle(&k33, 5).unwrap();
        assert_eq!((h.order(), h.edge_count()), (5, 9));
        let mut k5_minus = SimpleGraph::complete(5).unwrap();
        k5_minus.remove_edge_unchecked(3, 4);
        assert_eq!(canonicalize(&h), canonicalize(&k5_minus));
    }

    #[test]
    fn y_triangle_refusals() {
        let k4 = SimpleGraph::complete(4).unwrap();
        assert_eq!(y_triangle(&k4, 0), Err(Error::WouldCreateParallel(0)));
        let k33 = SimpleGraph::complete_multipartite(&[3, 3]).unwrap();
        let e = k33.delete_edge(0, 3).unwrap();
        assert_eq!(y_triangle(&e, 0), Err(Error::NotAYVertex(0)));
    }

    #[test]
    fn k7_triangle_y_family() {
        let k7 = SimpleGraph::complete(7).unwrap();
        let fam = family_closure("K7", &k7, MoveSet::TRIANGLE_Y);
        assert_eq!(fam.len(), 14);
        assert!(fam.members().iter().all(|m| m.graph.edge_count() == 21));
        // provenance replays
        for i in 0..fam.len() {
            let g = replay(&k7, &fam.provenance(i)).unwrap();
            assert_eq!(canonicalize(&g), fam.members()[i].form);
        }
    }

    #[test]
    fn k44_family_is_trivial() {
        let k44 = SimpleGraph::complete_multipartite(&[4, 4]).unwrap();
        let fam = family_closure("K44", &k44, MoveSet::BOTH);
        assert_eq!(fam.len(), 1);
        assert_eq!(fam.triangle_free_members().len(), 1);
    }

    #[test]
    fn budget_truncates() {
        let k7 = SimpleGraph::complete(7).unwrap();
        let fam = family_closure_with_budget("K7", &k7, MoveSet::TRIANGLE_Y, Some(3));
        assert!(fam.truncated);
        assert_eq!(fam.len(), 3);
        assert_eq!(fam.require_complete().unwrap_err(), Error::ClosureBudget(3));
    }
}
