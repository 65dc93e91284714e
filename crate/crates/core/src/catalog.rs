//! Named graphs used throughout the classification.

use serde::Serialize;

use crate::canon::{canonicalize, CanonicalForm};
use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::moves::{family_closure, FamilyClosure, MoveSet};

/// Names accepted by [`build`].
pub const NAMES: &[&str] = &[
    "K5", "K33", "K7", "K44", "K3311", "Petersen", "cousin110", "M_11", "cousin94",
];

#[derive(Clone, Debug)]
pub struct NamedGraph {
    pub name: String,
    pub graph: SimpleGraph,
    /// An edge whose contraction lands in `expected_family`.
    pub contraction_witness: Option<(usize, usize)>,
    pub expected_family: Option<String>,
    pub expected_order: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Descriptor {
    pub name: String,
    pub graph6: String,
    pub order: usize,
    pub edges: usize,
    pub degree_sequence: Vec<usize>,
    pub triangle_free: bool,
    pub contraction_witness: Option<(usize, usize)>,
    pub expected_family: Option<String>,
    pub expected_order: Option<usize>,
}

impl NamedGraph {
    fn plain(name: &str, graph: SimpleGraph) -> Self {
        NamedGraph {
            name: name.to_string(),
            graph,
            contraction_witness: None,
            expected_family: None,
            expected_order: None,
        }
    }

    fn with_witness(mut self, edge: (usize, usize), order: usize) -> Self {
        self.contraction_witness = Some(edge);
        self.expected_family = Some("K7".to_string());
        self.expected_order = Some(order);
        self
    }

    pub fn form(&self) -> CanonicalForm {
        canonicalize(&self.graph)
    }

    pub fn descriptor(&self) -> Descriptor {
        Descriptor {
            name: self.name.clone(),
            graph6: crate::graph6::encode_string(&self.graph),
            order: self.graph.order(),
            edges: self.graph.edge_count(),
            degree_sequence: self.graph.degree_sequence(),
            triangle_free: self.graph.is_triangle_free(),
            contraction_witness: self.contraction_witness,
            expected_family: self.expected_family.clone(),
            expected_order: self.expected_order,
        }
    }
}

fn normalize(name: &str) -> String {
    name.chars()
        .filter(|c| !matches!(c, '_' | ',' | ' ' | '{' | '}' | '-'))
        .collect::<String>()
        .to_ascii_lowercase()
}

pub fn build(name: &str) -> Result<NamedGraph> {
    let g = match normalize(name).as_str() {
        "k5" => NamedGraph::plain("K5", SimpleGraph::complete(5)?),
        "k33" => NamedGraph::plain("K33", SimpleGraph::complete_multipartite(&[3, 3])?),
        "k7" => NamedGraph::plain("K7", SimpleGraph::complete(7)?),
        "k44" => NamedGraph::plain("K44", SimpleGraph::complete_multipartite(&[4, 4])?),
        "k3311" => NamedGraph::plain("K3311", SimpleGraph::complete_multipartite(&[3, 3, 1, 1])?),
        "petersen" => NamedGraph::plain("Petersen", petersen()),
        "cousin110" => NamedGraph::plain("cousin110", cousin110()).with_witness(COUSIN110_WITNESS, 9),
        "m11" => NamedGraph::plain("M_11", m11()).with_witness(M11_WITNESS, 10),
        "cousin94" => NamedGraph::plain("cousin94", cousin94()?).with_witness(COUSIN94_WITNESS, 11),
        _ => return Err(Error::UnknownGraph(name.to_string())),
    };
    Ok(g)
}

// y1-v2 in both constructions; cousin94's edge is in its canonical labelling.
const COUSIN110_WITNESS: (usize, usize) = (3, 8);
const M11_WITNESS: (usize, usize) = (3, 8);
const COUSIN94_WITNESS: (usize, usize) = (0, 1);

fn petersen() -> SimpleGraph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    SimpleGraph::from_edges(10, &edges).expect("valid construction")
}

/// Vertices a, b, x1, y1, z1, z2, z3, v1, v2, v3 as 0..10.
fn cousin110() -> SimpleGraph {
    let (a, b, x1, y1) = (0, 1, 2, 3);
    let z = [4, 5, 6];
    let v = [7, 8, 9];
    let mut edges = Vec::new();
    for hub in [a, b] {
        for w in [x1, y1, z[0], z[1], z[2]] {
            edges.push((hub, w));
        }
    }
    for zi in z {
        for vj in v {
            edges.push((zi, vj));
        }
    }
    edges.extend([(x1, v[0]), (y1, v[0]), (y1, v[1])]);
    SimpleGraph::from_edges(10, &edges).expect("valid construction")
}

/// Vertices a, b, x1, y1, y2, z1, z2, v1, v2, v3, v4 as 0..11.
fn m11() -> SimpleGraph {
    let (a, b, x1, y1, y2, z1, z2) = (0, 1, 2, 3, 4, 5, 6);
    let (v1, v2, v3, v4) = (7, 8, 9, 10);
    let mut edges = Vec::new();
    for hub in [a, b] {
        for w in [x1, y1, y2, z1, z2] {
            edges.push((hub, w));
        }
    }
    for zi in [z1, z2] {
        for vj in [v1, v2, v3] {
            edges.push((zi, vj));
        }
    }
    edges.extend([(x1, v1), (v2, y1), (v3, y2), (v4, y1), (v4, y2), (v4, v1)]);
    SimpleGraph::from_edges(11, &edges).expect("valid construction")
}

/// The triangle-free 12-vertex cousin of cousin 110 with degree sequence
/// [5,5,4,4,4,4,3,3,3,3,3,3], in canonical labelling.
fn cousin94() -> Result<SimpleGraph> {
    let fam = family_closure("E9+e", &cousin110(), MoveSet::BOTH);
    let want = [5, 5, 4, 4, 4, 4, 3, 3, 3, 3, 3, 3];
    let mut hits = fam
        .members()
        .iter()
        .filter(|m| m.graph.is_triangle_free() && m.graph.degree_sequence() == want);
    match (hits.next(), hits.next()) {
        (Some(m), None) => Ok(m.graph),
        _ => Err(Error::UnknownGraph("cousin94".to_string())),
    }
}

/// Every edge whose contraction is a member of `family`, optionally of a
/// given order.
pub fn contraction_witnesses(
    g: &SimpleGraph,
    family: &FamilyClosure,
    order: Option<usize>,
) -> Vec<(usize, usize)> {
    g.edges()
        .filter(|&(u, v)| {
            let c = g.contract_edge(u, v).expect("edge exists");
            order.is_none_or(|n| c.order() == n) && family.contains(&canonicalize(&c))
        })
        .collect()
}

/// Checks the stored witness. When it fails, all edges are searched and a
/// working edge, if any, replaces it.
pub fn verify_contraction_witness(n: &mut NamedGraph, family: &FamilyClosure) -> Result<bool> {
    let w = n
        .contraction_witness
        .ok_or_else(|| Error::NoWitness(n.name.clone()))?;
    let hits = |e: (usize, usize)| {
        n.graph.contract_edge(e.0, e.1).is_ok_and(|c| {
            n.expected_order.is_none_or(|k| c.order() == k) && family.contains(&canonicalize(&c))
        })
    };
    if hits(w) {
        return Ok(true);
    }
    match contraction_witnesses(&n.graph, family, n.expected_order).first() {
        Some(&e) => {
            n.contraction_witness = Some(e);
            Ok(true)
        }
        None => Ok(false),
    }
}
