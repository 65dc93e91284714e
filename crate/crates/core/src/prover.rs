//! Elimination and positive certificates for candidate graphs, and the full
//! classification run over both degree regimes.

use std::io::Write;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::canon::{canonicalize, CanonicalForm};
use crate::catalog;
use crate::enumeration::{enumerate, EnumOptions, OrderStats, Regime};
use crate::graph::{bits, SimpleGraph};
use crate::graph6;
use crate::moves::{family_closure, FamilyClosure, MoveSet};
use crate::planarity::{classify_reduced, is_k_apex, is_planar, Prop21Kind};
use crate::reduction::reduce_pair;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RuleSet {
    pub planar_reduction: bool,
    pub two_cut: bool,
}

impl RuleSet {
    pub const ALL: RuleSet = RuleSet {
        planar_reduction: true,
        two_cut: true,
    };
    pub const PLANAR_REDUCTION_ONLY: RuleSet = RuleSet {
        planar_reduction: true,
        two_cut: false,
    };
}

impl Default for RuleSet {
    fn default() -> Self {
        RuleSet::ALL
    }
}

/// One piece of a two-vertex cut: a component together with the cut pair,
/// plus the edge joining the pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SideSummary {
    pub vertices: Vec<usize>,
    pub order: usize,
    pub edges: usize,
    pub planar: bool,
    pub two_apex: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Certificate {
    /// Deleting the pair and reducing leaves a planar graph.
    NotIKPlanarReduction {
        pair: (usize, usize),
        reduced_edges: usize,
        clause: Prop21Kind,
    },
    /// Every piece of the cut is at most 2-apex.
    NotIKTwoCut {
        cut: (usize, usize),
        sides: Vec<SideSummary>,
    },
    /// Contracting `edge` gives a member of `family`.
    IKByContraction {
        edge: (usize, usize),
        family: String,
        target_order: usize,
        target: CanonicalForm,
    },
    Survivor,
}

impl Certificate {
    pub fn tag(&self) -> &'static str {
        match self {
            Certificate::NotIKPlanarReduction { .. } => "NotIKPlanarReduction",
            Certificate::NotIKTwoCut { .. } => "NotIKTwoCut",
            Certificate::IKByContraction { .. } => "IKByContraction",
            Certificate::Survivor => "Survivor",
        }
    }

    pub fn is_not_ik(&self) -> bool {
        matches!(
            self,
            Certificate::NotIKPlanarReduction { .. } | Certificate::NotIKTwoCut { .. }
        )
    }
}

pub fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

pub fn eliminate(g: &SimpleGraph, rules: RuleSet) -> Certificate {
    eliminate_with_pairs(g, rules, &all_pairs(g.order()))
}

/// As [`eliminate`], trying pairs in the given order.
pub fn eliminate_with_pairs(g: &SimpleGraph, rules: RuleSet, pairs: &[(usize, usize)]) -> Certificate {
    if rules.planar_reduction {
        for &(u, v) in pairs {
            if let Some(c) = planar_reduction(g, u, v) {
                return c;
            }
        }
    }
    if rules.two_cut {
        for &(u, v) in pairs {
            if let Some(c) = two_cut(g, u, v) {
                return c;
            }
        }
    }
    Certificate::Survivor
}

fn planar_reduction(g: &SimpleGraph, u: usize, v: usize) -> Option<Certificate> {
    let out = classify_reduced(&reduce_pair(g, u, v).ok()?);
    out.certifies_not_ik().then(|| Certificate::NotIKPlanarReduction {
        pair: (u.min(v), u.max(v)),
        reduced_edges: out.reduced_edges,
        clause: out.kind,
    })
}

/// Pieces of the cut `{u, v}`, or `None` when it does not disconnect `g`.
pub fn cut_pieces(g: &SimpleGraph, u: usize, v: usize) -> Option<Vec<(u32, SimpleGraph)>> {
    let pair = (1u32 << u) | (1 << v);
    let comps = g.components(g.vertex_mask() & !pair);
    if comps.len() < 2 {
        return None;
    }
    Some(
        comps
            .into_iter()
            .map(|c| {
                let keep = c | pair;
                let mut piece = g.induced(keep);
                // `induced` preserves order, so u and v map to their ranks.
                let (a, b) = (rank(keep, u.min(v)), rank(keep, u.max(v)));
                if !piece.has_edge(a, b) {
                    piece.insert_edge(a, b);
                }
                (c, piece)
            })
            .collect(),
    )
}

fn rank(mask: u32, v: usize) -> usize {
    (mask & ((1u32 << v) - 1)).count_ones() as usize
}

fn two_cut(g: &SimpleGraph, u: usize, v: usize) -> Option<Certificate> {
    let pieces = cut_pieces(g, u, v)?;
    let mut sides = Vec::new();
    for (c, piece) in pieces {
        let planar = is_planar(&piece);
        let two_apex = planar || is_k_apex(&piece, 2);
        if !two_apex {
            return None;
        }
        sides.push(SideSummary {
            vertices: bits(c).collect(),
            order: piece.order(),
            edges: piece.edge_count(),
            planar,
            two_apex,
        });
    }
    Some(Certificate::NotIKTwoCut {
        cut: (u.min(v), u.max(v)),
        sides,
    })
}

/// First edge, in edge order, whose contraction lies in one of the
/// families, which are tried in the given order.
pub fn positive_certificate(g: &SimpleGraph, families: &[FamilyClosure]) -> Option<Certificate> {
    let contractions: Vec<((usize, usize), SimpleGraph, CanonicalForm)> = g
        .edges()
        .map(|(u, v)| {
            let c = g.contract_edge(u, v).expect("edge exists");
            let f = canonicalize(&c);
            ((u, v), c, f)
        })
        .collect();
    for fam in families {
        for (edge, c, form) in &contractions {
            if fam.contains(form) {
                return Some(Certificate::IKByContraction {
                    edge: *edge,
                    family: fam.name.clone(),
                    target_order: c.order(),
                    target: form.clone(),
                });
            }
        }
    }
    None
}

/// Re-validates a certificate from its witness data, without reusing the
/// search that produced it.
pub fn check_certificate(
    g: &SimpleGraph,
    cert: &Certificate,
    families: &[FamilyClosure],
) -> std::result::Result<(), String> {
    match cert {
        Certificate::NotIKPlanarReduction { pair, reduced_edges, .. } => {
            let r = reduce_pair(g, pair.0, pair.1).map_err(|e| e.to_string())?;
            if r.edge_count() != *reduced_edges {
                return Err(format!("reduced edge count {} != {}", r.edge_count(), reduced_edges));
            }
            if !is_planar(&r) {
                return Err(format!("reduction at {pair:?} is not planar"));
            }
            Ok(())
        }
        Certificate::NotIKTwoCut { cut, sides } => {
            let (u, v) = *cut;
            if u >= g.order() || v >= g.order() || u == v {
                return Err("bad cut pair".into());
            }
            let rest = g.vertex_mask() & !(1 << u) & !(1 << v);
            let listed: u32 = sides
                .iter()
                .map(|s| s.vertices.iter().fold(0u32, |m, &x| m | 1 << x))
                .fold(0, |a, b| a | b);
            if listed != rest || sides.len() < 2 {
                return Err("sides do not partition the remaining vertices".into());
            }
            for s in sides {
                let mask = s.vertices.iter().fold(0u32, |m, &x| m | 1 << x);
                // a side must be a union of components: no edges leave it
                if bits(mask).any(|x| g.neighbors(x) & rest & !mask != 0) {
                    return Err(format!("side {:?} is joined to another side", s.vertices));
                }
                let mut piece = g.induced(mask | 1 << u | 1 << v);
                let (a, b) = (rank(mask | 1 << u | 1 << v, u), rank(mask | 1 << u | 1 << v, v));
                if !piece.has_edge(a, b) {
                    piece.insert_edge(a, b);
                }
                if !is_k_apex(&piece, 2) {
                    return Err(format!("side {:?} is not 2-apex", s.vertices));
                }
            }
            Ok(())
        }
        Certificate::IKByContraction {
            edge,
            family,
            target_order,
            target,
        } => {
            let fam = families
                .iter()
                .find(|f| &f.name == family)
                .ok_or_else(|| format!("unknown family {family}"))?;
            let c = g.contract_edge(edge.0, edge.1).map_err(|e| e.to_string())?;
            if c.order() != *target_order || canonicalize(&c) != *target {
                return Err("contraction does not match the recorded target".into());
            }
            if !fam.contains(target) {
                return Err(format!("target is not in the {family} family"));
            }
            Ok(())
        }
        Certificate::Survivor => Ok(()),
    }
}

/// Closures consulted for positive certificates, K7 first.
pub fn standard_families() -> Vec<FamilyClosure> {
    vec![
        family_closure("K7", &SimpleGraph::complete(7).expect("K7"), MoveSet::TRIANGLE_Y),
        family_closure(
            "K3311",
            &SimpleGraph::complete_multipartite(&[3, 3, 1, 1]).expect("K3311"),
            MoveSet::BOTH,
        ),
    ]
}

#[derive(Clone, Debug, Serialize)]
pub struct CandidateRecord {
    pub regime: String,
    pub graph6: CanonicalForm,
    pub order: usize,
    pub degree_sequence: Vec<usize>,
    pub certificate: Certificate,
    /// Positive certificate, present for survivors only.
    pub positive: Option<Certificate>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SurvivorRecord {
    pub graph6: CanonicalForm,
    pub order: usize,
    pub degree_sequence: Vec<usize>,
    pub positive: Option<Certificate>,
    /// Catalog name when the survivor is a known graph.
    pub identified_as: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RegimeReport {
    pub regime: String,
    pub candidates: usize,
    pub planar_reduction: usize,
    pub two_cut: usize,
    pub survivors: Vec<SurvivorRecord>,
    /// Candidates removed by the two-cut rule alone.
    pub two_cut_only: Vec<CanonicalForm>,
    pub orders: Vec<OrderStats>,
    pub truncated: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyCounts {
    pub k7: usize,
    pub k3311: usize,
    pub k3311_triangle_free: usize,
    pub e9e: usize,
    pub e9e_triangle_free: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremReport {
    pub rules: RuleSet,
    pub regime_a: RegimeReport,
    pub regime_b: RegimeReport,
    pub families: FamilyCounts,
    pub checks: Vec<Check>,
    pub holds: bool,
    /// Excluded from reproducibility comparisons.
    pub wall_time_ms: u128,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct TheoremOptions {
    pub rules: RuleSet,
    pub node_budget: Option<u64>,
}

/// Candidates of a regime with their certificates, in canonical order.
pub fn certify_regime(
    label: &str,
    regime: &Regime,
    rules: RuleSet,
    families: &[FamilyClosure],
    node_budget: Option<u64>,
) -> (Vec<CandidateRecord>, Vec<OrderStats>, bool) {
    let e = enumerate(regime, EnumOptions { node_budget });
    let records = e
        .graphs
        .par_iter()
        .map(|(form, g)| {
            let certificate = eliminate(g, rules);
            let positive = match certificate {
                Certificate::Survivor => positive_certificate(g, families),
                _ => None,
            };
            CandidateRecord {
                regime: label.to_string(),
                graph6: form.clone(),
                order: g.order(),
                degree_sequence: g.degree_sequence(),
                certificate,
                positive,
            }
        })
        .collect();
    (records, e.stats, e.truncated)
}

fn summarize(label: &str, records: &[CandidateRecord], orders: Vec<OrderStats>, truncated: bool) -> RegimeReport {
    let named: Vec<(String, CanonicalForm)> = ["cousin110", "M_11", "cousin94"]
        .iter()
        .filter_map(|n| catalog::build(n).ok().map(|g| (g.name.clone(), g.form())))
        .collect();
    let count = |tag: &str| records.iter().filter(|r| r.certificate.tag() == tag).count();
    let survivors = records
        .iter()
        .filter(|r| r.certificate == Certificate::Survivor)
        .map(|r| SurvivorRecord {
            graph6: r.graph6.clone(),
            order: r.order,
            degree_sequence: r.degree_sequence.clone(),
            positive: r.positive.clone(),
            identified_as: named.iter().find(|(_, f)| *f == r.graph6).map(|(n, _)| n.clone()),
        })
        .collect();
    RegimeReport {
        regime: label.to_string(),
        candidates: records.len(),
        planar_reduction: count("NotIKPlanarReduction"),
        two_cut: count("NotIKTwoCut"),
        two_cut_only: records
            .iter()
            .filter(|r| r.certificate.tag() == "NotIKTwoCut")
            .map(|r| r.graph6.clone())
            .collect(),
        survivors,
        orders,
        truncated,
    }
}

/// Runs both regimes, writes one JSON line per candidate to `sink`, and
/// checks every claim of the classification.
pub fn verify_theorem(opts: TheoremOptions, mut sink: Option<&mut dyn Write>) -> std::io::Result<TheoremReport> {
    let start = Instant::now();
    let families = standard_families();
    let mut reports = Vec::new();
    let mut all_records = Vec::new();
    for (label, regime) in [("A", Regime::regime_a()), ("B", Regime::regime_b())] {
        let (records, orders, truncated) = certify_regime(label, &regime, opts.rules, &families, opts.node_budget);
        if let Some(w) = sink.as_deref_mut() {
            for r in &records {
                serde_json::to_writer(&mut *w, r)?;
                w.write_all(b"\n")?;
            }
        }
        reports.push(summarize(label, &records, orders, truncated));
        all_records.push(records);
    }
    let regime_b = reports.pop().expect("two regimes");
    let regime_a = reports.pop().expect("two regimes");

    let e9 = family_closure("E9+e", &catalog::build("cousin110").expect("catalog").graph, MoveSet::BOTH);
    let fams = FamilyCounts {
        k7: families[0].len(),
        k3311: families[1].len(),
        k3311_triangle_free: families[1].triangle_free_members().len(),
        e9e: e9.len(),
        e9e_triangle_free: e9.triangle_free_members().len(),
    };

    let mut checks = Vec::new();
    let mut check = |name: &str, passed: bool, detail: String| {
        checks.push(Check {
            name: name.to_string(),
            passed,
            detail,
        })
    };
    check(
        "enumeration complete",
        !regime_a.truncated && !regime_b.truncated,
        format!("A truncated {}, B truncated {}", regime_a.truncated, regime_b.truncated),
    );
    check(
        "regime A has no survivors",
        regime_a.survivors.is_empty(),
        format!("{} survivors", regime_a.survivors.len()),
    );
    let mut orders: Vec<usize> = regime_b.survivors.iter().map(|s| s.order).collect();
    orders.sort_unstable();
    check(
        "regime B has exactly three survivors of orders 10, 11, 12",
        orders == [10, 11, 12],
        format!("orders {orders:?}"),
    );
    let ident = |n: usize| {
        regime_b
            .survivors
            .iter()
            .find(|s| s.order == n)
            .and_then(|s| s.identified_as.clone())
    };
    check(
        "order-10 survivor is cousin 110",
        ident(10).as_deref() == Some("cousin110"),
        format!("{:?}", ident(10)),
    );
    check(
        "order-11 survivor is M_11",
        ident(11).as_deref() == Some("M_11"),
        format!("{:?}", ident(11)),
    );
    check(
        "order-12 survivor is cousin 94",
        ident(12).as_deref() == Some("cousin94"),
        format!("{:?}", ident(12)),
    );
    let into_k7 = regime_a.survivors.iter().chain(&regime_b.survivors).all(|s| {
        matches!(&s.positive, Some(Certificate::IKByContraction { family, .. }) if family == "K7")
    });
    check(
        "every survivor contracts into the K7 family",
        into_k7,
        regime_b
            .survivors
            .iter()
            .map(|s| format!("{}:{}", s.graph6, s.positive.as_ref().map_or("none", |c| c.tag())))
            .collect::<Vec<_>>()
            .join(", "),
    );
    let mut replay_failures = Vec::new();
    for r in all_records.iter().flatten() {
        let g = r.graph6.to_graph();
        for c in std::iter::once(&r.certificate).chain(r.positive.as_ref()) {
            if let Err(e) = check_certificate(&g, c, &families) {
                replay_failures.push(format!("{}: {e}", r.graph6));
            }
        }
    }
    check(
        "every certificate replays",
        replay_failures.is_empty(),
        format!("{} failures {:?}", replay_failures.len(), replay_failures.iter().take(5).collect::<Vec<_>>()),
    );
    check(
        "E9+e family has 110 members, 10 triangle-free",
        fams.e9e == 110 && fams.e9e_triangle_free == 10,
        format!("{} members, {} triangle-free", fams.e9e, fams.e9e_triangle_free),
    );
    let holds = checks.iter().all(|c| c.passed);
    Ok(TheoremReport {
        rules: opts.rules,
        regime_a,
        regime_b,
        families: fams,
        checks,
        holds,
        wall_time_ms: start.elapsed().as_millis(),
    })
}

/// Survivor list as graph6 lines.
pub fn survivors_graph6(report: &RegimeReport) -> Vec<String> {
    report
        .survivors
        .iter()
        .map(|s| graph6::encode_string(&s.graph6.to_graph()))
        .collect()
}
