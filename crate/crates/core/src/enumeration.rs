//! Isomorphism-free generation of the candidate graphs, and a small
//! brute-force generator used as a test oracle.
//!
//! Generation adds one vertex at a time. The vertex removed to obtain a
//! graph's parent is chosen canonically: maximum degree first, then the
//! largest neighbour-degree invariants, then the smallest canonical position.
//! Because that vertex has maximum degree, the degrees of successively added
//! vertices never decrease, which bounds how many edges the remaining
//! vertices must supply.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::canon::{canonical_labeling, canonicalize, CanonicalForm, Labeling};
use crate::error::{Error, Result};
use crate::graph::{bits, SimpleGraph};
use crate::MAX_ORDER;

/// Predicate on a descending degree sequence.
pub type DegreePredicate = Arc<dyn Fn(&[usize]) -> bool + Send + Sync>;

#[derive(Clone)]
pub enum DegreeProfile {
    Any,
    /// Some vertex has degree at least 6.
    MaxDegAtLeast6,
    /// Maximum degree exactly 5, attained at least twice.
    MaxDeg5WithAtLeastTwoDeg5,
    Custom(DegreePredicate),
}

impl DegreeProfile {
    pub fn accepts(&self, seq: &[usize]) -> bool {
        match self {
            DegreeProfile::Any => true,
            DegreeProfile::MaxDegAtLeast6 => seq.first().is_some_and(|&d| d >= 6),
            DegreeProfile::MaxDeg5WithAtLeastTwoDeg5 => {
                seq.first() == Some(&5) && seq.iter().filter(|&&d| d == 5).count() >= 2
            }
            DegreeProfile::Custom(f) => f(seq),
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            DegreeProfile::Any => "any",
            DegreeProfile::MaxDegAtLeast6 => "maxdeg6plus",
            DegreeProfile::MaxDeg5WithAtLeastTwoDeg5 => "two-deg5",
            DegreeProfile::Custom(_) => "custom",
        }
    }
}

impl fmt::Debug for DegreeProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Debug)]
pub struct Regime {
    pub edge_count: usize,
    pub min_degree: usize,
    pub triangle_free: bool,
    pub connected: bool,
    pub profile: DegreeProfile,
    /// Optional cap on the order, below the one implied by the other fields.
    pub max_order: Option<usize>,
}

impl Regime {
    pub fn new(edge_count: usize, profile: DegreeProfile) -> Self {
        Regime {
            edge_count,
            min_degree: 3,
            triangle_free: true,
            connected: true,
            profile,
            max_order: None,
        }
    }

    /// 22 edges with a vertex of degree at least 6.
    pub fn regime_a() -> Self {
        Regime::new(22, DegreeProfile::MaxDegAtLeast6)
    }

    /// 22 edges, maximum degree 5, at least two vertices of degree 5.
    pub fn regime_b() -> Self {
        Regime::new(22, DegreeProfile::MaxDeg5WithAtLeastTwoDeg5)
    }

    /// Orders not excluded by edge count, minimum degree, Mantel's bound
    /// and connectivity.
    pub fn order_range(&self) -> std::ops::RangeInclusive<usize> {
        let m = self.edge_count;
        let cap = |n: usize| if self.triangle_free { n * n / 4 } else { n * (n.max(1) - 1) / 2 };
        let lo = (0..=MAX_ORDER).find(|&n| cap(n) >= m).unwrap_or(MAX_ORDER + 1);
        let mut hi = MAX_ORDER;
        if self.min_degree > 0 {
            hi = hi.min(2 * m / self.min_degree);
        }
        if self.connected {
            hi = hi.min(m + 1);
        }
        if let Some(c) = self.max_order {
            hi = hi.min(c);
        }
        lo..=hi
    }

    pub fn accepts(&self, g: &SimpleGraph) -> bool {
        g.edge_count() == self.edge_count
            && g.min_degree() >= self.min_degree
            && (!self.triangle_free || g.is_triangle_free())
            && (!self.connected || g.is_connected())
            && self.max_order.is_none_or(|c| g.order() <= c)
            && self.profile.accepts(&g.degree_sequence())
    }
}

fn erdos_gallai(seq: &[usize]) -> bool {
    let n = seq.len();
    let total: usize = seq.iter().sum();
    if total % 2 == 1 {
        return false;
    }
    let mut left = 0;
    for k in 1..=n {
        left += seq[k - 1];
        let right = k * (k - 1) + seq[k..].iter().map(|&d| d.min(k)).sum::<usize>();
        if left > right {
            return false;
        }
    }
    true
}

/// In a triangle-free graph the neighbours of a vertex are independent, so
/// their degrees sum to at most the edge count.
fn triangle_free_feasible(seq: &[usize], m: usize) -> bool {
    let Some(&d) = seq.first() else { return true };
    seq.len() > d && seq[seq.len() - d..].iter().sum::<usize>() <= m
}

/// Descending degree sequences of a given order compatible with the regime.
pub fn feasible_sequences_of_order(r: &Regime, n: usize) -> Vec<Vec<usize>> {
    fn rec(r: &Regime, n: usize, cap: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let slots = n - cur.len();
        if slots == 0 {
            if left == 0
                && erdos_gallai(cur)
                && (!r.triangle_free || triangle_free_feasible(cur, r.edge_count))
                && r.profile.accepts(cur)
            {
                out.push(cur.clone());
            }
            return;
        }
        let lo_each = r.min_degree;
        for d in (lo_each..=cap).rev() {
            if d * slots < left || lo_each * slots > left {
                continue;
            }
            if d + lo_each * (slots - 1) > left {
                continue;
            }
            cur.push(d);
            rec(r, n, d, left - d, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if r.edge_count == 0 && r.profile.accepts(&[]) {
            out.push(Vec::new());
        }
        return out;
    }
    if !r.order_range().contains(&n) {
        return out;
    }
    rec(r, n, n - 1, 2 * r.edge_count, &mut Vec::new(), &mut out);
    out
}

pub fn feasible_degree_sequences(r: &Regime) -> Vec<Vec<usize>> {
    r.order_range()
        .flat_map(|n| feasible_sequences_of_order(r, n))
        .collect()
}

#[derive(Clone, Copy, Debug, Default)]
pub struct EnumOptions {
    /// Stop after this many search nodes; the result is then marked truncated.
    pub node_budget: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrderStats {
    pub order: usize,
    pub sequences: usize,
    pub nodes: u64,
    pub graphs: usize,
}

#[derive(Clone, Debug)]
pub struct Enumeration {
    /// Canonical representatives sorted by canonical form.
    pub graphs: Vec<(CanonicalForm, SimpleGraph)>,
    pub stats: Vec<OrderStats>,
    /// The node budget ran out; `graphs` is incomplete.
    pub truncated: bool,
}

impl Enumeration {
    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }

    pub fn forms(&self) -> BTreeSet<CanonicalForm> {
        self.graphs.iter().map(|(f, _)| f.clone()).collect()
    }
}

pub fn enumerate(r: &Regime, opts: EnumOptions) -> Enumeration {
    let counter = Budget::new(opts.node_budget);
    let mut graphs = Vec::new();
    let mut stats = Vec::new();
    for n in r.order_range() {
        let seqs = feasible_sequences_of_order(r, n);
        if seqs.is_empty() {
            continue;
        }
        let before = counter.used();
        let found = enumerate_order_inner(r, n, &seqs, &counter);
        stats.push(OrderStats {
            order: n,
            sequences: seqs.len(),
            nodes: counter.used() - before,
            graphs: found.len(),
        });
        graphs.extend(found);
    }
    graphs.sort_by(|a, b| a.0.cmp(&b.0));
    Enumeration {
        graphs,
        stats,
        truncated: counter.exhausted(),
    }
}

/// Graphs of exactly order `n` in the regime.
pub fn enumerate_order(r: &Regime, n: usize, opts: EnumOptions) -> Enumeration {
    let counter = Budget::new(opts.node_budget);
    let seqs = feasible_sequences_of_order(r, n);
    let mut graphs = if seqs.is_empty() {
        Vec::new()
    } else {
        enumerate_order_inner(r, n, &seqs, &counter)
    };
    graphs.sort_by(|a, b| a.0.cmp(&b.0));
    Enumeration {
        stats: vec![OrderStats {
            order: n,
            sequences: seqs.len(),
            nodes: counter.used(),
            graphs: graphs.len(),
        }],
        graphs,
        truncated: counter.exhausted(),
    }
}

struct Budget {
    used: AtomicU64,
    limit: Option<u64>,
    hit: AtomicBool,
}

impl Budget {
    fn new(limit: Option<u64>) -> Self {
        Budget {
            used: AtomicU64::new(0),
            limit,
            hit: AtomicBool::new(false),
        }
    }

    /// Counts one node; false once the budget is spent.
    fn tick(&self) -> bool {
        let u = self.used.fetch_add(1, Ordering::Relaxed) + 1;
        if self.limit.is_some_and(|l| u > l) {
            self.hit.store(true, Ordering::Relaxed);
            return false;
        }
        !self.hit.load(Ordering::Relaxed)
    }

    fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed)
    }

    fn exhausted(&self) -> bool {
        self.hit.load(Ordering::Relaxed)
    }
}

/// Bounds for one target order, read off the feasible degree sequences.
#[derive(Clone, Copy, Debug)]
struct Plan {
    n: usize,
    m: usize,
    delta: usize,
    triangle_free: bool,
    /// Range of the final maximum degree.
    lo: usize,
    hi: usize,
}

fn enumerate_order_inner(
    r: &Regime,
    n: usize,
    seqs: &[Vec<usize>],
    budget: &Budget,
) -> Vec<(CanonicalForm, SimpleGraph)> {
    let plan = Plan {
        n,
        m: r.edge_count,
        delta: r.min_degree,
        triangle_free: r.triangle_free,
        lo: seqs.iter().map(|s| s[0]).min().unwrap_or(0),
        hi: seqs.iter().map(|s| s[0]).max().unwrap_or(0),
    };
    let root = SimpleGraph::empty(1).expect("order 1");
    if n == 1 {
        return if r.accepts(&root) {
            vec![(canonicalize(&root), root)]
        } else {
            Vec::new()
        };
    }
    // Expand breadth-first until there is enough independent work.
    let mut frontier = vec![root];
    let mut level = 1;
    while level < n - 1 && frontier.len() < 256 {
        frontier = frontier
            .par_iter()
            .flat_map_iter(|p| children(&plan, p, budget))
            .collect();
        level += 1;
    }
    let leaves: Vec<SimpleGraph> = frontier
        .par_iter()
        .flat_map_iter(|p| {
            let mut out = Vec::new();
            descend(&plan, p, budget, &mut out);
            out
        })
        .collect();
    leaves
        .into_par_iter()
        .filter(|g| r.accepts(g))
        .map(|g| {
            let l = canonical_labeling(&g);
            (l.form(), *l.canonical_graph())
        })
        .collect()
}

fn descend(plan: &Plan, p: &SimpleGraph, budget: &Budget, out: &mut Vec<SimpleGraph>) {
    if p.order() == plan.n {
        out.push(*p);
        return;
    }
    for c in children(plan, p, budget) {
        descend(plan, &c, budget, out);
    }
}

fn degrees(g: &SimpleGraph) -> [usize; MAX_ORDER] {
    let mut d = [0; MAX_ORDER];
    for (v, x) in d.iter_mut().enumerate().take(g.order()) {
        *x = g.degree(v);
    }
    d
}

/// Accepted one-vertex extensions of `p`, one per isomorphism class.
fn children(plan: &Plan, p: &SimpleGraph, budget: &Budget) -> Vec<SimpleGraph> {
    if !budget.tick() {
        return Vec::new();
    }
    let k = p.order();
    let rest = plan.n - k - 1;
    let e = p.edge_count();
    let deg = degrees(p);
    let mut forced = 0u32;
    let mut allowed = 0u32;
    let mut maxdeg = 0;
    for v in 0..k {
        if deg[v] + 1 + rest < plan.delta {
            return Vec::new();
        }
        if deg[v] + rest < plan.delta {
            forced |= 1 << v;
        }
        if deg[v] < plan.hi {
            allowed |= 1 << v;
        }
        maxdeg = maxdeg.max(deg[v]);
    }
    if forced & !allowed != 0 {
        return Vec::new();
    }
    if plan.triangle_free && bits(forced).any(|v| p.neighbors(v) & forced != 0) {
        return Vec::new();
    }
    let left = plan.m - e;
    let mut smin = (forced.count_ones() as usize)
        .max(plan.delta.saturating_sub(rest))
        .max(maxdeg)
        .max(left.saturating_sub(rest * plan.hi));
    if rest == 0 {
        smin = smin.max(plan.lo);
    }
    let smax = plan.hi.min(k).min(left / (rest + 1));
    if smin > smax {
        return Vec::new();
    }

    let mut sets = Vec::new();
    let optional: Vec<usize> = bits(allowed & !forced).collect();
    collect_sets(p, plan.triangle_free, &optional, 0, forced, smin, smax, &mut sets);

    let mut parent_lab: Option<Labeling> = None;
    let mut out = Vec::new();
    for s in sets {
        let size = s.count_ones() as usize;
        if bits(s).any(|v| deg[v] + 1 > size) {
            continue;
        }
        let e2 = e + size;
        let left2 = plan.m - e2;
        if rest == 0 {
            if left2 != 0 {
                continue;
            }
        } else {
            if left2 < (rest - 1) * size + size.max(plan.lo) || left2 > rest * plan.hi {
                continue;
            }
            let deficit: usize = (0..k)
                .map(|v| plan.delta.saturating_sub(deg[v] + ((s >> v) & 1) as usize))
                .sum::<usize>()
                + plan.delta.saturating_sub(size);
            if 2 * left2 < deficit + plan.delta * rest {
                continue;
            }
        }
        let lab = parent_lab.get_or_insert_with(|| canonical_labeling(p));
        if !lab.is_trivial_group() && !is_orbit_minimum(lab, s) {
            continue;
        }
        let mut c = *p;
        let v = c.push_vertex().expect("order checked");
        for u in bits(s) {
            c.insert_edge(u, v);
        }
        if is_canonical_extension(&c) {
            out.push(c);
        }
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn collect_sets(
    g: &SimpleGraph,
    tf: bool,
    optional: &[usize],
    i: usize,
    cur: u32,
    smin: usize,
    smax: usize,
    out: &mut Vec<u32>,
) {
    let size = cur.count_ones() as usize;
    if size + (optional.len() - i) < smin {
        return;
    }
    if i == optional.len() {
        out.push(cur);
        return;
    }
    let v = optional[i];
    if size < smax && !(tf && g.neighbors(v) & cur != 0) {
        collect_sets(g, tf, optional, i + 1, cur | 1 << v, smin, smax, out);
    }
    collect_sets(g, tf, optional, i + 1, cur, smin, smax, out);
}

fn map_mask(perm: &[u8], s: u32) -> u32 {
    bits(s).fold(0, |acc, v| acc | 1 << perm[v])
}

/// True when no automorphism image of `s` is smaller as a bitmask.
fn is_orbit_minimum(lab: &Labeling, s: u32) -> bool {
    let gens: Vec<&[u8]> = lab.generators().collect();
    let mut seen = HashSet::from([s]);
    let mut stack = vec![s];
    while let Some(t) = stack.pop() {
        for g in &gens {
            let u = map_mask(g, t);
            if u < s {
                return false;
            }
            if seen.insert(u) {
                stack.push(u);
            }
        }
    }
    true
}

fn vertex_key(g: &SimpleGraph, deg: &[usize], v: usize) -> (usize, usize, usize) {
    let nb = g.neighbors(v);
    let s1 = bits(nb).map(|u| deg[u]).sum();
    let s2 = bits(nb).map(|u| deg[u] * deg[u]).sum();
    (deg[v], s1, s2)
}

/// Whether the last vertex of `c` is equivalent to its canonical deletion
/// vertex.
fn is_canonical_extension(c: &SimpleGraph) -> bool {
    let n = c.order();
    let last = n - 1;
    let deg = degrees(c);
    let keys: Vec<_> = (0..n).map(|v| vertex_key(c, &deg, v)).collect();
    let best = *keys.iter().max().expect("nonempty");
    if keys[last] != best {
        return false;
    }
    let ties: Vec<usize> = (0..n).filter(|&v| keys[v] == best).collect();
    if ties.len() == 1 {
        return true;
    }
    let lab = canonical_labeling(c);
    let chosen = *ties
        .iter()
        .min_by_key(|&&v| lab.position(v))
        .expect("nonempty");
    lab.orbit_rep(chosen) == lab.orbit_rep(last)
}

/// Filters understood by [`brute_force_all`]; the first four prune the
/// search, `extra` is applied to finished graphs only.
#[derive(Clone, Default)]
pub struct BruteFilter {
    pub triangle_free: bool,
    pub min_degree: usize,
    pub max_degree: Option<usize>,
    pub connected: bool,
    pub extra: Option<DegreePredicate>,
}

impl BruteFilter {
    pub fn from_regime(r: &Regime) -> Self {
        let p = r.profile.clone();
        BruteFilter {
            triangle_free: r.triangle_free,
            min_degree: r.min_degree,
            max_degree: None,
            connected: r.connected,
            extra: Some(Arc::new(move |s: &[usize]| p.accepts(s))),
        }
    }
}

pub const BRUTE_FORCE_MAX_ORDER: usize = 9;

/// All graphs with the given order and edge count passing `filter`, found
/// by exhaustive search over labelled graphs.
///
/// Labellings are restricted without loss: vertex 0 has maximum degree `d`,
/// its neighbours are `1..=d`, and degrees are non-increasing inside
/// `1..=d` and inside the remaining vertices.
pub fn brute_force_all(order: usize, edge_count: usize, filter: &BruteFilter) -> Result<BTreeSet<CanonicalForm>> {
    if order > BRUTE_FORCE_MAX_ORDER {
        return Err(Error::OracleTooLarge(order));
    }
    let mut out = BTreeSet::new();
    if order == 0 {
        let g = SimpleGraph::empty(0)?;
        if edge_count == 0 && accept_brute(&g, filter) {
            out.insert(canonicalize(&g));
        }
        return Ok(out);
    }
    let pairs: Vec<(usize, usize)> = (0..order)
        .flat_map(|i| (i + 1..order).map(move |j| (i, j)))
        .collect();
    let dmax = filter.max_degree.unwrap_or(order - 1).min(order - 1);
    for d in 0..=dmax {
        let mut st = Brute {
            n: order,
            m: edge_count,
            d,
            filter,
            pairs: &pairs,
            g: SimpleGraph::empty(order)?,
            deg: [0; MAX_ORDER],
            out: &mut out,
        };
        for v in 1..=d {
            st.g.insert_edge(0, v);
            st.deg[v] = 1;
        }
        st.deg[0] = d;
        if d > edge_count {
            continue;
        }
        st.search(order - 1, d);
    }
    Ok(out)
}

fn accept_brute(g: &SimpleGraph, f: &BruteFilter) -> bool {
    (!f.triangle_free || g.is_triangle_free())
        && g.min_degree() >= f.min_degree
        && f.max_degree.is_none_or(|d| g.max_degree() <= d)
        && (!f.connected || g.is_connected())
        && f.extra.as_ref().is_none_or(|p| p(&g.degree_sequence()))
}

struct Brute<'a> {
    n: usize,
    m: usize,
    d: usize,
    filter: &'a BruteFilter,
    pairs: &'a [(usize, usize)],
    g: SimpleGraph,
    deg: [usize; MAX_ORDER],
    out: &'a mut BTreeSet<CanonicalForm>,
}

impl Brute<'_> {
    /// Decides pairs from index `i` on; pairs touching vertex 0 are fixed.
    fn search(&mut self, i: usize, edges: usize) {
        if edges > self.m || edges + (self.pairs.len() - i) < self.m {
            return;
        }
        if i == self.pairs.len() {
            if edges == self.m && self.g.max_degree() <= self.d && accept_brute(&self.g, self.filter) {
                self.out.insert(canonicalize(&self.g));
            }
            return;
        }
        let (u, v) = self.pairs[i];
        let row_done = v == self.n - 1;
        // adding
        if self.deg[u] < self.d
            && self.deg[v] < self.d
            && !(self.filter.triangle_free && self.g.neighbors(u) & self.g.neighbors(v) != 0)
        {
            self.g.insert_edge(u, v);
            self.deg[u] += 1;
            self.deg[v] += 1;
            if !row_done || self.row_ok(u) {
                self.search(i + 1, edges + 1);
            }
            self.g.remove_edge_unchecked(u, v);
            self.deg[u] -= 1;
            self.deg[v] -= 1;
        }
        if !row_done || self.row_ok(u) {
            self.search(i + 1, edges);
        }
    }

    /// Checks vertex `u` once all of its pairs are decided.
    fn row_ok(&self, u: usize) -> bool {
        if self.deg[u] < self.filter.min_degree {
            return false;
        }
        let same_group = u >= 2 && (u <= self.d) == (u - 1 <= self.d);
        !(same_group && self.deg[u] > self.deg[u - 1])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn custom_any(m: usize, delta: usize, tf: bool, connected: bool) -> Regime {
        Regime {
            edge_count: m,
            min_degree: delta,
            triangle_free: tf,
            connected,
            profile: DegreeProfile::Any,
            max_order: None,
        }
    }

    #[test]
    fn erdos_gallai_basics() {
        assert!(erdos_gallai(&[3, 3, 3, 3]));
        assert!(!erdos_gallai(&[3, 3, 1, 1]));
        assert!(!erdos_gallai(&[4, 1, 1, 1]));
    }

    #[test]
    fn feasible_sequences_regime_b() {
        let seqs = feasible_degree_sequences(&Regime::regime_b());
        assert!(seqs.contains(&vec![5, 5, 5, 5, 4, 4, 4, 3, 3, 3, 3]));
        assert!(seqs.iter().all(|s| s.len() != 14));
        assert!(seqs.iter().all(|s| s.iter().sum::<usize>() == 44));
        let orders: BTreeSet<usize> = seqs.iter().map(|s| s.len()).collect();
        assert_eq!(orders, BTreeSet::from([10, 11, 12, 13]));
    }

    #[test]
    fn no_degree_above_seven() {
        for r in [Regime::regime_a(), Regime::regime_b()] {
            assert!(feasible_degree_sequences(&r).iter().all(|s| s[0] <= 7));
        }
        assert!(feasible_degree_sequences(&Regime::regime_a()).iter().any(|s| s[0] == 7));
    }

    #[test]
    fn nine_edges_is_k33() {
        let e = enumerate(&custom_any(9, 3, true, true), EnumOptions::default());
        assert_eq!(e.len(), 1);
        let k33 = SimpleGraph::complete_multipartite(&[3, 3]).unwrap();
        assert_eq!(e.graphs[0].0, canonicalize(&k33));
        let f = BruteFilter {
            triangle_free: true,
            min_degree: 3,
            ..Default::default()
        };
        assert_eq!(brute_force_all(6, 9, &f).unwrap(), BTreeSet::from([canonicalize(&k33)]));
    }

    #[test]
    fn brute_force_small_cases() {
        let any = BruteFilter::default();
        let k5 = SimpleGraph::complete(5).unwrap();
        assert_eq!(brute_force_all(5, 10, &any).unwrap(), BTreeSet::from([canonicalize(&k5)]));
        assert_eq!(brute_force_all(10, 10, &any), Err(Error::OracleTooLarge(10)));
        // graphs on 4 vertices: 1,1,2,3,2,1,1 by edge count
        let counts: Vec<usize> = (0..=6).map(|m| brute_force_all(4, m, &any).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 2, 1, 1]);
    }

    #[test]
    fn budget_marks_truncation() {
        let e = enumerate(&custom_any(12, 3, true, true), EnumOptions { node_budget: Some(5) });
        assert!(e.truncated);
    }
}
