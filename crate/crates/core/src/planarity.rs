//! Planarity testing (left-right criterion) and the planar-reduction
//! classification used to discard graphs that cannot be intrinsically
//! knotted.

use serde::Serialize;

use crate::canon::canonicalize;
use crate::error::Result;
use crate::graph::{bits, SimpleGraph};
use crate::reduction::{reduce_pair, smooth_degree_two};

const NONE: usize = usize::MAX;

pub fn is_planar(g: &SimpleGraph) -> bool {
    let n = g.order();
    let m = g.edge_count();
    if m < 9 {
        return true;
    }
    if n >= 3 && m > 3 * n - 6 {
        return false;
    }
    LrTest::new(g).run()
}

#[derive(Clone, Copy, Default, PartialEq, Eq)]
struct Interval {
    low: usize,
    high: usize,
}

impl Interval {
    const EMPTY: Interval = Interval {
        low: NONE,
        high: NONE,
    };

    fn is_empty(&self) -> bool {
        self.low == NONE && self.high == NONE
    }
}

#[derive(Clone, Copy)]
struct ConflictPair {
    left: Interval,
    right: Interval,
}

impl ConflictPair {
    fn swap(&mut self) {
        std::mem::swap(&mut self.left, &mut self.right);
    }
}

/// State of the left-right planarity test (orientation and testing phases;
/// no embedding is built).
struct LrTest<'g> {
    g: &'g SimpleGraph,
    height: Vec<usize>,
    parent_edge: Vec<usize>,
    // oriented edges
    src: Vec<usize>,
    dst: Vec<usize>,
    lowpt: Vec<usize>,
    lowpt2: Vec<usize>,
    nesting: Vec<usize>,
    out: Vec<Vec<usize>>,
    oriented: Vec<u32>,
    // testing phase
    lowpt_edge: Vec<usize>,
    reference: Vec<usize>,
    stack_bottom: Vec<usize>,
    stack: Vec<ConflictPair>,
}

impl<'g> LrTest<'g> {
    fn new(g: &'g SimpleGraph) -> Self {
        let n = g.order();
        let m = g.edge_count();
        LrTest {
            g,
            height: vec![NONE; n],
            parent_edge: vec![NONE; n],
            src: Vec::with_capacity(m),
            dst: Vec::with_capacity(m),
            lowpt: Vec::with_capacity(m),
            lowpt2: Vec::with_capacity(m),
            nesting: Vec::with_capacity(m),
            out: vec![Vec::new(); n],
            oriented: vec![0; n],
            lowpt_edge: vec![NONE; m],
            reference: vec![NONE; m],
            stack_bottom: vec![0; m],
            stack: Vec::new(),
        }
    }

    fn run(mut self) -> bool {
        let n = self.g.order();
        let mut roots = Vec::new();
        for v in 0..n {
            if self.height[v] == NONE {
                self.height[v] = 0;
                roots.push(v);
                self.orient(v);
            }
        }
        for v in 0..n {
            let nesting = &self.nesting;
            self.out[v].sort_by_key(|&e| nesting[e]);
        }
        roots.into_iter().all(|r| self.test(r))
    }

    fn orient(&mut self, v: usize) {
        let e = self.parent_edge[v];
        for w in bits(self.g.neighbors(v)) {
            if self.oriented[v] >> w & 1 == 1 {
                continue;
            }
            self.oriented[v] |= 1 << w;
            self.oriented[w] |= 1 << v;
            let vw = self.src.len();
            self.src.push(v);
            self.dst.push(w);
            self.lowpt.push(self.height[v]);
            self.lowpt2.push(self.height[v]);
            self.nesting.push(0);
            self.out[v].push(vw);
            if self.height[w] == NONE {
                self.parent_edge[w] = vw;
                self.height[w] = self.height[v] + 1;
                self.orient(w);
            } else {
                self.lowpt[vw] = self.height[w];
            }
            self.nesting[vw] = 2 * self.lowpt[vw] + (self.lowpt2[vw] < self.height[v]) as usize;
            if e != NONE {
                if self.lowpt[vw] < self.lowpt[e] {
                    self.lowpt2[e] = self.lowpt[e].min(self.lowpt2[vw]);
                    self.lowpt[e] = self.lowpt[vw];
                } else if self.lowpt[vw] > self.lowpt[e] {
                    self.lowpt2[e] = self.lowpt2[e].min(self.lowpt[vw]);
                } else {
                    self.lowpt2[e] = self.lowpt2[e].min(self.lowpt2[vw]);
                }
            }
        }
    }

    fn conflicting(&self, i: Interval, b: usize) -> bool {
        !i.is_empty() && self.lowpt[i.high] > self.lowpt[b]
    }

    fn lowest(&self, p: &ConflictPair) -> usize {
        if p.left.is_empty() {
            return self.lowpt[p.right.low];
        }
        if p.right.is_empty() {
            return self.lowpt[p.left.low];
        }
        self.lowpt[p.left.low].min(self.lowpt[p.right.low])
    }

    fn test(&mut self, v: usize) -> bool {
        let e = self.parent_edge[v];
        let out = std::mem::take(&mut self.out[v]);
        for (i, &ei) in out.iter().enumerate() {
            self.stack_bottom[ei] = self.stack.len();
            let w = self.dst[ei];
            if ei == self.parent_edge[w] {
                if !self.test(w) {
                    return false;
                }
            } else {
                self.lowpt_edge[ei] = ei;
                self.stack.push(ConflictPair {
                    left: Interval::EMPTY,
                    right: Interval { low: ei, high: ei },
                });
            }
            if self.lowpt[ei] < self.height[v] {
                if i == 0 {
                    self.lowpt_edge[e] = self.lowpt_edge[ei];
                } else if !self.add_constraints(ei, e) {
                    return false;
                }
            }
        }
        if e != NONE {
            let u = self.src[e];
            self.trim_back_edges(u);
            if self.lowpt[e] < self.height[u] {
                let top = self.stack.last().expect("return edges leave a pair");
                let (hl, hr) = (top.left.high, top.right.high);
                self.reference[e] = if hl != NONE && (hr == NONE || self.lowpt[hl] > self.lowpt[hr]) {
                    hl
                } else {
                    hr
                };
            }
        }
        true
    }

    fn add_constraints(&mut self, ei: usize, e: usize) -> bool {
        let mut p = ConflictPair {
            left: Interval::EMPTY,
            right: Interval::EMPTY,
        };
        loop {
            let mut q = self.stack.pop().expect("return edge pushed a pair");
            if !q.left.is_empty() {
                q.swap();
            }
            if !q.left.is_empty() {
                return false;
            }
            if self.lowpt[q.right.low] > self.lowpt[e] {
                if p.right.is_empty() {
                    p.right.high = q.right.high;
                } else {
                    self.reference[p.right.low] = q.right.high;
                }
                p.right.low = q.right.low;
            } else {
                self.reference[q.right.low] = self.lowpt_edge[e];
            }
            if self.stack.len() == self.stack_bottom[ei] {
                break;
            }
        }
        while let Some(top) = self.stack.last().copied() {
            if !(self.conflicting(top.left, ei) || self.conflicting(top.right, ei)) {
                break;
            }
            let mut q = self.stack.pop().expect("peeked");
            if self.conflicting(q.right, ei) {
                q.swap();
            }
            if self.conflicting(q.right, ei) {
                return false;
            }
            if p.right.low != NONE {
                self.reference[p.right.low] = q.right.high;
            }
            if q.right.low != NONE {
                p.right.low = q.right.low;
            }
            if p.left.is_empty() {
                p.left.high = q.left.high;
            } else {
                self.reference[p.left.low] = q.left.high;
            }
            p.left.low = q.left.low;
        }
        if !(p.left.is_empty() && p.right.is_empty()) {
            self.stack.push(p);
        }
        true
    }

    fn trim_back_edges(&mut self, u: usize) {
        while let Some(top) = self.stack.last() {
            if self.lowest(top) != self.height[u] {
                break;
            }
            self.stack.pop();
        }
        if let Some(mut p) = self.stack.pop() {
            while p.left.high != NONE && self.dst[p.left.high] == u {
                p.left.high = self.reference[p.left.high];
            }
            if p.left.high == NONE && p.left.low != NONE {
                self.reference[p.left.low] = p.right.low;
                p.left.low = NONE;
            }
            while p.right.high != NONE && self.dst[p.right.high] == u {
                p.right.high = self.reference[p.right.high];
            }
            if p.right.high == NONE && p.right.low != NONE {
                self.reference[p.right.low] = p.left.low;
                p.right.low = NONE;
            }
            self.stack.push(p);
        }
    }
}

/// True when suppressing every degree-2 vertex leaves exactly `K_{3,3}`.
pub fn is_homeomorphic_to_k33(g: &SimpleGraph) -> bool {
    let Some(s) = smooth_degree_two(g) else {
        return false;
    };
    if s.order() != 6 || s.edge_count() != 9 {
        return false;
    }
    canonicalize(&s) == canonicalize(&SimpleGraph::complete_multipartite(&[3, 3]).expect("K33"))
}

/// Which clause certified the reduced graph as planar.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Prop21Kind {
    /// At most 8 edges.
    EdgeBudget,
    /// Exactly 9 edges and not a subdivided `K_{3,3}`.
    NinePlanar,
    /// Planar by direct test.
    PlanarDirect,
    NotApplicable,
}

impl Prop21Kind {
    pub fn tag(&self) -> &'static str {
        match self {
            Prop21Kind::EdgeBudget => "edge-budget",
            Prop21Kind::NinePlanar => "nine-planar",
            Prop21Kind::PlanarDirect => "planar-direct",
            Prop21Kind::NotApplicable => "not-applicable",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Prop21Outcome {
    pub kind: Prop21Kind,
    pub reduced_edges: usize,
}

impl Prop21Outcome {
    /// A planar reduction certifies that the graph is not intrinsically
    /// knotted.
    pub fn certifies_not_ik(&self) -> bool {
        self.kind != Prop21Kind::NotApplicable
    }
}

pub fn classify_reduced(reduced: &SimpleGraph) -> Prop21Outcome {
    let m = reduced.edge_count();
    let kind = if m <= 8 {
        Prop21Kind::EdgeBudget
    } else if m == 9 && !is_homeomorphic_to_k33(reduced) {
        Prop21Kind::NinePlanar
    } else if is_planar(reduced) {
        Prop21Kind::PlanarDirect
    } else {
        Prop21Kind::NotApplicable
    };
    Prop21Outcome {
        kind,
        reduced_edges: m,
    }
}

pub fn prop21(g: &SimpleGraph, a: usize, b: usize) -> Result<Prop21Outcome> {
    Ok(classify_reduced(&reduce_pair(g, a, b)?))
}

/// Planar after deleting at most `k` vertices.
pub fn is_k_apex(g: &SimpleGraph, k: usize) -> bool {
    fn rec(g: &SimpleGraph, alive: u32, from: usize, k: usize) -> bool {
        if is_planar(&g.induced(alive)) {
            return true;
        }
        if k == 0 {
            return false;
        }
        bits(alive)
            .filter(|&v| v >= from)
            .any(|v| rec(g, alive & !(1 << v), v + 1, k - 1))
    }
    rec(g, g.vertex_mask(), 0, k)
}
