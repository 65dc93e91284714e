//! The simple-graph value type shared by every other module.
//!
//! Vertices are dense indices `0..order`. Adjacency is stored as one `u32`
//! bitmask per vertex, which bounds the order at [`MAX_ORDER`].

use std::fmt;

use crate::error::{Error, Result};

pub const MAX_ORDER: usize = 32;

/// A loopless undirected graph without parallel edges.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    order: u8,
    adj: [u32; MAX_ORDER],
}

#[inline]
pub(crate) fn bits(mut mask: u32) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

#[inline]
fn full_mask(order: usize) -> u32 {
    if order >= 32 {
        u32::MAX
    } else {
        (1u32 << order) - 1
    }
}

impl SimpleGraph {
    /// Edgeless graph on `order` vertices.
    pub fn empty(order: usize) -> Result<Self> {
        if order > MAX_ORDER {
            return Err(Error::OrderTooLarge(order));
        }
        Ok(SimpleGraph {
            order: order as u8,
            adj: [0; MAX_ORDER],
        })
    }

    pub fn from_edges(order: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(order)?;
        for &(u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(Error::InvalidEdge(u));
            }
            if g.has_edge(u, v) {
                return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
            }
            g.insert_edge(u, v);
        }
        Ok(g)
    }

    /// Complete graph `K_n`.
    pub fn complete(order: usize) -> Result<Self> {
        let mut g = Self::empty(order)?;
        let all = full_mask(order);
        for v in 0..order {
            g.adj[v] = all & !(1 << v);
        }
        Ok(g)
    }

    /// Complete multipartite graph with the given part sizes; parts occupy
    /// consecutive index ranges.
    pub fn complete_multipartite(parts: &[usize]) -> Result<Self> {
        let order = parts.iter().sum();
        let mut g = Self::empty(order)?;
        let all = full_mask(order);
        let mut start = 0;
        for &p in parts {
            let part = full_mask(start + p) & !full_mask(start);
            for v in start..start + p {
                g.adj[v] = all & !part;
            }
            start += p;
        }
        Ok(g)
    }

    /// Cycle `C_n` on vertices `0..n` in index order.
    pub fn cycle(order: usize) -> Result<Self> {
        let edges: Vec<_> = (0..order).map(|i| (i, (i + 1) % order)).collect();
        Self::from_edges(order, &edges)
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.order() {
            Err(Error::BadVertex {
                vertex: v,
                order: self.order(),
            })
        } else {
            Ok(())
        }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order as usize
    }

    #[inline]
    pub fn vertex_mask(&self) -> u32 {
        full_mask(self.order())
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.adj[..self.order()]
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order() && v < self.order() && self.adj[u] >> v & 1 == 1
    }

    /// Neighbourhood of `v` as a bitmask.
    #[inline]
    pub fn neighbors(&self, v: usize) -> u32 {
        self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn neighbor_list(&self, v: usize) -> Vec<usize> {
        bits(self.adj[v]).collect()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.order()).flat_map(move |u| {
            bits(self.adj[u] & !full_mask(u + 1)).map(move |v| (u, v))
        })
    }

    pub(crate) fn insert_edge(&mut self, u: usize, v: usize) {
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    pub(crate) fn remove_edge_unchecked(&mut self, u: usize, v: usize) {
        self.adj[u] &= !(1 << v);
        self.adj[v] &= !(1 << u);
    }

    /// Adds a new isolated vertex and returns its index.
    pub(crate) fn push_vertex(&mut self) -> Result<usize> {
        let v = self.order();
        if v >= MAX_ORDER {
            return Err(Error::OrderTooLarge(v + 1));
        }
        self.order += 1;
        self.adj[v] = 0;
        Ok(v)
    }

    /// Degrees sorted in descending order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.order()).map(|v| self.degree(v)).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    pub fn min_degree(&self) -> usize {
        (0..self.order()).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.order()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn is_triangle_free(&self) -> bool {
        self.edges().all(|(u, v)| self.adj[u] & self.adj[v] == 0)
    }

    /// Connectivity; the empty graph counts as connected.
    pub fn is_connected(&self) -> bool {
        let all = self.vertex_mask();
        all == 0 || self.component_of(0, all) == all
    }

    /// Vertices reachable from `start` inside `within`.
    pub fn component_of(&self, start: usize, within: u32) -> u32 {
        let mut seen = 1u32 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for v in bits(frontier) {
                next |= self.adj[v];
            }
            next &= within & !seen;
            seen |= next;
            frontier = next;
        }
        seen
    }

    /// Connected components of the subgraph induced on `within`, as masks in
    /// order of their smallest vertex.
    pub fn components(&self, within: u32) -> Vec<u32> {
        let mut rest = within;
        let mut out = Vec::new();
        while rest != 0 {
            let c = self.component_of(rest.trailing_zeros() as usize, within);
            out.push(c);
            rest &= !c;
        }
        out
    }

    /// Breadth-first distance, `None` if unreachable.
    pub fn distance(&self, a: usize, b: usize) -> Option<usize> {
        let mut seen = 1u32 << a;
        let mut frontier = seen;
        let mut d = 0;
        while frontier != 0 {
            if frontier >> b & 1 == 1 {
                return Some(d);
            }
            let mut next = 0;
            for v in bits(frontier) {
                next |= self.adj[v];
            }
            next &= !seen;
            seen |= next;
            frontier = next;
            d += 1;
        }
        None
    }

    /// Subgraph induced on the vertices of `keep`, re-indexed in increasing
    /// order of the original indices.
    pub fn induced(&self, keep: u32) -> SimpleGraph {
        let keep = keep & self.vertex_mask();
        let mut index = [0u8; MAX_ORDER];
        for (i, v) in bits(keep).enumerate() {
            index[v] = i as u8;
        }
        let mut g = SimpleGraph {
            order: keep.count_ones() as u8,
            adj: [0; MAX_ORDER],
        };
        for v in bits(keep) {
            let mut row = 0;
            for w in bits(self.adj[v] & keep) {
                row |= 1 << index[w];
            }
            g.adj[index[v] as usize] = row;
        }
        g
    }

    pub fn delete_vertex(&self, v: usize) -> Result<SimpleGraph> {
        self.check_vertex(v)?;
        Ok(self.induced(self.vertex_mask() & !(1 << v)))
    }

    pub fn delete_edge(&self, u: usize, v: usize) -> Result<SimpleGraph> {
        if !self.has_edge(u, v) {
            return Err(Error::NotAnEdge(u, v));
        }
        let mut g = *self;
        g.remove_edge_unchecked(u, v);
        Ok(g)
    }

    /// Contracts edge `uv`: the merged vertex takes the smaller index, loops
    /// vanish and parallel edges collapse to one.
    pub fn contract_edge(&self, u: usize, v: usize) -> Result<SimpleGraph> {
        if !self.has_edge(u, v) {
            return Err(Error::NotAnEdge(u, v));
        }
        let (keep, gone) = (u.min(v), u.max(v));
        let mut g = *self;
        let merged = (g.adj[keep] | g.adj[gone]) & !(1 << keep) & !(1 << gone);
        for w in bits(g.adj[gone]) {
            g.adj[w] &= !(1 << gone);
        }
        for w in bits(merged) {
            g.adj[w] |= 1 << keep;
        }
        g.adj[keep] = merged;
        g.adj[gone] = 0;
        Ok(g.induced(g.vertex_mask() & !(1 << gone)))
    }

    /// Relabels so that old vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> SimpleGraph {
        let mut g = SimpleGraph {
            order: self.order,
            adj: [0; MAX_ORDER],
        };
        for v in 0..self.order() {
            let mut row = 0;
            for w in bits(self.adj[v]) {
                row |= 1 << perm[w];
            }
            g.adj[perm[v]] = row;
        }
        g
    }

    /// Disjoint union; the vertices of `other` follow those of `self`.
    pub fn disjoint_union(&self, other: &SimpleGraph) -> Result<SimpleGraph> {
        let n = self.order();
        let mut g = Self::empty(n + other.order())?;
        g.adj[..n].copy_from_slice(&self.adj[..n]);
        for v in 0..other.order() {
            g.adj[n + v] = other.adj[v] << n;
        }
        Ok(g)
    }
}

impl fmt::Debug for SimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimpleGraph(n={}, [", self.order)?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "])")
    }
}
