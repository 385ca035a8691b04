//! Simple undirected graphs on a fixed small vertex range.
//!
//! Vertices are dense ids `0..n`. Adjacency is stored as one `u128` bitmask
//! per vertex, which caps the supported order at [`MAX_VERTICES`] — plenty
//! for the desk-scale instances this crate targets, and it keeps every
//! neighborhood query a couple of word operations.

use thiserror::Error;

/// Largest supported graph order.
pub const MAX_VERTICES: usize = 128;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range for graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("graph order {0} exceeds the supported maximum {MAX_VERTICES}")]
    TooLarge(usize),
    #[error("edge {0}-{1} is not present in the graph")]
    MissingEdge(usize, usize),
    #[error("{param} must be at least {min}, got {got}")]
    ParamTooSmall {
        param: &'static str,
        min: usize,
        got: usize,
    },
    #[error("input graph is not a tree")]
    NotATree,
}

/// An unordered vertex pair with `u() < v()`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    u: usize,
    v: usize,
}

impl Edge {
    /// Normalizes the endpoint order. Self-loops are rejected.
    pub fn new(a: usize, b: usize) -> Result<Self, GraphError> {
        if a == b {
            return Err(GraphError::SelfLoop(a));
        }
        Ok(Edge {
            u: a.min(b),
            v: a.max(b),
        })
    }

    pub fn u(&self) -> usize {
        self.u
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn endpoints(&self) -> (usize, usize) {
        (self.u, self.v)
    }
}

impl serde::Serialize for Edge {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeTuple;
        let mut t = serializer.serialize_tuple(2)?;
        t.serialize_element(&self.u)?;
        t.serialize_element(&self.v)?;
        t.end()
    }
}

impl std::fmt::Display for Edge {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

/// Iterator over the set bits of a mask, ascending.
#[derive(Clone)]
pub(crate) struct Bits(pub u128);

impl Iterator for Bits {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let v = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(v)
        }
    }
}

pub(crate) fn bit(v: usize) -> u128 {
    1u128 << v
}

/// A simple undirected graph: no loops, no parallel edges.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u128>,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges collapse; self-loops
    /// and out-of-range endpoints are errors.
    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooLarge(n));
        }
        let mut adj = vec![0u128; n];
        for (a, b) in edges {
            if a >= n {
                return Err(GraphError::VertexOutOfRange { vertex: a, order: n });
            }
            if b >= n {
                return Err(GraphError::VertexOutOfRange { vertex: b, order: n });
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            adj[a] |= bit(b);
            adj[b] |= bit(a);
        }
        Ok(Graph { n, adj })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.n && b < self.n && self.adj[a] & bit(b) != 0
    }

    pub fn neighbors_mask(&self, v: usize) -> u128 {
        self.adj[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        Bits(self.adj[v])
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    /// Mask with one bit per vertex.
    pub fn full_mask(&self) -> u128 {
        if self.n == MAX_VERTICES {
            u128::MAX
        } else {
            (1u128 << self.n) - 1
        }
    }

    /// Closed neighborhood `N[v]`.
    pub fn closed_mask(&self, v: usize) -> u128 {
        self.adj[v] | bit(v)
    }

    /// Vertices at distance one or two from `v`, excluding `v` itself.
    pub fn ball2_mask(&self, v: usize) -> u128 {
        let mut m = self.adj[v];
        for u in Bits(self.adj[v]) {
            m |= self.adj[u];
        }
        m & !bit(v)
    }

    /// Edges in normalized lexicographic order.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in Bits(self.adj[u]) {
                if v > u {
                    out.push(Edge { u, v });
                }
            }
        }
        out
    }

    /// BFS distances from `s`; `None` marks unreachable vertices.
    pub fn distances_from(&self, s: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[s] = Some(0);
        let mut frontier = bit(s);
        let mut seen = frontier;
        let mut d = 0;
        while frontier != 0 {
            d += 1;
            let mut next = 0u128;
            for v in Bits(frontier) {
                next |= self.adj[v];
            }
            next &= !seen;
            seen |= next;
            for v in Bits(next) {
                dist[v] = Some(d);
            }
            frontier = next;
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = bit(0);
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0u128;
            for v in Bits(frontier) {
                next |= self.adj[v];
            }
            next &= !seen;
            seen |= next;
            frontier = next;
        }
        seen == self.full_mask()
    }

    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.edge_count() == self.n - 1 && self.is_connected()
    }

    /// Replaces the edge `e` by a path through `times` fresh vertices appended
    /// after the existing ids. Pure: returns a new graph of order `n + times`.
    pub fn subdivide_edge(&self, e: Edge, times: usize) -> Result<Graph, GraphError> {
        if times == 0 {
            return Err(GraphError::ParamTooSmall {
                param: "subdivision count",
                min: 1,
                got: 0,
            });
        }
        let (u, v) = e.endpoints();
        if v >= self.n {
            return Err(GraphError::VertexOutOfRange {
                vertex: v,
                order: self.n,
            });
        }
        if !self.has_edge(u, v) {
            return Err(GraphError::MissingEdge(u, v));
        }
        let n2 = self.n + times;
        if n2 > MAX_VERTICES {
            return Err(GraphError::TooLarge(n2));
        }
        let mut g = Graph {
            n: n2,
            adj: {
                let mut a = self.adj.clone();
                a.resize(n2, 0);
                a
            },
        };
        g.adj[u] &= !bit(v);
        g.adj[v] &= !bit(u);
        let mut prev = u;
        for i in 0..times {
            let x = self.n + i;
            g.adj[prev] |= bit(x);
            g.adj[x] |= bit(prev);
            prev = x;
        }
        g.adj[prev] |= bit(v);
        g.adj[v] |= bit(prev);
        Ok(g)
    }

    /// Appends a path of `count` fresh vertices hanging off `anchor`.
    pub(crate) fn with_attached_path(
        &self,
        anchor: usize,
        count: usize,
    ) -> Result<Graph, GraphError> {
        if anchor >= self.n {
            return Err(GraphError::VertexOutOfRange {
                vertex: anchor,
                order: self.n,
            });
        }
        let n2 = self.n + count;
        if n2 > MAX_VERTICES {
            return Err(GraphError::TooLarge(n2));
        }
        let mut adj = self.adj.clone();
        adj.resize(n2, 0);
        let mut prev = anchor;
        for i in 0..count {
            let x = self.n + i;
            adj[prev] |= bit(x);
            adj[x] |= bit(prev);
            prev = x;
        }
        Ok(Graph { n: n2, adj })
    }

    /// Applies the vertex relabeling `perm[old] = new`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        debug_assert_eq!(perm.len(), self.n);
        let mut adj = vec![0u128; self.n];
        for u in 0..self.n {
            for v in Bits(self.adj[u]) {
                adj[perm[u]] |= bit(perm[v]);
            }
        }
        Graph { n: self.n, adj }
    }

    pub fn structural_profile(&self) -> StructuralProfile {
        let n = self.n;
        let leaves: Vec<usize> = (0..n).filter(|&v| self.degree(v) == 1).collect();
        let leaf_mask = leaves.iter().fold(0u128, |m, &v| m | bit(v));
        let supports: Vec<usize> = (0..n)
            .filter(|&v| self.adj[v] & leaf_mask != 0)
            .collect();
        let universal: Vec<usize> = (0..n).filter(|&v| n >= 1 && self.degree(v) == n - 1).collect();
        let is_connected = self.is_connected();
        let diameter = if !is_connected {
            None
        } else if n == 0 {
            Some(0)
        } else {
            let mut d = 0;
            for v in 0..n {
                for dv in self.distances_from(v).into_iter().flatten() {
                    d = d.max(dv);
                }
            }
            Some(d)
        };
        let is_tree = self.is_tree();
        let is_star = is_tree && !universal.is_empty();
        StructuralProfile {
            leaves,
            supports,
            universal,
            diameter,
            is_tree,
            is_star,
            is_connected,
        }
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// Degree-one vertices, their neighbors, universal vertices, and a few
/// global flags, computed in one pass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuralProfile {
    pub leaves: Vec<usize>,
    pub supports: Vec<usize>,
    pub universal: Vec<usize>,
    /// `None` when the graph is disconnected.
    pub diameter: Option<usize>,
    pub is_tree: bool,
    pub is_star: bool,
    pub is_connected: bool,
}

/// Standard graph constructors.
pub mod named {
    use super::{Graph, GraphError};

    fn require(param: &'static str, min: usize, got: usize) -> Result<(), GraphError> {
        if got < min {
            Err(GraphError::ParamTooSmall { param, min, got })
        } else {
            Ok(())
        }
    }

    /// Path on `n` vertices, ids in path order.
    pub fn path(n: usize) -> Result<Graph, GraphError> {
        require("path order", 1, n)?;
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
    }

    /// Cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Result<Graph, GraphError> {
        require("cycle order", 3, n)?;
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    pub fn complete(n: usize) -> Result<Graph, GraphError> {
        require("complete graph order", 1, n)?;
        Graph::from_edges(n, (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j))))
    }

    /// `K_{p,q}`: part one is ids `0..p`, part two `p..p+q`.
    pub fn complete_bipartite(p: usize, q: usize) -> Result<Graph, GraphError> {
        require("bipartite part size", 1, p.min(q))?;
        Graph::from_edges(
            p + q,
            (0..p).flat_map(move |i| (p..p + q).map(move |j| (i, j))),
        )
    }

    /// Star `K_{1,leaves}` with the center at id 0.
    pub fn star(leaves: usize) -> Result<Graph, GraphError> {
        complete_bipartite(1, leaves)
    }

    /// Wheel: a hub (the last id, `rim`) joined to every vertex of a cycle on
    /// `rim >= 3` vertices; order `rim + 1`, so `wheel(3)` is `K_4`.
    pub fn wheel(rim: usize) -> Result<Graph, GraphError> {
        require("wheel rim size", 3, rim)?;
        let hub = rim;
        Graph::from_edges(
            rim + 1,
            (0..rim)
                .map(|i| (i, (i + 1) % rim))
                .chain((0..rim).map(move |i| (i, hub))),
        )
    }
}
