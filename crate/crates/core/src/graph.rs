//! Mutable undirected simple graph over dense integer vertex ids.

use std::fmt;
use std::hash::BuildHasherDefault;

use indexmap::IndexSet;
use rustc_hash::FxHasher;

use crate::error::{Error, Result};

/// Dense internal vertex id.
pub type VertexId = u32;

type NeighborSet = IndexSet<VertexId, BuildHasherDefault<FxHasher>>;

/// An undirected edge stored with the smaller endpoint first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    u: VertexId,
    v: VertexId,
}

impl Edge {
    pub fn new(a: VertexId, b: VertexId) -> Result<Self> {
        if a == b {
            return Err(Error::SelfLoop(a));
        }
        Ok(Edge {
            u: a.min(b),
            v: a.max(b),
        })
    }

    /// Smaller endpoint.
    #[inline]
    pub fn u(&self) -> VertexId {
        self.u
    }

    /// Larger endpoint.
    #[inline]
    pub fn v(&self) -> VertexId {
        self.v
    }

    #[inline]
    pub fn endpoints(&self) -> [VertexId; 2] {
        [self.u, self.v]
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AddStatus {
    New,
    Duplicate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RemoveStatus {
    Removed,
    Absent,
}

/// Undirected simple graph. Neighbor sets give O(1) expected membership and
/// iterate in a deterministic order that depends only on the mutation history.
#[derive(Clone, Debug, Default)]
pub struct Graph {
    adjacency: Vec<NeighborSet>,
    edge_count: usize,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Graph with `n` isolated vertices `0..n`.
    pub fn with_vertices(n: usize) -> Self {
        let mut g = Graph::new();
        g.ensure_vertex_count(n);
        g
    }

    pub fn from_edges<I>(edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut g = Graph::new();
        for (a, b) in edges {
            g.add_edge(Edge::new(a, b)?);
        }
        Ok(g)
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn ensure_vertex_count(&mut self, n: usize) {
        if self.adjacency.len() < n {
            self.adjacency.resize_with(n, NeighborSet::default);
        }
    }

    #[inline]
    pub fn contains_vertex(&self, v: VertexId) -> bool {
        (v as usize) < self.adjacency.len()
    }

    /// Inserts `e`, creating missing endpoints as isolated vertices first.
    pub fn add_edge(&mut self, e: Edge) -> AddStatus {
        self.ensure_vertex_count(e.v() as usize + 1);
        if !self.adjacency[e.u() as usize].insert(e.v()) {
            return AddStatus::Duplicate;
        }
        self.adjacency[e.v() as usize].insert(e.u());
        self.edge_count += 1;
        AddStatus::New
    }

    pub fn remove_edge(&mut self, e: Edge) -> RemoveStatus {
        if !self.contains_vertex(e.v()) {
            return RemoveStatus::Absent;
        }
        if !self.adjacency[e.u() as usize].swap_remove(&e.v()) {
            return RemoveStatus::Absent;
        }
        self.adjacency[e.v() as usize].swap_remove(&e.u());
        self.edge_count -= 1;
        RemoveStatus::Removed
    }

    pub fn has_edge(&self, e: Edge) -> bool {
        self.contains_vertex(e.v()) && self.adjacency[e.u() as usize].contains(&e.v())
    }

    /// Panics if `v` is not a vertex of the graph.
    #[inline]
    pub fn neighbors(&self, v: VertexId) -> impl ExactSizeIterator<Item = VertexId> + '_ {
        self.adjacency[v as usize].iter().copied()
    }

    #[inline]
    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency.get(v as usize).map_or(0, |s| s.len())
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        0..self.adjacency.len() as VertexId
    }

    /// All edges, each once, in ascending canonical order.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.edge_count);
        for (u, adj) in self.adjacency.iter().enumerate() {
            let u = u as VertexId;
            out.extend(adj.iter().filter(|&&w| w > u).map(|&w| Edge { u, v: w }));
        }
        out.sort_unstable();
        out
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(|s| s.len()).max().unwrap_or(0)
    }
}
