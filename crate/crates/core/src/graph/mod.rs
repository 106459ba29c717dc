//! Exact graph representation and the enumeration oracles the estimators are
//! checked against.
//!
//! A [`Graph`] is an immutable compressed adjacency structure over an
//! arbitrary set of `u64` vertex ids. Vertex ids are kept sorted, so every
//! neighbor list is sorted both by id and by internal index.

mod cycles;
mod stats;
mod triangles;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use cycles::{count_cycles, is_forest};
pub use stats::{pruned_deltas, triangle_stats, TriangleStats};
pub use triangles::{brute_force_triangles, enumerate_triangles, triangle_count};
pub(crate) use triangles::for_each_triangle_index;

pub type VertexId = u64;

/// An undirected edge, stored with `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "(VertexId, VertexId)", into = "(VertexId, VertexId)")]
pub struct Edge {
    u: VertexId,
    v: VertexId,
}

impl Edge {
    /// Canonicalizes the unordered pair `{a, b}`. Self-loops are rejected.
    pub fn new(a: VertexId, b: VertexId) -> Result<Self> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Ok(Edge { u: a, v: b }),
            std::cmp::Ordering::Greater => Ok(Edge { u: b, v: a }),
            std::cmp::Ordering::Equal => Err(Error::SelfLoop(a)),
        }
    }

    /// Infallible constructor for call sites that already know `a != b`.
    pub(crate) fn from_distinct(a: VertexId, b: VertexId) -> Self {
        debug_assert_ne!(a, b);
        if a < b {
            Edge { u: a, v: b }
        } else {
            Edge { u: b, v: a }
        }
    }

    pub fn u(&self) -> VertexId {
        self.u
    }

    pub fn v(&self) -> VertexId {
        self.v
    }

    pub fn endpoints(&self) -> (VertexId, VertexId) {
        (self.u, self.v)
    }

    pub fn contains(&self, x: VertexId) -> bool {
        self.u == x || self.v == x
    }
}

/// Same as [`Edge::new`].
pub fn canonicalize_edge(u: VertexId, v: VertexId) -> Result<Edge> {
    Edge::new(u, v)
}

impl TryFrom<(VertexId, VertexId)> for Edge {
    type Error = Error;

    fn try_from((a, b): (VertexId, VertexId)) -> Result<Self> {
        Edge::new(a, b)
    }
}

impl From<Edge> for (VertexId, VertexId) {
    fn from(e: Edge) -> Self {
        (e.u, e.v)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.u, self.v)
    }
}

/// A triangle with vertices in ascending order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Triangle {
    pub a: VertexId,
    pub b: VertexId,
    pub c: VertexId,
}

impl Triangle {
    pub fn new(x: VertexId, y: VertexId, z: VertexId) -> Self {
        let mut t = [x, y, z];
        t.sort_unstable();
        Triangle {
            a: t[0],
            b: t[1],
            c: t[2],
        }
    }

    pub fn vertices(&self) -> [VertexId; 3] {
        [self.a, self.b, self.c]
    }

    pub fn edges(&self) -> [Edge; 3] {
        [
            Edge::from_distinct(self.a, self.b),
            Edge::from_distinct(self.a, self.c),
            Edge::from_distinct(self.b, self.c),
        ]
    }
}

/// Immutable simple undirected graph.
#[derive(Clone, Debug, Default)]
pub struct Graph {
    ids: Vec<VertexId>,
    offsets: Vec<usize>,
    adj: Vec<u32>,
    duplicates_dropped: usize,
}

impl Graph {
    /// Builds a graph over the endpoints of `edges`. Repeated edges are
    /// collapsed; the number collapsed is kept in [`Graph::duplicates_dropped`].
    pub fn from_edges<I: IntoIterator<Item = Edge>>(edges: I) -> Self {
        Self::with_vertices(std::iter::empty(), edges)
    }

    /// Like [`Graph::from_edges`] but also keeps the given (possibly isolated)
    /// vertices.
    pub fn with_vertices<V, I>(vertices: V, edges: I) -> Self
    where
        V: IntoIterator<Item = VertexId>,
        I: IntoIterator<Item = Edge>,
    {
        let mut edges: Vec<Edge> = edges.into_iter().collect();
        let raw = edges.len();
        edges.sort_unstable();
        edges.dedup();
        let duplicates_dropped = raw - edges.len();

        let mut ids: Vec<VertexId> = vertices.into_iter().collect();
        ids.reserve(2 * edges.len());
        for e in &edges {
            ids.push(e.u);
            ids.push(e.v);
        }
        ids.sort_unstable();
        ids.dedup();
        assert!(ids.len() <= u32::MAX as usize, "graph too large");

        let index = |x: VertexId| ids.binary_search(&x).expect("endpoint registered") as u32;
        let mut degree = vec![0usize; ids.len()];
        let pairs: Vec<(u32, u32)> = edges
            .iter()
            .map(|e| {
                let (a, b) = (index(e.u), index(e.v));
                degree[a as usize] += 1;
                degree[b as usize] += 1;
                (a, b)
            })
            .collect();

        let mut offsets = Vec::with_capacity(ids.len() + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets.clone();
        let mut adj = vec![0u32; 2 * pairs.len()];
        for &(a, b) in &pairs {
            adj[fill[a as usize]] = b;
            fill[a as usize] += 1;
            adj[fill[b as usize]] = a;
            fill[b as usize] += 1;
        }
        for i in 0..ids.len() {
            adj[offsets[i]..offsets[i + 1]].sort_unstable();
        }

        Graph {
            ids,
            offsets,
            adj,
            duplicates_dropped,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.len() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    /// Number of repeated input edges that were collapsed during construction.
    pub fn duplicates_dropped(&self) -> usize {
        self.duplicates_dropped
    }

    /// Vertex ids in ascending order.
    pub fn vertices(&self) -> &[VertexId] {
        &self.ids
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.index_of(v).is_some()
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.index_of(v).map_or(0, |i| self.degree_at(i))
    }

    pub fn max_degree(&self) -> usize {
        (0..self.ids.len())
            .map(|i| self.degree_at(i))
            .max()
            .unwrap_or(0)
    }

    /// Neighbors of `v` in ascending id order (empty if `v` is absent).
    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        let slice = match self.index_of(v) {
            Some(i) => self.neighbor_indices(i),
            None => &[],
        };
        slice.iter().map(move |&j| self.ids[j as usize])
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        match (self.index_of(a), self.index_of(b)) {
            (Some(i), Some(j)) => self.neighbor_indices(i).binary_search(&(j as u32)).is_ok(),
            _ => false,
        }
    }

    /// Every edge once, in ascending canonical order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (0..self.ids.len()).flat_map(move |i| {
            self.neighbor_indices(i)
                .iter()
                .filter(move |&&j| (j as usize) > i)
                .map(move |&j| Edge {
                    u: self.ids[i],
                    v: self.ids[j as usize],
                })
        })
    }

    /// Disjoint union; `other`'s ids are shifted past this graph's largest id.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.ids.last().map_or(0, |&x| x + 1);
        Graph::with_vertices(
            self.ids
                .iter()
                .copied()
                .chain(other.ids.iter().map(|&x| x + shift)),
            self.edges().chain(
                other
                    .edges()
                    .map(|e| Edge::from_distinct(e.u + shift, e.v + shift)),
            ),
        )
    }

    /// Applies an injective relabeling to every vertex.
    pub fn relabel<F: Fn(VertexId) -> VertexId>(&self, map: F) -> Graph {
        Graph::with_vertices(
            self.ids.iter().map(|&x| map(x)),
            self.edges().map(|e| Edge::from_distinct(map(e.u), map(e.v))),
        )
    }

    pub(crate) fn index_of(&self, v: VertexId) -> Option<usize> {
        self.ids.binary_search(&v).ok()
    }

    pub(crate) fn id_at(&self, i: usize) -> VertexId {
        self.ids[i]
    }

    pub(crate) fn degree_at(&self, i: usize) -> usize {
        self.offsets[i + 1] - self.offsets[i]
    }

    pub(crate) fn neighbor_indices(&self, i: usize) -> &[u32] {
        &self.adj[self.offsets[i]..self.offsets[i + 1]]
    }
}

/// Same as [`Graph::from_edges`].
pub fn build_graph<I: IntoIterator<Item = Edge>>(edges: I) -> Graph {
    Graph::from_edges(edges)
}

#[cfg(test)]
pub(crate) mod test_util {
    use super::*;

    pub fn graph(pairs: &[(VertexId, VertexId)]) -> Graph {
        Graph::from_edges(pairs.iter().map(|&(a, b)| Edge::new(a, b).unwrap()))
    }

    pub fn complete(n: u64) -> Graph {
        let mut pairs = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                pairs.push((a, b));
            }
        }
        graph(&pairs)
    }
}
