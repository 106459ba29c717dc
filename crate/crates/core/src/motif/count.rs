use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use serde::Serialize;

use super::Pattern;
use crate::graph::{Edge, Graph, VertexId};

/// One copy of a pattern: its vertex set and edge set, both sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct MotifCopy {
    pub edges: Vec<Edge>,
    pub vertices: Vec<VertexId>,
}

impl MotifCopy {
    fn new(mut vertices: Vec<VertexId>, mut edges: Vec<Edge>) -> Self {
        vertices.sort_unstable();
        edges.sort_unstable();
        MotifCopy { edges, vertices }
    }
}

/// Every copy of `pattern` in `g`, sorted.
pub fn motif_copies(g: &Graph, pattern: &Pattern) -> Vec<MotifCopy> {
    let mut out = Vec::new();
    pattern.for_each_copy_index(g, &mut |verts, edges| {
        out.push(MotifCopy::new(
            verts.iter().map(|&i| g.id_at(i)).collect(),
            edges
                .iter()
                .map(|&(a, b)| Edge::from_distinct(g.id_at(a), g.id_at(b)))
                .collect(),
        ));
    });
    out.sort_unstable();
    out
}

/// Reference enumeration: every `s`-subset of vertices under every vertex
/// ordering, deduplicated by edge set. `O(C(n, s)·s!)`; a few hundred
/// vertices at `s = 4` is the practical limit.
pub fn brute_force_motifs(g: &Graph, pattern: &Pattern) -> Vec<MotifCopy> {
    let s = pattern.size();
    let mut found = BTreeSet::new();
    for subset in g.vertices().iter().copied().combinations(s) {
        for perm in subset.iter().copied().permutations(s) {
            if pattern.edges().iter().all(|&(a, b)| g.has_edge(perm[a], perm[b])) {
                let edges = pattern
                    .edges()
                    .iter()
                    .map(|&(a, b)| Edge::from_distinct(perm[a], perm[b]))
                    .collect();
                found.insert(MotifCopy::new(subset.clone(), edges));
            }
        }
    }
    found.into_iter().collect()
}

/// Copy count and copies per vertex (nonzero entries only).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MotifCount {
    pub count: u64,
    pub per_vertex: BTreeMap<VertexId, u64>,
}

pub fn enumerate_motifs(g: &Graph, pattern: &Pattern) -> MotifCount {
    let mut count = 0;
    let mut per_vertex = vec![0u64; g.vertex_count()];
    pattern.for_each_copy_index(g, &mut |verts, _| {
        count += 1;
        for &v in verts {
            per_vertex[v] += 1;
        }
    });
    MotifCount {
        count,
        per_vertex: per_vertex
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, &c)| (g.id_at(i), c))
            .collect(),
    }
}

/// Exact motif statistics.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MotifStats {
    pub pattern: Pattern,
    /// `M`
    pub count: u64,
    /// `M_S` for every vertex set `S` contained in at least one copy.
    #[serde(skip)]
    pub subsets: BTreeMap<Vec<VertexId>, u64>,
    /// `C_l = Σ_{|S|=l} M_S²` at index `l - 1`.
    pub c: Vec<u64>,
}

impl MotifStats {
    /// `C_l` for `1 ≤ l ≤ s`.
    pub fn c(&self, l: usize) -> u64 {
        self.c[l - 1]
    }

    pub fn subset_count(&self, set: &[VertexId]) -> u64 {
        let mut key = set.to_vec();
        key.sort_unstable();
        self.subsets.get(&key).copied().unwrap_or(0)
    }

    /// `[C_1, …, C_s]` as reals, for use as exact upper bounds.
    pub fn bounds(&self) -> Vec<f64> {
        self.c.iter().map(|&c| c as f64).collect()
    }
}

pub fn motif_stats(g: &Graph, pattern: &Pattern) -> MotifStats {
    let s = pattern.size();
    let mut count = 0;
    let mut subsets: BTreeMap<Vec<VertexId>, u64> = BTreeMap::new();
    pattern.for_each_copy_index(g, &mut |verts, _| {
        count += 1;
        let mut ids: Vec<VertexId> = verts.iter().map(|&i| g.id_at(i)).collect();
        ids.sort_unstable();
        for mask in 1u32..(1 << s) {
            let set: Vec<VertexId> = (0..s).filter(|&i| mask >> i & 1 == 1).map(|i| ids[i]).collect();
            *subsets.entry(set).or_insert(0) += 1;
        }
    });
    let mut c = vec![0u64; s];
    for (set, &m) in &subsets {
        c[set.len() - 1] += m * m;
    }
    MotifStats {
        pattern: pattern.clone(),
        count,
        subsets,
        c,
    }
}
