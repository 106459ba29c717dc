use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::triangles::for_each_triangle_index;
use super::{Edge, Graph, VertexId};
use crate::error::{config, Result};

/// Exact triangle statistics of a graph.
///
/// Per-vertex and per-edge maps only hold entries with a nonzero count.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TriangleStats {
    pub vertices: usize,
    pub edges: usize,
    pub max_degree: usize,
    /// `T`
    pub triangles: u64,
    #[serde(skip)]
    pub per_vertex: BTreeMap<VertexId, u64>,
    #[serde(skip)]
    pub per_edge: BTreeMap<Edge, u64>,
    /// `Δ_V = max_v T_v`
    pub delta_v: u64,
    /// `Δ_E = max_e T_e`
    pub delta_e: u64,
    /// `T_V = Σ_v T_v²`
    pub vertex_moment: u64,
    /// `T_E = Σ_e T_e²`
    pub edge_moment: u64,
    /// Number of length-2 paths, `Σ_v C(deg v, 2)`.
    pub wedges: u64,
    /// `3T / wedges`; absent when the graph has no wedge.
    pub transitivity: Option<f64>,
}

impl TriangleStats {
    pub fn vertex_count(&self, v: VertexId) -> u64 {
        self.per_vertex.get(&v).copied().unwrap_or(0)
    }

    pub fn edge_count(&self, e: &Edge) -> u64 {
        self.per_edge.get(e).copied().unwrap_or(0)
    }

    /// `(Δ_{V,ε}, Δ_{E,ε})`: the heaviest vertex (edge) left after removing the
    /// longest heaviest-first prefix whose counts sum to at most `eps·T`.
    /// Ties in the count are broken by ascending id.
    pub fn pruned_deltas(&self, eps: f64) -> Result<(u64, u64)> {
        if !(eps > 0.0 && eps < 1.0) {
            return config(format!("eps must lie in (0, 1), got {eps}"));
        }
        let budget = eps * self.triangles as f64;
        Ok((
            pruned_max(self.per_vertex.iter().map(|(k, &c)| (*k, c)), budget),
            pruned_max(self.per_edge.iter().map(|(k, &c)| (*k, c)), budget),
        ))
    }
}

fn pruned_max<K: Ord, I: Iterator<Item = (K, u64)>>(items: I, budget: f64) -> u64 {
    let mut sorted: Vec<(K, u64)> = items.collect();
    sorted.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    let mut removed = 0u64;
    for (_, count) in &sorted {
        if (removed + count) as f64 <= budget {
            removed += count;
        } else {
            return *count;
        }
    }
    0
}

pub fn triangle_stats(g: &Graph) -> TriangleStats {
    let n = g.vertex_count();
    let mut per_vertex = vec![0u64; n];
    let mut per_edge: BTreeMap<Edge, u64> = BTreeMap::new();
    let mut triangles = 0u64;
    for_each_triangle_index(g, |a, b, c| {
        triangles += 1;
        for i in [a, b, c] {
            per_vertex[i] += 1;
        }
        for (x, y) in [(a, b), (a, c), (b, c)] {
            *per_edge
                .entry(Edge::from_distinct(g.id_at(x), g.id_at(y)))
                .or_insert(0) += 1;
        }
    });

    let wedges: u64 = (0..n)
        .map(|i| {
            let d = g.degree_at(i) as u64;
            d * d.saturating_sub(1) / 2
        })
        .sum();

    TriangleStats {
        vertices: n,
        edges: g.edge_count(),
        max_degree: g.max_degree(),
        triangles,
        delta_v: per_vertex.iter().copied().max().unwrap_or(0),
        delta_e: per_edge.values().copied().max().unwrap_or(0),
        vertex_moment: per_vertex.iter().map(|c| c * c).sum(),
        edge_moment: per_edge.values().map(|c| c * c).sum(),
        per_vertex: per_vertex
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, &c)| (g.id_at(i), c))
            .collect(),
        per_edge,
        wedges,
        transitivity: (wedges > 0).then(|| 3.0 * triangles as f64 / wedges as f64),
    }
}

pub fn pruned_deltas(g: &Graph, eps: f64) -> Result<(u64, u64)> {
    triangle_stats(g).pruned_deltas(eps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_heavy_edges, gen_hubs, gen_independent_triangles};
    use crate::graph::test_util::*;
    use proptest::prelude::*;

    #[test]
    fn hub_graph_stats() {
        let s = triangle_stats(&gen_hubs(1, 4));
        assert_eq!((s.triangles, s.delta_v, s.delta_e, s.edges), (4, 4, 1, 12));
    }

    #[test]
    fn heavy_edge_graph_stats() {
        let s = triangle_stats(&gen_heavy_edges(1, 4));
        assert_eq!((s.triangles, s.delta_e, s.edges), (4, 4, 12));
    }

    #[test]
    fn independent_triangles_stats() {
        let s = triangle_stats(&gen_independent_triangles(6));
        assert_eq!(s.triangles, 6);
        assert_eq!((s.delta_v, s.delta_e), (1, 1));
        assert_eq!((s.vertex_moment, s.edge_moment), (18, 18));
    }

    #[test]
    fn transitivity_of_k4_and_absent_without_wedges() {
        let s = triangle_stats(&complete(4));
        assert_eq!(s.wedges, 12);
        assert_eq!(s.transitivity, Some(1.0));
        let single = triangle_stats(&graph(&[(1, 2)]));
        assert_eq!(single.wedges, 0);
        assert_eq!(single.transitivity, None);
    }

    fn hub_plus_independent() -> Graph {
        gen_hubs(1, 10).disjoint_union(&gen_independent_triangles(90))
    }

    #[test]
    fn pruning_removes_hub_within_budget() {
        let s = triangle_stats(&hub_plus_independent());
        assert_eq!(s.triangles, 100);
        assert_eq!(s.pruned_deltas(0.1).unwrap().0, 1);
    }

    #[test]
    fn pruning_keeps_hub_above_budget() {
        let s = triangle_stats(&hub_plus_independent());
        assert_eq!(s.pruned_deltas(0.05).unwrap().0, 10);
    }

    #[test]
    fn pruning_rejects_bad_eps() {
        let s = triangle_stats(&complete(4));
        assert!(s.pruned_deltas(0.0).is_err());
        assert!(s.pruned_deltas(1.0).is_err());
    }

    #[test]
    fn tiny_eps_prunes_nothing() {
        let s = triangle_stats(&gen_heavy_edges(2, 5));
        let (dv, de) = s.pruned_deltas(1e-9).unwrap();
        assert_eq!((dv, de), (s.delta_v, s.delta_e));
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        prop::collection::vec((0u64..12, 0u64..12), 0..50).prop_map(|pairs| {
            Graph::from_edges(
                pairs
                    .into_iter()
                    .filter(|(a, b)| a != b)
                    .map(|(a, b)| Edge::new(a, b).unwrap()),
            )
        })
    }

    proptest! {
        #[test]
        fn count_identities(g in arb_graph()) {
            let s = triangle_stats(&g);
            prop_assert_eq!(s.per_vertex.values().sum::<u64>(), 3 * s.triangles);
            prop_assert_eq!(s.per_edge.values().sum::<u64>(), 3 * s.triangles);
            prop_assert!(s.vertex_moment <= 3 * s.triangles * s.delta_v);
            prop_assert!(s.edge_moment <= 3 * s.triangles * s.delta_e);
        }

        #[test]
        fn pruning_is_monotone(g in arb_graph(), a in 0.01f64..0.99, b in 0.01f64..0.99) {
            let s = triangle_stats(&g);
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            let (v1, e1) = s.pruned_deltas(lo).unwrap();
            let (v2, e2) = s.pruned_deltas(hi).unwrap();
            prop_assert!(v1 >= v2);
            prop_assert!(e1 >= e2);
        }
    }
}
