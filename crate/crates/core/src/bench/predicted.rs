use serde::{Deserialize, Serialize};

use crate::graph::TriangleStats;

/// Space bounds of the known triangle estimators on one graph, constants and
/// logarithmic factors dropped. Useful only as scaling guides.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PredictedComplexities {
    /// `m(Δ_E/T + √Δ_V/T + 1/T^{2/3})`
    pub main: f64,
    /// Uniform edge sampling: `m(Δ_E/T + 1/T^{1/3})`
    pub edge_sampling: f64,
    /// Colorful sampling: `m(Δ_E/T + 1/√T)`
    pub colorful: f64,
    /// Turnstile sketching: `√m/α`; absent without wedges.
    pub turnstile: Option<f64>,
    /// Insertion-only, `mn/T`
    pub insertion_mn: f64,
    /// Insertion-only, `md²/T` with `d` the maximum degree.
    pub insertion_md2: f64,
}

/// `None` when the graph has no triangle.
pub fn predicted_complexities(stats: &TriangleStats, m: usize) -> Option<PredictedComplexities> {
    if stats.triangles == 0 {
        return None;
    }
    let t = stats.triangles as f64;
    let m = m as f64;
    let heavy_edge = stats.delta_e as f64 / t;
    let d = stats.max_degree as f64;
    Some(PredictedComplexities {
        main: m * (heavy_edge + (stats.delta_v as f64).sqrt() / t + t.powf(-2.0 / 3.0)),
        edge_sampling: m * (heavy_edge + t.powf(-1.0 / 3.0)),
        colorful: m * (heavy_edge + 1.0 / t.sqrt()),
        turnstile: stats.transitivity.map(|alpha| m.sqrt() / alpha),
        insertion_mn: m * stats.vertices as f64 / t,
        insertion_md2: m * d * d / t,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_heavy_edges, gen_hubs, gen_independent_triangles};
    use crate::graph::triangle_stats;

    fn predict(g: &crate::graph::Graph) -> PredictedComplexities {
        predicted_complexities(&triangle_stats(g), g.edge_count()).unwrap()
    }

    #[test]
    fn independent_triangles() {
        let p = predict(&gen_independent_triangles(1000));
        // 3000·(1/1000 + 1/1000 + 1/100): the T^{-2/3} term alone is 30
        assert!((p.main - 36.0).abs() < 1e-9);
        assert!((p.edge_sampling - 303.0).abs() < 1e-9);
        assert_eq!(p.turnstile, Some(3000f64.sqrt()));
    }

    #[test]
    fn hub_scales_with_root_n() {
        for n in [400u64, 1600, 6400] {
            let p = predict(&gen_hubs(1, n));
            let n = n as f64;
            // Δ_E/T and √Δ_V/T terms: 3n/n + 3n·√n/n
            let expected = 3.0 + 3.0 * n.sqrt() + 3.0 * n * n.powf(-2.0 / 3.0);
            assert!((p.main - expected).abs() < 1e-6 * expected);
        }
        let ratio = predict(&gen_hubs(1, 6400)).main / predict(&gen_hubs(1, 400)).main;
        assert!(ratio > 3.0 && ratio < 5.0);
    }

    #[test]
    fn heavy_edge_linear() {
        let p = predict(&gen_heavy_edges(1, 500));
        // Δ_E = T, so the first term is m = 3n
        assert!(p.main >= 1500.0 && p.main < 1600.0);
    }

    #[test]
    fn triangle_free_absent() {
        let g = crate::graph::Graph::from_edges([crate::graph::Edge::new(0, 1).unwrap()]);
        assert!(predicted_complexities(&triangle_stats(&g), 1).is_none());
    }
}
