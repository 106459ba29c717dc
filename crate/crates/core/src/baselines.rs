//! Earlier one-pass estimators used as comparison points: uniform edge
//! sampling, colorful (monochromatic-edge) sampling and plain vertex sampling.
//! They share the hash functions of the main estimator so that runs with the
//! same seed use common random numbers.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{config, Result};
use crate::graph::{triangle_count, Edge, Graph, VertexId};
use crate::hashing::{HashContext, HashLabel};

/// Estimate and storage of one baseline run.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BaselineEstimate {
    pub value: f64,
    pub edges_stored: usize,
}

fn finish(kept: Vec<Edge>, scale: f64) -> BaselineEstimate {
    let edges_stored = kept.len();
    let g = Graph::from_edges(kept);
    BaselineEstimate {
        value: triangle_count(&g) as f64 * scale,
        edges_stored,
    }
}

/// Keeps each edge with probability `p`; `T̂ = T(kept)/p³`.
pub fn edge_sample_estimate<I: IntoIterator<Item = Edge>>(stream: I, p: f64, seed: u64) -> Result<BaselineEstimate> {
    check_rate(p)?;
    let ctx = HashContext::new(seed, HashLabel::EdgeSample);
    let kept = stream.into_iter().filter(|e| ctx.coin(e, p)).collect();
    Ok(finish(kept, 1.0 / (p * p * p)))
}

/// Colors vertices uniformly from `N` colors and keeps monochromatic edges;
/// `T̂ = N²·T(kept)`.
pub fn colorful_estimate<I: IntoIterator<Item = Edge>>(stream: I, colors: u64, seed: u64) -> Result<BaselineEstimate> {
    if colors == 0 {
        return config("color count must be at least 1");
    }
    let ctx = HashContext::new(seed, HashLabel::Palette);
    let mut cache: HashMap<VertexId, u64> = HashMap::new();
    let mut color = |v: VertexId| {
        *cache
            .entry(v)
            .or_insert_with(|| ((ctx.unit(&v) * colors as f64) as u64).min(colors - 1))
    };
    let kept = stream.into_iter().filter(|e| color(e.u()) == color(e.v())).collect();
    let n = colors as f64;
    Ok(finish(kept, n * n))
}

/// Samples vertices with probability `1/√k` and keeps edges between sampled
/// vertices; `T̂ = k^{3/2}·T(kept)`. Uses the same vertex coin as the main
/// estimator's `c`.
pub fn vertex_sample_estimate<I: IntoIterator<Item = Edge>>(stream: I, k: f64, seed: u64) -> Result<BaselineEstimate> {
    if !(k >= 1.0 && k.is_finite()) {
        return config(format!("k must be at least 1, got {k}"));
    }
    let ctx = HashContext::new(seed, HashLabel::C);
    let p = 1.0 / k.sqrt();
    let kept = stream
        .into_iter()
        .filter(|e| ctx.coin(&e.u(), p) && ctx.coin(&e.v(), p))
        .collect();
    Ok(finish(kept, k.powf(1.5)))
}

fn check_rate(p: f64) -> Result<()> {
    if p > 0.0 && p <= 1.0 {
        Ok(())
    } else {
        config(format!("edge sampling rate must lie in (0, 1], got {p}"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum BaselineKind {
    EdgeSample { p: f64 },
    Colorful { colors: u64 },
    VertexSample { k: f64 },
}

impl BaselineKind {
    pub fn name(&self) -> &'static str {
        match self {
            BaselineKind::EdgeSample { .. } => "edge",
            BaselineKind::Colorful { .. } => "colorful",
            BaselineKind::VertexSample { .. } => "vertex",
        }
    }

    /// Expected fraction of edges kept.
    pub fn edge_rate(&self) -> f64 {
        match *self {
            BaselineKind::EdgeSample { p } => p,
            BaselineKind::Colorful { colors } => 1.0 / colors as f64,
            BaselineKind::VertexSample { k } => 1.0 / k,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BaselineSpec {
    #[serde(flatten)]
    pub kind: BaselineKind,
    pub seed: u64,
}

impl BaselineSpec {
    pub fn validate(&self) -> Result<()> {
        match self.kind {
            BaselineKind::EdgeSample { p } => check_rate(p),
            BaselineKind::Colorful { colors } if colors == 0 => config("color count must be at least 1"),
            BaselineKind::VertexSample { k } if !(k >= 1.0 && k.is_finite()) => {
                config(format!("k must be at least 1, got {k}"))
            }
            _ => Ok(()),
        }
    }

    pub fn run<I: IntoIterator<Item = Edge>>(&self, stream: I) -> Result<BaselineEstimate> {
        match self.kind {
            BaselineKind::EdgeSample { p } => edge_sample_estimate(stream, p, self.seed),
            BaselineKind::Colorful { colors } => colorful_estimate(stream, colors, self.seed),
            BaselineKind::VertexSample { k } => vertex_sample_estimate(stream, k, self.seed),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_gnp, gen_hubs, gen_independent_triangles};
    use crate::graph::test_util::complete;
    use crate::numeric::{mean, standard_error};

    #[test]
    fn full_rates_are_exact() {
        let g = gen_gnp(25, 0.4, 1).unwrap();
        let t = triangle_count(&g) as f64;
        assert_eq!(edge_sample_estimate(g.edges(), 1.0, 3).unwrap().value, t);
        assert_eq!(colorful_estimate(g.edges(), 1, 3).unwrap().value, t);
        let v = vertex_sample_estimate(g.edges(), 1.0, 3).unwrap();
        assert_eq!((v.value, v.edges_stored), (t, g.edge_count()));
    }

    #[test]
    fn empty_stream() {
        for spec in [
            BaselineKind::EdgeSample { p: 0.3 },
            BaselineKind::Colorful { colors: 3 },
            BaselineKind::VertexSample { k: 9.0 },
        ] {
            let out = BaselineSpec { kind: spec, seed: 0 }.run(Vec::new()).unwrap();
            assert_eq!((out.value, out.edges_stored), (0.0, 0));
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(edge_sample_estimate(Vec::new(), 0.0, 0).is_err());
        assert!(edge_sample_estimate(Vec::new(), 1.5, 0).is_err());
        assert!(colorful_estimate(Vec::new(), 0, 0).is_err());
        assert!(vertex_sample_estimate(Vec::new(), 0.5, 0).is_err());
    }

    #[test]
    fn colorful_single_triangle_exhaustive() {
        // Over the 8 colorings of a triangle with N = 2, exactly 2 are
        // monochromatic and each yields N² = 4.
        let mean_value: f64 = (0..8u32)
            .map(|mask| {
                let color = |v: u64| (mask >> v) & 1;
                if color(0) == color(1) && color(1) == color(2) {
                    4.0
                } else {
                    0.0
                }
            })
            .sum::<f64>()
            / 8.0;
        assert_eq!(mean_value, 1.0);
        // and the hashed coloring only ever produces those two outcomes
        let g = complete(3);
        for seed in 0..50 {
            let v = colorful_estimate(g.edges(), 2, seed).unwrap().value;
            assert!(v == 0.0 || v == 4.0);
        }
    }

    fn assert_unbiased(values: &[f64], truth: f64) {
        let m = mean(values).unwrap();
        let se = standard_error(values).unwrap();
        assert!((m - truth).abs() <= 3.0 * se, "mean {m} ± {se} vs {truth}");
    }

    #[test]
    fn edge_sampling_unbiased() {
        let g = gen_independent_triangles(100);
        let values: Vec<f64> = (0..10_000)
            .map(|s| edge_sample_estimate(g.edges(), 0.5, s).unwrap().value)
            .collect();
        assert_unbiased(&values, 100.0);
    }

    #[test]
    fn colorful_unbiased() {
        let g = gen_gnp(60, 0.2, 7).unwrap();
        let t = triangle_count(&g) as f64;
        let values: Vec<f64> = (0..10_000)
            .map(|s| colorful_estimate(g.edges(), 4, s).unwrap().value)
            .collect();
        assert_unbiased(&values, t);
    }

    #[test]
    fn vertex_sampling_misses_hub() {
        let g = gen_hubs(1, 400);
        let values: Vec<f64> = (0..1000)
            .map(|s| vertex_sample_estimate(g.edges(), 100.0, s).unwrap().value)
            .collect();
        let zeros = values.iter().filter(|&&v| v == 0.0).count();
        assert!(zeros >= 600, "{zeros} zeros");
        assert_unbiased(&values, 400.0);
    }

    #[test]
    fn spec_json() {
        let spec = BaselineSpec {
            kind: BaselineKind::Colorful { colors: 5 },
            seed: 2,
        };
        let s = serde_json::to_string(&spec).unwrap();
        assert_eq!(s, r#"{"method":"colorful","colors":5,"seed":2}"#);
        assert_eq!(serde_json::from_str::<BaselineSpec>(&s).unwrap(), spec);
    }
}
