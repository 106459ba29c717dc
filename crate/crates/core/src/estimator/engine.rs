//! Post-processing shared by the triangle and motif estimators: scale
//! estimates from the first-pass statistics, then the light-part and
//! heavy-part estimates from the second-pass conditions, all evaluated on the
//! retained edges of one repetition.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::retention::{level_weight, SampleState, SamplingConfig, VertexCoins};
use crate::graph::{Edge, Graph, VertexId};
use crate::numeric::canonical_sum;

/// Scale estimate of a vertex: light, or a weight level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScaleEstimate {
    Lo,
    Level(u32),
}

/// What the retained edges reveal about a vertex's scale estimate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScaleKnowledge {
    Exact(ScaleEstimate),
    /// Known only to be light or a level above the vertex's own `h(v)`.
    AboveOrLo,
}

impl ScaleKnowledge {
    pub fn is_lo(&self) -> bool {
        matches!(self, ScaleKnowledge::Exact(ScaleEstimate::Lo))
    }

    pub fn level(&self) -> Option<u32> {
        match self {
            ScaleKnowledge::Exact(ScaleEstimate::Level(h)) => Some(*h),
            _ => None,
        }
    }
}

/// Enumerates the copies of a pattern in a graph, as internal vertex indices
/// plus the copy's edges as index pairs.
pub(crate) trait CopySource: Sync {
    /// Number of vertices `s` of every copy.
    fn size(&self) -> usize;
    fn for_each_copy(&self, g: &Graph, f: &mut dyn FnMut(&[usize], &[(usize, usize)]));
}

pub(crate) struct TriangleSource;

impl CopySource for TriangleSource {
    fn size(&self) -> usize {
        3
    }

    fn for_each_copy(&self, g: &Graph, f: &mut dyn FnMut(&[usize], &[(usize, usize)])) {
        crate::graph::for_each_triangle_index(g, |a, b, c| f(&[a, b, c], &[(a, b), (a, c), (b, c)]));
    }
}

/// `k^{n/2}`
pub(crate) fn half_pow(k: f64, n: usize) -> f64 {
    k.sqrt().powi(n as i32)
}

/// `1/x` for the first-pass normalizer `x = (ω2^h)^t / k^{(s+t-1)/2}` of a
/// copy with `t` edges at the anchor.
pub(crate) fn first_pass_scale(k: f64, s: usize, t: usize, weight: f64) -> f64 {
    half_pow(k, s + t - 1) / weight.powi(t as i32)
}

/// Inverse inclusion probability of a copy counted at a vertex of level `h`:
/// `1/P[h(v) = h]` times `k^{(s-1)/2}` for the other vertices' coins times
/// `q^{-t}` for the `t` anchor edges, `q = min(1, ω2^h/√k)`.
pub(crate) fn heavy_weight(k: f64, s: usize, t: usize, weight: f64) -> f64 {
    let q = (weight / k.sqrt()).min(1.0);
    weight * half_pow(k, s - 1) / q.powi(t as i32)
}

/// The two parts of one repetition's estimate.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Evaluation {
    /// `T̄_L` (or `M̄_L`).
    pub low: f64,
    /// `T̄_H` (or `M̄_H`).
    pub high: f64,
    /// Copies found among sampled light vertices.
    pub low_copies: u64,
    /// Number of (copy, anchor) pairs that contributed to the heavy part.
    pub high_terms: usize,
}

impl Evaluation {
    pub fn total(&self) -> f64 {
        self.low + self.high
    }
}

pub(crate) struct Engine<'a, S: CopySource + ?Sized> {
    cfg: &'a SamplingConfig,
    graph: Graph,
    coins: Vec<VertexCoins>,
    source: &'a S,
    target: f64,
}

impl<'a, S: CopySource + ?Sized> Engine<'a, S> {
    pub(crate) fn new(state: &'a SampleState, source: &'a S, target: f64) -> Self {
        let graph = state.graph();
        let coins = graph
            .vertices()
            .iter()
            .map(|&v| state.config.coins(v))
            .collect();
        Engine {
            cfg: &state.config,
            graph,
            coins,
            source,
            target,
        }
    }

    fn edge(&self, (a, b): (usize, usize)) -> Edge {
        Edge::from_distinct(self.graph.id_at(a), self.graph.id_at(b))
    }

    /// Number of levels whose statistic at `v` the retained edges determine.
    fn horizon(&self, v: usize) -> Option<u32> {
        let c = &self.coins[v];
        if c.c {
            Some(self.cfg.params.levels)
        } else {
            c.h.map(|h| h + 1)
        }
    }

    /// Per-vertex scale knowledge, indexed like the retained graph. `None`
    /// for vertices whose scale estimate is never needed.
    pub(crate) fn scales(&self) -> Vec<Option<ScaleKnowledge>> {
        let s = self.source.size();
        let levels = self.cfg.params.levels as usize;
        let n = self.graph.vertex_count();
        // counts[v][(i·levels + h)·s + t]: copies at `v` in run `i` first
        // passing at level `h`, with `t` anchor edges
        let mut counts: Vec<Vec<u64>> = vec![Vec::new(); n];
        for (v, slot) in counts.iter_mut().enumerate() {
            if self.horizon(v).is_some_and(|h| h > 0) {
                *slot = vec![0; 2 * levels * s];
            }
        }

        self.source.for_each_copy(&self.graph, &mut |verts, edges| {
            for &v in verts {
                let Some(horizon) = self.horizon(v) else { continue };
                if horizon == 0 {
                    continue;
                }
                for i in 0..2 {
                    if !verts.iter().all(|&u| u == v || self.coins[u].d[i]) {
                        continue;
                    }
                    let mut t = 0;
                    let mut max_r = 0.0f64;
                    for &(a, b) in edges {
                        if a == v || b == v {
                            t += 1;
                            max_r = max_r.max(self.cfg.r_d(i, &self.edge((a, b))));
                        }
                    }
                    if let Some(h) = self.cfg.min_level(max_r) {
                        if h < horizon {
                            counts[v][(i * levels + h as usize) * s + t] += 1;
                        }
                    }
                }
            }
        });

        (0..n)
            .map(|v| {
                let horizon = self.horizon(v)?;
                let found = (0..2)
                    .filter_map(|i| self.first_passing_level(&counts[v], i, horizon))
                    .min();
                Some(match found {
                    Some(h) => ScaleKnowledge::Exact(ScaleEstimate::Level(h)),
                    None if self.coins[v].c => ScaleKnowledge::Exact(ScaleEstimate::Lo),
                    None => ScaleKnowledge::AboveOrLo,
                })
            })
            .collect()
    }

    /// Least `h < horizon` with `Σ_t cum_t(h)/x_t(h) ≥ target/(ω2^h)`.
    fn first_passing_level(&self, counts: &[u64], i: usize, horizon: u32) -> Option<u32> {
        let s = self.source.size();
        let levels = self.cfg.params.levels as usize;
        let k = self.cfg.params.k;
        let mut cum = vec![0u64; s];
        for h in 0..horizon {
            let base = (i * levels + h as usize) * s;
            for t in 1..s {
                cum[t] += counts[base + t];
            }
            let w = self.cfg.weight(h);
            let mut x = 0.0;
            for t in 1..s {
                x += cum[t] as f64 * first_pass_scale(k, s, t, w);
            }
            if x >= self.target / w {
                return Some(h);
            }
        }
        None
    }

    pub(crate) fn evaluate(&self, scales: &[Option<ScaleKnowledge>]) -> Evaluation {
        let s = self.source.size();
        let k = self.cfg.params.k;
        let mut low_copies = 0u64;
        let mut terms = Vec::new();
        self.source.for_each_copy(&self.graph, &mut |verts, edges| {
            let sampled_others = |v: usize| verts.iter().all(|&u| u == v || self.coins[u].c);
            if verts
                .iter()
                .all(|&u| self.coins[u].c && scales[u].is_some_and(|x| x.is_lo()))
            {
                low_copies += 1;
            }
            for &v in verts {
                let Some(level) = scales[v].and_then(|x| x.level()) else { continue };
                if self.coins[v].h != Some(level) || !sampled_others(v) {
                    continue;
                }
                let rate = self.cfg.rate(level);
                let mut t = 0;
                let mut pass = true;
                for &(a, b) in edges {
                    if a == v || b == v {
                        t += 1;
                        pass &= self.cfg.r_c(&self.edge((a, b))) < rate;
                    }
                }
                if !pass {
                    continue;
                }
                // every other vertex has c = 1, so its scale is known exactly
                let heavy = verts
                    .iter()
                    .filter(|&&u| !scales[u].is_some_and(|x| x.is_lo()))
                    .count();
                terms.push(heavy_weight(k, s, t, level_weight(self.cfg.params.omega, level)) / heavy as f64);
            }
        });
        Evaluation {
            low: low_copies as f64 * half_pow(k, s),
            high_terms: terms.len(),
            high: canonical_sum(terms),
            low_copies,
        }
    }

    pub(crate) fn scale_map(&self, scales: &[Option<ScaleKnowledge>]) -> BTreeMap<VertexId, ScaleKnowledge> {
        scales
            .iter()
            .enumerate()
            .filter_map(|(i, s)| s.map(|s| (self.graph.id_at(i), s)))
            .collect()
    }

    pub(crate) fn scale_vec(&self, map: &BTreeMap<VertexId, ScaleKnowledge>) -> Vec<Option<ScaleKnowledge>> {
        self.graph.vertices().iter().map(|v| map.get(v).copied()).collect()
    }
}

pub(crate) fn run<S: CopySource + ?Sized>(state: &SampleState, source: &S, target: f64) -> Evaluation {
    let engine = Engine::new(state, source, target);
    let scales = engine.scales();
    engine.evaluate(&scales)
}
