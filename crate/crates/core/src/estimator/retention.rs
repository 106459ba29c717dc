use std::collections::BTreeMap;

use bitflags::bitflags;

use super::params::SamplingParams;
use crate::graph::{Edge, Graph, VertexId};
use crate::hashing::{HashContext, HashLabel, Level, LevelDistribution};

bitflags! {
    /// Which of the five retention sets an edge belongs to.
    #[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
    pub struct RetentionFlags: u8 {
        const E0 = 1;
        const E1 = 1 << 1;
        const E2 = 1 << 2;
        const E3 = 1 << 3;
        const E4 = 1 << 4;
    }
}

/// Hash functions and derived rates of one repetition.
#[derive(Clone, Debug)]
pub struct SamplingConfig {
    pub params: SamplingParams,
    pub seed: u64,
    vertex_rate: f64,
    d: [HashContext; 2],
    c: HashContext,
    h: HashContext,
    rd: [HashContext; 2],
    rc: HashContext,
    levels: LevelDistribution,
}

/// Hash values of one vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VertexCoins {
    pub d: [bool; 2],
    pub c: bool,
    pub h: Level,
}

impl SamplingConfig {
    pub fn new(params: SamplingParams, seed: u64) -> Self {
        Self::split(params, seed, seed)
    }

    /// Separate seeds for the first-pass functions (`d_i`, `r_{D,i}`) and the
    /// second-pass ones (`c`, `h`, `r_C`), so either side can be held fixed.
    pub fn split(params: SamplingParams, first: u64, second: u64) -> Self {
        SamplingConfig {
            params,
            seed: first,
            vertex_rate: 1.0 / params.k.sqrt(),
            d: [
                HashContext::new(first, HashLabel::D1),
                HashContext::new(first, HashLabel::D2),
            ],
            c: HashContext::new(second, HashLabel::C),
            h: HashContext::new(second, HashLabel::H),
            rd: [
                HashContext::new(first, HashLabel::RD1),
                HashContext::new(first, HashLabel::RD2),
            ],
            rc: HashContext::new(second, HashLabel::RC),
            levels: LevelDistribution::new(params.omega, params.levels)
                .expect("sampling parameters are clamped"),
        }
    }

    pub fn coins(&self, v: VertexId) -> VertexCoins {
        VertexCoins {
            d: [
                self.d[0].coin(&v, self.vertex_rate),
                self.d[1].coin(&v, self.vertex_rate),
            ],
            c: self.c.coin(&v, self.vertex_rate),
            h: self.h.level(&v, &self.levels),
        }
    }

    pub fn r_d(&self, i: usize, e: &Edge) -> f64 {
        self.rd[i].unit(e)
    }

    pub fn r_c(&self, e: &Edge) -> f64 {
        self.rc.unit(e)
    }

    /// `ω·2^h`
    pub fn weight(&self, h: u32) -> f64 {
        level_weight(self.params.omega, h)
    }

    /// Edge threshold `ω·2^h/√k` (may exceed 1).
    pub fn rate(&self, h: u32) -> f64 {
        self.weight(h) / self.params.k.sqrt()
    }

    /// Whether an edge hash passes the threshold of an optional level.
    pub fn passes(&self, r: f64, h: Level) -> bool {
        h.is_some_and(|h| r < self.rate(h))
    }

    /// Least level whose threshold `r` passes.
    pub fn min_level(&self, r: f64) -> Option<u32> {
        (0..self.params.levels).find(|&h| r < self.rate(h))
    }

    pub fn level_distribution(&self) -> &LevelDistribution {
        &self.levels
    }
}

pub(crate) fn level_weight(omega: f64, h: u32) -> f64 {
    omega * f64::from(h).exp2()
}

/// Membership of `e` in `E0`–`E4`, checking both orientations.
pub fn retention_flags(e: &Edge, cfg: &SamplingConfig) -> RetentionFlags {
    let (u, v) = e.endpoints();
    flags_with_coins(e, &cfg.coins(u), &cfg.coins(v), cfg)
}

fn flags_with_coins(e: &Edge, a: &VertexCoins, b: &VertexCoins, cfg: &SamplingConfig) -> RetentionFlags {
    let mut f = RetentionFlags::empty();
    if (0..2).any(|i| a.d[i] && b.d[i]) {
        f |= RetentionFlags::E0;
    }
    if (0..2).any(|i| (a.c && b.d[i]) || (b.c && a.d[i])) {
        f |= RetentionFlags::E1;
    }
    if a.c && b.c {
        f |= RetentionFlags::E2;
    }
    if (a.h.is_some() && b.d.iter().any(|&x| x)) || (b.h.is_some() && a.d.iter().any(|&x| x)) {
        for i in 0..2 {
            let r = cfg.r_d(i, e);
            if (cfg.passes(r, a.h) && b.d[i]) || (cfg.passes(r, b.h) && a.d[i]) {
                f |= RetentionFlags::E3;
                break;
            }
        }
    }
    if (a.h.is_some() && b.c) || (b.h.is_some() && a.c) {
        let r = cfg.r_c(e);
        if (cfg.passes(r, a.h) && b.c) || (cfg.passes(r, b.h) && a.c) {
            f |= RetentionFlags::E4;
        }
    }
    f
}

/// One repetition's streaming state.
#[derive(Clone, Debug)]
pub struct Sampler {
    config: SamplingConfig,
    retained: BTreeMap<Edge, RetentionFlags>,
}

impl Sampler {
    pub fn new(config: SamplingConfig) -> Self {
        Sampler {
            config,
            retained: BTreeMap::new(),
        }
    }

    pub fn push(&mut self, e: Edge) {
        let f = retention_flags(&e, &self.config);
        if !f.is_empty() {
            self.retained.insert(e, f);
        }
    }

    pub fn len(&self) -> usize {
        self.retained.len()
    }

    pub fn is_empty(&self) -> bool {
        self.retained.is_empty()
    }

    pub fn finish(self) -> SampleState {
        SampleState {
            edges_stored: self.retained.len(),
            retained: self.retained,
            config: self.config,
        }
    }
}

/// The retained edges of one repetition.
#[derive(Clone, Debug)]
pub struct SampleState {
    pub retained: BTreeMap<Edge, RetentionFlags>,
    pub config: SamplingConfig,
    pub edges_stored: usize,
}

impl SampleState {
    pub fn graph(&self) -> Graph {
        Graph::from_edges(self.retained.keys().copied())
    }
}

/// Scans `stream` once with the hash functions of `(params, seed)`.
pub fn sample_stream<I: IntoIterator<Item = Edge>>(stream: I, params: SamplingParams, seed: u64) -> SampleState {
    let mut s = Sampler::new(SamplingConfig::new(params, seed));
    for e in stream {
        s.push(e);
    }
    s.finish()
}
