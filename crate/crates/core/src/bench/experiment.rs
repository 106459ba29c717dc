use std::path::PathBuf;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::output::{format_sig, ResultFormat, RunRecord};
use crate::baselines::{BaselineKind, BaselineSpec};
use crate::error::{config, Result};
use crate::estimator::{compute_params, estimate_once, EstimatorParams};
use crate::generators::{InstanceKind, InstanceSpec};
use crate::graph::{triangle_stats, Edge, TriangleStats};
use crate::hashing::derive_seed;
use crate::numeric::mean;

/// A method to run. Unset bounds of the main estimator default to the exact
/// statistics; unset baseline parameters are filled in by budget matching.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum MethodSpec {
    Main {
        #[serde(default)]
        t_tilde: Option<f64>,
        #[serde(default)]
        tv_plus: Option<f64>,
        #[serde(default)]
        te_plus: Option<f64>,
        #[serde(default)]
        k: Option<f64>,
    },
    EdgeSample {
        #[serde(default)]
        p: Option<f64>,
    },
    Colorful {
        #[serde(default)]
        colors: Option<u64>,
    },
    VertexSample {
        #[serde(default)]
        k: Option<f64>,
    },
}

impl MethodSpec {
    pub fn main() -> Self {
        MethodSpec::Main {
            t_tilde: None,
            tv_plus: None,
            te_plus: None,
            k: None,
        }
    }

    pub fn id(&self) -> &'static str {
        match self {
            MethodSpec::Main { .. } => "main",
            MethodSpec::EdgeSample { .. } => "edge",
            MethodSpec::Colorful { .. } => "colorful",
            MethodSpec::VertexSample { .. } => "vertex",
        }
    }

    fn is_main(&self) -> bool {
        matches!(self, MethodSpec::Main { .. })
    }

    fn needs_budget(&self) -> bool {
        matches!(
            self,
            MethodSpec::EdgeSample { p: None } | MethodSpec::Colorful { colors: None } | MethodSpec::VertexSample { k: None }
        )
    }
}

/// How unset baseline parameters are chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BudgetRule {
    /// Expected stored edges equal the first main method's mean.
    #[default]
    MatchMain,
    /// Every parameter must be given.
    Fixed,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub instance: InstanceSpec,
    pub methods: Vec<MethodSpec>,
    #[serde(default)]
    pub budget: BudgetRule,
    pub trials: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub format: ResultFormat,
    /// Record wall time per run (makes output non-reproducible).
    #[serde(default)]
    pub record_timing: bool,
}

impl ExperimentConfig {
    pub fn new(instance: InstanceSpec, methods: Vec<MethodSpec>, trials: usize, seed: u64) -> Self {
        ExperimentConfig {
            instance,
            methods,
            budget: BudgetRule::MatchMain,
            trials,
            seed,
            output: None,
            format: ResultFormat::Csv,
            record_timing: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return config("trials must be at least 1");
        }
        if self.methods.is_empty() {
            return config("at least one method is required");
        }
        self.instance.validate()?;
        let unset = self.methods.iter().find(|m| m.needs_budget());
        if let Some(m) = unset {
            if self.budget == BudgetRule::Fixed {
                return config(format!("method {} needs a parameter under the fixed budget rule", m.id()));
            }
            if !self.methods.iter().any(MethodSpec::is_main) {
                return config(format!("method {} has no parameter and there is no main method to match", m.id()));
            }
        }
        for m in &self.methods {
            let kind = match *m {
                MethodSpec::EdgeSample { p: Some(p) } => BaselineKind::EdgeSample { p },
                MethodSpec::Colorful { colors: Some(colors) } => BaselineKind::Colorful { colors },
                MethodSpec::VertexSample { k: Some(k) } => BaselineKind::VertexSample { k },
                _ => continue,
            };
            BaselineSpec { kind, seed: 0 }.validate()?;
        }
        Ok(())
    }
}

/// A generated instance with its exact statistics, computed once.
#[derive(Clone, Debug)]
pub struct PreparedInstance {
    pub id: String,
    pub stream: Vec<Edge>,
    pub stats: TriangleStats,
}

impl PreparedInstance {
    pub fn new(spec: &InstanceSpec) -> Result<Self> {
        let inst = spec.build()?;
        Ok(PreparedInstance {
            id: spec.kind.to_string(),
            stats: triangle_stats(&inst.graph),
            stream: inst.stream,
        })
    }

    /// Estimator parameters with unset bounds replaced by exact values (at
    /// least 1, as the estimator requires).
    pub fn main_params(&self, method: &MethodSpec, seed: u64) -> Result<EstimatorParams> {
        let MethodSpec::Main {
            t_tilde,
            tv_plus,
            te_plus,
            k,
        } = *method
        else {
            return config("not a main method");
        };
        let s = &self.stats;
        let p = compute_params(
            t_tilde.unwrap_or((s.triangles as f64).max(1.0)),
            tv_plus.unwrap_or((s.vertex_moment as f64).max(1.0)),
            te_plus.unwrap_or((s.edge_moment as f64).max(1.0)),
            0.5,
            0.1,
            seed,
        )?;
        match k {
            Some(k) => p.with_k(k),
            None => Ok(p),
        }
    }
}

/// Baseline parameter whose expected storage is `budget` edges out of `m`.
pub fn matched_baseline(method: &MethodSpec, budget: f64, m: usize) -> Option<BaselineKind> {
    let ratio = (m as f64 / budget.max(1.0)).max(1.0);
    Some(match *method {
        MethodSpec::Main { .. } => return None,
        MethodSpec::EdgeSample { p } => BaselineKind::EdgeSample { p: p.unwrap_or(1.0 / ratio) },
        MethodSpec::Colorful { colors } => BaselineKind::Colorful {
            colors: colors.unwrap_or(ratio.round() as u64),
        },
        MethodSpec::VertexSample { k } => BaselineKind::VertexSample { k: k.unwrap_or(ratio) },
    })
}

fn baseline_parameter(kind: &BaselineKind) -> String {
    match *kind {
        BaselineKind::EdgeSample { p } => format!("p={}", format_sig(p)),
        BaselineKind::Colorful { colors } => format!("colors={colors}"),
        BaselineKind::VertexSample { k } => format!("k={}", format_sig(k)),
    }
}

struct Job {
    method: usize,
    trial: usize,
}

fn timed<T>(on: bool, f: impl FnOnce() -> T) -> (T, Option<f64>) {
    let start = on.then(Instant::now);
    let out = f();
    (out, start.map(|s| s.elapsed().as_secs_f64() * 1e3))
}

/// Runs every method on every trial; trial `t` uses seed
/// `derive_seed(cfg.seed, t)` for all methods. Records are ordered by
/// (method position, trial).
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<RunRecord>> {
    cfg.validate()?;
    let inst = PreparedInstance::new(&cfg.instance)?;
    run_on(cfg, &inst)
}

/// [`run_experiment`] on an instance prepared by the caller.
pub fn run_on(cfg: &ExperimentConfig, inst: &PreparedInstance) -> Result<Vec<RunRecord>> {
    cfg.validate()?;
    let exact = inst.stats.triangles as f64;
    let seed_of = |trial: usize| derive_seed(cfg.seed, trial as u64);
    let jobs = |pick: &dyn Fn(&MethodSpec) -> bool| -> Vec<Job> {
        let mut v = Vec::new();
        for (method, m) in cfg.methods.iter().enumerate() {
            if pick(m) {
                v.extend((0..cfg.trials).map(|trial| Job { method, trial }));
            }
        }
        v
    };
    let record = |job: &Job, parameter: String, estimate: f64, edges_stored: usize, wall: Option<f64>| {
        let r = RunRecord {
        method: cfg.methods[job.method].id().to_string(),
        instance: inst.id.clone(),
        trial: job.trial,
        seed: seed_of(job.trial),
        parameter,
        estimate,
        exact,
        relative_error: RunRecord::relative_error_of(estimate, exact),
        edges_stored,
        wall_time_ms: wall,
        };
        (job.method, r)
    };

    let mut records: Vec<(usize, RunRecord)> = jobs(&MethodSpec::is_main)
        .par_iter()
        .map(|job| {
            let p = inst.main_params(&cfg.methods[job.method], seed_of(job.trial))?;
            let (once, wall) = timed(cfg.record_timing, || estimate_once(inst.stream.iter().copied(), &p));
            Ok(record(job, format!("k={}", format_sig(p.k())), once.value, once.edges_stored, wall))
        })
        .collect::<Result<_>>()?;

    let first_main = cfg.methods.iter().position(MethodSpec::is_main);
    let budget = first_main.map_or(0.0, |idx| {
        let stored: Vec<f64> = records
            .iter()
            .filter(|(m, _)| *m == idx)
            .map(|(_, r)| r.edges_stored as f64)
            .collect();
        mean(&stored).unwrap_or(0.0)
    });

    let baselines: Vec<(usize, RunRecord)> = jobs(&|m: &MethodSpec| !m.is_main())
        .par_iter()
        .map(|job| {
            let kind = matched_baseline(&cfg.methods[job.method], budget, inst.stream.len())
                .expect("baseline method");
            let spec = BaselineSpec {
                kind,
                seed: seed_of(job.trial),
            };
            let (out, wall) = timed(cfg.record_timing, || spec.run(inst.stream.iter().copied()));
            let out = out?;
            Ok(record(job, baseline_parameter(&kind), out.value, out.edges_stored, wall))
        })
        .collect::<Result<_>>()?;
    records.extend(baselines);

    records.sort_by_key(|(m, r)| (*m, r.trial));
    Ok(records.into_iter().map(|(_, r)| r).collect())
}

/// Main estimator at each fixed `k`, optionally with the baselines matched to
/// its storage at that `k`.
pub fn run_sweep(
    instance: &InstanceSpec,
    ks: &[f64],
    trials: usize,
    seed: u64,
    with_baselines: bool,
) -> Result<Vec<RunRecord>> {
    let inst = PreparedInstance::new(instance)?;
    let mut out = Vec::new();
    for &k in ks {
        let mut methods = vec![MethodSpec::Main {
            t_tilde: None,
            tv_plus: None,
            te_plus: None,
            k: Some(k),
        }];
        if with_baselines {
            methods.extend(baseline_methods());
        }
        out.extend(run_on(&ExperimentConfig::new(instance.clone(), methods, trials, seed), &inst)?);
    }
    Ok(out)
}

fn baseline_methods() -> [MethodSpec; 3] {
    [
        MethodSpec::EdgeSample { p: None },
        MethodSpec::Colorful { colors: None },
        MethodSpec::VertexSample { k: None },
    ]
}

pub const PRESETS: [&str; 4] = ["heavy-edge", "hub", "gnp", "independent"];

/// The four comparison instances with all methods at a matched budget.
/// `size` overrides the instance's `d` or `n`.
pub fn bench_preset(name: &str, size: Option<u64>, trials: usize, seed: u64) -> Result<ExperimentConfig> {
    let kind = match name {
        "heavy-edge" => InstanceKind::HeavyEdges {
            r: 1,
            d: size.unwrap_or(500),
        },
        "hub" => InstanceKind::Hubs {
            r: 1,
            d: size.unwrap_or(2000),
        },
        "gnp" => InstanceKind::Gnp {
            n: size.unwrap_or(200),
            p: 0.1,
        },
        "independent" => InstanceKind::IndependentTriangles { n: size.unwrap_or(1000) },
        _ => return config(format!("unknown preset {name:?}, expected one of {}", PRESETS.join(", "))),
    };
    let mut methods = vec![MethodSpec::main()];
    methods.extend(baseline_methods());
    Ok(ExperimentConfig::new(InstanceSpec::new(kind, seed), methods, trials, seed))
}
