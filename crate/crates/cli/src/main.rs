use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use tristream::baselines::{BaselineKind, BaselineSpec};
use tristream::bench::{
    bench_preset, cached_stats, matched_baseline, predicted_complexities, run_experiment, run_sweep, write_results,
    BudgetRule, ExperimentConfig, MethodSpec, ResultFormat, RunRecord, PRESETS,
};
use tristream::estimator::{estimate_once, estimate_with, EstimateOutcome, OutcomeKind, SamplingParams};
use tristream::generators::{InstanceKind, InstanceSpec};
use tristream::graph::{triangle_stats, Edge, Graph, TriangleStats};
use tristream::io::{read_edge_list, read_edge_list_path, write_edge_list};
use tristream::motif::{
    compute_motif_params, enumerate_motifs, motif_estimate_once, motif_estimate_with, motif_stats, Pattern,
};
use tristream::{compute_params, Error, Result};

#[derive(Parser)]
#[command(name = "tristream", version, about = "One-pass triangle and motif count estimation")]
struct Cli {
    /// Master seed for generators and estimators.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Format of run records written by `sweep` and `bench`.
    #[arg(long, global = true, default_value = "csv", value_parser = parse_format)]
    format: ResultFormat,
    #[command(subcommand)]
    command: Command,
}

fn parse_format(s: &str) -> std::result::Result<ResultFormat, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated instance as an edge list, in stream order.
    Generate {
        /// Instance, e.g. `hubs:r=1,d=100` or `gnp:n=60,p=0.2`.
        #[arg(long)]
        spec: String,
        /// Randomly relabel the vertices.
        #[arg(long)]
        permute: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact triangle statistics and predicted space bounds, as JSON.
    Stats {
        #[command(flatten)]
        source: Source,
    },
    /// Exact triangle count, or motif count with `--pattern`.
    Exact {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        pattern: Option<String>,
    },
    /// Run the triangle estimator.
    Estimate {
        #[command(flatten)]
        source: Source,
        /// Lower-bound guess on the triangle count.
        #[arg(long)]
        t_tilde: f64,
        /// Upper bound on Σ_v T_v².
        #[arg(long)]
        tv_plus: Option<f64>,
        /// Upper bound on Σ_e T_e².
        #[arg(long)]
        te_plus: Option<f64>,
        /// Guess at the most triangles on one vertex; gives `T_V⁺ = 3·T̃·guess`.
        #[arg(long)]
        delta_v_guess: Option<f64>,
        /// Guess at the most triangles on one edge; gives `T_E⁺ = 3·T̃·guess`.
        #[arg(long)]
        delta_e_guess: Option<f64>,
        /// Use the exact moments for any bound not given.
        #[arg(long)]
        exact_bounds: bool,
        #[command(flatten)]
        run: RunFlags,
    },
    /// Run one baseline estimator once.
    Baseline {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_parser = ["edge", "colorful", "vertex"])]
        method: String,
        /// Edge sampling rate.
        #[arg(long)]
        p: Option<f64>,
        /// Number of colors.
        #[arg(long)]
        colors: Option<u64>,
        /// Vertex sampling parameter (rate `1/√k`).
        #[arg(long)]
        k: Option<f64>,
        #[arg(long)]
        json: bool,
    },
    /// Run the motif estimator.
    Motif {
        #[command(flatten)]
        source: Source,
        /// `triangle`, `p3`, `c4`, `k4` or `custom:0-1,1-2,...`.
        #[arg(long)]
        pattern: String,
        /// Lower-bound guess on the motif count.
        #[arg(long)]
        m_tilde: f64,
        /// Comma-separated upper bounds `C_1⁺,…,C_s⁺`.
        #[arg(long, value_delimiter = ',')]
        c_plus: Option<Vec<f64>>,
        /// Use the exact `C_l` when `--c-plus` is not given.
        #[arg(long)]
        exact_bounds: bool,
        #[command(flatten)]
        run: RunFlags,
    },
    /// Grid over the main estimator's `k` or over a baseline edge budget.
    Sweep {
        /// Generated instance to sweep on.
        #[arg(long)]
        instance: String,
        /// Values of `k` for the main estimator.
        #[arg(long, value_delimiter = ',', conflicts_with = "budget")]
        k: Option<Vec<f64>>,
        /// Expected stored edges for the baselines.
        #[arg(long, value_delimiter = ',')]
        budget: Option<Vec<f64>>,
        /// With `--k`, also run the baselines matched to each `k`.
        #[arg(long)]
        baselines: bool,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Comparison presets, or an experiment described by a JSON config.
    Bench {
        /// One of heavy-edge, hub, gnp, independent.
        #[arg(required_unless_present = "config")]
        preset: Option<String>,
        #[arg(long, conflicts_with = "preset")]
        config: Option<PathBuf>,
        /// Overrides the preset instance size.
        #[arg(long)]
        size: Option<u64>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Where the edge stream comes from.
#[derive(Args)]
struct Source {
    /// Edge-list file, or `-` for standard input.
    #[arg(long, required_unless_present = "instance", conflicts_with = "instance")]
    input: Option<PathBuf>,
    /// Generated instance, e.g. `independent:n=100`.
    #[arg(long)]
    instance: Option<String>,
}

#[derive(Args)]
struct RunFlags {
    #[arg(long, default_value_t = 0.5)]
    eps: f64,
    #[arg(long, default_value_t = 0.1)]
    delta: f64,
    /// Fix `k` instead of deriving it from the bounds.
    #[arg(long)]
    k: Option<f64>,
    /// Run a single repetition instead of the median of means.
    #[arg(long)]
    once: bool,
    #[arg(long)]
    json: bool,
}

struct Loaded {
    stream: Vec<Edge>,
    path: Option<PathBuf>,
}

impl Source {
    fn load(&self, seed: u64) -> Result<Loaded> {
        if let Some(spec) = &self.instance {
            let kind: InstanceKind = spec.parse()?;
            let inst = InstanceSpec::new(kind, seed).build()?;
            return Ok(Loaded {
                stream: inst.stream,
                path: None,
            });
        }
        let path = self.input.clone().expect("clap requires a source");
        if path.as_os_str() == "-" {
            let stdin = io::stdin();
            return Ok(Loaded {
                stream: read_edge_list(stdin.lock())?,
                path: None,
            });
        }
        Ok(Loaded {
            stream: read_edge_list_path(&path)?,
            path: Some(path),
        })
    }
}

impl Loaded {
    fn graph(&self) -> Graph {
        Graph::from_edges(self.stream.iter().copied())
    }

    /// Exact statistics, through the sidecar cache for files.
    fn stats(&self) -> Result<TriangleStats> {
        match &self.path {
            Some(p) => Ok(cached_stats(p)?.1),
            None => Ok(triangle_stats(&self.graph())),
        }
    }
}

fn output(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

fn print_json(v: &Value) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn sampling_json(s: &SamplingParams) -> Value {
    json!({ "k": s.k, "omega": s.omega, "L": s.top_level() })
}

fn outcome_json(out: &EstimateOutcome, sampling: &SamplingParams, clamps: Value) -> Value {
    let mut v = json!({
        "outcome": match out.kind { OutcomeKind::Estimate(_) => "estimate", OutcomeKind::GuessTooHigh => "guess_too_high" },
        "median_of_means": out.median_of_means,
        "edges_stored_mean": out.edges_stored_mean,
        "repetitions": out.repetitions,
        "block_size": out.plan.block_size,
        "blocks": out.plan.blocks,
        "clamps": clamps,
    });
    merge(&mut v, sampling_json(sampling));
    if let Some(x) = out.value() {
        v["value"] = json!(x);
    }
    v
}

fn merge(into: &mut Value, from: Value) {
    if let (Value::Object(a), Value::Object(b)) = (into, from) {
        a.extend(b);
    }
}

fn report_outcome(out: &EstimateOutcome, sampling: &SamplingParams, clamps: Value, json: bool) -> Result<ExitCode> {
    if json {
        print_json(&outcome_json(out, sampling, clamps))?;
    } else {
        match out.kind {
            OutcomeKind::Estimate(x) => println!("estimate {x}"),
            OutcomeKind::GuessTooHigh => println!("guess too high (median of means {})", out.median_of_means),
        }
        eprintln!(
            "k={} omega={} L={} repetitions={} mean edges stored={}",
            sampling.k,
            sampling.omega,
            sampling.top_level(),
            out.repetitions,
            out.edges_stored_mean
        );
    }
    Ok(match out.kind {
        OutcomeKind::Estimate(_) => ExitCode::SUCCESS,
        OutcomeKind::GuessTooHigh => ExitCode::from(2),
    })
}

fn report_once(value: f64, edges_stored: usize, sampling: &SamplingParams, json: bool) -> Result<ExitCode> {
    if json {
        let mut v = json!({
            "outcome": "estimate",
            "value": value,
            "edges_stored_mean": edges_stored,
            "repetitions": 1,
        });
        merge(&mut v, sampling_json(sampling));
        print_json(&v)?;
    } else {
        println!("estimate {value}");
        eprintln!("edges stored={edges_stored}");
    }
    Ok(ExitCode::SUCCESS)
}

fn bound(
    explicit: Option<f64>,
    guess: Option<f64>,
    t_tilde: f64,
    exact: Option<f64>,
    name: &str,
) -> Result<f64> {
    if let Some(x) = explicit {
        return Ok(x);
    }
    if let Some(g) = guess {
        return Ok(3.0 * t_tilde * g);
    }
    if let Some(x) = exact {
        return Ok(x.max(1.0));
    }
    Err(Error::Config(format!(
        "no {name} bound: pass --{name}, the matching Δ guess, or --exact-bounds"
    )))
}

fn records_out(records: &[RunRecord], format: ResultFormat, out: &Option<PathBuf>) -> Result<ExitCode> {
    write_results(records, format, output(out)?)?;
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode> {
    let seed = cli.seed;
    match cli.command {
        Command::Generate { spec, permute, out } => {
            let kind: InstanceKind = spec.parse()?;
            let inst = InstanceSpec { kind, seed, permute }.build()?;
            write_edge_list(output(&out)?, inst.stream)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Stats { source } => {
            let loaded = source.load(seed)?;
            let stats = loaded.stats()?;
            let predicted = predicted_complexities(&stats, loaded.stream.len());
            print_json(&json!({ "stats": stats, "predicted": predicted }))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Exact { source, pattern } => {
            let loaded = source.load(seed)?;
            match pattern {
                Some(p) => {
                    let p: Pattern = p.parse()?;
                    println!("{}", enumerate_motifs(&loaded.graph(), &p).count);
                }
                None => println!("{}", loaded.stats()?.triangles),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Estimate {
            source,
            t_tilde,
            tv_plus,
            te_plus,
            delta_v_guess,
            delta_e_guess,
            exact_bounds,
            run,
        } => {
            let loaded = source.load(seed)?;
            let needs_exact = (tv_plus.is_none() && delta_v_guess.is_none())
                || (te_plus.is_none() && delta_e_guess.is_none());
            let stats = if exact_bounds && needs_exact { Some(loaded.stats()?) } else { None };
            let tv = bound(
                tv_plus,
                delta_v_guess,
                t_tilde,
                stats.as_ref().map(|s| s.vertex_moment as f64),
                "tv-plus",
            )?;
            let te = bound(
                te_plus,
                delta_e_guess,
                t_tilde,
                stats.as_ref().map(|s| s.edge_moment as f64),
                "te-plus",
            )?;
            let mut params = compute_params(t_tilde, tv, te, run.eps, run.delta, seed)?;
            if let Some(k) = run.k {
                params = params.with_k(k)?;
            }
            if run.once {
                let once = estimate_once(loaded.stream.iter().copied(), &params);
                return report_once(once.value, once.edges_stored, &params.sampling, run.json);
            }
            let out = estimate_with(loaded.stream.iter().copied(), &params);
            report_outcome(&out, &params.sampling, serde_json::to_value(&params.clamps)?, run.json)
        }
        Command::Baseline {
            source,
            method,
            p,
            colors,
            k,
            json,
        } => {
            let loaded = source.load(seed)?;
            let missing = |flag: &str| Error::Config(format!("--method {method} needs --{flag}"));
            let kind = match method.as_str() {
                "edge" => BaselineKind::EdgeSample { p: p.ok_or_else(|| missing("p"))? },
                "colorful" => BaselineKind::Colorful {
                    colors: colors.ok_or_else(|| missing("colors"))?,
                },
                _ => BaselineKind::VertexSample { k: k.ok_or_else(|| missing("k"))? },
            };
            let spec = BaselineSpec { kind, seed };
            let out = spec.run(loaded.stream.iter().copied())?;
            if json {
                let mut v = json!({
                    "outcome": "estimate",
                    "value": out.value,
                    "edges_stored_mean": out.edges_stored,
                    "repetitions": 1,
                });
                merge(&mut v, serde_json::to_value(kind)?);
                print_json(&v)?;
            } else {
                println!("estimate {}", out.value);
                eprintln!("edges stored={}", out.edges_stored);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Motif {
            source,
            pattern,
            m_tilde,
            c_plus,
            exact_bounds,
            run,
        } => {
            let loaded = source.load(seed)?;
            let pattern: Pattern = pattern.parse()?;
            let bounds = match c_plus {
                Some(c) => c,
                None if exact_bounds => motif_stats(&loaded.graph(), &pattern)
                    .bounds()
                    .into_iter()
                    .map(|c| c.max(1.0))
                    .collect(),
                None => return Err(Error::Config("pass --c-plus or --exact-bounds".into())),
            };
            let mut params = compute_motif_params(m_tilde, &bounds, run.eps, run.delta, seed)?;
            if let Some(k) = run.k {
                params = params.with_k(k)?;
            }
            if run.once {
                let once = motif_estimate_once(loaded.stream.iter().copied(), &pattern, &params)?;
                return report_once(once.value, once.edges_stored, &params.sampling, run.json);
            }
            let out = motif_estimate_with(loaded.stream.iter().copied(), &pattern, &params)?;
            report_outcome(&out, &params.sampling, serde_json::to_value(&params.clamps)?, run.json)
        }
        Command::Sweep {
            instance,
            k,
            budget,
            baselines,
            trials,
            out,
        } => {
            let spec = InstanceSpec::new(instance.parse()?, seed);
            let records = match (k, budget) {
                (Some(ks), _) => run_sweep(&spec, &ks, trials, seed, baselines)?,
                (None, Some(budgets)) => {
                    let m = spec.build()?.stream.len();
                    let mut all = Vec::new();
                    for b in budgets {
                        let methods = [
                            MethodSpec::EdgeSample { p: None },
                            MethodSpec::Colorful { colors: None },
                            MethodSpec::VertexSample { k: None },
                        ]
                        .iter()
                        .map(|method| fixed_method(matched_baseline(method, b, m).expect("baseline")))
                        .collect();
                        let mut cfg = ExperimentConfig::new(spec.clone(), methods, trials, seed);
                        cfg.budget = BudgetRule::Fixed;
                        all.extend(run_experiment(&cfg)?);
                    }
                    all
                }
                (None, None) => return Err(Error::Config("pass --k or --budget".into())),
            };
            records_out(&records, cli.format, &out)
        }
        Command::Bench {
            preset,
            config,
            size,
            trials,
            out,
        } => {
            let (cfg, format, out) = match (preset, config) {
                (_, Some(path)) => {
                    let cfg: ExperimentConfig = serde_json::from_reader(BufReader::new(File::open(path)?))?;
                    let out = out.or_else(|| cfg.output.clone());
                    let format = cfg.format;
                    (cfg, format, out)
                }
                (Some(name), None) => (bench_preset(&name, size, trials, seed)?, cli.format, out),
                (None, None) => {
                    return Err(Error::Config(format!("name a preset ({}) or --config", PRESETS.join(", "))))
                }
            };
            records_out(&run_experiment(&cfg)?, format, &out)
        }
    }
}

fn fixed_method(kind: BaselineKind) -> MethodSpec {
    match kind {
        BaselineKind::EdgeSample { p } => MethodSpec::EdgeSample { p: Some(p) },
        BaselineKind::Colorful { colors } => MethodSpec::Colorful { colors: Some(colors) },
        BaselineKind::VertexSample { k } => MethodSpec::VertexSample { k: Some(k) },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
