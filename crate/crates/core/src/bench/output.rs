use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{Number, Value};

use crate::error::{config, Error, Result};

/// One method run on one trial.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub method: String,
    pub instance: String,
    pub trial: usize,
    pub seed: u64,
    /// The method's tuning parameter, e.g. `k=44.72135955`.
    pub parameter: String,
    pub estimate: f64,
    pub exact: f64,
    /// `|estimate - exact|/exact`; absent when `exact = 0`.
    pub relative_error: Option<f64>,
    pub edges_stored: usize,
    /// Only filled when timing is requested, so default output is reproducible.
    pub wall_time_ms: Option<f64>,
}

impl RunRecord {
    pub fn relative_error_of(estimate: f64, exact: f64) -> Option<f64> {
        (exact > 0.0).then(|| (estimate - exact).abs() / exact)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ResultFormat {
    #[default]
    Csv,
    Json,
}

impl FromStr for ResultFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(ResultFormat::Csv),
            "json" => Ok(ResultFormat::Json),
            _ => config(format!("unknown format {s:?}, expected csv or json")),
        }
    }
}

pub const COLUMNS: [&str; 10] = [
    "method",
    "instance",
    "trial",
    "seed",
    "parameter",
    "estimate",
    "exact",
    "relative_error",
    "edges_stored",
    "wall_time_ms",
];

/// `x` rounded to 10 significant digits, in plain notation where that stays
/// short and scientific notation otherwise.
pub fn format_sig(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { "0".into() } else { x.to_string() };
    }
    let sci = format!("{x:.9e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific notation");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..15).contains(&exp) {
        let mantissa = trim_zeros(mantissa);
        return format!("{mantissa}e{exp}");
    }
    // re-read the rounded value so the plain form has the same digits
    let rounded: f64 = sci.parse().expect("valid float");
    let decimals = (9 - exp).max(0) as usize;
    trim_zeros(&format!("{rounded:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn opt(x: Option<f64>) -> String {
    x.map(format_sig).unwrap_or_default()
}

fn row(r: &RunRecord) -> [String; 10] {
    [
        r.method.clone(),
        r.instance.clone(),
        r.trial.to_string(),
        r.seed.to_string(),
        r.parameter.clone(),
        format_sig(r.estimate),
        format_sig(r.exact),
        opt(r.relative_error),
        r.edges_stored.to_string(),
        opt(r.wall_time_ms),
    ]
}

fn number(x: f64) -> Value {
    format_sig(x)
        .parse::<f64>()
        .ok()
        .and_then(Number::from_f64)
        .map_or(Value::Null, Value::Number)
}

/// JSON form of a record: same fields and order, floats rounded.
#[derive(Serialize)]
struct JsonRecord<'a> {
    method: &'a str,
    instance: &'a str,
    trial: usize,
    seed: u64,
    parameter: &'a str,
    estimate: Value,
    exact: Value,
    relative_error: Value,
    edges_stored: usize,
    wall_time_ms: Value,
}

fn json_record(r: &RunRecord) -> JsonRecord<'_> {
    JsonRecord {
        method: &r.method,
        instance: &r.instance,
        trial: r.trial,
        seed: r.seed,
        parameter: &r.parameter,
        estimate: number(r.estimate),
        exact: number(r.exact),
        relative_error: r.relative_error.map_or(Value::Null, number),
        edges_stored: r.edges_stored,
        wall_time_ms: r.wall_time_ms.map_or(Value::Null, number),
    }
}

pub fn write_results<W: Write>(records: &[RunRecord], format: ResultFormat, mut w: W) -> Result<()> {
    match format {
        ResultFormat::Csv => {
            let mut out = csv::Writer::from_writer(&mut w);
            out.write_record(COLUMNS)?;
            for r in records {
                out.write_record(row(r))?;
            }
            out.flush()?;
        }
        ResultFormat::Json => {
            let values: Vec<JsonRecord> = records.iter().map(json_record).collect();
            serde_json::to_writer_pretty(&mut w, &values)?;
            writeln!(w)?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn emit_results<P: AsRef<Path>>(records: &[RunRecord], format: ResultFormat, path: P) -> Result<()> {
    write_results(records, format, BufWriter::new(File::create(path)?))
}
