//! Python bindings. Edge lists cross the boundary as sequences of
//! `(u, v)` pairs; results come back as dicts.

use pyo3::exceptions::{PyIOError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use tristream::baselines::{colorful_estimate, edge_sample_estimate, vertex_sample_estimate, BaselineEstimate};
use tristream::estimator::{self, OutcomeKind};
use tristream::generators::{InstanceKind, InstanceSpec};
use tristream::graph::{self, Edge};
use tristream::motif::{self, MotifParams};
use tristream::Error;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Io(e) => PyIOError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn to_edges(pairs: Vec<(u64, u64)>) -> PyResult<Vec<Edge>> {
    pairs
        .into_iter()
        .map(|(a, b)| Edge::new(a, b).map_err(py_err))
        .collect()
}

fn from_edges(edges: impl IntoIterator<Item = Edge>) -> Vec<(u64, u64)> {
    edges.into_iter().map(|e| e.endpoints()).collect()
}

/// A simple undirected graph.
#[pyclass(frozen)]
struct Graph {
    inner: graph::Graph,
}

#[pymethods]
impl Graph {
    #[new]
    fn new(edges: Vec<(u64, u64)>) -> PyResult<Self> {
        Ok(Graph {
            inner: graph::Graph::from_edges(to_edges(edges)?),
        })
    }

    #[getter]
    fn vertex_count(&self) -> usize {
        self.inner.vertex_count()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    fn edges(&self) -> Vec<(u64, u64)> {
        from_edges(self.inner.edges())
    }

    fn triangle_count(&self) -> u64 {
        graph::triangle_count(&self.inner)
    }

    fn triangles(&self) -> Vec<[u64; 3]> {
        graph::enumerate_triangles(&self.inner).iter().map(|t| t.vertices()).collect()
    }

    /// Exact triangle statistics as a dict.
    fn stats<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let s = graph::triangle_stats(&self.inner);
        let d = PyDict::new(py);
        d.set_item("vertices", s.vertices)?;
        d.set_item("edges", s.edges)?;
        d.set_item("max_degree", s.max_degree)?;
        d.set_item("triangles", s.triangles)?;
        d.set_item("delta_v", s.delta_v)?;
        d.set_item("delta_e", s.delta_e)?;
        d.set_item("vertex_moment", s.vertex_moment)?;
        d.set_item("edge_moment", s.edge_moment)?;
        d.set_item("wedges", s.wedges)?;
        d.set_item("transitivity", s.transitivity)?;
        Ok(d)
    }

    /// Copies of a pattern (`"triangle"`, `"p3"`, `"c4"`, `"k4"`, `"custom:0-1,..."`).
    fn motif_count(&self, pattern: &str) -> PyResult<u64> {
        let p: motif::Pattern = pattern.parse().map_err(py_err)?;
        Ok(motif::enumerate_motifs(&self.inner, &p).count)
    }

    /// `[C_1, ..., C_s]` for a pattern.
    fn motif_moments(&self, pattern: &str) -> PyResult<Vec<u64>> {
        let p: motif::Pattern = pattern.parse().map_err(py_err)?;
        Ok(motif::motif_stats(&self.inner, &p).c)
    }

    fn __repr__(&self) -> String {
        format!("Graph(vertices={}, edges={})", self.inner.vertex_count(), self.inner.edge_count())
    }
}

/// Triangle estimator parameters.
#[pyclass(frozen)]
struct EstimatorParams {
    inner: estimator::EstimatorParams,
}

#[pymethods]
impl EstimatorParams {
    #[new]
    #[pyo3(signature = (t_tilde, tv_plus, te_plus, eps=0.5, delta=0.1, seed=0, k=None))]
    fn new(t_tilde: f64, tv_plus: f64, te_plus: f64, eps: f64, delta: f64, seed: u64, k: Option<f64>) -> PyResult<Self> {
        let mut p = estimator::compute_params(t_tilde, tv_plus, te_plus, eps, delta, seed).map_err(py_err)?;
        if let Some(k) = k {
            p = p.with_k(k).map_err(py_err)?;
        }
        Ok(EstimatorParams { inner: p })
    }

    #[getter]
    fn k(&self) -> f64 {
        self.inner.k()
    }

    #[getter]
    fn omega(&self) -> f64 {
        self.inner.omega()
    }

    #[getter]
    fn top_level(&self) -> i64 {
        self.inner.top_level()
    }

    #[getter]
    fn seed(&self) -> u64 {
        self.inner.seed
    }

    #[getter]
    fn repetitions(&self) -> usize {
        self.inner.plan().repetitions()
    }

    fn with_seed(&self, seed: u64) -> Self {
        EstimatorParams {
            inner: self.inner.with_seed(seed),
        }
    }

    fn __repr__(&self) -> String {
        format!(
            "EstimatorParams(k={}, omega={}, L={}, seed={})",
            self.inner.k(),
            self.inner.omega(),
            self.inner.top_level(),
            self.inner.seed
        )
    }
}

/// Write a generated instance's edges, in stream order.
#[pyfunction]
#[pyo3(signature = (spec, seed=0, permute=false))]
fn generate(spec: &str, seed: u64, permute: bool) -> PyResult<Vec<(u64, u64)>> {
    let kind: InstanceKind = spec.parse().map_err(py_err)?;
    let inst = InstanceSpec { kind, seed, permute }.build().map_err(py_err)?;
    Ok(from_edges(inst.stream))
}

/// One repetition: `{value, low, high, edges_stored}`.
#[pyfunction]
fn estimate_once<'py>(
    py: Python<'py>,
    edges: Vec<(u64, u64)>,
    params: &EstimatorParams,
) -> PyResult<Bound<'py, PyDict>> {
    let stream = to_edges(edges)?;
    let once = py.detach(|| estimator::estimate_once(stream, &params.inner));
    let d = PyDict::new(py);
    d.set_item("value", once.value)?;
    d.set_item("low", once.low)?;
    d.set_item("high", once.high)?;
    d.set_item("edges_stored", once.edges_stored)?;
    Ok(d)
}

fn outcome_dict<'py>(py: Python<'py>, out: &estimator::EstimateOutcome) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    match out.kind {
        OutcomeKind::Estimate(v) => {
            d.set_item("outcome", "estimate")?;
            d.set_item("value", v)?;
        }
        OutcomeKind::GuessTooHigh => {
            d.set_item("outcome", "guess_too_high")?;
            d.set_item("value", py.None())?;
        }
    }
    d.set_item("median_of_means", out.median_of_means)?;
    d.set_item("edges_stored_mean", out.edges_stored_mean)?;
    d.set_item("repetitions", out.repetitions)?;
    Ok(d)
}

/// Median-of-means estimate with the guess check.
#[pyfunction]
fn estimate<'py>(py: Python<'py>, edges: Vec<(u64, u64)>, params: &EstimatorParams) -> PyResult<Bound<'py, PyDict>> {
    let stream = to_edges(edges)?;
    let out = py.detach(|| estimator::estimate_with(stream, &params.inner));
    outcome_dict(py, &out)
}

fn baseline_pair(r: tristream::Result<BaselineEstimate>) -> PyResult<(f64, usize)> {
    let r = r.map_err(py_err)?;
    Ok((r.value, r.edges_stored))
}

/// Uniform edge sampling; returns `(estimate, edges_stored)`.
#[pyfunction]
#[pyo3(signature = (edges, p, seed=0))]
fn edge_sample(edges: Vec<(u64, u64)>, p: f64, seed: u64) -> PyResult<(f64, usize)> {
    baseline_pair(edge_sample_estimate(to_edges(edges)?, p, seed))
}

/// Monochromatic-edge sampling with `colors` colors.
#[pyfunction]
#[pyo3(signature = (edges, colors, seed=0))]
fn colorful(edges: Vec<(u64, u64)>, colors: u64, seed: u64) -> PyResult<(f64, usize)> {
    baseline_pair(colorful_estimate(to_edges(edges)?, colors, seed))
}

/// Vertex sampling at rate `1/sqrt(k)`.
#[pyfunction]
#[pyo3(signature = (edges, k, seed=0))]
fn vertex_sample(edges: Vec<(u64, u64)>, k: f64, seed: u64) -> PyResult<(f64, usize)> {
    baseline_pair(vertex_sample_estimate(to_edges(edges)?, k, seed))
}

fn motif_params(m_tilde: f64, c_bounds: &[f64], eps: f64, delta: f64, seed: u64, k: Option<f64>) -> PyResult<MotifParams> {
    let mut p = motif::compute_motif_params(m_tilde, c_bounds, eps, delta, seed).map_err(py_err)?;
    if let Some(k) = k {
        p = p.with_k(k).map_err(py_err)?;
    }
    Ok(p)
}

/// Motif estimator. `c_bounds` are `[C_1+, ..., C_s+]`. With `once=True` a
/// single repetition is run.
#[pyfunction]
#[pyo3(signature = (edges, pattern, m_tilde, c_bounds, eps=0.5, delta=0.1, seed=0, k=None, once=false))]
#[allow(clippy::too_many_arguments)]
fn motif_estimate<'py>(
    py: Python<'py>,
    edges: Vec<(u64, u64)>,
    pattern: &str,
    m_tilde: f64,
    c_bounds: Vec<f64>,
    eps: f64,
    delta: f64,
    seed: u64,
    k: Option<f64>,
    once: bool,
) -> PyResult<Bound<'py, PyDict>> {
    let p: motif::Pattern = pattern.parse().map_err(py_err)?;
    let params = motif_params(m_tilde, &c_bounds, eps, delta, seed, k)?;
    let stream = to_edges(edges)?;
    if once {
        let r = py
            .detach(|| motif::motif_estimate_once(stream, &p, &params))
            .map_err(py_err)?;
        let d = PyDict::new(py);
        d.set_item("value", r.value)?;
        d.set_item("edges_stored", r.edges_stored)?;
        return Ok(d);
    }
    let out = py
        .detach(|| motif::motif_estimate_with(stream, &p, &params))
        .map_err(py_err)?;
    outcome_dict(py, &out)
}

#[pymodule]
#[pyo3(name = "tristream")]
fn tristream_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Graph>()?;
    m.add_class::<EstimatorParams>()?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add_function(wrap_pyfunction!(estimate_once, m)?)?;
    m.add_function(wrap_pyfunction!(estimate, m)?)?;
    m.add_function(wrap_pyfunction!(edge_sample, m)?)?;
    m.add_function(wrap_pyfunction!(colorful, m)?)?;
    m.add_function(wrap_pyfunction!(vertex_sample, m)?)?;
    m.add_function(wrap_pyfunction!(motif_estimate, m)?)?;
    Ok(())
}
