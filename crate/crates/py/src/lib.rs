//! Python bindings: the `annigraph` extension module.
//!
//! Ideals cross the boundary as tuples of exponents (lists are accepted on
//! input); reports and bounds come back as plain dicts.

use annigraph::graph::{vertex_cap_from_env, DEFAULT_VERTEX_CAP};
use annigraph::metdim::EXACT_VERTEX_CAP;
use annigraph::{
    constructed_resolving_set, dim_bounds, dim_report, distance_branch, exact_metric_dimension, ideal_i, ideal_l,
    is_resolving, parse_spec, spec_from_modulus, spec_grid, sweep, twin_partition, AgGraph, Error, ExportFormat,
    Hints, IdealVector, Oracle, ReportOptions, RingSpec,
};
use pyo3::exceptions::{PyOSError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyTuple};
use serde::Serialize;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Io(e) => PyOSError::new_err(e.to_string()),
        e => PyValueError::new_err(e.to_string()),
    }
}

fn ideal<'py>(py: Python<'py>, v: &IdealVector) -> PyResult<Bound<'py, PyTuple>> {
    PyTuple::new(py, v.exps())
}

fn ideals<'py>(py: Python<'py>, vs: &[IdealVector]) -> PyResult<Vec<Bound<'py, PyTuple>>> {
    vs.iter().map(|v| ideal(py, v)).collect()
}

/// Serialize through JSON so dicts match the CLI's `--json` output.
fn to_dict<'py>(py: Python<'py>, value: &impl Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn resolve_cap(vertex_cap: Option<usize>) -> PyResult<usize> {
    match vertex_cap {
        Some(c) => Ok(c),
        None => vertex_cap_from_env().map_err(to_py),
    }
}

/// A finite product of chain rings, given by its nilpotency orders.
#[pyclass(name = "Ring", module = "annigraph", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct PyRing {
    inner: RingSpec,
}

impl PyRing {
    fn check(&self, exps: Vec<u32>) -> PyResult<IdealVector> {
        self.inner.ideal(exps).map_err(to_py)
    }
}

#[pymethods]
impl PyRing {
    #[new]
    fn new(orders: Vec<u32>) -> PyResult<Self> {
        Ok(Self { inner: RingSpec::new(orders).map_err(to_py)? })
    }

    /// Parse `"2,1,3"`.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(Self { inner: parse_spec(text).map_err(to_py)? })
    }

    /// The ring Z/n.
    #[staticmethod]
    fn from_modulus(n: u64) -> PyResult<Self> {
        Ok(Self { inner: spec_from_modulus(n).map_err(to_py)? })
    }

    #[getter]
    fn orders(&self) -> Vec<u32> {
        self.inner.orders().to_vec()
    }

    #[getter]
    fn factor_count(&self) -> usize {
        self.inner.factor_count()
    }

    /// Number of factors that are fields (order 1).
    #[getter]
    fn field_count(&self) -> usize {
        self.inner.field_count()
    }

    #[getter]
    fn vertex_count(&self) -> u128 {
        self.inner.vertex_count()
    }

    /// Same ring with orders sorted in descending order.
    fn canonicalize(&self) -> Self {
        Self { inner: self.inner.canonicalize() }
    }

    /// Graph vertices in lexicographic order.
    fn vertices<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyTuple>>> {
        ideals(py, &self.inner.vertices())
    }

    fn is_vertex(&self, m: Vec<u32>) -> PyResult<bool> {
        let m = self.check(m)?;
        self.inner.is_vertex(&m).map_err(to_py)
    }

    fn annihilator<'py>(&self, py: Python<'py>, m: Vec<u32>) -> PyResult<Bound<'py, PyTuple>> {
        let m = self.check(m)?;
        ideal(py, &self.inner.annihilator(&m).map_err(to_py)?)
    }

    fn product<'py>(&self, py: Python<'py>, m: Vec<u32>, l: Vec<u32>) -> PyResult<Bound<'py, PyTuple>> {
        let (m, l) = (self.check(m)?, self.check(l)?);
        ideal(py, &self.inner.product(&m, &l).map_err(to_py)?)
    }

    fn adjacent(&self, m: Vec<u32>, l: Vec<u32>) -> PyResult<bool> {
        annigraph::adjacent(&self.inner, &IdealVector::new(m), &IdealVector::new(l)).map_err(to_py)
    }

    /// Closed-form graph distance.
    fn distance(&self, m: Vec<u32>, l: Vec<u32>) -> PyResult<u8> {
        annigraph::distance_closed_form(&self.inner, &IdealVector::new(m), &IdealVector::new(l)).map_err(to_py)
    }

    /// `(distance, rule)` where rule is one of `equal`, `product-zero`,
    /// `Lemma-3`, `default-2`.
    fn distance_branch(&self, m: Vec<u32>, l: Vec<u32>) -> PyResult<(u8, &'static str)> {
        let b = distance_branch(&self.inner, &IdealVector::new(m), &IdealVector::new(l)).map_err(to_py)?;
        Ok((b.distance(), b.name()))
    }

    /// Closed-form dimension bounds as a dict.
    fn bounds<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_dict(py, &dim_bounds(&self.inner))
    }

    /// `I_{s,k}`, with `s` 1-based.
    fn ideal_i<'py>(&self, py: Python<'py>, s: usize, k: u32) -> PyResult<Bound<'py, PyTuple>> {
        ideal(py, &ideal_i(&self.inner, s, k).map_err(to_py)?)
    }

    /// `L_{s,k}`, with `s` 1-based.
    fn ideal_l<'py>(&self, py: Python<'py>, s: usize, k: u32) -> PyResult<Bound<'py, PyTuple>> {
        ideal(py, &ideal_l(&self.inner, s, k).map_err(to_py)?)
    }

    /// The explicit resolving set whose size equals the upper bound.
    fn constructed_resolving_set<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyTuple>>> {
        ideals(py, &constructed_resolving_set(&self.inner))
    }

    #[pyo3(signature = (vertex_cap=None))]
    fn graph(&self, py: Python<'_>, vertex_cap: Option<usize>) -> PyResult<PyGraph> {
        PyGraph::build(py, &self.inner, vertex_cap)
    }

    /// Formula, solver and construction results in one dict.
    #[allow(clippy::too_many_arguments)]
    #[pyo3(signature = (exact=true, construct=true, check_distances=true, oracle="closed", vertex_cap=None, exact_cap=EXACT_VERTEX_CAP))]
    fn report<'py>(
        &self,
        py: Python<'py>,
        exact: bool,
        construct: bool,
        check_distances: bool,
        oracle: &str,
        vertex_cap: Option<usize>,
        exact_cap: usize,
    ) -> PyResult<Bound<'py, PyAny>> {
        let opts = ReportOptions {
            exact,
            construct,
            check_distances,
            oracle: oracle.parse::<Oracle>().map_err(to_py)?,
            vertex_cap: resolve_cap(vertex_cap)?,
            exact_cap,
        };
        let spec = &self.inner;
        let (report, _) = py.detach(|| dim_report(spec, &opts)).map_err(to_py)?;
        let dict = to_dict(py, &report)?;
        dict.set_item("verdict", report.verdict.to_string())?;
        Ok(dict)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Ring({:?})", self.inner.orders())
    }

    fn __hash__(&self) -> u64 {
        use std::hash::{Hash, Hasher};
        let mut h = std::collections::hash_map::DefaultHasher::new();
        self.inner.orders().hash(&mut h);
        h.finish()
    }
}

/// The annihilating-ideal graph of a ring, with cached distances.
#[pyclass(name = "Graph", module = "annigraph", frozen)]
pub struct PyGraph {
    inner: AgGraph,
}

impl PyGraph {
    fn build(py: Python<'_>, spec: &RingSpec, vertex_cap: Option<usize>) -> PyResult<Self> {
        let cap = resolve_cap(vertex_cap)?;
        let inner = py.detach(|| AgGraph::build_with_cap(spec, cap)).map_err(to_py)?;
        Ok(Self { inner })
    }

    fn witness(&self, witness: Vec<Vec<u32>>) -> Vec<IdealVector> {
        witness.into_iter().map(IdealVector::new).collect()
    }
}

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (ring, vertex_cap=None))]
    fn new(py: Python<'_>, ring: &PyRing, vertex_cap: Option<usize>) -> PyResult<Self> {
        Self::build(py, &ring.inner, vertex_cap)
    }

    #[getter]
    fn ring(&self) -> PyRing {
        PyRing { inner: self.inner.spec().clone() }
    }

    #[getter]
    fn vertex_count(&self) -> usize {
        self.inner.vertex_count()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    fn diameter(&self) -> u8 {
        self.inner.diameter()
    }

    fn vertices<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyTuple>>> {
        ideals(py, self.inner.vertices())
    }

    /// Edges as pairs of ideals, `u < v` in vertex order.
    fn edges<'py>(&self, py: Python<'py>) -> PyResult<Vec<(Bound<'py, PyTuple>, Bound<'py, PyTuple>)>> {
        let vs = self.inner.vertices();
        self.inner.edges().map(|(u, v)| Ok((ideal(py, &vs[u])?, ideal(py, &vs[v])?))).collect()
    }

    fn neighbors<'py>(&self, py: Python<'py>, v: Vec<u32>) -> PyResult<Vec<Bound<'py, PyTuple>>> {
        ideals(py, &self.inner.open_neighborhood(&IdealVector::new(v)).map_err(to_py)?)
    }

    /// Distance by breadth-first search.
    fn distance_bfs(&self, m: Vec<u32>, l: Vec<u32>) -> PyResult<u32> {
        self.inner.distance_bfs(&IdealVector::new(m), &IdealVector::new(l)).map_err(to_py)
    }

    /// `(dimension, basis)`, the basis being the lexicographically smallest.
    #[pyo3(signature = (oracle="closed"))]
    fn metric_dimension<'py>(&self, py: Python<'py>, oracle: &str) -> PyResult<(usize, Vec<Bound<'py, PyTuple>>)> {
        let oracle = oracle.parse::<Oracle>().map_err(to_py)?;
        let graph = &self.inner;
        let basis = py
            .detach(|| match oracle {
                Oracle::Closed => exact_metric_dimension(graph, Hints::default()),
                Oracle::Bfs => exact_metric_dimension(&graph.bfs_distance_matrix(), Hints::default()),
            })
            .map_err(to_py)?;
        let vs: Vec<IdealVector> = basis.basis.iter().map(|&i| graph.vertices()[i].clone()).collect();
        Ok((basis.dimension, ideals(py, &vs)?))
    }

    /// `{"resolves": bool, "table": {vertex: representation}}`.
    fn is_resolving<'py>(&self, py: Python<'py>, witness: Vec<Vec<u32>>) -> PyResult<Bound<'py, PyDict>> {
        let cert = is_resolving(&self.inner, &self.witness(witness)).map_err(to_py)?;
        let table = PyDict::new(py);
        for (v, r) in &cert.table {
            table.set_item(ideal(py, v)?, PyTuple::new(py, &r.0)?)?;
        }
        let out = PyDict::new(py);
        out.set_item("resolves", cert.resolves)?;
        out.set_item("table", table)?;
        Ok(out)
    }

    /// Partition of the vertices into twin classes, singletons included.
    fn twin_classes<'py>(&self, py: Python<'py>) -> PyResult<Vec<Vec<Bound<'py, PyTuple>>>> {
        twin_partition(&self.inner).classes.iter().map(|c| ideals(py, c)).collect()
    }

    /// The graph as `dot`, `csv` or `json` text.
    #[pyo3(signature = (format="dot"))]
    fn export(&self, format: &str) -> PyResult<String> {
        let mut buf = Vec::new();
        self.inner.export(format.parse::<ExportFormat>().map_err(to_py)?, &mut buf).map_err(to_py)?;
        String::from_utf8(buf).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph(ring={:?}, vertices={}, edges={})",
            self.inner.spec().orders(),
            self.inner.vertex_count(),
            self.inner.edge_count()
        )
    }
}

/// `ceil(log2(beta))`, 0 for `beta <= 1`.
#[pyfunction]
fn epsilon_general(beta: i64) -> PyResult<u64> {
    annigraph::epsilon_general(beta).map_err(to_py)
}

/// Rings in the verification grid.
#[pyfunction]
#[pyo3(signature = (max_factors, max_order, max_vertices=Some(EXACT_VERTEX_CAP as u128), ordered=false))]
fn grid(max_factors: usize, max_order: u32, max_vertices: Option<u128>, ordered: bool) -> Vec<PyRing> {
    spec_grid(max_factors, max_order, max_vertices, ordered).into_iter().map(|inner| PyRing { inner }).collect()
}

/// Full reports for every ring in the grid, in grid order.
#[pyfunction]
#[pyo3(signature = (max_factors, max_order, max_vertices=EXACT_VERTEX_CAP as u128, ordered=false))]
fn verify<'py>(
    py: Python<'py>,
    max_factors: usize,
    max_order: u32,
    max_vertices: u128,
    ordered: bool,
) -> PyResult<Vec<Bound<'py, PyAny>>> {
    let specs = spec_grid(max_factors, max_order, Some(max_vertices), ordered);
    let opts = ReportOptions {
        vertex_cap: DEFAULT_VERTEX_CAP,
        exact_cap: usize::try_from(max_vertices).unwrap_or(usize::MAX),
        ..ReportOptions::default()
    };
    let reports = py.detach(|| sweep(&specs, &opts)).map_err(to_py)?;
    reports
        .iter()
        .map(|r| {
            let d = to_dict(py, r)?;
            d.set_item("verdict", r.verdict.to_string())?;
            Ok(d)
        })
        .collect()
}

#[pymodule]
#[pyo3(name = "annigraph")]
pub fn annigraph_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRing>()?;
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(epsilon_general, m)?)?;
    m.add_function(wrap_pyfunction!(grid, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
