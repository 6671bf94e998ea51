//! Python bindings for `turan-core`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde::Serialize;

use turan_core::enumerate::{self as en, Budget, EnumOptions, EnumerationConstraints, SearchMode};
use turan_core::forbid::DoubleStar;
use turan_core::structure::FeatureKind;
use turan_core::{bounds, canon, forbid, graph6, planarity, structure, witness};

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Hands a serializable value to Python through `json.loads`.
fn to_py<'py>(py: Python<'py>, x: &impl Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(x).map_err(value_error)?;
    py.import("json")?.call_method1("loads", (text,))
}

/// An undirected simple graph on at most 64 vertices.
#[pyclass(name = "Graph", frozen, eq, hash, module = "turan", skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyGraph(turan_core::Graph);

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (n, edges = Vec::new()))]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        turan_core::Graph::build(n, &edges).map(PyGraph).map_err(value_error)
    }

    #[staticmethod]
    fn from_graph6(text: &str) -> PyResult<Self> {
        graph6::decode(text).map(PyGraph).map_err(value_error)
    }

    fn to_graph6(&self) -> String {
        graph6::encode(&self.0)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn m(&self) -> usize {
        self.0.m()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.0.edges()
    }

    fn degree(&self, v: usize) -> PyResult<usize> {
        self.0.neighbors(v).map(|s| s.len()).map_err(value_error)
    }

    fn neighbors(&self, v: usize) -> PyResult<Vec<usize>> {
        self.0.neighbors(v).map(|s| s.to_vec()).map_err(value_error)
    }

    fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.0.n() && v < self.0.n() && self.0.has_edge(u, v)
    }

    fn min_degree(&self) -> usize {
        self.0.min_degree()
    }

    fn max_degree(&self) -> usize {
        self.0.max_degree()
    }

    fn degree_histogram(&self) -> std::collections::BTreeMap<usize, usize> {
        self.0.degree_histogram().counts().clone()
    }

    fn is_connected(&self) -> PyResult<bool> {
        self.0.is_connected().map_err(value_error)
    }

    fn is_bridgeless(&self) -> bool {
        self.0.is_bridgeless()
    }

    fn bridges(&self) -> Vec<(usize, usize)> {
        self.0.bridges()
    }

    /// Bytes equal iff the graphs are isomorphic.
    fn canonical_form(&self) -> Vec<u8> {
        canon::canonical_form(&self.0).as_bytes().to_vec()
    }

    fn canonical_graph(&self) -> Self {
        PyGraph(canon::canonical_graph(&self.0))
    }

    fn __len__(&self) -> usize {
        self.0.n()
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, m={}, graph6={:?})", self.0.n(), self.0.m(), graph6::encode(&self.0))
    }
}

#[pyfunction]
fn icosahedron() -> PyGraph {
    PyGraph(witness::icosahedron())
}

#[pyfunction]
fn is_planar(g: &PyGraph) -> bool {
    planarity::is_planar(&g.0)
}

/// A witness dict `{backbone, leaves_u, leaves_v}` or `None`.
#[pyfunction]
#[pyo3(signature = (g, m = 2, n = 5))]
fn contains_double_star<'py>(py: Python<'py>, g: &PyGraph, m: usize, n: usize) -> PyResult<Option<Bound<'py, PyAny>>> {
    let found = forbid::contains_double_star(&g.0, m, n).map_err(value_error)?;
    found
        .map(|w| {
            let payload = serde_json::json!({
                "backbone": [w.backbone.0, w.backbone.1],
                "leaves_u": w.leaves_u.to_vec(),
                "leaves_v": w.leaves_v.to_vec(),
            });
            to_py(py, &payload)
        })
        .transpose()
}

#[pyfunction]
#[pyo3(signature = (g, m = 2, n = 5))]
fn is_free_of(g: &PyGraph, m: usize, n: usize) -> PyResult<bool> {
    forbid::contains_double_star(&g.0, m, n).map(|w| w.is_none()).map_err(value_error)
}

#[pyfunction]
fn turan_verdict<'py>(py: Python<'py>, n: u64, m: u64) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &bounds::turan_verdict(n, m).map_err(value_error)?)
}

#[pyfunction]
fn hypothesis_class<'py>(py: Python<'py>, g: &PyGraph) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &structure::hypothesis_class(&g.0))
}

#[pyfunction]
fn has_feature(g: &PyGraph, feature: &str) -> PyResult<bool> {
    let f: FeatureKind = feature.parse().map_err(value_error)?;
    Ok(f.present_in(&g.0))
}

fn options(max_nodes: Option<u64>, max_seconds: Option<f64>, parallel: bool) -> EnumOptions {
    EnumOptions { budget: Budget { max_nodes, max_seconds }, parallel, prune: true }
}

/// Every graph on `n` vertices meeting the constraints, one per isomorphism class.
#[pyfunction]
#[pyo3(signature = (
    n, *, min_degree = 0, max_degree = 63, connected = false, bridgeless = false, planar = false,
    forbid = Vec::new(), require_feature = None, forbid_feature = Vec::new(),
    max_nodes = None, max_seconds = None
))]
#[allow(clippy::too_many_arguments)]
fn enumerate(
    py: Python<'_>,
    n: usize,
    min_degree: usize,
    max_degree: usize,
    connected: bool,
    bridgeless: bool,
    planar: bool,
    forbid: Vec<(usize, usize)>,
    require_feature: Option<String>,
    forbid_feature: Vec<String>,
    max_nodes: Option<u64>,
    max_seconds: Option<f64>,
) -> PyResult<(Vec<PyGraph>, bool)> {
    let parse = |s: &str| s.parse::<FeatureKind>().map_err(value_error);
    let c = EnumerationConstraints {
        n,
        min_degree,
        max_degree,
        require_connected: connected,
        require_bridgeless: bridgeless,
        require_planar: planar,
        forbid: forbid.into_iter().map(|(a, b)| DoubleStar::new(a, b)).collect(),
        require_feature: require_feature.as_deref().map(parse).transpose()?,
        forbid_feature: forbid_feature.iter().map(|s| parse(s)).collect::<PyResult<_>>()?,
    };
    let opts = options(max_nodes, max_seconds, false);
    py.detach(|| {
        let mut out = Vec::new();
        let sink = std::sync::Mutex::new(&mut out);
        let summary = en::enumerate(&c, &opts, |g| sink.lock().unwrap().push(PyGraph(g.clone())));
        summary.map(|s| (out, s.exhaustive)).map_err(value_error)
    })
}

#[pyfunction]
#[pyo3(signature = (n, m = 2, k = 5, planar = true, mode = "exhaustive", max_nodes = None, max_seconds = None))]
#[allow(clippy::too_many_arguments)]
fn ex_search<'py>(
    py: Python<'py>,
    n: usize,
    m: usize,
    k: usize,
    planar: bool,
    mode: &str,
    max_nodes: Option<u64>,
    max_seconds: Option<f64>,
) -> PyResult<Bound<'py, PyAny>> {
    let mode = match mode {
        "exhaustive" => SearchMode::Exhaustive,
        "bnb" | "branch_and_bound" => SearchMode::BranchAndBound,
        other => return Err(value_error(format!("unknown mode {other:?}"))),
    };
    let opts = options(max_nodes, max_seconds, true);
    let record = py.detach(|| en::ex_search(n, DoubleStar::new(m, k), planar, mode, &opts)).map_err(value_error)?;
    to_py(py, &record)
}

#[pyfunction]
#[pyo3(signature = (n, m = 2, k = 5))]
fn triangulation_oracle(py: Python<'_>, n: usize, m: usize, k: usize) -> Option<usize> {
    py.detach(|| en::triangulation_oracle(n, DoubleStar::new(m, k)))
}

#[pyfunction]
#[pyo3(signature = (n_max = 12))]
fn verify_small_n_claim<'py>(py: Python<'py>, n_max: u64) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &en::verify_small_n_claim(n_max).map_err(value_error)?)
}

#[pyfunction]
fn verify_lemma3_classes<'py>(py: Python<'py>, n_max: usize) -> PyResult<Bound<'py, PyAny>> {
    let r = py.detach(|| en::verify_lemma3_classes(n_max, &EnumOptions::default())).map_err(value_error)?;
    to_py(py, &r)
}

#[pyfunction]
fn verify_claim_degree4<'py>(py: Python<'py>, n_max: usize) -> PyResult<Bound<'py, PyAny>> {
    let r = py.detach(|| en::verify_claim_degree4(n_max, &EnumOptions::default())).map_err(value_error)?;
    to_py(py, &r)
}

#[pymodule]
fn turan(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(icosahedron, m)?)?;
    m.add_function(wrap_pyfunction!(is_planar, m)?)?;
    m.add_function(wrap_pyfunction!(contains_double_star, m)?)?;
    m.add_function(wrap_pyfunction!(is_free_of, m)?)?;
    m.add_function(wrap_pyfunction!(turan_verdict, m)?)?;
    m.add_function(wrap_pyfunction!(hypothesis_class, m)?)?;
    m.add_function(wrap_pyfunction!(has_feature, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate, m)?)?;
    m.add_function(wrap_pyfunction!(ex_search, m)?)?;
    m.add_function(wrap_pyfunction!(triangulation_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(verify_small_n_claim, m)?)?;
    m.add_function(wrap_pyfunction!(verify_lemma3_classes, m)?)?;
    m.add_function(wrap_pyfunction!(verify_claim_degree4, m)?)?;
    Ok(())
}
