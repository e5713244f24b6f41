//! Python bindings: `import dicut`.
//!
//! Vertex ids are 0-based. Capacities may be ints, decimal or `p/q`
//! strings, or `fractions.Fraction` values; results report exact values as
//! strings.

use std::collections::BTreeMap;

use dicut_core::capacity::format_ratio;
use dicut_core::generate::with_vertex_caps;
use dicut_core::{
    common_scale, edge_cut as solve_edge, generate as gen, parse_graph_str, vertex_cut as solve_vertex,
    write_edge_graph, write_vertex_graph, Algorithm, ArcCap, Capacity, CutMode, Error, Family, ParsedGraph, Rational,
    SolveStats, SolverConfig, VertexCutCertificate,
};
use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

create_exception!(
    dicut,
    NoCutError,
    PyValueError,
    "The graph has no cut of the requested kind."
);

fn to_py(e: Error) -> PyErr {
    match e {
        Error::NoVertexCut(_) | Error::NoSinkCandidate => NoCutError::new_err(e.to_string()),
        Error::Io(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn rational(ob: &Bound<'_, PyAny>) -> PyResult<Rational> {
    let bad = || PyValueError::new_err(format!("invalid capacity {ob}"));
    if let Ok(v) = ob.extract::<u128>() {
        return Ok(Rational::integer(v));
    }
    if let Ok(s) = ob.extract::<String>() {
        return Rational::parse(&s).ok_or_else(bad);
    }
    if let (Ok(p), Ok(q)) = (ob.getattr("numerator"), ob.getattr("denominator")) {
        let (p, q) = (
            p.extract::<u128>().map_err(|_| bad())?,
            q.extract::<u128>().map_err(|_| bad())?,
        );
        return if q == 0 { Err(bad()) } else { Ok(Rational::new(p, q)) };
    }
    if let Ok(x) = ob.extract::<f64>() {
        return Rational::from_f64(x).ok_or_else(bad);
    }
    Err(bad())
}

fn config(epsilon: Option<&Bound<'_, PyAny>>, seed: u64, threads: usize) -> PyResult<SolverConfig> {
    let mut cfg = SolverConfig {
        seed,
        threads,
        ..SolverConfig::default()
    };
    if let Some(e) = epsilon {
        cfg.epsilon = rational(e)?;
    }
    Ok(cfg)
}

fn algorithm(name: &str) -> PyResult<Algorithm> {
    name.parse().map_err(to_py)
}

fn stats_map(s: &SolveStats) -> BTreeMap<&'static str, u64> {
    BTreeMap::from([
        ("lambda_probes", s.lambda_probes),
        ("probe_runs", s.probe_runs),
        ("terminals", s.terminals),
        ("flow_calls", s.flow_calls),
        ("batched_flow_rounds", s.batched_flow_rounds),
    ])
}

/// Edge-capacitated directed graph.
#[pyclass(module = "dicut", frozen)]
pub struct EdgeGraph {
    inner: dicut_core::DiGraph,
}

#[pymethods]
impl EdgeGraph {
    #[new]
    fn new(n: usize, arcs: Vec<(usize, usize, Bound<'_, PyAny>)>) -> PyResult<Self> {
        let caps = arcs.iter().map(|(_, _, c)| rational(c)).collect::<PyResult<Vec<_>>>()?;
        let (nums, scale) = common_scale(&caps).map_err(to_py)?;
        let inner = dicut_core::DiGraph::from_arc_caps(
            n,
            arcs.iter()
                .zip(nums)
                .map(|((u, v, _), c)| (*u, *v, ArcCap::Finite(Capacity(c)))),
            scale,
        )
        .map_err(to_py)?;
        Ok(EdgeGraph { inner })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    /// `(tail, head, capacity)` triples.
    fn arcs(&self) -> Vec<(usize, usize, String)> {
        let g = &self.inner;
        g.arcs()
            .iter()
            .map(|a| (a.tail, a.head, g.format_value(a.cap)))
            .collect()
    }

    fn reverse(&self) -> EdgeGraph {
        EdgeGraph {
            inner: self.inner.reverse(),
        }
    }

    /// Total capacity of arcs entering `sink`.
    fn cut_value(&self, sink: Vec<usize>) -> PyResult<String> {
        let mask = self.inner.mask(&sink).map_err(to_py)?;
        Ok(self.inner.format_value(self.inner.cut_value(&mask)))
    }

    fn to_text(&self) -> String {
        write_edge_graph(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!("EdgeGraph(n={}, m={})", self.inner.n(), self.inner.m())
    }
}

/// Vertex-capacitated directed graph.
#[pyclass(module = "dicut", frozen)]
pub struct VertexGraph {
    inner: dicut_core::VertexCapGraph,
}

#[pymethods]
impl VertexGraph {
    /// Capacities default to 1 for every vertex.
    #[new]
    #[pyo3(signature = (n, arcs, caps=None))]
    fn new(n: usize, arcs: Vec<(usize, usize)>, caps: Option<Vec<Bound<'_, PyAny>>>) -> PyResult<Self> {
        let caps = match caps {
            Some(c) if c.len() != n => {
                return Err(PyValueError::new_err(format!(
                    "expected {n} capacities, got {}",
                    c.len()
                )))
            }
            Some(c) => c.iter().map(rational).collect::<PyResult<Vec<_>>>()?,
            None => vec![Rational::integer(1); n],
        };
        let (nums, scale) = common_scale(&caps).map_err(to_py)?;
        let inner = dicut_core::VertexCapGraph::new(n, arcs, nums)
            .map_err(to_py)?
            .with_scale(scale);
        Ok(VertexGraph { inner })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    fn arcs(&self) -> Vec<(usize, usize)> {
        self.inner.arcs().to_vec()
    }

    fn caps(&self) -> Vec<String> {
        self.inner.vcaps().iter().map(|&c| self.inner.format_value(c)).collect()
    }

    fn reverse(&self) -> VertexGraph {
        VertexGraph {
            inner: self.inner.reverse(),
        }
    }

    /// Vertices outside `sink` with an arc into it.
    fn separator(&self, sink: Vec<usize>) -> PyResult<Vec<usize>> {
        for &v in &sink {
            self.inner.check_vertex(v).map_err(to_py)?;
        }
        Ok(self.inner.in_neighborhood(&sink))
    }

    fn to_text(&self) -> String {
        write_vertex_graph(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!("VertexGraph(n={}, m={})", self.inner.n(), self.inner.m())
    }
}

#[pyclass(module = "dicut", frozen, get_all)]
pub struct EdgeCut {
    value: String,
    root: usize,
    orientation: String,
    sink: Vec<usize>,
    cut_arcs: Vec<(usize, usize, String)>,
    stats: BTreeMap<&'static str, u64>,
}

#[pymethods]
impl EdgeCut {
    fn __repr__(&self) -> String {
        format!(
            "EdgeCut(value={}, orientation={}, sink={:?})",
            self.value, self.orientation, self.sink
        )
    }
}

#[pyclass(module = "dicut", frozen, get_all)]
pub struct VertexCut {
    value: String,
    orientation: String,
    sink: Vec<usize>,
    separator: Vec<usize>,
    roots: Vec<usize>,
    stats: BTreeMap<&'static str, u64>,
}

#[pymethods]
impl VertexCut {
    fn __repr__(&self) -> String {
        format!(
            "VertexCut(value={}, separator={:?}, sink={:?})",
            self.value, self.separator, self.sink
        )
    }
}

fn mode(root: Option<usize>) -> CutMode {
    root.map_or(CutMode::Global, CutMode::Rooted)
}

/// Minimum edge cut; global unless `root` is given.
#[pyfunction]
#[pyo3(signature = (graph, root=None, epsilon=None, seed=0, algorithm="approx", threads=0))]
fn edge_cut(
    py: Python<'_>,
    graph: &EdgeGraph,
    root: Option<usize>,
    epsilon: Option<Bound<'_, PyAny>>,
    seed: u64,
    algorithm: &str,
    threads: usize,
) -> PyResult<EdgeCut> {
    let cfg = config(epsilon.as_ref(), seed, threads)?;
    let algo = self::algorithm(algorithm)?;
    let g = &graph.inner;
    let cut = py.detach(|| solve_edge(g, mode(root), algo, &cfg)).map_err(to_py)?;
    let mut cut_arcs: Vec<(usize, usize, String)> = cut
        .input_arcs()
        .into_iter()
        .map(|(u, v, c)| (u, v, g.format_value(c)))
        .collect();
    cut_arcs.sort();
    Ok(EdgeCut {
        value: g.format_value(cut.cert.value),
        root: cut.root,
        orientation: cut.orientation.to_string(),
        sink: cut.cert.sink_set.clone(),
        cut_arcs,
        stats: stats_map(&cut.stats),
    })
}

/// Minimum vertex cut; global unless `root` is given.
#[pyfunction]
#[pyo3(signature = (graph, root=None, epsilon=None, seed=0, algorithm="approx", threads=0))]
fn vertex_cut(
    py: Python<'_>,
    graph: &VertexGraph,
    root: Option<usize>,
    epsilon: Option<Bound<'_, PyAny>>,
    seed: u64,
    algorithm: &str,
    threads: usize,
) -> PyResult<VertexCut> {
    let cfg = config(epsilon.as_ref(), seed, threads)?;
    let algo = self::algorithm(algorithm)?;
    let g = &graph.inner;
    let cut = py.detach(|| solve_vertex(g, mode(root), algo, &cfg)).map_err(to_py)?;
    Ok(VertexCut {
        value: g.format_value(cut.cert.value),
        orientation: cut.cert.orientation.to_string(),
        sink: cut.cert.sink_component.clone(),
        separator: cut.cert.separator.clone(),
        roots: cut.roots,
        stats: stats_map(&cut.stats),
    })
}

/// Re-derives a vertex cut from its sink component and returns the value,
/// raising if the component is not a valid cut.
#[pyfunction]
#[pyo3(signature = (graph, sink, orientation="forward", root=None))]
fn check_vertex_cut(graph: &VertexGraph, sink: Vec<usize>, orientation: &str, root: Option<usize>) -> PyResult<String> {
    let o = match orientation {
        "forward" => dicut_core::Orientation::Forward,
        "reverse" => dicut_core::Orientation::Reverse,
        _ => return Err(PyValueError::new_err(format!("unknown orientation {orientation:?}"))),
    };
    let g = &graph.inner;
    for &v in &sink {
        g.check_vertex(v).map_err(to_py)?;
    }
    let cert = VertexCutCertificate::from_component(g, sink, o);
    cert.check(g, root).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(g.format_value(cert.value))
}

/// Parses the text file format into an `EdgeGraph` or `VertexGraph`.
#[pyfunction]
fn parse(py: Python<'_>, text: &str) -> PyResult<Py<PyAny>> {
    Ok(match parse_graph_str(text).map_err(to_py)? {
        ParsedGraph::Edge(g) => Py::new(py, EdgeGraph { inner: g })?.into_any(),
        ParsedGraph::Vertex(g) => Py::new(py, VertexGraph { inner: g })?.into_any(),
    })
}

#[pyfunction]
fn read(py: Python<'_>, path: std::path::PathBuf) -> PyResult<Py<PyAny>> {
    let text =
        std::fs::read_to_string(&path).map_err(|e| PyRuntimeError::new_err(format!("{}: {e}", path.display())))?;
    parse(py, &text)
}

/// Random instance. Returns `(graph, planted)` where `planted` is
/// `(root, sink, value)` for the planted-sink family and `None` otherwise.
#[pyfunction]
#[pyo3(signature = (family, seed=0, n=None, p=0.2, max_cap=10, vol=16, value=5, caps=None, cap=1, layers=4, width=4, vertex_caps=None))]
#[allow(clippy::too_many_arguments)]
fn generate(
    py: Python<'_>,
    family: &str,
    seed: u64,
    n: Option<usize>,
    p: f64,
    max_cap: u128,
    vol: usize,
    value: u128,
    caps: Option<Vec<u128>>,
    cap: u128,
    layers: usize,
    width: usize,
    vertex_caps: Option<u128>,
) -> PyResult<(Py<PyAny>, Option<(usize, Vec<usize>, String)>)> {
    let need_n = || n.ok_or_else(|| PyValueError::new_err(format!("n is required for {family}")));
    let fam = match family {
        "erdos-renyi" => Family::ErdosRenyi {
            n: need_n()?,
            p,
            max_cap,
        },
        "planted-sink" => Family::PlantedSink {
            n: need_n()?,
            vol,
            value,
        },
        "cycle" => Family::Cycle {
            caps: caps.ok_or_else(|| PyValueError::new_err("caps is required for cycle"))?,
        },
        "star" => Family::Star { n: need_n()?, cap },
        "layered-dag" => Family::LayeredDag {
            layers,
            width,
            p,
            max_cap,
        },
        _ => return Err(PyValueError::new_err(format!("unknown family {family:?}"))),
    };
    let out = gen(&fam, seed).map_err(to_py)?;
    let planted = out
        .planted
        .map(|pl| (pl.root, pl.sink, format_ratio(pl.value, out.graph.scale())));
    let graph = match vertex_caps {
        Some(k) => Py::new(
            py,
            VertexGraph {
                inner: with_vertex_caps(&out.graph, k, seed).map_err(to_py)?,
            },
        )?
        .into_any(),
        None => Py::new(py, EdgeGraph { inner: out.graph })?.into_any(),
    };
    Ok((graph, planted))
}

#[pymodule]
fn dicut(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<EdgeGraph>()?;
    m.add_class::<VertexGraph>()?;
    m.add_class::<EdgeCut>()?;
    m.add_class::<VertexCut>()?;
    m.add_function(wrap_pyfunction!(edge_cut, m)?)?;
    m.add_function(wrap_pyfunction!(vertex_cut, m)?)?;
    m.add_function(wrap_pyfunction!(check_vertex_cut, m)?)?;
    m.add_function(wrap_pyfunction!(parse, m)?)?;
    m.add_function(wrap_pyfunction!(read, m)?)?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add("NoCutError", m.py().get_type::<NoCutError>())?;
    Ok(())
}
