use num_bigint::BigInt;
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

use qspectral_core::formats::{decode_graph6, encode_graph6};
use qspectral_core::generators::{self, report, FamilyGraph};
use qspectral_core::graph::count_partially_symmetric;
use qspectral_core::survey::{self, SurveyOptions, DEFAULT_PERM_BUDGET};
use qspectral_core::tu::DEFAULT_SUBSET_BUDGET;
use qspectral_core::{iso, spectral, tu, ClusteredGraph, Error};

create_exception!(qspectral, BudgetExceeded, PyException);

fn to_py(e: Error) -> PyErr {
    if e.is_budget() {
        BudgetExceeded::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

/// A simple graph, optionally split into two clusters of `q` vertices.
#[pyclass(name = "Graph", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyGraph {
    inner: qspectral_core::Graph,
    q: Option<usize>,
}

impl PyGraph {
    fn clustered(&self) -> PyResult<ClusteredGraph> {
        let n = self.inner.order();
        let q = match self.q {
            Some(q) => q,
            None if n.is_multiple_of(2) => n / 2,
            None => {
                return Err(PyValueError::new_err(format!(
                    "{n} vertices cannot form two equal clusters"
                )))
            }
        };
        if q == 0 {
            return Ok(ClusteredGraph::empty(0));
        }
        ClusteredGraph::build(q, &self.inner.edges()).map_err(to_py)
    }

    fn wrap(g: ClusteredGraph) -> Self {
        let q = g.q();
        PyGraph {
            inner: g.into_graph(),
            q: Some(q),
        }
    }
}

#[pymethods]
impl PyGraph {
    /// `Graph(n, edges, q=None)`; `q`, when given, must equal `n / 2`.
    #[new]
    #[pyo3(signature = (n, edges, q=None))]
    fn new(n: usize, edges: Vec<(usize, usize)>, q: Option<usize>) -> PyResult<Self> {
        if let Some(q) = q {
            if 2 * q != n {
                return Err(PyValueError::new_err(format!(
                    "q={q} does not split {n} vertices"
                )));
            }
        }
        let inner = qspectral_core::Graph::from_edges(n, &edges).map_err(to_py)?;
        Ok(PyGraph { inner, q })
    }

    #[staticmethod]
    fn from_graph6(line: &str) -> PyResult<Self> {
        Ok(PyGraph {
            inner: decode_graph6(line.trim(), 1).map_err(to_py)?,
            q: None,
        })
    }

    fn graph6(&self) -> String {
        encode_graph6(&self.inner)
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    #[getter]
    fn size(&self) -> usize {
        self.inner.size()
    }

    #[getter]
    fn q(&self) -> Option<usize> {
        self.q
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges()
    }

    fn partial_transpose(&self) -> PyResult<Self> {
        Ok(PyGraph::wrap(self.clustered()?.partial_transpose()))
    }

    fn is_partially_symmetric(&self) -> PyResult<bool> {
        Ok(self.clustered()?.is_partially_symmetric())
    }

    fn __repr__(&self) -> String {
        match self.q {
            Some(q) => format!(
                "Graph(n={}, q={q}, edges={:?})",
                self.inner.order(),
                self.inner.edges()
            ),
            None => format!(
                "Graph(n={}, edges={:?})",
                self.inner.order(),
                self.inner.edges()
            ),
        }
    }
}

/// Exact coefficients of `det(λI - Q)`, highest power first.
#[pyfunction]
fn q_polynomial(g: &PyGraph) -> Vec<BigInt> {
    spectral::q_polynomial(&g.inner).coeffs().to_vec()
}

#[pyfunction]
fn q_spectrum(g: &PyGraph) -> Vec<f64> {
    spectral::q_spectrum(&g.inner).eigenvalues
}

#[pyfunction]
fn are_q_cospectral(g: &PyGraph, h: &PyGraph) -> bool {
    spectral::are_q_cospectral(&g.inner, &h.inner)
}

#[pyfunction]
fn are_isomorphic(g: &PyGraph, h: &PyGraph) -> PyResult<bool> {
    iso::are_isomorphic(&g.inner, &h.inner).map_err(to_py)
}

/// Canonical form as a hex string; equal strings mean isomorphic graphs.
#[pyfunction]
fn canonical_form(g: &PyGraph) -> PyResult<String> {
    Ok(iso::canonical_form(&g.inner).map_err(to_py)?.to_hex())
}

/// Coefficients recomputed from TU subgraphs.
#[pyfunction]
#[pyo3(signature = (g, budget=DEFAULT_SUBSET_BUDGET))]
fn tu_coefficients(g: &PyGraph, budget: u64) -> PyResult<Vec<BigInt>> {
    Ok(tu::tu_coefficients(&g.inner, budget)
        .map_err(to_py)?
        .into_iter()
        .map(|c| c.p_j)
        .collect())
}

/// Whether some cluster labelling gives a cospectral, non-isomorphic
/// partial transpose. Odd orders gain an isolated vertex.
#[pyfunction]
#[pyo3(signature = (g, budget=DEFAULT_PERM_BUDGET))]
fn pt_realizable(g: &PyGraph, budget: u64) -> PyResult<bool> {
    survey::pt_realizable_any_order(&g.inner, budget).map_err(to_py)
}

#[pyfunction]
fn count_psym(q: usize) -> BigInt {
    count_partially_symmetric(q).into()
}

/// Survey rows `(n, m, cospectral, pt)` for order `n`. Raises
/// `BudgetExceeded` when any edge count could not be searched in full.
#[pyfunction]
#[pyo3(signature = (n, max_m=None, budget=DEFAULT_PERM_BUDGET))]
fn survey_table(
    n: usize,
    max_m: Option<usize>,
    budget: u64,
) -> PyResult<Vec<(usize, usize, usize, usize)>> {
    let opts = SurveyOptions {
        max_m,
        perm_budget: budget,
    };
    let t = survey::survey_table(n, opts).map_err(to_py)?;
    if let Some(m) = t.truncated_at {
        return Err(BudgetExceeded::new_err(format!(
            "survey truncated at m={m}"
        )));
    }
    Ok(t.rows
        .iter()
        .map(|r| (r.n, r.m, r.cospectral_count, r.pt_count))
        .collect())
}

/// Builds a family member and returns `(G, G^τ, cospectral, isomorphic)`.
#[pyfunction]
#[pyo3(signature = (family, q, i=None, j=None, diagonals=None))]
fn generate(
    family: &str,
    q: usize,
    i: Option<usize>,
    j: Option<usize>,
    diagonals: Option<Vec<usize>>,
) -> PyResult<(PyGraph, PyGraph, bool, bool)> {
    let need = |v: Option<usize>, name: &str| {
        v.ok_or_else(|| PyValueError::new_err(format!("{family} needs {name}")))
    };
    let fam: FamilyGraph = match family {
        "theorem1" => generators::theorem1_graph(q, need(i, "i")?, need(j, "j")?),
        "corollary1" => generators::corollary1_graph(q, need(i, "i")?),
        "corollary2" => generators::corollary2_graph(q, &diagonals.unwrap_or_default()),
        other => return Err(PyValueError::new_err(format!("unknown family `{other}`"))),
    }
    .map_err(to_py)?;
    let rep = report(&fam).map_err(to_py)?;
    Ok((
        PyGraph::wrap(rep.graph),
        PyGraph::wrap(rep.transpose),
        rep.cospectral,
        rep.isomorphic,
    ))
}

#[pymodule]
fn qspectral(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add("BudgetExceeded", m.py().get_type::<BudgetExceeded>())?;
    m.add_function(wrap_pyfunction!(q_polynomial, m)?)?;
    m.add_function(wrap_pyfunction!(q_spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(are_q_cospectral, m)?)?;
    m.add_function(wrap_pyfunction!(are_isomorphic, m)?)?;
    m.add_function(wrap_pyfunction!(canonical_form, m)?)?;
    m.add_function(wrap_pyfunction!(tu_coefficients, m)?)?;
    m.add_function(wrap_pyfunction!(pt_realizable, m)?)?;
    m.add_function(wrap_pyfunction!(count_psym, m)?)?;
    m.add_function(wrap_pyfunction!(survey_table, m)?)?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    Ok(())
}
