//! Python bindings: the finite partial-map model, guarded iteration,
//! the star operator, the step-simulation oracle, the law harness, and
//! the flowchart mini-language, exposed in-process.
//!
//! ```python
//! import itegory_py as it
//! f = it.Map.from_table(3, 3, [1, 2, None])
//! g = it.Map.from_table(3, 1, [None, None, 0])
//! it.kleene_wand(f, g).table()   # [0, 0, 0]
//! ```

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use itegory::flow;
use itegory::lawlab::{self, Bounds, RelChoice, RunMode};
use itegory::matext::Matrix;
use itegory::trace::trace_n;
use itegory::wand;
use itegory::{FinObj, PartialMap, RestIdem};

fn value_err(err: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(err.to_string())
}

/// An extensional partial function between finite carriers.
#[pyclass(name = "Map", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyMap {
    inner: PartialMap,
}

#[pymethods]
impl PyMap {
    /// Build from carrier sizes and a table of optional target indices.
    #[staticmethod]
    #[pyo3(signature = (dom, cod, table, dom_labels=None, cod_labels=None))]
    fn from_table(
        dom: usize,
        cod: usize,
        table: Vec<Option<usize>>,
        dom_labels: Option<Vec<String>>,
        cod_labels: Option<Vec<String>>,
    ) -> PyResult<PyMap> {
        let mk = |size: usize, labels: Option<Vec<String>>| -> PyResult<FinObj> {
            match labels {
                None => Ok(FinObj::of_size(size)),
                Some(l) => {
                    if l.len() != size {
                        return Err(value_err(format!("{} labels for size {size}", l.len())));
                    }
                    FinObj::labeled(l).map_err(value_err)
                }
            }
        };
        let inner = PartialMap::new(mk(dom, dom_labels)?, mk(cod, cod_labels)?, table)
            .map_err(value_err)?;
        Ok(PyMap { inner })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<PyMap> {
        Ok(PyMap {
            inner: serde_json::from_str(text).map_err(value_err)?,
        })
    }

    #[staticmethod]
    fn identity(size: usize) -> PyMap {
        PyMap {
            inner: PartialMap::identity(&FinObj::of_size(size)),
        }
    }

    #[staticmethod]
    fn zero(dom: usize, cod: usize) -> PyMap {
        PyMap {
            inner: PartialMap::zero(&FinObj::of_size(dom), &FinObj::of_size(cod)),
        }
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner).map_err(value_err)
    }

    fn table(&self) -> Vec<Option<usize>> {
        self.inner.table().to_vec()
    }

    fn dom_size(&self) -> usize {
        self.inner.dom().size()
    }

    fn cod_size(&self) -> usize {
        self.inner.cod().size()
    }

    fn apply(&self, x: usize) -> PyResult<Option<usize>> {
        if x >= self.inner.dom().size() {
            return Err(value_err(format!("{x} outside carrier")));
        }
        Ok(self.inner.apply(x))
    }

    /// Diagrammatic composition: first `self`, then `then`.
    fn compose(&self, then: &PyMap) -> PyResult<PyMap> {
        Ok(PyMap {
            inner: self.inner.compose(&then.inner).map_err(value_err)?,
        })
    }

    fn restriction(&self) -> PyMap {
        PyMap {
            inner: self.inner.restriction().into_map(),
        }
    }

    fn leq(&self, other: &PyMap) -> PyResult<bool> {
        self.inner.leq(&other.inner).map_err(value_err)
    }

    fn is_total(&self) -> bool {
        self.inner.is_total()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn is_rest_idem(&self) -> bool {
        self.inner.is_rest_idem()
    }

    fn __eq__(&self, other: &PyMap) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Map({})", self.inner)
    }
}

/// Disjointness of domains of definition (the maximal relation).
#[pyfunction]
fn perp(f: &PyMap, g: &PyMap) -> PyResult<bool> {
    itegory::InterferenceRel::maximal()
        .perp(&f.inner, &g.inner)
        .map_err(value_err)
}

/// Iterate `body` until `exit` applies.
#[pyfunction]
fn kleene_wand(body: &PyMap, exit: &PyMap) -> PyResult<PyMap> {
    Ok(PyMap {
        inner: wand::kleene_wand0(&body.inner, &exit.inner).map_err(value_err)?,
    })
}

/// `f⋆`: iterate an endomorphism while it is defined.
#[pyfunction]
fn upper_star(f: &PyMap) -> PyResult<PyMap> {
    Ok(PyMap {
        inner: wand::upper_star(&f.inner).map_err(value_err)?,
    })
}

/// Complement of a restriction idempotent.
#[pyfunction]
fn complement(e: &PyMap) -> PyResult<PyMap> {
    let idem = RestIdem::try_new(e.inner.clone()).map_err(value_err)?;
    Ok(PyMap {
        inner: wand::complement(&idem).into_map(),
    })
}

/// The part of `g` outside `f`, for `f ≤ g`.
#[pyfunction]
fn relative_complement(f: &PyMap, g: &PyMap) -> PyResult<PyMap> {
    Ok(PyMap {
        inner: wand::relative_complement(&f.inner, &g.inner).map_err(value_err)?,
    })
}

/// Operational loop semantics at one start point (the oracle).
#[pyfunction]
fn step_simulate(body: &PyMap, exit: &PyMap, start: usize) -> PyResult<Option<usize>> {
    lawlab::step_simulate(&body.inner, &exit.inner, start).map_err(value_err)
}

/// All registered law identifiers.
#[pyfunction]
fn law_ids() -> Vec<String> {
    lawlab::law_ids().into_iter().map(str::to_string).collect()
}

/// Run a law and return its report as a JSON string.
#[pyfunction]
#[pyo3(signature = (law, seed=0, cases=200, max_size=4, minimal_rel=false))]
fn run_law(
    law: &str,
    seed: u64,
    cases: u64,
    max_size: usize,
    minimal_rel: bool,
) -> PyResult<String> {
    let bounds = Bounds {
        max_x: max_size,
        max_a: max_size.min(3).max(1),
        max_parts: 2,
        rel: if minimal_rel {
            RelChoice::Minimal
        } else {
            RelChoice::Maximal
        },
    };
    let report = lawlab::run_law(law, RunMode::Seeded { seed, cases }, &bounds)
        .map_err(value_err)?;
    serde_json::to_string(&report).map_err(value_err)
}

/// Run a flowchart program, returning one output line per directive.
#[pyfunction]
fn run_program(text: &str) -> PyResult<Vec<String>> {
    flow::run_text(text).map_err(value_err)
}

/// Canonical pretty-printed form of a flowchart program.
#[pyfunction]
fn pretty_program(text: &str) -> PyResult<String> {
    Ok(flow::parse(text).map_err(value_err)?.to_string())
}

/// Trace out the first `cut` parts of a matrix given as JSON.
#[pyfunction]
fn trace_json(matrix_json: &str, cut: usize) -> PyResult<String> {
    let matrix: Matrix = serde_json::from_str(matrix_json).map_err(value_err)?;
    let traced = trace_n(&matrix, cut).map_err(value_err)?;
    serde_json::to_string(&traced).map_err(value_err)
}

#[pymodule]
fn itegory_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyMap>()?;
    m.add_function(wrap_pyfunction!(perp, m)?)?;
    m.add_function(wrap_pyfunction!(kleene_wand, m)?)?;
    m.add_function(wrap_pyfunction!(upper_star, m)?)?;
    m.add_function(wrap_pyfunction!(complement, m)?)?;
    m.add_function(wrap_pyfunction!(relative_complement, m)?)?;
    m.add_function(wrap_pyfunction!(step_simulate, m)?)?;
    m.add_function(wrap_pyfunction!(law_ids, m)?)?;
    m.add_function(wrap_pyfunction!(run_law, m)?)?;
    m.add_function(wrap_pyfunction!(run_program, m)?)?;
    m.add_function(wrap_pyfunction!(pretty_program, m)?)?;
    m.add_function(wrap_pyfunction!(trace_json, m)?)?;
    Ok(())
}
