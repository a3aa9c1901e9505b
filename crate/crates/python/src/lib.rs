//! Python bindings, imported as `bicomplex`.
//!
//! Results come back as plain dicts and lists with the same shape as the
//! CLI's JSON sections.

use bicomplex::bicomplex::{parse_text, to_text, Arrow, Bidegree, GeneratorKind, GeneratorSpec};
use bicomplex::checkers::{Checker, HypothesisMode, StatementId};
use bicomplex::cohomology::{Cohomology, Functor};
use bicomplex::report::{self, Section};
use bicomplex::{zoo, DoubleComplex, Error};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use pyo3::IntoPyObjectExt;
use serde_json::Value;

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse<T: std::str::FromStr<Err = Error>>(s: &str) -> PyResult<T> {
    s.parse().map_err(err)
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    match v {
        Value::Null => Ok(py.None().into_bound(py)),
        Value::Bool(b) => b.into_bound_py_any(py),
        Value::Number(n) => match (n.as_i64(), n.as_u64()) {
            (Some(i), _) => i.into_bound_py_any(py),
            (_, Some(u)) => u.into_bound_py_any(py),
            _ => n.as_f64().unwrap_or(f64::NAN).into_bound_py_any(py),
        },
        Value::String(s) => s.into_bound_py_any(py),
        Value::Array(xs) => {
            let items = xs
                .iter()
                .map(|x| to_py(py, x))
                .collect::<PyResult<Vec<_>>>()?;
            PyList::new(py, items)?.into_bound_py_any(py)
        }
        Value::Object(m) => {
            let d = PyDict::new(py);
            for (k, x) in m {
                d.set_item(k, to_py(py, x)?)?;
            }
            d.into_bound_py_any(py)
        }
    }
}

/// The section JSON minus its `kind` tag.
fn section<'py>(py: Python<'py>, s: Section) -> PyResult<Bound<'py, PyAny>> {
    let mut v = s.to_json();
    if let Value::Object(m) = &mut v {
        m.remove("kind");
    }
    to_py(py, &v)
}

/// Field of a single-field section, e.g. the `maps` list.
fn field<'py>(py: Python<'py>, s: Section, key: &str) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &s.to_json()[key])
}

fn bigraded(name: &str) -> PyResult<bicomplex::Theory> {
    match parse::<Functor>(name)? {
        Functor::Bigraded(t) => Ok(t),
        Functor::DeRham => Err(PyValueError::new_err("use betti() for de Rham cohomology")),
    }
}

#[pyclass(name = "DoubleComplex", module = "bicomplex", frozen)]
pub struct PyDoubleComplex {
    inner: DoubleComplex,
}

impl PyDoubleComplex {
    fn cohomology(&self) -> PyResult<Cohomology<'_>> {
        Cohomology::new(&self.inner).map_err(err)
    }

    fn checker(&self) -> PyResult<Checker<'_>> {
        Checker::new(&self.inner).map_err(err)
    }
}

#[pymethods]
impl PyDoubleComplex {
    /// Parses the line-oriented text format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyDoubleComplex {
            inner: parse_text(text).map_err(err)?,
        })
    }

    fn to_text(&self) -> String {
        to_text(&self.inner)
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name().to_string()
    }

    /// Declared dimension, if any.
    #[getter]
    fn n(&self) -> Option<usize> {
        self.inner.n()
    }

    /// `{(p, q): dim}` over the support.
    fn dims<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let d = PyDict::new(py);
        for (at, n) in self.inner.dims() {
            d.set_item((at.p, at.q), n)?;
        }
        Ok(d)
    }

    fn digest(&self) -> String {
        report::digest(&self.inner)
    }

    fn is_valid(&self) -> bool {
        self.inner.is_valid()
    }

    fn validate<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        section(py, Section::Validation(self.inner.validate()))
    }

    /// `theory` is one of `dbar`, `del`, `bc`, `a`.
    fn dim(&self, theory: &str, p: i64, q: i64) -> PyResult<usize> {
        Ok(self
            .cohomology()?
            .dim(bigraded(theory)?, Bidegree::new(p, q)))
    }

    fn betti(&self, degree: i64) -> PyResult<usize> {
        Ok(self.cohomology()?.betti(degree))
    }

    fn table<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let t = self.cohomology()?.table().map_err(err)?;
        section(py, Section::Table(t))
    }

    /// One comparison map, or all of them at `(p, q)` when `source` and
    /// `target` are omitted.
    #[pyo3(signature = (p, q, source=None, target=None))]
    fn natural_maps<'py>(
        &self,
        py: Python<'py>,
        p: i64,
        q: i64,
        source: Option<&str>,
        target: Option<&str>,
    ) -> PyResult<Bound<'py, PyAny>> {
        let h = self.cohomology()?;
        let at = Bidegree::new(p, q);
        let maps = match (source, target) {
            (Some(s), Some(t)) => vec![h.natural_map(parse(s)?, parse(t)?, at).map_err(err)?],
            (None, None) => h.all_natural_maps(at).map_err(err)?,
            _ => {
                return Err(PyValueError::new_err(
                    "give both source and target, or neither",
                ))
            }
        };
        field(py, Section::Maps(maps), "maps")
    }

    fn ddbar_lemma<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let l = self.cohomology()?.ddbar_lemma().map_err(err)?;
        section(py, Section::DdbarLemma(l))
    }

    /// Verdicts for a statement id such as `thm1.1a`; a list because
    /// `cor1.3` yields one verdict per bidegree.
    #[pyo3(signature = (statement, p=None, q=None, mode="direct"))]
    fn check<'py>(
        &self,
        py: Python<'py>,
        statement: &str,
        p: Option<i64>,
        q: Option<i64>,
        mode: &str,
    ) -> PyResult<Bound<'py, PyAny>> {
        let id: StatementId = parse(statement)?;
        let mode: HypothesisMode = parse(mode)?;
        let vs = self.checker()?.check(id, p, q, mode).map_err(err)?;
        field(py, Section::Verdicts(vs), "verdicts")
    }

    /// Dolbeault q-completeness, or the Bott-Chern variant with `bc=True`.
    #[pyo3(signature = (q, bc=false))]
    fn q_complete<'py>(&self, py: Python<'py>, q: i64, bc: bool) -> PyResult<Bound<'py, PyAny>> {
        let k = self.checker()?;
        let r = if bc {
            k.bc_q_complete(q)
        } else {
            k.q_complete(q)
        }
        .map_err(err)?;
        to_py(py, &Section::QComplete(vec![r]).to_json()["results"][0])
    }

    fn __repr__(&self) -> String {
        format!(
            "DoubleComplex({:?}, total dim {})",
            self.inner.name(),
            self.inner.dims().values().sum::<usize>()
        )
    }
}

/// Builds a model; arguments mirror `bicomplex gen`.
#[pyfunction]
#[pyo3(signature = (kind, p=0, q=0, shape=Vec::new(), seed=0, blocks=0, bounds=(0, 0, 4, 4), symmetric=false, n=None))]
#[allow(clippy::too_many_arguments)]
fn generate(
    kind: &str,
    p: i64,
    q: i64,
    shape: Vec<String>,
    seed: u64,
    blocks: usize,
    bounds: (i64, i64, i64, i64),
    symmetric: bool,
    n: Option<usize>,
) -> PyResult<PyDoubleComplex> {
    let zigzag_shape = shape
        .iter()
        .map(|s| parse::<Arrow>(s))
        .collect::<PyResult<Vec<_>>>()?;
    let spec = GeneratorSpec {
        kind: parse::<GeneratorKind>(kind)?,
        placement: Bidegree::new(p, q),
        zigzag_shape,
        block_count: blocks,
        bounds: (
            Bidegree::new(bounds.0, bounds.1),
            Bidegree::new(bounds.2, bounds.3),
        ),
        seed,
        symmetric,
        dimension: n,
    };
    Ok(PyDoubleComplex {
        inner: zoo::generate(&spec).map_err(err)?,
    })
}

#[pyfunction]
fn parse_complex(text: &str) -> PyResult<PyDoubleComplex> {
    PyDoubleComplex::parse(text)
}

#[pymodule]
#[pyo3(name = "bicomplex")]
pub fn bicomplex_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyDoubleComplex>()?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add_function(wrap_pyfunction!(parse_complex, m)?)?;
    Ok(())
}
