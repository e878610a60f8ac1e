//! Python bindings. Objects cross the boundary as the same JSON documents the
//! CLI reads; results come back as Python values.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde_json::Value;

use ordalg::algebra::{Homomorphism, OrderedAlgebra};
use ordalg::colimit::{coinserter_alg, coinserter_pos, pullback, quotient_algebra, subkernel_pair, subregular_factorization};
use ordalg::io::{self, Loader};
use ordalg::poset::{connected_components, enumerate_monotone_maps, is_isomorphic, posetal_reflection, product, FinitePoset, FinitePreorder};
use ordalg::relation::{classify, tabulate};
use ordalg::suites::{default_config, run_suite, SUITES};
use ordalg::term::{satisfies, Inequation};

fn err(e: ordalg::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse(doc: &str) -> PyResult<Value> {
    serde_json::from_str(doc).map_err(|e| PyValueError::new_err(format!("invalid JSON: {e}")))
}

fn pairs(le: Vec<Vec<String>>) -> PyResult<Vec<(String, String)>> {
    le.into_iter()
        .map(|p| match <[String; 2]>::try_from(p) {
            Ok([a, b]) => Ok((a, b)),
            Err(p) => Err(PyValueError::new_err(format!("order pair must have two labels, got {p:?}"))),
        })
        .collect()
}

type Checked = (bool, Option<Vec<(String, String)>>);

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (v.to_string(),))
}

/// A finite poset.
#[pyclass(name = "Poset", frozen)]
struct PyPoset {
    inner: FinitePoset,
}

#[pymethods]
impl PyPoset {
    #[new]
    #[pyo3(signature = (elements, le = Vec::new()))]
    fn new(elements: Vec<String>, le: Vec<Vec<String>>) -> PyResult<Self> {
        Ok(PyPoset { inner: FinitePoset::new(elements, pairs(le)?).map_err(err)? })
    }

    #[staticmethod]
    fn chain(n: usize) -> Self {
        PyPoset { inner: FinitePoset::chain(n) }
    }

    #[staticmethod]
    fn antichain(n: usize) -> Self {
        PyPoset { inner: FinitePoset::antichain(n) }
    }

    #[staticmethod]
    fn from_json(doc: &str) -> PyResult<Self> {
        Ok(PyPoset { inner: Loader::default().poset(&parse(doc)?).map_err(err)? })
    }

    fn to_json(&self) -> String {
        io::poset_json(&self.inner).to_string()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("Poset({})", self.to_json())
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        self.inner.labels().to_vec()
    }

    fn le(&self, a: &str, b: &str) -> PyResult<bool> {
        let (a, b) = (self.inner.resolve(a).map_err(err)?, self.inner.resolve(b).map_err(err)?);
        Ok(self.inner.le(a, b))
    }

    fn components(&self) -> Vec<Vec<String>> {
        connected_components(&self.inner)
            .iter()
            .map(|c| c.iter().map(|&x| self.inner.label(x).to_owned()).collect())
            .collect()
    }

    fn product(&self, other: &PyPoset) -> PyPoset {
        PyPoset { inner: product(&self.inner, &other.inner).object }
    }

    fn is_isomorphic(&self, other: &PyPoset) -> bool {
        is_isomorphic(&self.inner, &other.inner)
    }

    /// Tables of all monotone maps into `other`, as label dicts.
    fn monotone_maps<'py>(&self, py: Python<'py>, other: &PyPoset) -> PyResult<Vec<Bound<'py, PyAny>>> {
        enumerate_monotone_maps(&self.inner, &other.inner)
            .iter()
            .map(|f| to_py(py, &io::arrow_json(&f.into())))
            .collect()
    }
}

/// An ordered algebra; a bare poset document gives the empty signature.
#[pyclass(name = "Algebra", frozen)]
struct PyAlgebra {
    inner: OrderedAlgebra,
}

#[pymethods]
impl PyAlgebra {
    #[staticmethod]
    fn from_json(doc: &str) -> PyResult<Self> {
        Ok(PyAlgebra { inner: Loader::default().algebra(&parse(doc)?).map_err(err)? })
    }

    #[staticmethod]
    fn from_poset(p: &PyPoset) -> Self {
        PyAlgebra { inner: OrderedAlgebra::from_poset(p.inner.clone()) }
    }

    fn to_json(&self) -> String {
        io::algebra_json(&self.inner).to_string()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    #[getter]
    fn poset(&self) -> PyPoset {
        PyPoset { inner: self.inner.carrier().clone() }
    }

    /// Whether `lhs <= rhs` holds; the least failing valuation otherwise.
    fn satisfies(&self, vars: Vec<String>, lhs: &str, rhs: &str) -> PyResult<Checked> {
        let vs: Vec<&str> = vars.iter().map(String::as_str).collect();
        let ineq = Inequation::parse(&vs, lhs, rhs, self.inner.signature()).map_err(err)?;
        let s = satisfies(&self.inner, &ineq).map_err(err)?;
        Ok((s.holds, s.witness))
    }
}

/// A monotone map or homomorphism.
#[pyclass(name = "Map", frozen)]
struct PyMap {
    inner: Homomorphism,
}

#[pymethods]
impl PyMap {
    #[staticmethod]
    fn from_json(doc: &str) -> PyResult<Self> {
        Ok(PyMap { inner: Loader::default().hom(&parse(doc)?).map_err(err)? })
    }

    fn to_json(&self) -> String {
        io::hom_json(&self.inner).to_string()
    }

    fn table<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &io::arrow_json(&self.inner))
    }

    fn is_surjective(&self) -> bool {
        self.inner.is_surjective()
    }

    fn is_embedding(&self) -> bool {
        self.inner.is_embedding()
    }

    fn compose(&self, inner: &PyMap) -> PyResult<PyMap> {
        Ok(PyMap { inner: self.inner.compose(&inner.inner).map_err(err)? })
    }
}

/// Quotient poset and the projection as a label dict.
#[pyfunction]
#[pyo3(signature = (elements, le = Vec::new()))]
fn posetal_reflection_of<'py>(py: Python<'py>, elements: Vec<String>, le: Vec<Vec<String>>) -> PyResult<(PyPoset, Bound<'py, PyAny>)> {
    let p = FinitePreorder::new(elements, pairs(le)?).map_err(err)?;
    let r = posetal_reflection(&p);
    let arrow = to_py(py, &io::arrow_json(&Homomorphism::from(&r.proj)))?;
    Ok((PyPoset { inner: r.quotient }, arrow))
}

/// Coinserter of a parallel pair: `(object, arrow)`.
#[pyfunction]
fn coinserter(f0: &PyMap, f1: &PyMap) -> PyResult<(PyAlgebra, PyMap)> {
    let c = if f0.inner.cod().signature().is_empty() {
        coinserter_pos(&f0.inner.map(), &f1.inner.map())
    } else {
        coinserter_alg(&f0.inner, &f1.inner)
    }
    .map_err(err)?;
    Ok((PyAlgebra { inner: c.object }, PyMap { inner: c.arrow }))
}

/// Subkernel pair of a map as its list of label pairs.
#[pyfunction]
fn subkernel(h: &PyMap) -> PyResult<Vec<(String, String)>> {
    Ok(tabulate(&subkernel_pair(&h.inner)).map_err(err)?.labelled_pairs())
}

/// Classification flags of a relation document.
#[pyfunction]
fn classify_relation<'py>(py: Python<'py>, doc: &str) -> PyResult<Bound<'py, PyAny>> {
    let r = Loader::default().relation(&parse(doc)?).map_err(err)?;
    to_py(py, &serde_json::to_value(classify(&r)).expect("plain data"))
}

/// Quotient by a subcongruence given as a relation document.
#[pyfunction]
fn quotient(doc: &str) -> PyResult<(PyAlgebra, PyMap)> {
    let r = Loader::default().relation(&parse(doc)?).map_err(err)?;
    let c = quotient_algebra(&r).map_err(err)?;
    Ok((PyAlgebra { inner: c.object }, PyMap { inner: c.arrow }))
}

/// `(middle, epi, mono)` with `f = mono ∘ epi`.
#[pyfunction]
fn factorize(f: &PyMap) -> PyResult<(PyAlgebra, PyMap, PyMap)> {
    let r = subregular_factorization(&f.inner).map_err(err)?;
    Ok((PyAlgebra { inner: r.mid }, PyMap { inner: r.epi }, PyMap { inner: r.mono }))
}

/// `(object, to_a, to_b)` for `f: B → Q`, `e: A → Q`.
#[pyfunction(name = "pullback")]
fn pullback_of(f: &PyMap, e: &PyMap) -> PyResult<(PyAlgebra, PyMap, PyMap)> {
    let p = pullback(&f.inner, &e.inner).map_err(err)?;
    Ok((PyAlgebra { inner: p.object }, PyMap { inner: p.to_a }, PyMap { inner: p.to_b }))
}

#[pyfunction]
fn suites() -> Vec<&'static str> {
    SUITES.to_vec()
}

/// Runs a property suite; sizes default to the acceptance configuration.
#[pyfunction]
#[pyo3(signature = (name, size = None, oracle_size = None, samples = None, seed = 0))]
fn verify<'py>(
    py: Python<'py>,
    name: &str,
    size: Option<usize>,
    oracle_size: Option<usize>,
    samples: Option<usize>,
    seed: u64,
) -> PyResult<Bound<'py, PyAny>> {
    let mut cfg = default_config(name).map_err(err)?;
    cfg.seed = seed;
    cfg.size = size.unwrap_or(cfg.size);
    cfg.oracle_size = oracle_size.unwrap_or(cfg.oracle_size);
    cfg.samples = samples.unwrap_or(cfg.samples);
    let report = py.detach(|| run_suite(name, &cfg)).map_err(err)?;
    to_py(py, &serde_json::to_value(report).expect("plain data"))
}

#[pymodule]
fn ordalg_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPoset>()?;
    m.add_class::<PyAlgebra>()?;
    m.add_class::<PyMap>()?;
    m.add_function(wrap_pyfunction!(posetal_reflection_of, m)?)?;
    m.add_function(wrap_pyfunction!(coinserter, m)?)?;
    m.add_function(wrap_pyfunction!(subkernel, m)?)?;
    m.add_function(wrap_pyfunction!(classify_relation, m)?)?;
    m.add_function(wrap_pyfunction!(quotient, m)?)?;
    m.add_function(wrap_pyfunction!(factorize, m)?)?;
    m.add_function(wrap_pyfunction!(pullback_of, m)?)?;
    m.add_function(wrap_pyfunction!(suites, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
