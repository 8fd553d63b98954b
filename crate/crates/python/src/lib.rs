//! Python bindings. Reports come back as plain dicts and lists with
//! rationals as strings, the same shape as the command line's JSON output.

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde_json::Value;

use strongideal::algebra::{validate, MetricAlgebra};
use strongideal::catalog::{catalog_get, catalog_list, CatalogEntry};
use strongideal::curvature::classify;
use strongideal::decompose::{
    build_strong_isometry, compare_decompositions, decompose, filtration, flat_riemannian_structure,
    DecomposeOptions, Decomposition, IsometryOutcome, DEFAULT_BUDGET, DEFAULT_SEED,
};
use strongideal::format::{parse_spec, serialize_spec};
use strongideal::ideals::ann_report;
use strongideal::report;

create_exception!(strongideal, StrongIdealError, PyValueError);

fn err(e: strongideal::Error) -> PyErr {
    StrongIdealError::new_err(e.to_string())
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (v.to_string(),))
}

/// A metric Lie algebra with its Levi-Civita connection.
#[pyclass(name = "Algebra", module = "strongideal", frozen)]
struct PyAlgebra {
    alg: MetricAlgebra,
    entry: Option<CatalogEntry>,
}

#[pymethods]
impl PyAlgebra {
    /// Parses a JSON algebra document.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let spec = parse_spec(text).map_err(err)?;
        let alg = MetricAlgebra::new(spec).map_err(err)?;
        Ok(PyAlgebra { alg, entry: None })
    }

    #[staticmethod]
    fn from_catalog(name: &str) -> PyResult<Self> {
        let entry = catalog_get(name).map_err(err)?;
        let alg = entry.algebra().map_err(err)?;
        Ok(PyAlgebra { alg, entry: Some(entry) })
    }

    fn to_json(&self) -> String {
        serialize_spec(self.alg.spec())
    }

    #[getter]
    fn name(&self) -> &str {
        self.alg.spec().name()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.alg.dim()
    }

    #[getter]
    fn basis(&self) -> Vec<String> {
        self.alg.spec().basis_names().to_vec()
    }

    fn validate<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let spec = self.alg.spec();
        to_py(py, &report::validation(spec.name(), spec.basis_names(), spec.metric(), &validate(spec)))
    }

    fn connection<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &report::connection(&self.alg))
    }

    fn curvature<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &report::curvature(&self.alg))
    }

    fn ricci<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &report::ricci(&self.alg, &classify(self.alg.gamma(), self.alg.spec())))
    }

    fn classify<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &report::classification(&self.alg, &classify(self.alg.gamma(), self.alg.spec())))
    }

    fn ann<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &report::ann(&self.alg, &ann_report(self.alg.gamma(), self.alg.metric())))
    }

    fn filtration<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let f = filtration(&self.alg).map_err(err)?;
        let flat = flat_riemannian_structure(&self.alg).map_err(err)?;
        to_py(py, &report::filtration(&self.alg, &f, &flat))
    }

    #[pyo3(signature = (seed = DEFAULT_SEED, budget = DEFAULT_BUDGET))]
    fn decompose(&self, seed: u64, budget: usize) -> PyResult<PyDecomposition> {
        let d = decompose(&self.alg, &DecomposeOptions { seed, budget }).map_err(err)?;
        Ok(PyDecomposition { d, alg: self.alg.clone() })
    }

    /// The reference decomposition of a catalog entry, if it lists one.
    fn listed_decomposition(&self) -> PyResult<Option<PyDecomposition>> {
        let Some(entry) = &self.entry else { return Ok(None) };
        let d = entry.listed_decomposition(&DecomposeOptions::default()).map_err(err)?;
        Ok(d.map(|d| PyDecomposition { d, alg: self.alg.clone() }))
    }

    fn __repr__(&self) -> String {
        format!("Algebra({:?}, dim={})", self.alg.spec().name(), self.alg.dim())
    }
}

/// A decomposition into strong ideals with its certificate.
#[pyclass(name = "Decomposition", module = "strongideal", frozen)]
struct PyDecomposition {
    d: Decomposition,
    alg: MetricAlgebra,
}

#[pymethods]
impl PyDecomposition {
    /// Parses the JSON report produced by `decompose`.
    #[staticmethod]
    fn from_report(algebra: &PyAlgebra, text: &str) -> PyResult<Self> {
        let v: Value = serde_json::from_str(text).map_err(|e| StrongIdealError::new_err(e.to_string()))?;
        let d = report::parse_decomposition(&v).map_err(err)?;
        Ok(PyDecomposition { d, alg: algebra.alg.clone() })
    }

    #[getter]
    fn factor_dims(&self) -> Vec<usize> {
        self.d.factors.iter().map(|f| f.dim()).collect()
    }

    #[getter]
    fn orthogonal(&self) -> bool {
        self.d.orthogonal
    }

    #[getter]
    fn case(&self) -> &'static str {
        self.d.case.as_str()
    }

    /// Rechecks every certificate step against the algebra.
    fn verify(&self) -> PyResult<()> {
        self.d.verify(&self.alg).map_err(err)
    }

    fn report<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &report::decomposition(&self.alg, &self.d))
    }

    fn to_json(&self) -> String {
        serde_json::to_string_pretty(&report::decomposition(&self.alg, &self.d)).unwrap()
    }

    fn compare<'py>(&self, py: Python<'py>, other: &PyDecomposition) -> PyResult<Bound<'py, PyAny>> {
        let r = compare_decompositions(&self.d, &other.d, &self.alg).map_err(err)?;
        to_py(py, &report::comparison(&self.alg, &self.d, &other.d, &r))
    }

    fn isometry<'py>(&self, py: Python<'py>, other: &PyDecomposition) -> PyResult<Bound<'py, PyAny>> {
        let v = match build_strong_isometry(&self.d, &other.d, &self.alg).map_err(err)? {
            IsometryOutcome::Isometry(iso) => report::isometry(&self.alg, Some(&iso), None),
            IsometryOutcome::Unsupported(why) => report::isometry(&self.alg, None, Some(&why)),
        };
        to_py(py, &v)
    }

    fn __repr__(&self) -> String {
        format!("Decomposition(case={}, factor_dims={:?})", self.d.case.as_str(), self.factor_dims())
    }
}

#[pyfunction(name = "catalog_list")]
fn py_catalog_list() -> Vec<&'static str> {
    catalog_list()
}

#[pymodule(name = "strongideal")]
fn strongideal_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyAlgebra>()?;
    m.add_class::<PyDecomposition>()?;
    m.add_function(wrap_pyfunction!(py_catalog_list, m)?)?;
    m.add("StrongIdealError", m.py().get_type::<StrongIdealError>())?;
    Ok(())
}
