//! Python bindings: point classification, distinguished boundaries, μ and
//! the verification suites.

use ::mudomains as core;
use core::cli::{classify as classify_any, Domain};
use core::domain_f::{self, PointF, ShilovParamF};
use core::harness;
use core::matrix::{self, Matrix2, C64};
use core::mu::{self, Structure, SubspaceClass};
use core::Error;
use pyo3::exceptions::{PyKeyError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Parse(_) | Error::PreconditionViolation(_) => PyValueError::new_err(e.to_string()),
        Error::UnknownStructure(_) | Error::UnknownSuite(_) => PyKeyError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn to_matrix(rows: Vec<Vec<C64>>) -> PyResult<Matrix2> {
    if rows.len() != 2 || rows.iter().any(|r| r.len() != 2) {
        return Err(PyValueError::new_err("expected a 2x2 nested list"));
    }
    Ok(Matrix2::new(rows[0][0], rows[0][1], rows[1][0], rows[1][1]))
}

fn from_matrix(m: &Matrix2) -> Vec<Vec<C64>> {
    vec![vec![m.a11, m.a12], vec![m.a21, m.a22]]
}

fn point_f(coords: &[C64]) -> PyResult<PointF> {
    match coords {
        [x, a, p, s] => Ok(PointF::new(*x, *a, *p, *s)),
        _ => Err(PyValueError::new_err(format!("F points have 4 coordinates, got {}", coords.len()))),
    }
}

/// Membership verdict for a point.
#[pyclass(frozen, get_all, module = "mudomains")]
struct Verdict {
    /// "Interior", "ClosureBoundary" or "Outside".
    region: String,
    code: i32,
    shilov: Option<bool>,
    margin: Option<f64>,
    indeterminate: bool,
}

#[pymethods]
impl Verdict {
    fn __repr__(&self) -> String {
        format!(
            "Verdict(region={:?}, shilov={:?}, margin={:?}, indeterminate={})",
            self.region, self.shilov, self.margin, self.indeterminate
        )
    }
}

/// Classifies `coords` in one of g2, tetra, penta, f, h, hn, l4.
#[pyfunction]
#[pyo3(signature = (domain, coords, tol = core::DEFAULT_TOL))]
fn classify(domain: &str, coords: Vec<C64>, tol: f64) -> PyResult<Verdict> {
    let d: Domain = domain.parse().map_err(py_err)?;
    let c = classify_any(d, &coords, tol).map_err(py_err)?;
    Ok(Verdict {
        region: format!("{:?}", c.region),
        code: c.code(),
        shilov: c.shilov,
        margin: c.margin,
        indeterminate: c.indeterminate,
    })
}

/// `(a11, a22, det A, a12 + a21)`.
#[pyfunction]
fn pi_f(matrix: Vec<Vec<C64>>) -> PyResult<Vec<C64>> {
    Ok(domain_f::pi_f(&to_matrix(matrix)?).coords().to_vec())
}

#[pyfunction]
fn operator_norm(matrix: Vec<Vec<C64>>) -> PyResult<f64> {
    Ok(matrix::operator_norm(&to_matrix(matrix)?))
}

#[pyfunction]
#[pyo3(signature = (coords, tol = core::DEFAULT_TOL))]
fn minkowski_gauge(coords: Vec<C64>, tol: f64) -> PyResult<f64> {
    domain_f::minkowski_gauge(point_f(&coords)?, tol).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (coords, tol = core::DEFAULT_TOL))]
fn shilov_f_test(coords: Vec<C64>, tol: f64) -> PyResult<bool> {
    Ok(domain_f::shilov_f_test(point_f(&coords)?, tol))
}

/// Point of the distinguished boundary of F for `θ` and `(x2, x3, x4)` in
/// the closed unit ball.
#[pyfunction]
fn shilov_f_param(theta: f64, x2: f64, x3: f64, x4: f64) -> PyResult<Vec<C64>> {
    let pt = domain_f::shilov_f_param(ShilovParamF { theta, x2, x3, x4 }).map_err(py_err)?;
    Ok(pt.coords().to_vec())
}

#[pyclass(frozen, get_all, module = "mudomains")]
struct MuResult {
    value: f64,
    /// "Exact", "Numeric" or "Infeasible".
    status: String,
    minimizer: Option<Vec<Vec<C64>>>,
}

#[pymethods]
impl MuResult {
    fn __repr__(&self) -> String {
        format!("MuResult(value={}, status={:?})", self.value, self.status)
    }
}

/// `μ_E(A)` for a named structure: scalar, diag, upper, lower, full,
/// skewdiag or e_theta:<angle>.
#[pyfunction]
#[pyo3(signature = (structure, matrix, tol = core::DEFAULT_TOL))]
fn mu_value(structure: &str, matrix: Vec<Vec<C64>>, tol: f64) -> PyResult<MuResult> {
    let e: Structure = structure.parse().map_err(py_err)?;
    let r = mu::mu_value(&to_matrix(matrix)?, &e, tol).map_err(py_err)?;
    Ok(MuResult {
        value: r.value,
        status: format!("{:?}", r.status),
        minimizer: r.minimizer.as_ref().map(from_matrix),
    })
}

/// `θ` if the span of the diagonal matrices and `basis` is `E_θ`, else
/// `None`.
#[pyfunction]
#[pyo3(signature = (basis, tol = core::DEFAULT_TOL))]
fn classify_subspace(basis: Vec<Vec<Vec<C64>>>, tol: f64) -> PyResult<Option<f64>> {
    let mats = basis.into_iter().map(to_matrix).collect::<PyResult<Vec<_>>>()?;
    let e = Structure::new(mats, None).map_err(py_err)?;
    Ok(match mu::classify_subspace(&e, tol).map_err(py_err)? {
        SubspaceClass::IsETheta(t) => Some(t),
        SubspaceClass::NotETheta => None,
    })
}

#[pyclass(frozen, get_all, module = "mudomains")]
struct SuiteReport {
    suite: String,
    n_samples: usize,
    seed: u64,
    tol: f64,
    passed: bool,
    /// `(case, check, inputs, observed, expected)` per failure.
    failures: Vec<(usize, String, String, String, String)>,
    excluded: usize,
    elapsed: f64,
    text: String,
    json: String,
}

#[pymethods]
impl SuiteReport {
    fn __repr__(&self) -> String {
        format!("SuiteReport(suite={:?}, passed={}, failures={})", self.suite, self.passed, self.failures.len())
    }
}

impl From<harness::SuiteReport> for SuiteReport {
    fn from(r: harness::SuiteReport) -> Self {
        let json = serde_json::to_string(&r).unwrap_or_default();
        Self {
            passed: r.passed(),
            text: r.to_text(),
            failures: r
                .failures
                .iter()
                .map(|f| (f.case, f.check.clone(), f.inputs.clone(), f.observed.clone(), f.expected.clone()))
                .collect(),
            suite: r.suite,
            n_samples: r.n_samples,
            seed: r.seed,
            tol: r.tol,
            excluded: r.excluded,
            elapsed: r.elapsed.as_secs_f64(),
            json,
        }
    }
}

/// Runs a registered suite; `n` and `tol` default per suite.
#[pyfunction]
#[pyo3(signature = (name, n = None, seed = 7, tol = None))]
fn run_suite(py: Python<'_>, name: &str, n: Option<usize>, seed: u64, tol: Option<f64>) -> PyResult<SuiteReport> {
    let n = n.unwrap_or_else(|| harness::default_samples(name));
    let tol = tol.unwrap_or_else(|| harness::default_tol(name));
    let name = name.to_string();
    let r = py.detach(move || harness::run_suite(&name, n, seed, tol)).map_err(py_err)?;
    Ok(r.into())
}

#[pyfunction]
#[pyo3(signature = (r_grid = None))]
fn run_counterexamples(r_grid: Option<Vec<f64>>) -> PyResult<SuiteReport> {
    let grid = r_grid.unwrap_or_else(|| harness::DEFAULT_R_GRID.to_vec());
    Ok(harness::run_counterexamples(&grid).map_err(py_err)?.into())
}

#[pymodule]
fn mudomains(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("DEFAULT_TOL", core::DEFAULT_TOL)?;
    m.add("SUITES", harness::SUITES.to_vec())?;
    m.add_class::<Verdict>()?;
    m.add_class::<MuResult>()?;
    m.add_class::<SuiteReport>()?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(pi_f, m)?)?;
    m.add_function(wrap_pyfunction!(operator_norm, m)?)?;
    m.add_function(wrap_pyfunction!(minkowski_gauge, m)?)?;
    m.add_function(wrap_pyfunction!(shilov_f_test, m)?)?;
    m.add_function(wrap_pyfunction!(shilov_f_param, m)?)?;
    m.add_function(wrap_pyfunction!(mu_value, m)?)?;
    m.add_function(wrap_pyfunction!(classify_subspace, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    m.add_function(wrap_pyfunction!(run_counterexamples, m)?)?;
    Ok(())
}
