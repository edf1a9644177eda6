//! Python bindings: seeds, the series engine, the quadrature oracle and the
//! corpus checks. Structured reports come back as plain dicts and lists.

use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use pyo3::IntoPyObjectExt;
use serde::Serialize;

use hankel_core::{
    CaseId, CaseParams, CompareOptions, CorpusCase, Error, ExpansionOutcome, ExpansionRequest, ModeRequest,
    QuadratureOptions, QuadratureOutcome, SeedParams, SeriesOptions, TaylorSeed, VerifyOptions,
};

create_exception!(hankel_py, HankelError, PyException, "Error raised by the series engine or the oracle.");
create_exception!(hankel_py, ConvergenceError, HankelError, "An iteration budget ran out.");

fn to_py_err(e: Error) -> PyErr {
    let msg = format!("{}: {e}", e.kind());
    if e.is_convergence_failure() {
        ConvergenceError::new_err(msg)
    } else {
        HankelError::new_err(msg)
    }
}

fn json_to_py<'py>(py: Python<'py>, v: &serde_json::Value) -> PyResult<Bound<'py, PyAny>> {
    use serde_json::Value;
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => b.into_bound_py_any(py)?,
        Value::Number(n) => match n.as_i64() {
            Some(i) => i.into_bound_py_any(py)?,
            None => n.as_f64().unwrap_or(f64::NAN).into_bound_py_any(py)?,
        },
        Value::String(s) => s.into_bound_py_any(py)?,
        Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(json_to_py(py, item)?)?;
            }
            list.into_any()
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, item) in map {
                dict.set_item(k, json_to_py(py, item)?)?;
            }
            dict.into_any()
        }
    })
}

fn to_py<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let v = serde_json::to_value(value).map_err(|e| HankelError::new_err(e.to_string()))?;
    json_to_py(py, &v)
}

fn parse_case(id: &str) -> PyResult<CaseId> {
    id.parse().map_err(to_py_err)
}

fn parse_mode(mode: &str) -> PyResult<ModeRequest> {
    match mode.to_ascii_lowercase().as_str() {
        "auto" => Ok(ModeRequest::Auto),
        "convergent" => Ok(ModeRequest::Convergent),
        "asymptotic" => Ok(ModeRequest::Asymptotic),
        _ => Err(HankelError::new_err(format!("unknown mode `{mode}`"))),
    }
}

/// A function known through its derivatives at zero.
#[pyclass(name = "Seed", module = "hankel_py", frozen)]
struct PySeed {
    inner: TaylorSeed,
}

#[pymethods]
impl PySeed {
    /// Builds a seed from its id (`exp`, `power-exp`, `exp-i0`, `pole`,
    /// `pole-squared`, `bessel-product`, `inv-exp`, `barred:<id>`,
    /// `deriv:<id>`).
    #[new]
    #[pyo3(signature = (id, a=None, b=None, c=None, n=None))]
    fn new(id: &str, a: Option<f64>, b: Option<f64>, c: Option<f64>, n: Option<u32>) -> PyResult<Self> {
        let inner = TaylorSeed::from_id(id, SeedParams { a, b, c, n }).map_err(to_py_err)?;
        Ok(Self { inner })
    }

    #[getter]
    fn id(&self) -> String {
        self.inner.id()
    }

    #[getter]
    fn radius(&self) -> f64 {
        self.inner.radius()
    }

    #[getter]
    fn parity(&self) -> String {
        format!("{:?}", self.inner.parity())
    }

    #[getter]
    fn growth(&self) -> (String, f64) {
        let g = self.inner.growth();
        (format!("{:?}", g.kind), g.rate)
    }

    #[getter]
    fn is_barred(&self) -> bool {
        self.inner.is_barred()
    }

    /// f⁽ᵏ⁾(0).
    fn derivative(&self, k: usize) -> f64 {
        self.inner.derivative_at_zero(k)
    }

    /// (sign, ln|f⁽ᵏ⁾(0)|), finite where the plain value overflows.
    fn derivative_log(&self, k: usize) -> (i8, f64) {
        let v = self.inner.derivative_log(k);
        (v.sign(), v.log_magnitude())
    }

    fn value(&self, x: f64) -> PyResult<f64> {
        self.inner.value(x).map_err(to_py_err)
    }

    fn __repr__(&self) -> String {
        format!("Seed({:?})", self.inner)
    }
}

/// Outcome of a series evaluation.
#[pyclass(name = "SeriesResult", module = "hankel_py", frozen, get_all)]
struct PySeriesResult {
    value: f64,
    terms_used: usize,
    mode_used: String,
    error_estimate: f64,
    terms: Option<Vec<f64>>,
    demoted: bool,
    near_radius: bool,
}

impl From<ExpansionOutcome> for PySeriesResult {
    fn from(o: ExpansionOutcome) -> Self {
        Self {
            value: o.value,
            terms_used: o.terms_used,
            mode_used: o.mode_used.as_str().to_string(),
            error_estimate: o.error_estimate,
            terms: o.term_trace.map(|t| t.into_iter().map(|e| e.term).collect()),
            demoted: o.demoted,
            near_radius: o.near_radius,
        }
    }
}

#[pymethods]
impl PySeriesResult {
    fn __repr__(&self) -> String {
        format!(
            "SeriesResult(value={:e}, mode_used={}, terms_used={}, error_estimate={:e})",
            self.value, self.mode_used, self.terms_used, self.error_estimate
        )
    }
}

/// Outcome of the quadrature oracle.
#[pyclass(name = "QuadratureResult", module = "hankel_py", frozen, get_all)]
struct PyQuadratureResult {
    value: f64,
    abs_error_estimate: f64,
    panels_used: usize,
    accelerated: bool,
}

impl From<QuadratureOutcome> for PyQuadratureResult {
    fn from(o: QuadratureOutcome) -> Self {
        Self {
            value: o.value,
            abs_error_estimate: o.abs_error_estimate,
            panels_used: o.panels_used,
            accelerated: o.accelerated,
        }
    }
}

#[pymethods]
impl PyQuadratureResult {
    fn __repr__(&self) -> String {
        format!(
            "QuadratureResult(value={:e}, abs_error_estimate={:e}, panels_used={})",
            self.value, self.abs_error_estimate, self.panels_used
        )
    }
}

fn series_options(mode: &str, tol: f64, max_terms: usize, trace: bool) -> PyResult<SeriesOptions> {
    Ok(SeriesOptions {
        tol,
        max_terms,
        mode: parse_mode(mode)?,
        trace,
    })
}

/// Hₙ[f](q) from the reciprocal-power series.
#[pyfunction]
#[pyo3(signature = (order, seed, q, mode="auto", tol=1e-12, max_terms=500, trace=false))]
#[allow(clippy::too_many_arguments)]
fn transform(
    py: Python<'_>,
    order: i32,
    seed: &PySeed,
    q: f64,
    mode: &str,
    tol: f64,
    max_terms: usize,
    trace: bool,
) -> PyResult<PySeriesResult> {
    let req = ExpansionRequest::new(order, seed.inner.clone(), q).with_options(series_options(mode, tol, max_terms, trace)?);
    py.detach(|| hankel_core::hankel_series(&req))
        .map(Into::into)
        .map_err(to_py_err)
}

/// H₀[f](q) from one of the three equivalent odd-derivative forms (1, 2, 3).
#[pyfunction]
#[pyo3(signature = (form, seed, q, tol=1e-12, max_terms=500))]
fn h0_form(form: u8, seed: &PySeed, q: f64, tol: f64, max_terms: usize) -> PyResult<PySeriesResult> {
    let opts = series_options("auto", tol, max_terms, false)?;
    hankel_core::hankel_series_h0_form(form, &seed.inner, q, &opts)
        .map(Into::into)
        .map_err(to_py_err)
}

/// H₀[f](q) from the even derivatives of the barred seed x·f(x).
#[pyfunction]
#[pyo3(signature = (seed, q, tol=1e-12, max_terms=500))]
fn barred_transform(seed: &PySeed, q: f64, tol: f64, max_terms: usize) -> PyResult<PySeriesResult> {
    let opts = series_options("auto", tol, max_terms, false)?;
    hankel_core::hankel_series_barred(&seed.inner, q, &opts)
        .map(Into::into)
        .map_err(to_py_err)
}

/// ∫₀^∞ x f(x) Jₙ(qx) dx by panel quadrature between Bessel zeros.
#[pyfunction]
#[pyo3(signature = (order, seed, q, target_abs_err=1e-10, max_panels=200, window=40))]
fn quadrature(
    py: Python<'_>,
    order: i32,
    seed: &PySeed,
    q: f64,
    target_abs_err: f64,
    max_panels: usize,
    window: usize,
) -> PyResult<PyQuadratureResult> {
    let opts = QuadratureOptions {
        target_abs_err,
        max_panels,
        window,
    };
    let s = seed.inner.clone();
    py.detach(|| hankel_core::seed_quadrature(order, &s, q, &opts))
        .map(Into::into)
        .map_err(to_py_err)
}

/// c(n, k) as (sign, ln|c|); sign 0 marks an exact zero.
#[pyfunction]
fn coefficient(n: i32, k: usize) -> (i8, f64) {
    let c = hankel_core::coefficient(n, k);
    (c.sign(), c.log_magnitude())
}

fn corpus_case(id: &str, a: Option<f64>, c: Option<f64>, n: Option<u32>) -> PyResult<CorpusCase> {
    let id = parse_case(id)?;
    let params = CaseParams::with_overrides(id, &SeedParams { a, b: None, c, n });
    CorpusCase::new(id, params).map_err(to_py_err)
}

/// Reference value of a corpus case.
#[pyfunction]
#[pyo3(signature = (case, q, a=None, c=None, n=None))]
fn reference(case: &str, q: f64, a: Option<f64>, c: Option<f64>, n: Option<u32>) -> PyResult<f64> {
    corpus_case(case, a, c, n)?.reference(q).map_err(to_py_err)
}

/// Series, oracle and reference for a corpus case at q, as a dict.
#[pyfunction]
#[pyo3(signature = (case, q, target_err=1e-8, a=None, c=None, n=None))]
fn compare_case<'py>(
    py: Python<'py>,
    case: &str,
    q: f64,
    target_err: f64,
    a: Option<f64>,
    c: Option<f64>,
    n: Option<u32>,
) -> PyResult<Bound<'py, PyAny>> {
    let case = corpus_case(case, a, c, n)?;
    let opts = CompareOptions {
        target_err,
        ..CompareOptions::default()
    };
    let report = py.detach(|| hankel_core::compare_case(&case, q, &opts));
    to_py(py, &report)
}

/// Runs the corpus checks; returns the summary as a dict.
#[pyfunction]
#[pyo3(signature = (target_err=1e-8, cases=None))]
fn verify_corpus<'py>(py: Python<'py>, target_err: f64, cases: Option<Vec<String>>) -> PyResult<Bound<'py, PyAny>> {
    let cases = match cases {
        Some(ids) => ids.iter().map(|s| parse_case(s)).collect::<PyResult<Vec<_>>>()?,
        None => CaseId::ALL.to_vec(),
    };
    let opts = VerifyOptions {
        target_err,
        cases,
        ..VerifyOptions::default()
    };
    let summary = py.detach(|| hankel_core::verify_corpus(&opts));
    to_py(py, &summary)
}

#[pymodule]
fn hankel_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySeed>()?;
    m.add_class::<PySeriesResult>()?;
    m.add_class::<PyQuadratureResult>()?;
    m.add_function(wrap_pyfunction!(transform, m)?)?;
    m.add_function(wrap_pyfunction!(h0_form, m)?)?;
    m.add_function(wrap_pyfunction!(barred_transform, m)?)?;
    m.add_function(wrap_pyfunction!(quadrature, m)?)?;
    m.add_function(wrap_pyfunction!(coefficient, m)?)?;
    m.add_function(wrap_pyfunction!(reference, m)?)?;
    m.add_function(wrap_pyfunction!(compare_case, m)?)?;
    m.add_function(wrap_pyfunction!(verify_corpus, m)?)?;
    m.add("HankelError", m.py().get_type::<HankelError>())?;
    m.add("ConvergenceError", m.py().get_type::<ConvergenceError>())?;
    Ok(())
}
