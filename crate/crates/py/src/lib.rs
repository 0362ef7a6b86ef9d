//! Python bindings: the main types and operations of mvop-core.
//!
//! Matrices cross the boundary as row-major nested lists of Python complex
//! numbers; polynomials as ascending lists of such matrices.

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use mvop_core::diffop::{
    hypergeometric_eigenvalue, hypergeometric_operator, shift_symmetric_eigenvalue,
    shift_symmetric_operator, AlgebraBasis,
};
use mvop_core::family::{
    build_hypergeometric, build_recurrence, build_rodrigues, christoffel_darboux_monic,
    derivative_family, inner_product, norm_matrix, recurrence_coefficients, shift_rodrigues,
};
use mvop_core::verify::{run_suite, SuiteConfig, SUITE_NAMES};
use mvop_core::{CMat2, MatrixPolynomial as CorePoly, Parameters as CoreParams, WeightMatrix};

type PyMat = [[Complex64; 2]; 2];

fn mat_out(m: &CMat2) -> PyMat {
    m.m
}

fn mat_in(m: PyMat) -> CMat2 {
    CMat2::new(m)
}

fn err(e: mvop_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// The validated parameter triple.
#[pyclass(name = "Parameters", from_py_object)]
#[derive(Clone)]
struct PyParameters {
    inner: CoreParams,
}

#[pymethods]
impl PyParameters {
    #[new]
    fn new(alpha: f64, beta: f64, v: f64) -> PyResult<Self> {
        Ok(PyParameters {
            inner: CoreParams::new(alpha, beta, v).map_err(err)?,
        })
    }

    #[getter]
    fn alpha(&self) -> f64 {
        self.inner.alpha
    }

    #[getter]
    fn beta(&self) -> f64 {
        self.inner.beta
    }

    #[getter]
    fn v(&self) -> f64 {
        self.inner.v
    }

    /// kappa(v_sign, beta_sign) = alpha + v_sign*v + beta_sign*beta.
    fn kappa(&self, v_sign: i8, beta_sign: i8) -> f64 {
        self.inner.kappa(v_sign, beta_sign)
    }

    fn shifted(&self, k: u32) -> PyResult<PyParameters> {
        Ok(PyParameters {
            inner: self.inner.shifted(k).map_err(err)?,
        })
    }

    fn __repr__(&self) -> String {
        format!(
            "Parameters(alpha={}, beta={}, v={})",
            self.inner.alpha, self.inner.beta, self.inner.v
        )
    }
}

/// Polynomial in t with 2x2 complex matrix coefficients.
#[pyclass(name = "MatrixPolynomial", from_py_object)]
#[derive(Clone)]
struct PyMatrixPolynomial {
    inner: CorePoly,
}

#[pymethods]
impl PyMatrixPolynomial {
    #[new]
    fn new(coefficients: Vec<PyMat>) -> Self {
        PyMatrixPolynomial {
            inner: CorePoly::new(coefficients.into_iter().map(mat_in).collect()),
        }
    }

    #[getter]
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    fn coefficients(&self) -> Vec<PyMat> {
        self.inner.coeffs().iter().map(mat_out).collect()
    }

    fn eval(&self, t: Complex64) -> PyMat {
        mat_out(&self.inner.eval(t))
    }

    fn derivative(&self, order: u32) -> PyMatrixPolynomial {
        PyMatrixPolynomial {
            inner: self.inner.derivative(order),
        }
    }

    fn __repr__(&self) -> String {
        format!("MatrixPolynomial(degree={})", self.inner.degree())
    }
}

/// Monic family member of the given degree at shift level k, by the chosen
/// construction ("recurrence", "rodrigues" or "hyper").
#[pyfunction]
#[pyo3(signature = (params, n, k=0, method="recurrence"))]
fn monic_polynomial(
    params: &PyParameters,
    n: u32,
    k: u32,
    method: &str,
) -> PyResult<PyMatrixPolynomial> {
    let p = &params.inner;
    let poly = match method {
        "recurrence" => build_recurrence(p, k, n)
            .map(|fam| fam.polynomial(n as usize).clone())
            .map_err(err)?,
        "rodrigues" => build_rodrigues(&p.shifted(k).map_err(err)?, n).map_err(err)?,
        "hyper" => build_hypergeometric(p, k, n + k).map_err(err)?,
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown method '{other}' (expected recurrence, rodrigues or hyper)"
            )))
        }
    };
    Ok(PyMatrixPolynomial { inner: poly })
}

/// Normalized k-th derivative of the degree-n base member (a monic
/// polynomial of degree n-k).
#[pyfunction]
fn derivative_member(params: &PyParameters, k: u32, n: u32) -> PyResult<PyMatrixPolynomial> {
    Ok(PyMatrixPolynomial {
        inner: derivative_family(&params.inner, k, n).map_err(err)?,
    })
}

/// Level-k member of degree n through the raising-operator chain.
#[pyfunction]
fn raising_chain_member(params: &PyParameters, k: u32, n: u32) -> PyResult<PyMatrixPolynomial> {
    Ok(PyMatrixPolynomial {
        inner: shift_rodrigues(&params.inner, k, n).map_err(err)?,
    })
}

/// Closed-form squared norm of the degree-n monic member.
#[pyfunction]
#[pyo3(signature = (params, n, k=0))]
fn norm_squared(params: &PyParameters, n: u32, k: u32) -> PyResult<PyMat> {
    let shifted = params.inner.shifted(k).map_err(err)?;
    Ok(mat_out(&norm_matrix(&shifted, n).map_err(err)?))
}

/// Three-term recurrence coefficients (A_n, B_n) of the level-k family.
#[pyfunction]
#[pyo3(signature = (params, n, k=0))]
fn recurrence(params: &PyParameters, n: u32, k: u32) -> PyResult<(PyMat, PyMat)> {
    let shifted = params.inner.shifted(k).map_err(err)?;
    let (a, b) = recurrence_coefficients(&shifted, n);
    Ok((mat_out(&a), mat_out(&b)))
}

/// Eigenvalue of the level-k hypergeometric operator on the degree-n member.
#[pyfunction]
#[pyo3(signature = (params, n, k=0))]
fn eigenvalue(params: &PyParameters, n: u32, k: u32) -> PyMat {
    mat_out(&hypergeometric_eigenvalue(&params.inner, k, n + k))
}

/// Eigenvalue of the second-order shift-built operator on the degree-n
/// level-k member.
#[pyfunction]
#[pyo3(signature = (params, n, k=0))]
fn shift_operator_eigenvalue(params: &PyParameters, n: u32, k: u32) -> PyResult<PyMat> {
    Ok(mat_out(
        &shift_symmetric_eigenvalue(&params.inner, k, n).map_err(err)?,
    ))
}

/// Weight polynomial part coefficients (W0, W1, W2) and exponents at level k.
#[pyfunction]
#[pyo3(signature = (params, k=0))]
fn weight(params: &PyParameters, k: u32) -> PyResult<((PyMat, PyMat, PyMat), (f64, f64))> {
    let w = WeightMatrix::new(&params.inner, k).map_err(err)?;
    let (w0, w1, w2) = w.w_coeffs();
    Ok(((mat_out(&w0), mat_out(&w1), mat_out(&w2)), w.exponents))
}

/// <P, Q> against the level-k weight.
#[pyfunction]
#[pyo3(signature = (p, q, params, k=0))]
fn pairing(
    p: &PyMatrixPolynomial,
    q: &PyMatrixPolynomial,
    params: &PyParameters,
    k: u32,
) -> PyResult<PyMat> {
    let w = WeightMatrix::new(&params.inner, k).map_err(err)?;
    Ok(mat_out(&inner_product(&p.inner, &q.inner, &w).map_err(err)?))
}

/// Apply the level-k hypergeometric operator to a polynomial.
#[pyfunction]
#[pyo3(signature = (p, params, k=0))]
fn apply_hypergeometric_operator(
    p: &PyMatrixPolynomial,
    params: &PyParameters,
    k: u32,
) -> PyResult<PyMatrixPolynomial> {
    let op = hypergeometric_operator(&params.inner, k).map_err(err)?;
    Ok(PyMatrixPolynomial {
        inner: op.apply(&p.inner),
    })
}

/// Apply E^{(k)} (the shift-built symmetric operator) to a polynomial.
#[pyfunction]
#[pyo3(signature = (p, params, k=0))]
fn apply_shift_operator(
    p: &PyMatrixPolynomial,
    params: &PyParameters,
    k: u32,
) -> PyResult<PyMatrixPolynomial> {
    let op = shift_symmetric_operator(&params.inner, k).map_err(err)?;
    Ok(PyMatrixPolynomial {
        inner: op.apply(&p.inner),
    })
}

/// Eigenvalues of the four symmetric algebra generators at degree n.
#[pyfunction]
fn algebra_eigenvalues(params: &PyParameters, n: u32) -> PyResult<Vec<PyMat>> {
    let basis = AlgebraBasis::new(&params.inner).map_err(err)?;
    Ok(basis
        .elements()
        .iter()
        .map(|el| mat_out(&el.eigenvalue(&params.inner, n)))
        .collect())
}

/// Christoffel-Darboux kernel (monic variant) truncated at degree n.
#[pyfunction]
fn kernel(params: &PyParameters, n: u32, x: f64, y: f64) -> PyResult<(PyMat, PyMat)> {
    let (lhs, rhs) = christoffel_darboux_monic(&params.inner, n, x, y).map_err(err)?;
    Ok((mat_out(&lhs), mat_out(&rhs)))
}

/// Run a named verification suite ("all" runs every suite); returns the
/// JSON report as a string.
#[pyfunction]
#[pyo3(signature = (suite, params, nmax=10, kmax=2, tol=None))]
fn verify(
    suite: &str,
    params: &PyParameters,
    nmax: u32,
    kmax: u32,
    tol: Option<f64>,
) -> PyResult<String> {
    let mut cfg = SuiteConfig {
        nmax,
        kmax,
        ..Default::default()
    };
    if let Some(t) = tol {
        cfg.tol_quad = t;
        cfg.tol_cross = t.max(cfg.tol_cross);
    }
    if suite == "all" {
        let reports: Result<Vec<_>, _> = SUITE_NAMES
            .iter()
            .map(|name| run_suite(name, &params.inner, &cfg))
            .collect();
        Ok(serde_json::to_string(&reports.map_err(err)?).unwrap())
    } else {
        let report = run_suite(suite, &params.inner, &cfg).map_err(err)?;
        Ok(serde_json::to_string(&report).unwrap())
    }
}

#[pymodule]
fn mvop(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyParameters>()?;
    m.add_class::<PyMatrixPolynomial>()?;
    m.add_function(wrap_pyfunction!(monic_polynomial, m)?)?;
    m.add_function(wrap_pyfunction!(derivative_member, m)?)?;
    m.add_function(wrap_pyfunction!(raising_chain_member, m)?)?;
    m.add_function(wrap_pyfunction!(norm_squared, m)?)?;
    m.add_function(wrap_pyfunction!(recurrence, m)?)?;
    m.add_function(wrap_pyfunction!(eigenvalue, m)?)?;
    m.add_function(wrap_pyfunction!(shift_operator_eigenvalue, m)?)?;
    m.add_function(wrap_pyfunction!(weight, m)?)?;
    m.add_function(wrap_pyfunction!(pairing, m)?)?;
    m.add_function(wrap_pyfunction!(apply_hypergeometric_operator, m)?)?;
    m.add_function(wrap_pyfunction!(apply_shift_operator, m)?)?;
    m.add_function(wrap_pyfunction!(algebra_eigenvalues, m)?)?;
    m.add_function(wrap_pyfunction!(kernel, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
