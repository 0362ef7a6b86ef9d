//! Classical scalar Jacobi polynomials and Gauss-Jacobi quadrature on (0,1)
//! for the weight t^a (1-t)^b.
//!
//! Everything is phrased in the shifted variable: `jacobi_poly(n, a, b)`
//! returns p_n^{(a,b)}(1-2t) as a polynomial in t, which is the form entering
//! the explicit polynomial constructions. Coefficients come from finite
//! products only; no gamma-function quotients.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gamma::{ln_gamma, pochhammer};
use crate::mat2::{CMat2, ScalarPoly};

// negated comparisons so NaN exponents fail validation
#[allow(clippy::neg_cmp_op_on_partial_ord)]
fn check_exponents(a: f64, b: f64) -> Result<()> {
    if !(a > -1.0) || !a.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "Jacobi exponent a must satisfy a > -1, got {a}"
        )));
    }
    if !(b > -1.0) || !b.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "Jacobi exponent b must satisfy b > -1, got {b}"
        )));
    }
    Ok(())
}

/// p_n^{(a,b)}(1-2t) as a dense polynomial in t.
///
/// Coefficient j is
///   (a+1)_n/n! * prod_{i<j} [ -(n-i)(n+a+b+1+i) / ((i+1)(a+1+i)) ],
/// an iterative-product rewriting of the hypergeometric expansion. The value
/// at t = 0 is (a+1)_n/n! and at t = 1 it is (-1)^n (b+1)_n/n!.
pub fn jacobi_poly(n: u32, a: f64, b: f64) -> Result<ScalarPoly> {
    check_exponents(a, b)?;
    let n_us = n as usize;
    let mut coeffs = Vec::with_capacity(n_us + 1);
    let mut c = pochhammer(a + 1.0, n) / pochhammer(1.0, n);
    coeffs.push(c);
    for j in 0..n_us {
        let jf = j as f64;
        c *= -((n as f64 - jf) * (n as f64 + a + b + 1.0 + jf)) / ((jf + 1.0) * (a + 1.0 + jf));
        coeffs.push(c);
    }
    Ok(ScalarPoly::new(coeffs))
}

/// p_n^{(a,b)}(x) by the standard three-term recurrence; numerically stable
/// where the coefficient expansion is not.
pub fn jacobi_eval(n: u32, a: f64, b: f64, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut pm1 = 1.0;
    let mut p = 0.5 * (a + b + 2.0) * x + 0.5 * (a - b);
    for k in 2..=n as usize {
        let kf = k as f64;
        let s = 2.0 * kf + a + b;
        let c1 = 2.0 * kf * (kf + a + b) * (s - 2.0);
        let c2 = (s - 1.0) * (s * (s - 2.0) * x + a * a - b * b);
        let c3 = 2.0 * (kf + a - 1.0) * (kf + b - 1.0) * s;
        let next = (c2 * p - c3 * pm1) / c1;
        pm1 = p;
        p = next;
    }
    p
}

/// d/dx p_n^{(a,b)}(x), via the derivative identity with shifted exponents.
pub fn jacobi_deriv_eval(n: u32, a: f64, b: f64, x: f64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    0.5 * (n as f64 + a + b + 1.0) * jacobi_eval(n - 1, a + 1.0, b + 1.0, x)
}

/// (p_n^{(a,b)})'(-1) = (a+b+n+1)(-1)^{n-1} (b+2)_{n-1} / (2 (n-1)!).
///
/// Returns 0 for n = 0: the constant polynomial's derivative genuinely
/// vanishes and callers sum over it.
pub fn jacobi_endpoint_derivative(n: u32, a: f64, b: f64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let sign = if n % 2 == 0 { -1.0 } else { 1.0 };
    sign * (a + b + n as f64 + 1.0) * pochhammer(b + 2.0, n - 1)
        / (2.0 * pochhammer(1.0, n - 1))
}

/// Euler Beta function B(x, y) = integral over (0,1) of t^{x-1}(1-t)^{y-1}.
#[allow(clippy::neg_cmp_op_on_partial_ord)]
pub fn beta_function(x: f64, y: f64) -> Result<f64> {
    if !(x > 0.0) || !(y > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "beta_function requires positive arguments, got ({x}, {y})"
        )));
    }
    Ok((ln_gamma(x) + ln_gamma(y) - ln_gamma(x + y)).exp())
}

/// Gauss-Jacobi rule on (0,1): nodes and positive weights integrating
/// t^a (1-t)^b f(t) exactly for polynomial f of degree <= 2m-1.
#[derive(Debug, Clone, Serialize)]
pub struct QuadratureRule {
    pub alpha: f64,
    pub beta: f64,
    /// Strictly increasing, all in the open interval (0,1).
    pub nodes: Vec<f64>,
    /// All positive; sums to B(alpha+1, beta+1).
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate_scalar(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&t, &w)| w * f(t))
            .sum()
    }

    pub fn integrate_matrix(&self, f: impl Fn(f64) -> CMat2) -> CMat2 {
        let mut acc = CMat2::zero();
        for (&t, &w) in self.nodes.iter().zip(&self.weights) {
            acc = acc.add(&f(t).scale_re(w));
        }
        acc
    }
}

/// Node count needed for exactness at polynomial degree d, with two guard
/// nodes for the quadratic matrix factor every weight in this family carries.
pub fn nodes_for_degree(d: usize) -> usize {
    (d + 1).div_ceil(2) + 2
}

/// Squared norms on (0,1) of p_k^{(a,b)}(1-2t) against t^a(1-t)^b, computed
/// by ratio products from h_0 = B(a+1, b+1).
fn shifted_norms(a: f64, b: f64, m: usize) -> Result<Vec<f64>> {
    let mut h = Vec::with_capacity(m);
    let mut hk = beta_function(a + 1.0, b + 1.0)?;
    h.push(hk);
    for k in 0..m.saturating_sub(1) {
        let kf = k as f64;
        let ratio = if k == 0 {
            // the (a+b+1) factors cancel; this form stays finite at a+b = -1
            (a + 1.0) * (b + 1.0) / (a + b + 3.0)
        } else {
            (2.0 * kf + a + b + 1.0) / (2.0 * kf + a + b + 3.0) * (kf + a + 1.0) * (kf + b + 1.0)
                / ((kf + a + b + 1.0) * (kf + 1.0))
        };
        hk *= ratio;
        h.push(hk);
    }
    Ok(h)
}

/// Builds the m-node Gauss-Jacobi rule for t^a(1-t)^b on (0,1).
///
/// Nodes: sign-scan of p_m^{(a,b)} on a Chebyshev-angle grid, then safeguarded
/// Newton inside each bracket (bisection step whenever Newton leaves the
/// bracket). Weights: reciprocal Christoffel sums over the orthonormalized
/// lower-degree polynomials, then rescaled so the total mass matches
/// B(a+1, b+1) exactly.
pub fn gauss_jacobi_rule(a: f64, b: f64, m: usize) -> Result<QuadratureRule> {
    check_exponents(a, b)?;
    if m < 1 {
        return Err(Error::InvalidParameter(
            "quadrature rule needs at least one node".into(),
        ));
    }
    let n = m as u32;
    let f = |x: f64| jacobi_eval(n, a, b, x);
    let df = |x: f64| jacobi_deriv_eval(n, a, b, x);

    // bracket all m roots in (-1,1)
    let mut brackets: Vec<(f64, f64)> = Vec::new();
    let mut grid_size = (8 * m).max(64);
    for _ in 0..5 {
        brackets.clear();
        let mut prev_x = -1.0 + 1e-14;
        let mut prev_f = f(prev_x);
        for i in (0..grid_size).rev() {
            let theta = std::f64::consts::PI * (i as f64 + 0.5) / grid_size as f64;
            let x = theta.cos();
            let fx = f(x);
            if prev_f == 0.0 {
                brackets.push((prev_x - 1e-12, prev_x + 1e-12));
            } else if prev_f * fx < 0.0 {
                brackets.push((prev_x, x));
            }
            prev_x = x;
            prev_f = fx;
        }
        let fx = f(1.0 - 1e-14);
        if prev_f * fx < 0.0 {
            brackets.push((prev_x, 1.0 - 1e-14));
        }
        if brackets.len() >= m {
            break;
        }
        grid_size *= 4;
    }
    if brackets.len() != m {
        return Err(Error::ConvergenceFailure(format!(
            "found {} sign changes for {} quadrature nodes (a={a}, b={b})",
            brackets.len(),
            m
        )));
    }

    let mut roots = Vec::with_capacity(m);
    for &(mut lo, mut hi) in &brackets {
        let (mut flo, fhi) = (f(lo), f(hi));
        debug_assert!(flo * fhi <= 0.0);
        let mut x = 0.5 * (lo + hi);
        let mut converged = false;
        for _ in 0..80 {
            let fx = f(x);
            if fx == 0.0 {
                converged = true;
                break;
            }
            if flo * fx < 0.0 {
                hi = x;
            } else {
                lo = x;
                flo = fx;
            }
            let d = df(x);
            let mut next = if d != 0.0 { x - fx / d } else { f64::NAN };
            if !(next > lo && next < hi) {
                next = 0.5 * (lo + hi);
            }
            if (next - x).abs() <= 1e-16 * x.abs().max(1.0) {
                x = next;
                converged = true;
                break;
            }
            x = next;
        }
        if !converged && (hi - lo) > 1e-13 {
            return Err(Error::ConvergenceFailure(format!(
                "node iteration stalled in [{lo}, {hi}] (a={a}, b={b}, m={m})"
            )));
        }
        roots.push(x);
    }

    // x in (-1,1) descending theta order came out ascending in x; map to t
    let h = shifted_norms(a, b, m)?;
    let mut nodes = Vec::with_capacity(m);
    let mut weights = Vec::with_capacity(m);
    for &x in roots.iter().rev() {
        let t = 0.5 * (1.0 - x);
        // reciprocal Christoffel sum at the node
        let mut s = 0.0;
        for (k, hk) in h.iter().enumerate() {
            let p = jacobi_eval(k as u32, a, b, x);
            s += p * p / hk;
        }
        nodes.push(t);
        weights.push(1.0 / s);
    }
    let mass = beta_function(a + 1.0, b + 1.0)?;
    let total: f64 = weights.iter().sum();
    for w in &mut weights {
        *w *= mass / total;
    }

    for i in 1..nodes.len() {
        if nodes[i] <= nodes[i - 1] {
            return Err(Error::ConvergenceFailure(
                "quadrature nodes failed to separate".into(),
            ));
        }
    }
    if nodes[0] <= 0.0 || *nodes.last().unwrap() >= 1.0 {
        return Err(Error::ConvergenceFailure(
            "quadrature node escaped (0,1)".into(),
        ));
    }
    Ok(QuadratureRule {
        alpha: a,
        beta: b,
        nodes,
        weights,
    })
}
