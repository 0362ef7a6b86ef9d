//! Right-acting matrix differential operator calculus.
//!
//! An operator is a list of matrix-polynomial coefficients F_i acting as
//! P |-> sum_i P^{(i)} F_i, with every matrix factor multiplying from the
//! right. Composition follows application order: applying `first.compose
//! (second)` equals applying `first` and then `second`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::family::inner_product_with_rule;
use crate::jacobi::{gauss_jacobi_rule, nodes_for_degree};
use crate::mat2::{CMat2, MatrixPolynomial, ScalarPoly};
use crate::weights::{Parameters, PearsonData, WeightMatrix};

/// Operator sum_{i=0}^{s} d^i/dt^i . F_i(t), coefficients ascending in i.
#[derive(Debug, Clone, PartialEq)]
pub struct RightDifferentialOperator {
    coeffs: Vec<MatrixPolynomial>,
}

impl RightDifferentialOperator {
    pub fn new(coeffs: Vec<MatrixPolynomial>) -> Self {
        let mut op = RightDifferentialOperator { coeffs };
        while op.coeffs.last().is_some_and(MatrixPolynomial::is_zero) {
            op.coeffs.pop();
        }
        op
    }

    pub fn zero() -> Self {
        RightDifferentialOperator { coeffs: vec![] }
    }

    /// The identity operator (order 0, coefficient I).
    pub fn identity() -> Self {
        Self::new(vec![MatrixPolynomial::identity()])
    }

    /// d/dt as a right operator: F_0 = 0, F_1 = I.
    pub fn ddt() -> Self {
        Self::new(vec![MatrixPolynomial::zero(), MatrixPolynomial::identity()])
    }

    pub fn order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coefficients(&self) -> &[MatrixPolynomial] {
        &self.coeffs
    }

    pub fn coefficient(&self, i: usize) -> MatrixPolynomial {
        self.coeffs.get(i).cloned().unwrap_or_else(MatrixPolynomial::zero)
    }

    /// P |-> sum_i P^{(i)} F_i.
    pub fn apply(&self, p: &MatrixPolynomial) -> MatrixPolynomial {
        let mut out = MatrixPolynomial::zero();
        for (i, f) in self.coeffs.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            out = out.add(&p.derivative(i as u32).mul(f));
        }
        out
    }

    /// Operator with apply(p, result) = apply(apply(p, self), other), built
    /// by the general Leibniz expansion of the coefficients.
    pub fn compose(&self, other: &RightDifferentialOperator) -> RightDifferentialOperator {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return RightDifferentialOperator::zero();
        }
        let mut out = vec![MatrixPolynomial::zero(); self.order() + other.order() + 1];
        for (j, bj) in other.coeffs.iter().enumerate() {
            if bj.is_zero() {
                continue;
            }
            for (i, ai) in self.coeffs.iter().enumerate() {
                if ai.is_zero() {
                    continue;
                }
                // (P^{(i)} A_i)^{(j)} B_j = sum_l C(j,l) P^{(i+l)} A_i^{(j-l)} B_j
                let mut binom = 1.0;
                for l in 0..=j {
                    if l > 0 {
                        binom *= (j - l + 1) as f64 / l as f64;
                    }
                    let term = ai.derivative((j - l) as u32).mul(bj).scale_re(binom);
                    out[i + l] = out[i + l].add(&term);
                }
            }
        }
        RightDifferentialOperator::new(out)
    }

    pub fn add(&self, other: &RightDifferentialOperator) -> RightDifferentialOperator {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coefficient(i).add(&other.coefficient(i)));
        }
        RightDifferentialOperator::new(out)
    }

    pub fn sub(&self, other: &RightDifferentialOperator) -> RightDifferentialOperator {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, z: Complex64) -> RightDifferentialOperator {
        RightDifferentialOperator::new(self.coeffs.iter().map(|f| f.scale(z)).collect())
    }

    pub fn scale_re(&self, s: f64) -> RightDifferentialOperator {
        self.scale(Complex64::new(s, 0.0))
    }

    pub fn norm_max(&self) -> f64 {
        self.coeffs
            .iter()
            .map(MatrixPolynomial::norm_max)
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &RightDifferentialOperator, tol_abs: f64) -> bool {
        self.sub(other).norm_max() <= tol_abs
    }

    /// Largest degree excess of a coefficient over its derivative order;
    /// bounds how much applying the operator can raise polynomial degree.
    pub fn degree_excess(&self) -> usize {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, f)| !f.is_zero())
            .map(|(i, f)| f.degree().saturating_sub(i))
            .max()
            .unwrap_or(0)
    }
}

/// (C^{(k)}, U^{(k)}, V): the constant matrices of the level-k
/// hypergeometric operator. C^{(k)} = C + kI and U^{(k)} = U + 2kI, matching
/// the same matrices built at the shifted parameters.
pub fn hypergeometric_cuv(params: &Parameters, k: u32) -> Result<(CMat2, CMat2, CMat2)> {
    params.valid_at_level(k)?;
    let (av, vv) = (params.alpha, params.v);
    let kf = k as f64;
    let c = CMat2::from_real([
        [av + 1.0 - params.kappa_mm() / vv, params.kappa_pm() / vv],
        [-params.kappa_mm() / vv, av + 1.0 + params.kappa_pm() / vv],
    ]);
    let ck = c.add(&CMat2::identity().scale_re(kf));
    let uk = CMat2::identity().scale_re(params.alpha + params.beta + 4.0 + 2.0 * kf);
    let v = CMat2::diag_real(params.v, 0.0);
    Ok((ck, uk, v))
}

/// The level-k hypergeometric operator: F_2 = t(1-t) I,
/// F_1 = (C^{(k)})^* - t U^{(k)}, F_0 = -V.
pub fn hypergeometric_operator(params: &Parameters, k: u32) -> Result<RightDifferentialOperator> {
    let (ck, uk, v) = hypergeometric_cuv(params, k)?;
    let f2 = MatrixPolynomial::from_scalar(&ScalarPoly::new(vec![0.0, 1.0, -1.0]), &CMat2::identity());
    let f1 = MatrixPolynomial::new(vec![ck.adjoint(), uk.neg()]);
    let f0 = MatrixPolynomial::constant(v.neg());
    Ok(RightDifferentialOperator::new(vec![f0, f1, f2]))
}

/// Diagonal eigenvalue of the level-k hypergeometric operator on the
/// degree-(n-k) member of the level-k monic family:
/// diag(-(n-k)(alpha+beta+3+n+k) - v, -(n-k)(alpha+beta+3+n+k)).
pub fn hypergeometric_eigenvalue(params: &Parameters, k: u32, n: u32) -> CMat2 {
    let m = n as f64 - k as f64;
    let base = -m * (params.alpha + params.beta + 3.0 + n as f64 + k as f64);
    CMat2::diag_real(base - params.v, base)
}

/// The raising operator eta^{(k)} = d/dt (Phi^{(k)})^* + (Psi^{(k)})^*,
/// mapping level k+1 polynomials to level k.
pub fn shift_operator(params: &Parameters, k: u32) -> Result<RightDifferentialOperator> {
    let pearson = PearsonData::new(params, k)?;
    Ok(RightDifferentialOperator::new(vec![
        pearson.psi.adjoint(),
        pearson.phi.adjoint(),
    ]))
}

/// The lowering/raising pair (d/dt, eta^{(k)}) for the adjoint identity
/// <P', Q>_{k+1} = -<P, Q eta^{(k)}>_k.
pub fn lowering_raising_pair(
    params: &Parameters,
    k: u32,
) -> Result<(RightDifferentialOperator, RightDifferentialOperator)> {
    Ok((RightDifferentialOperator::ddt(), shift_operator(params, k)?))
}

/// E^{(k)} = (d/dt then eta^{(k)}) = d^2 (Phi^{(k)})^* + d (Psi^{(k)})^*;
/// symmetric with respect to the level-k weight.
pub fn shift_symmetric_operator(params: &Parameters, k: u32) -> Result<RightDifferentialOperator> {
    let pearson = PearsonData::new(params, k)?;
    Ok(RightDifferentialOperator::new(vec![
        MatrixPolynomial::zero(),
        pearson.psi.adjoint(),
        pearson.phi.adjoint(),
    ]))
}

/// Eigenvalue of E^{(k)} on the degree-n member of the level-k family:
/// n (n + alpha + beta + 3 + 2k) A_2^k.
pub fn shift_symmetric_eigenvalue(params: &Parameters, k: u32, n: u32) -> Result<CMat2> {
    let pearson = PearsonData::new(params, k)?;
    let nf = n as f64;
    Ok(pearson
        .a2()
        .scale_re(nf * (nf + params.alpha + params.beta + 3.0 + 2.0 * k as f64)))
}

/// The Darboux transform (eta^{(k)} then d/dt); symmetric with respect to
/// the level-(k+1) weight but not the level-k one.
pub fn darboux_transform(params: &Parameters, k: u32) -> Result<RightDifferentialOperator> {
    let eta = shift_operator(params, k)?;
    Ok(eta.compose(&RightDifferentialOperator::ddt()))
}

/// Quadratic-form symmetry test: checks <P D, Q> = <P, Q D> over all
/// monomial-times-matrix-unit pairs up to the degree budget, with the rule
/// sized exactly for the integrand degrees. Returns the verdict and the
/// worst normalized residual.
pub fn is_symmetric(
    op: &RightDifferentialOperator,
    w: &WeightMatrix,
    degree_budget: usize,
    tol: f64,
) -> Result<(bool, f64)> {
    let max_deg = 2 * degree_budget + op.degree_excess() + 2;
    let rule = gauss_jacobi_rule(w.exponents.0, w.exponents.1, nodes_for_degree(max_deg))?;
    let mut worst: f64 = 0.0;
    for i in 0..=degree_budget {
        for j in 0..=degree_budget {
            for unit_p in 0..4 {
                for unit_q in 0..4 {
                    let p = MatrixPolynomial::monomial(CMat2::unit(unit_p / 2, unit_p % 2), i);
                    let q = MatrixPolynomial::monomial(CMat2::unit(unit_q / 2, unit_q % 2), j);
                    let pd = op.apply(&p);
                    let qd = op.apply(&q);
                    let lhs = inner_product_with_rule(&pd, &q, w, &rule);
                    let rhs = inner_product_with_rule(&p, &qd, w, &rule);
                    let scale = lhs.norm_max().max(rhs.norm_max()).max(1.0);
                    worst = worst.max(lhs.sub(&rhs).norm_max() / scale);
                }
            }
        }
    }
    Ok((worst <= tol, worst))
}

/// Secondary symmetry check through the three differential identities at
/// interior sample points, plus one-sided boundary sampling at 1e-6 from
/// each endpoint (the boundary conditions hold automatically for exponents
/// above zero; the sampling guards the remaining range).
pub fn symmetry_equation_residual(
    op: &RightDifferentialOperator,
    w: &WeightMatrix,
    samples: usize,
) -> Result<f64> {
    if op.order() > 2 {
        return Err(Error::InvalidParameter(
            "symmetry equations are stated for operators of order at most two".into(),
        ));
    }
    let f0 = op.coefficient(0);
    let f1 = op.coefficient(1);
    let f2 = op.coefficient(2);
    let wt = &w.polynomial_part;
    let a_poly = f2.mul(wt);
    let b_poly = f1.mul(wt);
    let ap = a_poly.derivative(1);
    let app = a_poly.derivative(2);
    let bp = b_poly.derivative(1);
    let (ea, eb) = w.exponents;

    let mut worst: f64 = 0.0;
    for i in 1..=samples {
        let t = 0.02 + 0.96 * (i as f64 - 1.0) / (samples as f64 - 1.0).max(1.0);
        let rho = ea / t - eb / (1.0 - t);
        let rho2 = rho * rho - ea / (t * t) - eb / ((1.0 - t) * (1.0 - t));
        let wv = wt.eval_re(t);
        let av = a_poly.eval_re(t);
        let apv = ap.eval_re(t);

        let r1 = av.sub(&wv.mul(&f2.adjoint().eval_re(t)));
        let s1 = av.norm_max().max(1.0);

        let lhs2 = apv.scale_re(2.0).add(&av.scale_re(2.0 * rho));
        let rhs2 = b_poly.eval_re(t).add(&wv.mul(&f1.adjoint().eval_re(t)));
        let r2 = lhs2.sub(&rhs2);
        let s2 = lhs2.norm_max().max(rhs2.norm_max()).max(1.0);

        let lhs3 = av
            .scale_re(rho2)
            .add(&apv.scale_re(2.0 * rho))
            .add(&app.eval_re(t))
            .sub(&b_poly.eval_re(t).scale_re(rho))
            .sub(&bp.eval_re(t));
        let f0v = f0.eval_re(t);
        let rhs3 = wv.mul(&f0.adjoint().eval_re(t)).sub(&f0v.mul(&wv));
        let r3 = lhs3.sub(&rhs3);
        let s3 = lhs3.norm_max().max(rhs3.norm_max()).max(1.0);

        worst = worst
            .max(r1.norm_max() / s1)
            .max(r2.norm_max() / s2)
            .max(r3.norm_max() / s3);
    }

    // boundary behavior, sampled one-sided: F_2 W and F_1 W - W F_1^* must
    // decay toward both endpoints; a value still at interior scale there
    // flags a violated boundary condition
    let interior_scale = a_poly.eval_re(0.5).norm_max().max(1.0);
    for &t in &[1e-6_f64, 1.0 - 1e-6] {
        let s = t.powf(ea) * (1.0 - t).powf(eb);
        let bound1 = s * a_poly.eval_re(t).norm_max();
        let diff = b_poly
            .eval_re(t)
            .sub(&wt.eval_re(t).mul(&f1.adjoint().eval_re(t)));
        let bound2 = s * diff.norm_max();
        let ratio = bound1.max(bound2) / interior_scale;
        if ratio > 1e-3 {
            worst = worst.max(ratio);
        }
    }
    Ok(worst)
}

/// Coordinates (a, b, c, d, e) of an order-at-most-two operator in the
/// algebra attached to the base weight: a, c, b, d fill the leading
/// coefficient row-wise and e scales the identity in the constant term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlgebraElement {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
    pub e: Complex64,
}

impl AlgebraElement {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64, e: Complex64) -> Self {
        AlgebraElement { a, b, c, d, e }
    }

    pub fn from_real(a: f64, b: f64, c: f64, d: f64, e: f64) -> Self {
        Self::new(
            Complex64::new(a, 0.0),
            Complex64::new(b, 0.0),
            Complex64::new(c, 0.0),
            Complex64::new(d, 0.0),
            Complex64::new(e, 0.0),
        )
    }

    /// Symmetry predicate: a, d, e real together with the conjugate-pairing
    /// constraint b (kappa_pp + 2)/kappa_pm = -conj(c) (kappa_mp + 2)/kappa_mm.
    pub fn is_symmetric(&self, params: &Parameters) -> bool {
        let scale = [self.a, self.b, self.c, self.d, self.e]
            .iter()
            .map(|z| z.norm())
            .fold(0.0_f64, f64::max)
            .max(1.0);
        let tol = 1e-12 * scale;
        if self.a.im.abs() > tol || self.d.im.abs() > tol || self.e.im.abs() > tol {
            return false;
        }
        let lhs = self.b * (params.kappa_pp() + 2.0) / params.kappa_pm();
        let rhs = -self.c.conj() * (params.kappa_mp() + 2.0) / params.kappa_mm();
        (lhs - rhs).norm() <= tol
    }

    /// The six coefficient matrices (A2, A1, A0, B1, B0, C0).
    pub fn coefficient_matrices(&self, params: &Parameters) -> [CMat2; 6] {
        let (a, b, c, d, e) = (self.a, self.b, self.c, self.d, self.e);
        let v = params.v;
        let (kpp, kmp, kpm, kmm) = (
            params.kappa_pp(),
            params.kappa_mp(),
            params.kappa_pm(),
            params.kappa_mm(),
        );
        let ab4 = params.alpha + params.beta + 4.0;

        let a2 = CMat2::new([[a, c], [b, d]]);
        let a1 = {
            let base = CMat2::new([
                [-2.0 * v * a, (a - d) * kmm],
                [(a - d) * kpm, -2.0 * v * d],
            ]);
            let bterm = CMat2::from_real([[-1.0, 0.0], [2.0, 1.0]]).scale(b * kmm);
            let cterm = CMat2::from_real([[-1.0, -2.0], [0.0, 1.0]]).scale(c * kpm);
            base.add(&bterm).add(&cterm).scale_re(1.0 / (2.0 * v))
        };
        let a0 = CMat2::from_real([[-1.0, -1.0], [1.0, 1.0]])
            .scale(((a - d) * kpm * kmm + b * kmm * kmm - c * kpm * kpm) / (4.0 * v * v));
        let b1 = CMat2::new([
            [a * ab4, (kmp + 4.0) * c],
            [(kpp + 4.0) * b, ab4 * d],
        ]);
        let b0 = {
            let aterm = CMat2::from_real([
                [-4.0 * ((params.alpha + 1.0) * v - kmm), kmm * (kmp + 6.0)],
                [kpm * (kpp + 2.0), 0.0],
            ])
            .scale(a);
            let bterm = CMat2::from_real([
                [-(kpp + 2.0), 0.0],
                [2.0 * (kpp + 4.0), kpp + 6.0],
            ])
            .scale(b * kmm);
            let cterm = CMat2::from_real([
                [-(kmp + 6.0), -2.0 * (kmp + 4.0)],
                [0.0, kmp + 2.0],
            ])
            .scale(c * kpm);
            let dterm = CMat2::from_real([
                [0.0, -kmm * (kmp + 2.0)],
                [-kpm * (kpp + 6.0), -4.0 * ((params.alpha + 1.0) * v + kpm)],
            ])
            .scale(d);
            aterm
                .add(&bterm)
                .add(&cterm)
                .add(&dterm)
                .scale_re(1.0 / (4.0 * v))
        };
        let c0 = {
            let block = CMat2::new([
                [
                    a * (kmp + 4.0) / (kpp + 4.0) - d * (kmp + 2.0) / (kpp + 2.0),
                    c * (kmp + 4.0) * (kmp + 2.0) / ((kpp + 4.0) * (kpp + 2.0)),
                ],
                [b, Complex64::new(0.0, 0.0)],
            ]);
            block
                .scale_re(0.25 * (kpp + 4.0) * (kpp + 2.0))
                .add(&CMat2::identity().scale(e))
        };
        [a2, a1, a0, b1, b0, c0]
    }

    /// Assembles the order-two operator with these coordinates.
    pub fn operator(&self, params: &Parameters) -> Result<RightDifferentialOperator> {
        params.valid_at_level(0)?;
        let [a2, a1, a0, b1, b0, c0] = self.coefficient_matrices(params);
        Ok(RightDifferentialOperator::new(vec![
            MatrixPolynomial::constant(c0),
            MatrixPolynomial::new(vec![b0, b1]),
            MatrixPolynomial::new(vec![a0, a1, a2]),
        ]))
    }

    /// Eigenvalue on the degree-n monic polynomial:
    /// n(n-1) A2 + n B1 + C0.
    pub fn eigenvalue(&self, params: &Parameters, n: u32) -> CMat2 {
        let [a2, _, _, b1, _, c0] = self.coefficient_matrices(params);
        let nf = n as f64;
        a2.scale_re(nf * (nf - 1.0)).add(&b1.scale_re(nf)).add(&c0)
    }
}

/// The four symmetric generators spanning, together with the identity, the
/// order-at-most-two slice of the operator algebra.
#[derive(Debug, Clone, Copy)]
pub struct AlgebraBasis {
    pub d1: AlgebraElement,
    pub d2: AlgebraElement,
    pub d3: AlgebraElement,
    pub d4: AlgebraElement,
}

impl AlgebraBasis {
    pub fn new(params: &Parameters) -> Result<Self> {
        params.valid_at_level(0)?;
        let b3 = -params.kappa_pm() * (params.kappa_mp() + 2.0)
            / (params.kappa_mm() * (params.kappa_pp() + 2.0));
        let i = Complex64::new(0.0, 1.0);
        let zero = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        Ok(AlgebraBasis {
            d1: AlgebraElement::from_real(1.0, 0.0, 0.0, 0.0, 0.0),
            d2: AlgebraElement::from_real(0.0, 0.0, 0.0, 1.0, 0.0),
            d3: AlgebraElement::new(zero, Complex64::new(b3, 0.0), one, zero, zero),
            // purely imaginary coordinates; i times this operator is the
            // real-entried companion display
            d4: AlgebraElement::new(zero, i * (-b3), i, zero, zero),
        })
    }

    pub fn elements(&self) -> [AlgebraElement; 4] {
        [self.d1, self.d2, self.d3, self.d4]
    }

    pub fn operators(&self, params: &Parameters) -> Result<[RightDifferentialOperator; 4]> {
        Ok([
            self.d1.operator(params)?,
            self.d2.operator(params)?,
            self.d3.operator(params)?,
            self.d4.operator(params)?,
        ])
    }
}
