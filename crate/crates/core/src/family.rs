//! The monic matrix-valued orthogonal families: three independent
//! constructions, closed-form norms and recurrence data, orthonormal
//! variants, Christoffel-Darboux kernels, derivative families and the
//! raising-chain Rodrigues formula.
//!
//! Level k of the (alpha, beta, v) family equals level 0 of the shifted
//! triple (alpha+k, beta+k, v); the code builds at the shifted triple and
//! the tests confirm the level identities.

use crate::diffop::{hypergeometric_cuv, shift_operator};
use crate::error::{Error, Result};
use crate::gamma::{factorial, pochhammer};
use crate::jacobi::{beta_function, gauss_jacobi_rule, jacobi_poly, nodes_for_degree, QuadratureRule};
use crate::mat2::{CMat2, MatrixPolynomial, ScalarPoly};
use crate::weights::{InverseWeightFactors, Parameters, WeightMatrix};

/// <P, Q> = integral of P(t) W(t) Q*(t) dt, with the rule sized for the
/// operand degrees plus the weight's quadratic factor.
pub fn inner_product(p: &MatrixPolynomial, q: &MatrixPolynomial, w: &WeightMatrix) -> Result<CMat2> {
    if p.is_zero() || q.is_zero() {
        return Ok(CMat2::zero());
    }
    let deg = p.degree() + q.degree() + 2;
    let rule = gauss_jacobi_rule(w.exponents.0, w.exponents.1, nodes_for_degree(deg))?;
    Ok(inner_product_with_rule(p, q, w, &rule))
}

/// Same pairing with a caller-provided rule (callers doing many pairings
/// size one rule for the largest degree and reuse it).
pub fn inner_product_with_rule(
    p: &MatrixPolynomial,
    q: &MatrixPolynomial,
    w: &WeightMatrix,
    rule: &QuadratureRule,
) -> CMat2 {
    rule.integrate_matrix(|t| {
        p.eval_re(t)
            .mul(&w.eval_tilde(t))
            .mul(&q.eval_re(t).adjoint())
    })
}

fn monic_guard(p: MatrixPolynomial, n: usize, what: &str) -> Result<MatrixPolynomial> {
    if p.is_zero() && n == 0 {
        return Err(Error::ConvergenceFailure(format!(
            "{what}: degree-0 construction returned the zero polynomial"
        )));
    }
    let defect = p
        .leading_coefficient()
        .sub(&CMat2::identity())
        .norm_max();
    if p.degree() != n || defect > 1e-10 {
        return Err(Error::ConvergenceFailure(format!(
            "{what}: monic guard failed at degree {n} (got degree {}, identity defect {defect:.3e})",
            p.degree()
        )));
    }
    Ok(p)
}

/// The Rodrigues data for degree n: scalings (c_n, d_n), the three constant
/// matrices of the quadratic factor, and the exponents (n+alpha, n+beta).
#[derive(Debug, Clone, Copy)]
pub struct RodriguesData {
    pub n: u32,
    pub c_n: f64,
    pub d_n: f64,
    pub r2: CMat2,
    pub r1: CMat2,
    pub r0: CMat2,
    pub exponents: (f64, f64),
}

impl RodriguesData {
    /// Leading coefficient of the resulting degree-n polynomial (identity
    /// under the monic scalings).
    pub fn leading_coefficient(&self, params: &Parameters) -> CMat2 {
        let poch = pochhammer(params.alpha + params.beta + 3.0 + self.n as f64, self.n);
        let sign = if self.n % 2 == 0 { 1.0 } else { -1.0 };
        CMat2::diag_real(
            params.kappa_pm() * poch * self.c_n / (sign * params.v * (params.kappa_pp() + 2.0)),
            params.kappa_mm() * poch * self.d_n / (-sign * params.v * (params.kappa_mp() + 2.0)),
        )
    }
}

/// Builds the Rodrigues matrices for degree n. With `monic` the scalings
/// make the resulting polynomial monic; otherwise c_n = d_n = 1.
pub fn rodrigues_data(params: &Parameters, n: u32, monic: bool) -> Result<RodriguesData> {
    params.valid_at_level(0)?;
    let nf = n as f64;
    let v = params.v;
    let (kpp, kmp, kpm, kmm) = (
        params.kappa_pp(),
        params.kappa_mp(),
        params.kappa_pm(),
        params.kappa_mm(),
    );
    let (c_n, d_n) = if monic {
        let poch = pochhammer(params.alpha + params.beta + nf + 3.0, n);
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        (
            sign * v * (kpp + 2.0) / (kpm * poch),
            -sign * v * (kmp + 2.0) / (kmm * poch),
        )
    } else {
        (1.0, 1.0)
    };
    let ab2n2 = params.alpha + params.beta + 2.0 * nf + 2.0;
    let r2 = CMat2::diag_real(c_n, d_n);
    let r1 = CMat2::from_real([
        [-c_n * kpm, c_n * ab2n2 * kpm / (kpp + 2.0 * nf + 2.0)],
        [-d_n * ab2n2 * kmm / (kmp + 2.0 * nf + 2.0), d_n * kmm],
    ])
    .scale_re(1.0 / v);
    let r0 = CMat2::from_real([
        [
            c_n * kpm / (kpp + 2.0 * nf + 2.0),
            -c_n * kpm / (kpp + 2.0 * nf + 2.0),
        ],
        [
            d_n * kmm / (kmp + 2.0 * nf + 2.0),
            -d_n * kmm / (kmp + 2.0 * nf + 2.0),
        ],
    ])
    .scale_re((1.0 + nf + params.alpha) / v);
    Ok(RodriguesData {
        n,
        c_n,
        d_n,
        r2,
        r1,
        r0,
        exponents: (nf + params.alpha, nf + params.beta),
    })
}

/// The degree-(n+3) numerator polynomial of the Rodrigues-Jacobi route,
/// divisible by t(1-t)^2.
pub fn rodrigues_numerator(params: &Parameters, n: u32) -> Result<MatrixPolynomial> {
    let rd = rodrigues_data(params, n, true)?;
    let jf = InverseWeightFactors::new(params)?;
    let p2 = jacobi_poly(n, params.alpha + 2.0, params.beta)?;
    let p1 = jacobi_poly(n, params.alpha + 1.0, params.beta)?;
    let p0 = jacobi_poly(n, params.alpha, params.beta)?;
    let term2 = jf.poly().lmul_mat(&rd.r2).shift_up(1).mul_scalar_poly(&p2);
    let term1 = jf.poly().lmul_mat(&rd.r1).mul_scalar_poly(&p1);
    let term0 = jf.poly_linear().lmul_mat(&rd.r0).mul_scalar_poly(&p0);
    Ok(term2.add(&term1).add(&term0))
}

/// Monic degree-n polynomial by the Rodrigues-Jacobi route: assemble the
/// numerator and exact-divide by t(1-t)^2. The division residual doubles as
/// a correctness guard.
pub fn build_rodrigues(params: &Parameters, n: u32) -> Result<MatrixPolynomial> {
    let q = rodrigues_numerator(params, n)?;
    let divisor = ScalarPoly::new(vec![0.0, 1.0, -2.0, 1.0]);
    let quotient = q.divide_scalar(&divisor, 1e-10)?;
    monic_guard(quotient.scale_re(factorial(n)), n as usize, "rodrigues construction")
}

/// Monic polynomial of the level-k family with base index n (degree n-k),
/// summed from the terminating matrix hypergeometric series.
pub fn build_hypergeometric(params: &Parameters, k: u32, n: u32) -> Result<MatrixPolynomial> {
    if n < k {
        return Err(Error::InvalidParameter(format!(
            "hypergeometric construction needs n >= k, got n = {n}, k = {k}"
        )));
    }
    let (c, u, v) = hypergeometric_cuv(params, k)?;
    let m = n - k;
    let eig = crate::diffop::hypergeometric_eigenvalue(params, k, n);
    let mut total = MatrixPolynomial::zero();
    for (lam, unit) in [
        (eig.m[0][0], CMat2::unit(0, 0)),
        (eig.m[1][1], CMat2::unit(1, 1)),
    ] {
        // brackets M_{j+1} = (C + jI)^{-1} (j(j-1) I + j U + V + lam I) M_j;
        // the series terminates at index m because the factor at j = m
        // annihilates the column this unit selects and left-recursion keeps
        // that column zero afterwards
        let vshift = v.add(&CMat2::identity().scale(lam));
        let mut bracket = CMat2::identity();
        let mut series = Vec::with_capacity(m as usize + 1);
        series.push(bracket);
        for j in 0..m {
            let jf = j as f64;
            let factor = CMat2::identity()
                .scale_re(jf * (jf - 1.0))
                .add(&u.scale_re(jf))
                .add(&vshift);
            let cinv = c
                .add(&CMat2::identity().scale_re(jf))
                .inverse()
                .map_err(|_| Error::SingularBracket(j as usize))?;
            bracket = cinv.mul(&factor).mul(&bracket);
            series.push(bracket);
        }
        let last_inv = bracket
            .inverse()
            .map_err(|_| Error::SingularBracket(m as usize))?;
        let tail = last_inv.scale_re(factorial(m)).mul(&unit);
        let coeffs: Vec<CMat2> = series
            .iter()
            .enumerate()
            .map(|(j, mj)| mj.scale_re(1.0 / factorial(j as u32)).mul(&tail))
            .collect();
        total = total.add(&MatrixPolynomial::new(coeffs));
    }
    monic_guard(total.adjoint(), m as usize, "hypergeometric construction")
}

/// Closed-form three-term recurrence coefficients (A_n, B_n) of the base
/// family at the given triple.
pub fn recurrence_coefficients(params: &Parameters, n: u32) -> (CMat2, CMat2) {
    let nf = n as f64;
    let (af, bf, v) = (params.alpha, params.beta, params.v);
    let (kpp, kmp, kpm, kmm) = (
        params.kappa_pp(),
        params.kappa_mp(),
        params.kappa_pm(),
        params.kappa_mm(),
    );
    let ab = af + bf;
    let a_scalar = nf * (1.0 + nf + af) * (1.0 + nf + bf) * (2.0 + nf + ab)
        / ((1.0 + 2.0 * nf + ab)
            * (2.0 + 2.0 * nf + ab).powi(2)
            * (3.0 + 2.0 * nf + ab)
            * (2.0 + 2.0 * nf + kmp)
            * (2.0 + 2.0 * nf + kpp));
    let a_n = CMat2::diag_real(
        (4.0 + 2.0 * nf + kmp) * (2.0 * nf + kpp),
        (4.0 + 2.0 * nf + kpp) * (2.0 * nf + kmp),
    )
    .scale_re(a_scalar);

    let b11 = -nf * ((af + nf) * v - kmm) / ((ab + 2.0 * nf + 2.0) * v)
        + (nf + 1.0) * ((af + nf + 1.0) * v - kmm) / ((ab + 2.0 * nf + 4.0) * v);
    let b21 = kpm * (kmp + 2.0) / (v * (kmp + 2.0 * nf + 2.0) * (kmp + 2.0 * nf + 4.0));
    let b12 = -kmm * (kpp + 2.0) / (v * (kpp + 2.0 * nf + 2.0) * (kpp + 2.0 * nf + 4.0));
    let b22 = -nf * ((af + nf) * v + kpm) / ((ab + 2.0 * nf + 2.0) * v)
        + (nf + 1.0) * ((af + nf + 1.0) * v + kpm) / ((ab + 2.0 * nf + 4.0) * v);
    let b_n = CMat2::from_real([[b11, b12], [b21, b22]]);
    (a_n, b_n)
}

/// Closed-form squared norm of the degree-n monic polynomial; diagonal and
/// positive definite for valid parameters.
pub fn norm_matrix(params: &Parameters, n: u32) -> Result<CMat2> {
    params.valid_at_level(0)?;
    let nf = n as f64;
    let (kpp, kmp, kpm, kmm) = (
        params.kappa_pp(),
        params.kappa_mp(),
        params.kappa_pm(),
        params.kappa_mm(),
    );
    let scalar = factorial(n) * params.v
        * beta_function(params.alpha + nf + 2.0, params.beta + nf + 2.0)?
        / pochhammer(params.alpha + nf + 3.0 + params.beta, n);
    Ok(CMat2::diag_real(
        (kpp + 2.0) * (kmp + 2.0 * nf + 4.0) / (kpm * (kpp + 2.0 * nf + 2.0)),
        -(kmp + 2.0) * (kpp + 2.0 * nf + 4.0) / (kmm * (kmp + 2.0 * nf + 2.0)),
    )
    .scale_re(scalar))
}

/// Level-k monic family built to a requested depth, with norms and
/// recurrence data. Member m has degree m (base index n = m + k).
#[derive(Debug, Clone)]
pub struct MvopFamily {
    pub params: Parameters,
    pub k: u32,
    shifted: Parameters,
    polys: Vec<MatrixPolynomial>,
    norms: Vec<CMat2>,
    rec_a: Vec<CMat2>,
    rec_b: Vec<CMat2>,
}

/// Builds the level-k family up to degree `up_to` by the three-term
/// recurrence with closed-form coefficients at the shifted triple.
pub fn build_recurrence(params: &Parameters, k: u32, up_to: u32) -> Result<MvopFamily> {
    params.valid_at_level(k)?;
    let shifted = params.shifted(k)?;
    let n = up_to as usize;
    let mut rec_a = Vec::with_capacity(n + 1);
    let mut rec_b = Vec::with_capacity(n + 1);
    for m in 0..=up_to {
        let (a, b) = recurrence_coefficients(&shifted, m);
        rec_a.push(a);
        rec_b.push(b);
    }
    let mut polys: Vec<MatrixPolynomial> = Vec::with_capacity(n + 1);
    polys.push(MatrixPolynomial::identity());
    for m in 0..n {
        let t_shift = polys[m].shift_up(1);
        let mut next = t_shift.sub(&polys[m].lmul_mat(&rec_b[m]));
        if m >= 1 {
            next = next.sub(&polys[m - 1].lmul_mat(&rec_a[m]));
        }
        next = monic_guard(next, m + 1, "recurrence construction")?;
        polys.push(next);
    }
    let mut norms = Vec::with_capacity(n + 1);
    for m in 0..=up_to {
        norms.push(norm_matrix(&shifted, m)?);
    }
    Ok(MvopFamily {
        params: *params,
        k,
        shifted,
        polys,
        norms,
        rec_a,
        rec_b,
    })
}

impl MvopFamily {
    pub fn max_degree(&self) -> usize {
        self.polys.len() - 1
    }

    pub fn shifted_params(&self) -> &Parameters {
        &self.shifted
    }

    /// The monic member of degree m.
    pub fn polynomial(&self, m: usize) -> &MatrixPolynomial {
        &self.polys[m]
    }

    /// Closed-form squared norm of member m.
    pub fn norm_squared(&self, m: usize) -> CMat2 {
        self.norms[m]
    }

    pub fn recurrence_a(&self, m: usize) -> CMat2 {
        self.rec_a[m]
    }

    pub fn recurrence_b(&self, m: usize) -> CMat2 {
        self.rec_b[m]
    }

    /// Weight this family is orthogonal against.
    pub fn weight(&self) -> Result<WeightMatrix> {
        WeightMatrix::new(&self.params, self.k)
    }

    /// Eigenvalue of the level-k hypergeometric operator on member m.
    pub fn eigenvalue(&self, m: usize) -> CMat2 {
        crate::diffop::hypergeometric_eigenvalue(&self.params, self.k, m as u32 + self.k)
    }

    /// Member value at a real point through the value recurrence. At high
    /// degree this avoids the cancellation of Horner evaluation in the
    /// monomial basis.
    pub fn eval_member(&self, m: usize, t: f64) -> CMat2 {
        let ti = CMat2::identity().scale_re(t);
        let mut prev = CMat2::zero();
        let mut cur = CMat2::identity();
        for j in 0..m {
            let next = ti
                .sub(&self.rec_b[j])
                .mul(&cur)
                .sub(&self.rec_a[j].mul(&prev));
            prev = cur;
            cur = next;
        }
        cur
    }

    /// <P_n, P_m> with both members evaluated by the value recurrence.
    pub fn member_inner_product(&self, n: usize, m: usize) -> Result<CMat2> {
        let w = self.weight()?;
        let rule = gauss_jacobi_rule(
            w.exponents.0,
            w.exponents.1,
            nodes_for_degree(n + m + 2),
        )?;
        Ok(rule.integrate_matrix(|t| {
            self.eval_member(n, t)
                .mul(&w.eval_tilde(t))
                .mul(&self.eval_member(m, t).adjoint())
        }))
    }
}

/// Orthonormal variant: members Ptilde_n = norm^{-1} P_n together with the
/// recurrence data (Atilde_n, Btilde_n).
#[derive(Debug, Clone)]
pub struct OrthonormalFamily {
    pub polys: Vec<MatrixPolynomial>,
    /// a_tilde[n] pairs with the degree-n member; entry 0 is unused padding.
    pub a_tilde: Vec<CMat2>,
    pub b_tilde: Vec<CMat2>,
}

/// Builds the orthonormal family of the base weight up to degree `up_to`.
pub fn orthonormal_family(params: &Parameters, up_to: u32) -> Result<OrthonormalFamily> {
    let family = build_recurrence(params, 0, up_to)?;
    let mut sqrts = Vec::with_capacity(up_to as usize + 1);
    let mut inv_sqrts = Vec::with_capacity(up_to as usize + 1);
    for m in 0..=up_to as usize {
        let s = family.norm_squared(m).diag_sqrt()?;
        inv_sqrts.push(s.inverse()?);
        sqrts.push(s);
    }
    let polys: Vec<MatrixPolynomial> = (0..=up_to as usize)
        .map(|m| family.polynomial(m).lmul_mat(&inv_sqrts[m]))
        .collect();
    let mut a_tilde = vec![CMat2::zero()];
    let mut b_tilde = Vec::with_capacity(up_to as usize + 1);
    for m in 0..=up_to as usize {
        if m >= 1 {
            a_tilde.push(inv_sqrts[m - 1].mul(&sqrts[m]));
        }
        b_tilde.push(inv_sqrts[m].mul(&family.recurrence_b(m)).mul(&sqrts[m]));
    }
    Ok(OrthonormalFamily {
        polys,
        a_tilde,
        b_tilde,
    })
}

fn check_kernel_args(n_avail: usize, n: u32, x: f64, y: f64) -> Result<()> {
    if (x - y).abs() < 1e-8 {
        return Err(Error::DegenerateInput(format!(
            "kernel quotient is ill-conditioned at |x - y| = {:.3e}",
            (x - y).abs()
        )));
    }
    if (n as usize) + 1 > n_avail {
        return Err(Error::InvalidParameter("kernel degree out of range".into()));
    }
    Ok(())
}

/// Christoffel-Darboux identity for the orthonormal family: returns the
/// partial-sum side and the telescoped quotient side.
pub fn christoffel_darboux(
    params: &Parameters,
    n: u32,
    x: f64,
    y: f64,
) -> Result<(CMat2, CMat2)> {
    let fam = orthonormal_family(params, n + 1)?;
    check_kernel_args(fam.polys.len(), n + 1, x, y)?;
    let mut lhs = CMat2::zero();
    for p in fam.polys.iter().take(n as usize + 1) {
        lhs = lhs.add(&p.eval_re(y).adjoint().mul(&p.eval_re(x)));
    }
    let an1 = fam.a_tilde[n as usize + 1];
    let pn_y = fam.polys[n as usize].eval_re(y).adjoint();
    let pn1_y = fam.polys[n as usize + 1].eval_re(y).adjoint();
    let pn_x = fam.polys[n as usize].eval_re(x);
    let pn1_x = fam.polys[n as usize + 1].eval_re(x);
    let rhs = pn_y
        .mul(&an1.adjoint())
        .mul(&pn1_x)
        .sub(&pn1_y.mul(&an1).mul(&pn_x))
        .scale_re(1.0 / (x - y));
    Ok((lhs, rhs))
}

/// Monic-family Christoffel-Darboux identity with inverse squared norms.
pub fn christoffel_darboux_monic(
    params: &Parameters,
    n: u32,
    x: f64,
    y: f64,
) -> Result<(CMat2, CMat2)> {
    let fam = build_recurrence(params, 0, n + 1)?;
    check_kernel_args(fam.polys.len(), n + 1, x, y)?;
    let mut lhs = CMat2::zero();
    for m in 0..=n as usize {
        let inv = fam.norm_squared(m).inverse()?;
        lhs = lhs.add(
            &fam.polynomial(m)
                .eval_re(y)
                .adjoint()
                .mul(&inv)
                .mul(&fam.polynomial(m).eval_re(x)),
        );
    }
    let inv_n = fam.norm_squared(n as usize).inverse()?;
    let pn_y = fam.polynomial(n as usize).eval_re(y).adjoint();
    let pn1_y = fam.polynomial(n as usize + 1).eval_re(y).adjoint();
    let pn_x = fam.polynomial(n as usize).eval_re(x);
    let pn1_x = fam.polynomial(n as usize + 1).eval_re(x);
    let rhs = pn_y
        .mul(&inv_n)
        .mul(&pn1_x)
        .sub(&pn1_y.mul(&inv_n).mul(&pn_x))
        .scale_re(1.0 / (x - y));
    Ok((lhs, rhs))
}

/// The k-th derivative family member of base index n: the normalized k-th
/// derivative (n-k)!/n! d^k P_n, a monic polynomial of degree n-k.
pub fn derivative_family(params: &Parameters, k: u32, n: u32) -> Result<MatrixPolynomial> {
    if n < k {
        return Err(Error::InvalidParameter(format!(
            "derivative family needs n >= k, got n = {n}, k = {k}"
        )));
    }
    let base = build_recurrence(params, 0, n)?;
    let scaled = base
        .polynomial(n as usize)
        .derivative(k)
        .scale_re(factorial(n - k) / factorial(n));
    monic_guard(scaled, (n - k) as usize, "derivative family")
}

/// The raising-chain scale matrix: applying the chain of raising operators
/// to the identity yields this matrix times the level-k member of base
/// index n + k. Defined for n >= 1.
pub fn shift_chain_scale(params: &Parameters, k: u32, n: u32) -> Result<CMat2> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "raising-chain scale is defined for n >= 1".into(),
        ));
    }
    params.valid_at_level(k + n)?;
    let (kf, nf) = (k as f64, n as f64);
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let poch = pochhammer(params.alpha + params.beta + 3.0 + 2.0 * kf + nf, n);
    let m = CMat2::diag_real(
        (params.kappa_pp() + 2.0 * (kf + 1.0 + nf)) / (params.kappa_pp() + 2.0 * (kf + 1.0)),
        (params.kappa_mp() + 2.0 * (kf + 1.0 + nf)) / (params.kappa_mp() + 2.0 * (kf + 1.0)),
    )
    .scale_re(sign * poch);
    if m.det().norm() <= 1e-14 {
        return Err(Error::SingularScale(format!(
            "raising-chain scale is singular at k = {k}, n = {n}"
        )));
    }
    Ok(m)
}

/// Level-k member of base index n + k via the raising chain: apply the
/// raising operators from level k+n-1 down to k to the identity and divide
/// by the closed-form scale.
pub fn shift_rodrigues(params: &Parameters, k: u32, n: u32) -> Result<MatrixPolynomial> {
    if n == 0 {
        return Ok(MatrixPolynomial::identity());
    }
    let scale = shift_chain_scale(params, k, n)?;
    let mut q = MatrixPolynomial::identity();
    for level in (k..k + n).rev() {
        q = shift_operator(params, level)?.apply(&q);
    }
    let p = q.lmul_mat(&scale.inverse()?);
    monic_guard(p, n as usize, "raising-chain construction")
}

/// Point value of the weight-derivative Rodrigues expression
/// scale^{-1} (d^n/dt^n W^{(k+n)})(t) (W^{(k)}(t))^{-1}, with the shared
/// scalar Jacobi prefactors cancelled so the formula is evaluable at any
/// interior point.
pub fn weight_derivative_rodrigues_eval(
    params: &Parameters,
    k: u32,
    n: u32,
    t: f64,
) -> Result<CMat2> {
    let scale = shift_chain_scale(params, k, n)?;
    let wk = WeightMatrix::new(params, k)?;
    let wkn = WeightMatrix::new(params, k + n)?;
    let (a, b) = wk.exponents;
    let (w0, w1, w2) = wkn.w_coeffs();
    let p2 = jacobi_poly(n, a + 2.0, b)?.eval(t);
    let p1 = jacobi_poly(n, a + 1.0, b)?.eval(t);
    let p0 = jacobi_poly(n, a, b)?.eval(t);
    let bracket = w2
        .scale_re(t * t * p2)
        .add(&w1.scale_re(t * p1))
        .add(&w0.scale_re(p0))
        .scale_re(factorial(n));
    Ok(scale
        .inverse()?
        .mul(&bracket)
        .mul(&wk.eval_tilde(t).inverse()?))
}

/// Entrywise Newton interpolation through the given points; exact for
/// polynomial data of degree < points.len().
pub fn interpolate_matrix(points: &[f64], values: &[CMat2]) -> MatrixPolynomial {
    assert_eq!(points.len(), values.len());
    let n = points.len();
    let mut table: Vec<CMat2> = values.to_vec();
    let mut newton: Vec<CMat2> = Vec::with_capacity(n);
    newton.push(table[0]);
    for order in 1..n {
        for i in 0..n - order {
            let denom = points[i + order] - points[i];
            table[i] = table[i + 1].sub(&table[i]).scale_re(1.0 / denom);
        }
        newton.push(table[0]);
    }
    let mut poly = MatrixPolynomial::constant(newton[n - 1]);
    for j in (0..n - 1).rev() {
        let lin = ScalarPoly::new(vec![-points[j], 1.0]);
        poly = poly.mul_scalar_poly(&lin).add(&MatrixPolynomial::constant(newton[j]));
    }
    poly
}

/// Chebyshev points mapped into (lo, hi), kept away from the endpoint
/// singularities of the inverse weight.
pub fn chebyshev_points(count: usize, lo: f64, hi: f64) -> Vec<f64> {
    (0..count)
        .map(|i| {
            let theta = std::f64::consts::PI * (i as f64 + 0.5) / count as f64;
            let x = theta.cos();
            0.5 * (lo + hi) + 0.5 * (hi - lo) * x
        })
        .collect()
}

/// Point value of the Rodrigues quotient through the explicit Jacobi form,
/// independent of the polynomial division route.
pub fn rodrigues_function_eval(params: &Parameters, n: u32, t: f64) -> Result<CMat2> {
    let rd = rodrigues_data(params, n, true)?;
    let w = WeightMatrix::new(params, 0)?;
    let p2 = jacobi_poly(n, params.alpha + 2.0, params.beta)?.eval(t);
    let p1 = jacobi_poly(n, params.alpha + 1.0, params.beta)?.eval(t);
    let p0 = jacobi_poly(n, params.alpha, params.beta)?.eval(t);
    let numer = rd
        .r2
        .scale_re(t * t * p2)
        .add(&rd.r1.scale_re(t * p1))
        .add(&rd.r0.scale_re(p0))
        .scale_re(factorial(n));
    Ok(numer.mul(&w.eval_tilde(t).inverse()?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffop::{
        hypergeometric_eigenvalue, hypergeometric_operator, lowering_raising_pair,
        shift_symmetric_eigenvalue, shift_symmetric_operator,
    };
    use num_complex::Complex64;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn params(a: f64, b: f64, v: f64) -> Parameters {
        Parameters::new(a, b, v).unwrap()
    }

    const TRIPLES: [(f64, f64, f64); 3] = [(0.0, 0.0, 1.0), (1.0, 2.0, -2.5), (0.5, 0.5, 1.5)];

    fn rand_poly(rng: &mut StdRng, deg: usize) -> MatrixPolynomial {
        MatrixPolynomial::new(
            (0..=deg)
                .map(|_| {
                    let mut g =
                        || Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                    CMat2::new([[g(), g()], [g(), g()]])
                })
                .collect(),
        )
    }

    #[test]
    fn rodrigues_data_base_values() {
        let p = params(0.0, 0.0, 1.0);
        let rd0 = rodrigues_data(&p, 0, true).unwrap();
        assert!((rd0.c_n - 3.0).abs() < 1e-14);
        assert!((rd0.d_n - 1.0).abs() < 1e-14);
        let rd1 = rodrigues_data(&p, 1, true).unwrap();
        assert!((rd1.c_n + 0.75).abs() < 1e-14);
        for n in 0..6 {
            let rd = rodrigues_data(&p, n, true).unwrap();
            assert!(rd
                .leading_coefficient(&p)
                .approx_eq(&CMat2::identity(), 1e-12));
        }
    }

    #[test]
    fn rodrigues_r0_annihilates_j0() {
        for &(a, b, v) in &TRIPLES {
            let p = params(a, b, v);
            let j = InverseWeightFactors::new(&p).unwrap();
            for n in 0..8 {
                let rd = rodrigues_data(&p, n, true).unwrap();
                let prod = rd.r0.mul(&j.j0);
                assert!(prod.norm_max() <= 1e-14 * rd.r0.norm_max().max(1.0));
            }
        }
    }

    #[test]
    fn rodrigues_degree_zero_and_one() {
        let p = params(0.0, 0.0, 1.0);
        assert!(build_rodrigues(&p, 0)
            .unwrap()
            .approx_eq(&MatrixPolynomial::identity(), 1e-12));
        // P_1 = t I - B_0 from the recurrence
        let (_, b0) = recurrence_coefficients(&p, 0);
        assert!(b0.approx_eq(
            &CMat2::from_real([[0.5, 0.2], [1.0 / 3.0, 0.5]]),
            1e-14
        ));
        let p1 = build_rodrigues(&p, 1).unwrap();
        let expect = MatrixPolynomial::new(vec![b0.neg(), CMat2::identity()]);
        assert!(p1.approx_eq(&expect, 1e-12));
    }

    #[test]
    fn rodrigues_numerator_division_oracle() {
        // quotient evaluated at interior points agrees with numerator values
        // divided by t(1-t)^2
        let p = params(0.0, 0.0, 1.0);
        let q = rodrigues_numerator(&p, 2).unwrap();
        assert_eq!(q.degree(), 5);
        let quot = q
            .divide_scalar(&ScalarPoly::new(vec![0.0, 1.0, -2.0, 1.0]), 1e-10)
            .unwrap();
        assert_eq!(quot.degree(), 2);
        for &t in &[0.11, 0.29, 0.5, 0.71, 0.93] {
            let s = t * (1.0 - t) * (1.0 - t);
            let direct = q.eval_re(t).scale_re(1.0 / s);
            assert!(quot.eval_re(t).approx_eq(&direct, 1e-11 * direct.norm_max().max(1.0)));
        }
    }

    #[test]
    fn recurrence_oracle_checks() {
        let p = params(0.0, 0.0, 1.0);
        let w = WeightMatrix::new(&p, 0).unwrap();
        // B_0 = <t P_0, P_0> norm^{-1} by quadrature
        let it = MatrixPolynomial::monomial(CMat2::identity(), 1);
        let ident = MatrixPolynomial::identity();
        let tp0 = inner_product(&it, &ident, &w).unwrap();
        let b0_quad = tp0.mul(&norm_matrix(&p, 0).unwrap().inverse().unwrap());
        let (_, b0) = recurrence_coefficients(&p, 0);
        assert!(b0.approx_eq(&b0_quad, 1e-12));
        // A_1 = norm_1 norm_0^{-1}
        let (a1, _) = recurrence_coefficients(&p, 1);
        assert!(a1.approx_eq(&CMat2::diag_real(0.05, 7.0 / 300.0), 1e-14));
        let a1_norms = norm_matrix(&p, 1)
            .unwrap()
            .mul(&norm_matrix(&p, 0).unwrap().inverse().unwrap());
        assert!(a1.approx_eq(&a1_norms, 1e-13));
        // A_n nonsingular up to n = 12
        for &(a, b, v) in &TRIPLES {
            let q = params(a, b, v);
            for n in 1..=12u32 {
                let (an, _) = recurrence_coefficients(&q, n);
                assert!(an.det().norm() > 1e-12);
            }
        }
    }

    #[test]
    fn norm_matrix_values_and_quadrature() {
        let p = params(0.0, 0.0, 1.0);
        let n0 = norm_matrix(&p, 0).unwrap();
        assert!(n0.approx_eq(&CMat2::diag_real(0.5, 5.0 / 6.0), 1e-14));
        let q = params(1.0, 2.0, -2.5);
        let fam = build_recurrence(&q, 0, 3).unwrap();
        let w = fam.weight().unwrap();
        let quad = inner_product(fam.polynomial(3), fam.polynomial(3), &w).unwrap();
        let closed = norm_matrix(&q, 3).unwrap();
        assert!(quad.approx_eq(&closed, 1e-10 * closed.norm_max()));
        // off-diagonals identically zero
        assert_eq!(closed.m[0][1].norm(), 0.0);
        assert_eq!(closed.m[1][0].norm(), 0.0);
    }

    #[test]
    fn inner_product_basics() {
        let p = params(0.0, 0.0, 1.0);
        let w = WeightMatrix::new(&p, 0).unwrap();
        let ident = MatrixPolynomial::identity();
        let ii = inner_product(&ident, &ident, &w).unwrap();
        assert!(ii.approx_eq(&CMat2::diag_real(0.5, 5.0 / 6.0), 1e-13));
        // Hermitian pairing
        let mut rng = StdRng::seed_from_u64(5);
        let a = rand_poly(&mut rng, 3);
        let b = rand_poly(&mut rng, 2);
        let ab = inner_product(&a, &b, &w).unwrap();
        let ba = inner_product(&b, &a, &w).unwrap();
        assert!(ab.approx_eq(&ba.adjoint(), 1e-12 * ab.norm_max().max(1.0)));
        // orthogonality of distinct members
        let fam = build_recurrence(&p, 0, 3).unwrap();
        let ip = inner_product(fam.polynomial(2), fam.polynomial(3), &w).unwrap();
        assert!(ip.norm_max() <= 1e-10);
    }

    #[test]
    fn tri_construction_agreement_small() {
        let p = params(1.0, 2.0, -2.5);
        let fam = build_recurrence(&p, 0, 8).unwrap();
        for n in 0..=8u32 {
            let rodrigues = build_rodrigues(&p, n).unwrap();
            let hyper = build_hypergeometric(&p, 0, n).unwrap();
            let rec = fam.polynomial(n as usize);
            let scale = rec.norm_max().max(1.0);
            assert!(
                rodrigues.approx_eq(rec, 1e-8 * scale),
                "rodrigues vs recurrence at n = {n}"
            );
            assert!(
                hyper.approx_eq(rec, 1e-8 * scale),
                "hypergeometric vs recurrence at n = {n}"
            );
        }
    }

    #[test]
    fn hypergeometric_degenerate_and_guard() {
        let p = params(0.0, 0.0, 1.0);
        assert!(build_hypergeometric(&p, 2, 2)
            .unwrap()
            .approx_eq(&MatrixPolynomial::identity(), 1e-13));
        assert!(build_hypergeometric(&p, 2, 1).is_err());
        // eigenvalue separation keeps every bracket invertible
        for k in 0..=2u32 {
            let mut seen = Vec::new();
            for n in k..=12 + k {
                let e = hypergeometric_eigenvalue(&p, k, n);
                seen.push(e.m[0][0].re);
                seen.push(e.m[1][1].re);
            }
            for i in 0..seen.len() {
                for j in 0..i {
                    assert!((seen[i] - seen[j]).abs() > 1e-9 || i == j);
                }
            }
        }
    }

    #[test]
    fn eigenfunction_property() {
        for &(a, b, v) in &TRIPLES {
            let p = params(a, b, v);
            let d = hypergeometric_operator(&p, 0).unwrap();
            let fam = build_recurrence(&p, 0, 12).unwrap();
            for n in 0..=12usize {
                let pn = fam.polynomial(n);
                let lhs = d.apply(pn);
                let rhs = pn.lmul_mat(&hypergeometric_eigenvalue(&p, 0, n as u32));
                let scale = rhs.norm_max().max(1.0);
                assert!(lhs.approx_eq(&rhs, 1e-9 * scale), "(a,b,v)=({a},{b},{v}) n={n}");
            }
        }
    }

    #[test]
    fn level_k_eigenfunction_property() {
        let p = params(0.5, 0.5, 1.5);
        for k in 0..=2u32 {
            let d = hypergeometric_operator(&p, k).unwrap();
            let fam = build_recurrence(&p, k, 10).unwrap();
            let u = CMat2::identity().scale_re(p.alpha + p.beta + 4.0);
            for m in 0..=10usize {
                let n = m as u32 + k;
                let pn = fam.polynomial(m);
                let lhs = d.apply(pn);
                // spelled both ways: the closed form and Lambda_n + kU + k(k-1)I
                let eig = hypergeometric_eigenvalue(&p, k, n);
                let base = hypergeometric_eigenvalue(&p, 0, n);
                let alt = base
                    .add(&u.scale_re(k as f64))
                    .add(&CMat2::identity().scale_re((k * (k.saturating_sub(1))) as f64));
                assert!(eig.approx_eq(&alt, 1e-10 * eig.norm_max().max(1.0)));
                let rhs = pn.lmul_mat(&eig);
                assert!(lhs.approx_eq(&rhs, 1e-9 * rhs.norm_max().max(1.0)), "k={k} m={m}");
            }
        }
    }

    #[test]
    fn orthonormal_members_and_recurrence() {
        let p = params(0.0, 0.0, 1.0);
        let fam = orthonormal_family(&p, 9).unwrap();
        // Ptilde_0 = diag(sqrt 2, sqrt(6/5))
        assert!(fam.polys[0].coeff(0).approx_eq(
            &CMat2::diag_real(2f64.sqrt(), (6.0f64 / 5.0).sqrt()),
            1e-13
        ));
        let w = WeightMatrix::new(&p, 0).unwrap();
        for n in 0..=8usize {
            let ip = inner_product(&fam.polys[n], &fam.polys[n], &w).unwrap();
            assert!(ip.approx_eq(&CMat2::identity(), 1e-10), "n={n}");
        }
        // recurrence t Ptilde_n = Atilde_{n+1} Ptilde_{n+1} + Btilde_n Ptilde_n
        //                        + (Atilde_n)^* Ptilde_{n-1}
        for n in 1..=8usize {
            let lhs = fam.polys[n].shift_up(1);
            let rhs = fam.polys[n + 1]
                .lmul_mat(&fam.a_tilde[n + 1])
                .add(&fam.polys[n].lmul_mat(&fam.b_tilde[n]))
                .add(&fam.polys[n - 1].lmul_mat(&fam.a_tilde[n].adjoint()));
            assert!(lhs.approx_eq(&rhs, 1e-10 * lhs.norm_max()), "n={n}");
        }
        // Btilde is Hermitian
        let q = params(1.0, 2.0, -2.5);
        let fam_q = orthonormal_family(&q, 2).unwrap();
        assert!(fam_q.b_tilde[0].hermitian_defect() <= 1e-12);
    }

    #[test]
    fn prop_a_and_prop_b_identities() {
        for &(a, b, v) in &TRIPLES {
            let p = params(a, b, v);
            for n in 1..=10u32 {
                let (an, _) = recurrence_coefficients(&p, n);
                let lhs = an.mul(&norm_matrix(&p, n - 1).unwrap());
                let rhs = norm_matrix(&p, n).unwrap();
                assert!(lhs.approx_eq(&rhs, 1e-11 * rhs.norm_max()), "propA n={n}");
                let (_, bn) = recurrence_coefficients(&p, n);
                let bh = bn.mul(&norm_matrix(&p, n).unwrap());
                assert!(bh.hermitian_defect() <= 1e-11 * bh.norm_max(), "propB n={n}");
            }
        }
    }

    #[test]
    fn integration_by_parts_norm_route() {
        // (-1)^n n! [B(a+n+3, b+n+1) R2 + B(a+n+2, b+n+1) R1 + B(a+n+1, b+n+1) R0]
        for &(a, b, v) in &TRIPLES {
            let p = params(a, b, v);
            for n in 0..=8u32 {
                let rd = rodrigues_data(&p, n, true).unwrap();
                let nf = n as f64;
                let b_low = beta_function(a + nf + 1.0, b + nf + 1.0).unwrap();
                let b_mid = b_low * (a + nf + 1.0) / (a + b + 2.0 * nf + 2.0);
                let b_high = b_mid * (a + nf + 2.0) / (a + b + 2.0 * nf + 3.0);
                let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                let combo = rd
                    .r2
                    .scale_re(b_high)
                    .add(&rd.r1.scale_re(b_mid))
                    .add(&rd.r0.scale_re(b_low))
                    .scale_re(sign * factorial(n));
                let closed = norm_matrix(&p, n).unwrap();
                assert!(
                    combo.approx_eq(&closed, 1e-11 * closed.norm_max()),
                    "(a,b,v)=({a},{b},{v}) n={n}"
                );
            }
        }
    }

    #[test]
    fn alternative_rodrigues_route_by_interpolation() {
        // evaluate the explicit Jacobi form (a function, not a division) at
        // Chebyshev points and interpolate; must reproduce the division route
        for &(a, b, v) in &TRIPLES {
            let p = params(a, b, v);
            for n in [1u32, 3, 6] {
                // interpolate on a spread Chebyshev grid, then corroborate
                // on a denser one
                let interp_pts = chebyshev_points(n as usize + 1, 0.05, 0.95);
                let interp_vals: Vec<CMat2> = interp_pts
                    .iter()
                    .map(|&t| rodrigues_function_eval(&p, n, t).unwrap())
                    .collect();
                let interp = interpolate_matrix(&interp_pts, &interp_vals);
                let direct = build_rodrigues(&p, n).unwrap();
                assert!(
                    interp.approx_eq(&direct, 1e-8 * direct.norm_max().max(1.0)),
                    "(a,b,v)=({a},{b},{v}) n={n}"
                );
                for t in chebyshev_points(2 * n as usize + 4, 0.05, 0.95) {
                    let val = rodrigues_function_eval(&p, n, t).unwrap();
                    assert!(interp
                        .eval_re(t)
                        .approx_eq(&val, 1e-8 * val.norm_max().max(1.0)));
                }
            }
        }
    }

    #[test]
    fn christoffel_darboux_identities() {
        let p = params(0.0, 0.0, 1.0);
        // single-term case telescopes to the inverse squared norm
        let (lhs0, rhs0) = christoffel_darboux_monic(&p, 0, 0.4, 0.6).unwrap();
        let inv0 = norm_matrix(&p, 0).unwrap().inverse().unwrap();
        assert!(lhs0.approx_eq(&inv0, 1e-12));
        assert!(rhs0.approx_eq(&inv0, 1e-9));
        let (lhs, rhs) = christoffel_darboux(&p, 5, 0.3, 0.7).unwrap();
        assert!(lhs.approx_eq(&rhs, 1e-9 * lhs.norm_max().max(1.0)));
        let (lhs_m, rhs_m) = christoffel_darboux_monic(&p, 5, 0.3, 0.7).unwrap();
        assert!(lhs_m.approx_eq(&rhs_m, 1e-9 * lhs_m.norm_max().max(1.0)));
        match christoffel_darboux(&p, 3, 0.5, 0.5 + 1e-9) {
            Err(Error::DegenerateInput(_)) => {}
            other => panic!("expected DegenerateInput, got {other:?}"),
        }
    }

    #[test]
    fn derivative_family_matches_shifted_family() {
        let p = params(0.0, 0.0, 1.0);
        assert!(derivative_family(&p, 2, 2)
            .unwrap()
            .approx_eq(&MatrixPolynomial::identity(), 1e-13));
        let d13 = derivative_family(&p, 1, 3).unwrap();
        let shifted_fam = build_recurrence(&p.shifted(1).unwrap(), 0, 2).unwrap();
        assert!(d13.approx_eq(shifted_fam.polynomial(2), 1e-9 * d13.norm_max().max(1.0)));
    }

    #[test]
    fn derivative_family_subleading_coefficients() {
        // closed forms for the two coefficients below the leading one; the
        // (2,2) entry of the first carries kappa_pm (its printed companion
        // entry is the (1,1) one with kappa_mm)
        for &(a, b, v) in &TRIPLES {
            let p = params(a, b, v);
            for k in 0..=2u32 {
                for n in (k + 2)..=(k + 6) {
                    let poly = derivative_family(&p, k, n).unwrap();
                    let m = (n - k) as f64;
                    let nf = n as f64;
                    let (kpp, kmp, kpm, kmm) =
                        (p.kappa_pp(), p.kappa_mp(), p.kappa_pm(), p.kappa_mm());
                    let ab = a + b;
                    let c1 = CMat2::from_real([
                        [
                            -((a + nf) * v - kmm) / (ab + 2.0 * nf + 2.0),
                            kmm / (kpp + 2.0 * nf + 2.0),
                        ],
                        [
                            -kpm / (kmp + 2.0 * nf + 2.0),
                            -((a + nf) * v + kpm) / (ab + 2.0 * nf + 2.0),
                        ],
                    ])
                    .scale_re(m / v);
                    let got1 = poly.coeff((n - k - 1) as usize);
                    assert!(
                        got1.approx_eq(&c1, 1e-9 * c1.norm_max().max(1.0)),
                        "(a,b,v)=({a},{b},{v}) k={k} n={n} first subleading"
                    );

                    let term_a = CMat2::diag_real(
                        (kpp + 2.0 * nf) / (kpp + 2.0 * nf + 2.0),
                        (kmp + 2.0 * nf) / (kmp + 2.0 * nf + 2.0),
                    )
                    .scale_re((a + nf) / (2.0 * (ab + 2.0 * nf + 1.0)));
                    let term_b = CMat2::diag_real(
                        1.0 / (kpp + 2.0 * nf + 2.0),
                        1.0 / (kmp + 2.0 * nf + 2.0),
                    )
                    .scale_re((nf + b + 1.0) / (ab + 2.0 * nf + 1.0));
                    let term_c = CMat2::from_real([
                        [
                            -(a - b) / (kpp + 2.0 * nf + 2.0),
                            -kmm / (kpp + 2.0 * nf + 2.0),
                        ],
                        [
                            kpm / (kmp + 2.0 * nf + 2.0),
                            (a - b) / (kmp + 2.0 * nf + 2.0),
                        ],
                    ])
                    .scale_re(1.0 / v);
                    let c2 = term_a
                        .add(&term_b)
                        .add(&term_c)
                        .scale_re(m * (m - 1.0) * (a + nf + 1.0) / (ab + 2.0 * nf + 2.0));
                    let got2 = poly.coeff((n - k - 2) as usize);
                    assert!(
                        got2.approx_eq(&c2, 1e-9 * c2.norm_max().max(1.0)),
                        "(a,b,v)=({a},{b},{v}) k={k} n={n} second subleading"
                    );
                }
            }
        }
    }

    #[test]
    fn adjoint_identity_for_shift_pair() {
        // <P', Q>_{k+1} = -<P, Q eta^{(k)}>_k
        let mut rng = StdRng::seed_from_u64(99);
        for &(a, b, v) in &TRIPLES {
            let p = params(a, b, v);
            for k in 0..=1u32 {
                let (ddt, eta) = lowering_raising_pair(&p, k).unwrap();
                let wk = WeightMatrix::new(&p, k).unwrap();
                let wk1 = WeightMatrix::new(&p, k + 1).unwrap();
                // degenerate case: constant P
                let ident = MatrixPolynomial::identity();
                let lhs0 = inner_product(&ddt.apply(&ident), &ident, &wk1).unwrap();
                assert!(lhs0.norm_max() <= 1e-14);
                for _ in 0..4 {
                    let pp = rand_poly(&mut rng, 4);
                    let qq = rand_poly(&mut rng, 4);
                    let lhs = inner_product(&ddt.apply(&pp), &qq, &wk1).unwrap();
                    let rhs = inner_product(&pp, &eta.apply(&qq), &wk).unwrap().neg();
                    let scale = lhs.norm_max().max(rhs.norm_max()).max(1.0);
                    assert!(lhs.approx_eq(&rhs, 1e-10 * scale), "k={k}");
                }
            }
        }
        // explicit case P = tI, Q = I at the base triple
        let p = params(0.0, 0.0, 1.0);
        let (ddt, eta) = lowering_raising_pair(&p, 0).unwrap();
        let w0 = WeightMatrix::new(&p, 0).unwrap();
        let w1 = WeightMatrix::new(&p, 1).unwrap();
        let it = MatrixPolynomial::monomial(CMat2::identity(), 1);
        let ident = MatrixPolynomial::identity();
        let lhs = inner_product(&ddt.apply(&it), &ident, &w1).unwrap();
        let rhs = inner_product(&it, &eta.apply(&ident), &w0).unwrap().neg();
        assert!(lhs.approx_eq(&rhs, 1e-10 * lhs.norm_max().max(1.0)));
    }

    #[test]
    fn raising_chain_products() {
        let p = params(0.0, 0.0, 1.0);
        // C_1^0 = diag(-20/3, -12)
        let c10 = shift_chain_scale(&p, 0, 1).unwrap();
        assert!(c10.approx_eq(&CMat2::diag_real(-20.0 / 3.0, -12.0), 1e-13));
        // raising the identity once gives C_1^0 P_1
        let eta0 = shift_operator(&p, 0).unwrap();
        let raised = eta0.apply(&MatrixPolynomial::identity());
        let fam = build_recurrence(&p, 0, 1).unwrap();
        let expect = fam.polynomial(1).lmul_mat(&c10);
        assert!(raised.approx_eq(&expect, 1e-12 * expect.norm_max()));
        // sign pattern: (-1)^n times a positive diagonal
        for n in 1..=5u32 {
            let c = shift_chain_scale(&p, 0, n).unwrap();
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            assert!(sign * c.m[0][0].re > 0.0 && sign * c.m[1][1].re > 0.0);
        }
    }

    #[test]
    fn shift_rodrigues_matches_derivative_family() {
        for &(a, b, v) in &TRIPLES {
            let p = params(a, b, v);
            for k in 0..=2u32 {
                for n in 1..=4u32 {
                    let chain = shift_rodrigues(&p, k, n).unwrap();
                    let direct = derivative_family(&p, k, n + k).unwrap();
                    let scale = direct.norm_max().max(1.0);
                    assert!(
                        chain.approx_eq(&direct, 1e-9 * scale),
                        "(a,b,v)=({a},{b},{v}) k={k} n={n}"
                    );
                }
            }
        }
        let p = params(0.0, 0.0, 1.0);
        let chain = shift_rodrigues(&p, 1, 3).unwrap();
        let direct = derivative_family(&p, 1, 4).unwrap();
        assert!(chain.approx_eq(&direct, 1e-9 * direct.norm_max()));
    }

    #[test]
    fn weight_derivative_rodrigues_agreement() {
        for &(a, b, v) in &TRIPLES {
            let p = params(a, b, v);
            for k in 0..=1u32 {
                for n in 1..=3u32 {
                    let poly = shift_rodrigues(&p, k, n).unwrap();
                    for &t in &[0.2, 0.45, 0.8] {
                        let rhs = weight_derivative_rodrigues_eval(&p, k, n, t).unwrap();
                        let lhs = poly.eval_re(t);
                        assert!(
                            lhs.approx_eq(&rhs, 1e-9 * lhs.norm_max().max(1.0)),
                            "(a,b,v)=({a},{b},{v}) k={k} n={n} t={t}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn shift_symmetric_operator_eigenvalues() {
        let p = params(0.5, 0.5, 1.5);
        for k in 0..=2u32 {
            let e = shift_symmetric_operator(&p, k).unwrap();
            let fam = build_recurrence(&p, k, 8).unwrap();
            for m in 0..=8usize {
                let lhs = e.apply(fam.polynomial(m));
                let eig = shift_symmetric_eigenvalue(&p, k, m as u32).unwrap();
                let rhs = fam.polynomial(m).lmul_mat(&eig);
                let scale = lhs.norm_max().max(rhs.norm_max()).max(1.0);
                assert!(lhs.approx_eq(&rhs, 1e-9 * scale), "k={k} m={m}");
            }
        }
    }

    #[test]
    fn shift_and_hypergeometric_operators_commute() {
        let p = params(0.0, 0.0, 1.0);
        let e0 = shift_symmetric_operator(&p, 0).unwrap();
        let d0 = hypergeometric_operator(&p, 0).unwrap();
        let fam = build_recurrence(&p, 0, 8).unwrap();
        for n in 0..=8usize {
            let pn = fam.polynomial(n);
            let ab = e0.compose(&d0).apply(pn);
            let ba = d0.compose(&e0).apply(pn);
            let scale = ab.norm_max().max(ba.norm_max()).max(1.0);
            assert!(ab.approx_eq(&ba, 1e-8 * scale), "n={n}");
        }
    }
}
