//! The three-parameter weight family, its shift hierarchy, the closed-form
//! inverse factors and the Pearson data linking consecutive levels.
//!
//! A weight at level k is t^{alpha+k} (1-t)^{beta+k} times a quadratic
//! matrix polynomial; level k of the (alpha, beta, v) family coincides with
//! level 0 of (alpha+k, beta+k, v) and both construction routes are kept and
//! cross-checked.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::mat2::{CMat2, MatrixPolynomial};

/// The parameter triple with the four recurring kappa combinations
/// kappa(sv, sb) = alpha + sv*v + sb*beta precomputed. Naming: `p`/`m` give
/// the signs of v and beta in that order, so `kappa_pm` is alpha + v - beta.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Parameters {
    pub alpha: f64,
    pub beta: f64,
    pub v: f64,
    #[serde(skip)]
    k_pp: f64,
    #[serde(skip)]
    k_mp: f64,
    #[serde(skip)]
    k_pm: f64,
    #[serde(skip)]
    k_mm: f64,
    /// False when the triple only satisfies the weaker level-k constraint
    /// used to build shifted objects.
    #[serde(skip)]
    pub base_valid: bool,
}

impl Parameters {
    /// Validates the base constraints alpha, beta > -1 and
    /// |alpha - beta| < |v| < alpha + beta + 2.
    pub fn new(alpha: f64, beta: f64, v: f64) -> Result<Self> {
        Self::check_level(alpha, beta, v, 0)?;
        Ok(Self::assemble(alpha, beta, v, true))
    }

    /// Accepts any triple meeting the weaker level-k constraint
    /// |alpha - beta| < |v| < alpha + beta + 2(k+1) with alpha+k, beta+k > -1.
    /// The result is flagged when the base (k = 0) constraint fails.
    pub fn new_at_level(alpha: f64, beta: f64, v: f64, k: u32) -> Result<Self> {
        Self::check_level(alpha, beta, v, k)?;
        let base = Self::check_level(alpha, beta, v, 0).is_ok();
        Ok(Self::assemble(alpha, beta, v, base))
    }

    fn assemble(alpha: f64, beta: f64, v: f64, base_valid: bool) -> Self {
        Parameters {
            alpha,
            beta,
            v,
            k_pp: alpha + v + beta,
            k_mp: alpha - v + beta,
            k_pm: alpha + v - beta,
            k_mm: alpha - v - beta,
            base_valid,
        }
    }

    // negated comparisons throughout so NaN inputs fail validation
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    fn check_level(alpha: f64, beta: f64, v: f64, k: u32) -> Result<()> {
        let kf = k as f64;
        if !(alpha + kf > -1.0) {
            return Err(Error::InvalidParameter(format!(
                "alpha + k must exceed -1 (alpha = {alpha}, k = {k})"
            )));
        }
        if !(beta + kf > -1.0) {
            return Err(Error::InvalidParameter(format!(
                "beta + k must exceed -1 (beta = {beta}, k = {k})"
            )));
        }
        if !((alpha - beta).abs() < v.abs()) {
            return Err(Error::InvalidParameter(format!(
                "|alpha - beta| < |v| is violated: |{alpha} - {beta}| >= |{v}|"
            )));
        }
        if !(v.abs() < alpha + beta + 2.0 * (kf + 1.0)) {
            return Err(Error::InvalidParameter(format!(
                "|v| < alpha + beta + 2(k+1) is violated: |{v}| >= {} (k = {k})",
                alpha + beta + 2.0 * (kf + 1.0)
            )));
        }
        Ok(())
    }

    /// kappa_{v, beta} = alpha + v + beta
    pub fn kappa_pp(&self) -> f64 {
        self.k_pp
    }

    /// kappa_{-v, beta} = alpha - v + beta
    pub fn kappa_mp(&self) -> f64 {
        self.k_mp
    }

    /// kappa_{v, -beta} = alpha + v - beta
    pub fn kappa_pm(&self) -> f64 {
        self.k_pm
    }

    /// kappa_{-v, -beta} = alpha - v - beta
    pub fn kappa_mm(&self) -> f64 {
        self.k_mm
    }

    /// Generic accessor: alpha + sv*v + sb*beta for sv, sb in {+1, -1}.
    pub fn kappa(&self, sv: i8, sb: i8) -> f64 {
        match (sv >= 0, sb >= 0) {
            (true, true) => self.k_pp,
            (false, true) => self.k_mp,
            (true, false) => self.k_pm,
            (false, false) => self.k_mm,
        }
    }

    /// Parameters shifted to (alpha + k, beta + k, v); valid at base level
    /// exactly when self is valid at level k.
    pub fn shifted(&self, k: u32) -> Result<Parameters> {
        Parameters::new(self.alpha + k as f64, self.beta + k as f64, self.v)
    }

    pub fn valid_at_level(&self, k: u32) -> Result<()> {
        Self::check_level(self.alpha, self.beta, self.v, k)
    }
}

/// Level-k weight matrix: scalar part t^{alpha+k}(1-t)^{beta+k} times the
/// quadratic polynomial part.
#[derive(Debug, Clone, Serialize)]
pub struct WeightMatrix {
    pub params: Parameters,
    pub k: u32,
    /// Exponents (alpha + k, beta + k) of the scalar Jacobi factor.
    pub exponents: (f64, f64),
    /// The quadratic polynomial part; Hermitian-valued on the real line.
    pub polynomial_part: MatrixPolynomial,
}

impl WeightMatrix {
    pub fn new(params: &Parameters, k: u32) -> Result<Self> {
        params.valid_at_level(k)?;
        let kf = k as f64;
        let (a, b, v) = (params.alpha, params.beta, params.v);
        let w2 = CMat2::diag_real(
            v * (params.kappa_pp() + 2.0 * (kf + 1.0)) / params.kappa_pm(),
            -v * (params.kappa_mp() + 2.0 * (kf + 1.0)) / params.kappa_mm(),
        );
        // the diagonal of the 2(k+1) correction enters with a minus sign so
        // that level k reproduces the base weight under the shift
        // (alpha, beta) -> (alpha + k, beta + k)
        let w1 = CMat2::from_real([
            [-params.kappa_pp() - 2.0 * (kf + 1.0), a + b + 2.0 * (kf + 1.0)],
            [a + b + 2.0 * (kf + 1.0), -params.kappa_mp() - 2.0 * (kf + 1.0)],
        ]);
        let w0 = CMat2::from_real([[1.0, -1.0], [-1.0, 1.0]]).scale_re(a + kf + 1.0);
        let poly = MatrixPolynomial::new(vec![w0, w1, w2]);

        let weight = WeightMatrix {
            params: *params,
            k,
            exponents: (a + kf, b + kf),
            polynomial_part: poly,
        };
        weight.spot_check_positive()?;
        Ok(weight)
    }

    /// Coefficients (W_0, W_1, W_2) of the polynomial part.
    pub fn w_coeffs(&self) -> (CMat2, CMat2, CMat2) {
        (
            self.polynomial_part.coeff(0),
            self.polynomial_part.coeff(1),
            self.polynomial_part.coeff(2),
        )
    }

    /// Polynomial part evaluated at a real point.
    pub fn eval_tilde(&self, t: f64) -> CMat2 {
        self.polynomial_part.eval_re(t)
    }

    /// Full weight value at an interior point.
    pub fn eval(&self, t: f64) -> CMat2 {
        let s = t.powf(self.exponents.0) * (1.0 - t).powf(self.exponents.1);
        self.eval_tilde(t).scale_re(s)
    }

    /// Scalar factor t^{a}(1-t)^{b} at an interior point.
    pub fn scalar_factor(&self, t: f64) -> f64 {
        t.powf(self.exponents.0) * (1.0 - t).powf(self.exponents.1)
    }

    /// Bracket polynomial G with W'(t) = t^{a-1}(1-t)^{b-1} G(t), where
    /// (a, b) are the exponents: G = (a(1-t) - b t) Wtilde + t(1-t) Wtilde'.
    pub fn derivative_bracket(&self) -> MatrixPolynomial {
        let (a, b) = self.exponents;
        let lin = crate::mat2::ScalarPoly::new(vec![a, -(a + b)]);
        let t1t = crate::mat2::ScalarPoly::new(vec![0.0, 1.0, -1.0]);
        self.polynomial_part
            .mul_scalar_poly(&lin)
            .add(&self.polynomial_part.derivative(1).mul_scalar_poly(&t1t))
    }

    fn spot_check_positive(&self) -> Result<()> {
        for &t in &[0.1, 0.3, 0.5, 0.7, 0.9] {
            let w = self.eval_tilde(t);
            let herm = w.hermitian_defect();
            let tr = w.trace().re;
            let det = w.det().re;
            if herm > 1e-10 * w.norm_max() || tr <= 0.0 || det <= 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "weight polynomial part fails positivity at t = {t} \
                     (trace {tr:.3e}, det {det:.3e})"
                )));
            }
        }
        Ok(())
    }
}

/// The constant matrices (J2, J1, J0) with
/// (W(t))^{-1} = t^{-alpha-2}(1-t)^{-beta-2} (J2 t^2 + J1 t + J0).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct InverseWeightFactors {
    pub j2: CMat2,
    pub j1: CMat2,
    pub j0: CMat2,
}

impl InverseWeightFactors {
    pub fn new(params: &Parameters) -> Result<Self> {
        params.valid_at_level(0)?;
        let v = params.v;
        let (kpp, kmp, kpm, kmm) = (
            params.kappa_pp(),
            params.kappa_mp(),
            params.kappa_pm(),
            params.kappa_mm(),
        );
        let j2 = CMat2::diag_real(kpm / (v * (kpp + 2.0)), -kmm / (v * (kmp + 2.0)));
        let cross = (params.alpha + params.beta + 2.0) / ((kpp + 2.0) * (kmp + 2.0));
        let j1 = CMat2::from_real([[1.0 / (kpp + 2.0), cross], [cross, 1.0 / (kmp + 2.0)]])
            .scale_re(kpm * kmm / (v * v));
        let j0 = CMat2::from_real([[1.0, 1.0], [1.0, 1.0]])
            .scale_re(-kpm * kmm * (params.alpha + 1.0) / (v * v * (kpp + 2.0) * (kmp + 2.0)));
        Ok(InverseWeightFactors { j2, j1, j0 })
    }

    /// J2 t^2 + J1 t + J0 as a polynomial.
    pub fn poly(&self) -> MatrixPolynomial {
        MatrixPolynomial::new(vec![self.j0, self.j1, self.j2])
    }

    /// J2 t + J1 (the factor multiplying the constant Rodrigues matrix,
    /// where the J0 term is annihilated).
    pub fn poly_linear(&self) -> MatrixPolynomial {
        MatrixPolynomial::new(vec![self.j1, self.j2])
    }
}

/// Pearson pair (Phi, Psi) with (W^{(k)} Phi^{(k)})' = W^{(k)} Psi^{(k)}.
#[derive(Debug, Clone, Serialize)]
pub struct PearsonData {
    pub k: u32,
    /// Degree-2 polynomial A2 t^2 + A1 t + A0.
    pub phi: MatrixPolynomial,
    /// Degree-1 polynomial B1 t + B0.
    pub psi: MatrixPolynomial,
}

impl PearsonData {
    pub fn new(params: &Parameters, k: u32) -> Result<Self> {
        params.valid_at_level(k)?;
        params.valid_at_level(k + 1)?;
        let kf = k as f64;
        let v = params.v;
        let (kpp, kmp, kpm, kmm) = (
            params.kappa_pp(),
            params.kappa_mp(),
            params.kappa_pm(),
            params.kappa_mm(),
        );
        let dp = kpp + 2.0 * (kf + 1.0);
        let dm = kmp + 2.0 * (kf + 1.0);

        let a2 = CMat2::diag_real(-(kpp + 2.0 * (kf + 2.0)) / dp, -(kmp + 2.0 * (kf + 2.0)) / dm);
        let a1 = CMat2::from_real([[0.0, kpm], [kmm, 0.0]])
            .scale_re(2.0 / (dm * dp))
            .sub(&a2);
        let a0 = CMat2::from_real([[-1.0, 1.0], [-1.0, 1.0]]).scale_re(kpm * kmm / (v * dm * dp));
        let b1 = a2.scale_re(params.alpha + params.beta + 4.0 + 2.0 * kf);
        let b0 = {
            let left = CMat2::diag_real(-kmm, kpm)
                .scale_re(-1.0 / v)
                .sub(&CMat2::identity().scale_re(params.alpha + kf + 1.0))
                .mul(&a2);
            // this bracket is (alpha+beta+2k+4) A1 + B1, equivalently
            // (alpha+beta+2k+4)(A1 + A2), which has zero diagonal; an extra
            // 1/v on the A1 term would break the Pearson equation for every
            // v != 1 (cross-checked against the weight-ladder derivative)
            let mid = a1
                .scale_re(params.alpha + params.beta + 2.0 * kf + 4.0)
                .add(&b1);
            let right = CMat2::diag_real(-dm, dp);
            left.add(&mid.mul(&right).scale_re(1.0 / (2.0 * v)))
        };

        Ok(PearsonData {
            k,
            phi: MatrixPolynomial::new(vec![a0, a1, a2]),
            psi: MatrixPolynomial::new(vec![b0, b1]),
        })
    }

    pub fn a2(&self) -> CMat2 {
        self.phi.coeff(2)
    }

    pub fn a1(&self) -> CMat2 {
        self.phi.coeff(1)
    }

    pub fn a0(&self) -> CMat2 {
        self.phi.coeff(0)
    }

    pub fn b1(&self) -> CMat2 {
        self.psi.coeff(1)
    }

    pub fn b0(&self) -> CMat2 {
        self.psi.coeff(0)
    }
}

/// Max normalized residual of the factored Pearson identity at `samples`
/// interior points. The identity compares derivative-bracket times Phi with
/// t(1-t) Wtilde times the shifted Psi combination, which keeps every factor
/// polynomial and avoids the endpoint singularities of raw derivatives.
pub fn pearson_residual(params: &Parameters, k: u32, samples: usize) -> Result<f64> {
    let w = WeightMatrix::new(params, k)?;
    let pearson = PearsonData::new(params, k)?;
    let g = w.derivative_bracket();
    let lhs = g.mul(&pearson.phi);
    let shift_poly = {
        let b1m2a2 = pearson.b1().sub(&pearson.a2().scale_re(2.0));
        let b0ma1 = pearson.b0().sub(&pearson.a1());
        MatrixPolynomial::new(vec![b0ma1, b1m2a2])
    };
    let t1t = crate::mat2::ScalarPoly::new(vec![0.0, 1.0, -1.0]);
    let rhs = w
        .polynomial_part
        .mul_scalar_poly(&t1t)
        .mul(&shift_poly);
    let res_poly = lhs.sub(&rhs);
    let scale = lhs.norm_max().max(rhs.norm_max()).max(1.0);
    let mut worst: f64 = 0.0;
    for i in 1..=samples {
        let t = i as f64 / (samples as f64 + 1.0);
        worst = worst.max(res_poly.eval_re(t).norm_max());
    }
    Ok(worst / scale)
}

/// The four coefficient identities from the factored Pearson system, as
/// residual matrices (all should vanish).
pub fn pearson_coefficient_identities(params: &Parameters, k: u32) -> Result<[CMat2; 4]> {
    let w = WeightMatrix::new(params, k)?;
    let p = PearsonData::new(params, k)?;
    let (w0, w1, w2) = w.w_coeffs();
    let (a2, a1, a0) = (p.a2(), p.a1(), p.a0());
    let (b1, b0) = (p.b1(), p.b0());
    let (af, bf, kf) = (params.alpha, params.beta, k as f64);
    let b0mb1 = b0.sub(&b1);

    let id1 = w2
        .mul(&a2)
        .scale_re(af + kf + 4.0)
        .sub(&w2.mul(&a1).add(&w1.mul(&a2)).scale_re(af + bf + 2.0 * kf + 3.0))
        .add(&w2.mul(&b0mb1))
        .add(&w1.mul(&b1));
    let id2 = w2
        .mul(&a1)
        .add(&w1.mul(&a2))
        .scale_re(af + kf + 3.0)
        .sub(&w2.mul(&a0).add(&w1.mul(&a1)).scale_re(af + bf + 2.0 * kf + 2.0))
        .sub(&w2.mul(&b0))
        .add(&w1.mul(&b0mb1))
        .add(&w0.mul(&a2).scale_re(2.0));
    let id3 = w2
        .mul(&a0)
        .add(&w1.mul(&a1))
        .add(&w0.mul(&a2))
        .scale_re(af + kf + 2.0)
        .sub(&w1.mul(&a0).add(&w0.mul(&a1)).scale_re(af + bf + 2.0 * kf + 1.0))
        .sub(&w1.mul(&b0))
        .add(&w0.mul(&b0mb1));
    let id4 = w1
        .mul(&a0)
        .add(&w0.mul(&a1))
        .scale_re(af + kf + 1.0)
        .sub(&w0.mul(&b0));
    Ok([id1, id2, id3, id4])
}
