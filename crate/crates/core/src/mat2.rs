//! Complex 2x2 matrix arithmetic and polynomial arithmetic with matrix
//! coefficients. Everything downstream is built on the two types here.
//!
//! Matrix products never commute, so every operation documents which side a
//! factor multiplies on. Polynomials are stored densely in ascending degree
//! order; the zero polynomial has an empty coefficient list and trailing
//! coefficients are trimmed only when they are exactly zero (trimming by
//! tolerance would silently change degrees).

use num_complex::Complex64;
use serde::de::{self, SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Complex 2x2 matrix, row-major storage.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CMat2 {
    pub m: [[Complex64; 2]; 2],
}

impl CMat2 {
    pub const fn new(m: [[Complex64; 2]; 2]) -> Self {
        CMat2 { m }
    }

    /// Matrix from real row-major entries.
    pub fn from_real(r: [[f64; 2]; 2]) -> Self {
        CMat2 {
            m: [
                [Complex64::new(r[0][0], 0.0), Complex64::new(r[0][1], 0.0)],
                [Complex64::new(r[1][0], 0.0), Complex64::new(r[1][1], 0.0)],
            ],
        }
    }

    pub fn zero() -> Self {
        Self::from_real([[0.0, 0.0], [0.0, 0.0]])
    }

    pub fn identity() -> Self {
        Self::from_real([[1.0, 0.0], [0.0, 1.0]])
    }

    pub fn diag(a: Complex64, d: Complex64) -> Self {
        let z = Complex64::new(0.0, 0.0);
        CMat2 { m: [[a, z], [z, d]] }
    }

    pub fn diag_real(a: f64, d: f64) -> Self {
        Self::from_real([[a, 0.0], [0.0, d]])
    }

    /// Matrix unit E_{ij} (1-based indices would invite off-by-one bugs;
    /// these are 0-based).
    pub fn unit(i: usize, j: usize) -> Self {
        let mut m = Self::zero();
        m.m[i][j] = Complex64::new(1.0, 0.0);
        m
    }

    pub fn add(&self, other: &CMat2) -> CMat2 {
        let mut out = *self;
        for i in 0..2 {
            for j in 0..2 {
                out.m[i][j] += other.m[i][j];
            }
        }
        out
    }

    pub fn sub(&self, other: &CMat2) -> CMat2 {
        let mut out = *self;
        for i in 0..2 {
            for j in 0..2 {
                out.m[i][j] -= other.m[i][j];
            }
        }
        out
    }

    pub fn neg(&self) -> CMat2 {
        self.scale(Complex64::new(-1.0, 0.0))
    }

    pub fn scale(&self, s: Complex64) -> CMat2 {
        let mut out = *self;
        for i in 0..2 {
            for j in 0..2 {
                out.m[i][j] *= s;
            }
        }
        out
    }

    pub fn scale_re(&self, s: f64) -> CMat2 {
        self.scale(Complex64::new(s, 0.0))
    }

    /// Matrix product self * other (self on the left).
    pub fn mul(&self, other: &CMat2) -> CMat2 {
        let a = &self.m;
        let b = &other.m;
        CMat2 {
            m: [
                [
                    a[0][0] * b[0][0] + a[0][1] * b[1][0],
                    a[0][0] * b[0][1] + a[0][1] * b[1][1],
                ],
                [
                    a[1][0] * b[0][0] + a[1][1] * b[1][0],
                    a[1][0] * b[0][1] + a[1][1] * b[1][1],
                ],
            ],
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> CMat2 {
        CMat2 {
            m: [
                [self.m[0][0].conj(), self.m[1][0].conj()],
                [self.m[0][1].conj(), self.m[1][1].conj()],
            ],
        }
    }

    pub fn det(&self) -> Complex64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn trace(&self) -> Complex64 {
        self.m[0][0] + self.m[1][1]
    }

    /// Inverse via the 2x2 closed form. Errors when the determinant is
    /// negligible against the entry scale.
    pub fn inverse(&self) -> Result<CMat2> {
        let d = self.det();
        let scale = self.norm_max();
        if d.norm() <= 1e-14 * scale * scale.max(1.0) {
            return Err(Error::SingularScale(format!(
                "2x2 inverse: |det| = {:.3e} at entry scale {:.3e}",
                d.norm(),
                scale
            )));
        }
        let inv = Complex64::new(1.0, 0.0) / d;
        Ok(CMat2 {
            m: [
                [self.m[1][1] * inv, -self.m[0][1] * inv],
                [-self.m[1][0] * inv, self.m[0][0] * inv],
            ],
        })
    }

    /// Largest entry magnitude.
    pub fn norm_max(&self) -> f64 {
        let mut n: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                n = n.max(self.m[i][j].norm());
            }
        }
        n
    }

    pub fn is_finite(&self) -> bool {
        self.m
            .iter()
            .flatten()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Deviation from being Hermitian, as a max entry magnitude.
    pub fn hermitian_defect(&self) -> f64 {
        self.sub(&self.adjoint()).norm_max()
    }

    /// Entrywise principal square root of a diagonal matrix with positive
    /// diagonal. Errors otherwise; the norm matrices of this family are
    /// diagonal so nothing more general is needed.
    pub fn diag_sqrt(&self) -> Result<CMat2> {
        let off = self.m[0][1].norm().max(self.m[1][0].norm());
        if off > 1e-12 * self.norm_max().max(1.0) {
            return Err(Error::InvalidParameter(
                "diag_sqrt requires a diagonal matrix".into(),
            ));
        }
        let a = self.m[0][0];
        let d = self.m[1][1];
        if a.re <= 0.0 || d.re <= 0.0 || a.im.abs() > 1e-12 * a.re || d.im.abs() > 1e-12 * d.re {
            return Err(Error::InvalidParameter(
                "diag_sqrt requires positive diagonal entries".into(),
            ));
        }
        Ok(CMat2::diag_real(a.re.sqrt(), d.re.sqrt()))
    }

    pub fn approx_eq(&self, other: &CMat2, tol: f64) -> bool {
        self.sub(other).norm_max() <= tol
    }
}

fn serialize_complex<S: Serializer>(z: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(2))?;
    seq.serialize_element(&z.re)?;
    seq.serialize_element(&z.im)?;
    seq.end()
}

// JSON layout: a complex scalar is [re, im]; a matrix is a row-major 2x2
// array of complex scalars.
impl Serialize for CMat2 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Row<'a>(
            #[serde(serialize_with = "serialize_complex")] &'a Complex64,
            #[serde(serialize_with = "serialize_complex")] &'a Complex64,
        );
        let mut seq = s.serialize_seq(Some(2))?;
        seq.serialize_element(&Row(&self.m[0][0], &self.m[0][1]))?;
        seq.serialize_element(&Row(&self.m[1][0], &self.m[1][1]))?;
        seq.end()
    }
}

impl<'de> Deserialize<'de> for CMat2 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = CMat2;
            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("a 2x2 array of [re, im] pairs")
            }
            fn visit_seq<A: SeqAccess<'de>>(
                self,
                mut seq: A,
            ) -> std::result::Result<CMat2, A::Error> {
                let mut m = [[Complex64::new(0.0, 0.0); 2]; 2];
                for row in &mut m {
                    let r: [[f64; 2]; 2] = seq
                        .next_element()?
                        .ok_or_else(|| de::Error::custom("missing matrix row"))?;
                    row[0] = Complex64::new(r[0][0], r[0][1]);
                    row[1] = Complex64::new(r[1][0], r[1][1]);
                }
                Ok(CMat2 { m })
            }
        }
        d.deserialize_seq(V)
    }
}

/// Dense scalar polynomial in t, ascending coefficients, used for the
/// classical Jacobi polynomials and for scalar divisors such as t(1-t)^2.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarPoly {
    pub coeffs: Vec<f64>,
}

impl ScalarPoly {
    pub fn new(coeffs: Vec<f64>) -> Self {
        let mut p = ScalarPoly { coeffs };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        ScalarPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        ScalarPoly { coeffs: vec![1.0] }
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0.0) {
            self.coeffs.pop();
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * t + c)
    }

    pub fn derivative(&self) -> ScalarPoly {
        if self.coeffs.len() <= 1 {
            return ScalarPoly::zero();
        }
        ScalarPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| i as f64 * c)
                .collect(),
        )
    }

    pub fn mul(&self, other: &ScalarPoly) -> ScalarPoly {
        if self.is_zero() || other.is_zero() {
            return ScalarPoly::zero();
        }
        let mut out = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ScalarPoly::new(out)
    }

    pub fn scale(&self, s: f64) -> ScalarPoly {
        ScalarPoly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Magnitude sum of the terms at |t|; a cancellation-aware scale for
    /// relative comparisons of evaluations.
    pub fn eval_scale(&self, t: f64) -> f64 {
        let at = t.abs();
        self.coeffs
            .iter()
            .rev()
            .fold(0.0_f64, |acc, c| acc * at + c.abs())
    }
}

/// Polynomial in t with 2x2 complex matrix coefficients, ascending order.
/// Coefficient i multiplies t^i. The zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixPolynomial {
    coeffs: Vec<CMat2>,
}

impl MatrixPolynomial {
    /// Builds from ascending coefficients, trimming exactly-zero trailing
    /// coefficients.
    pub fn new(coeffs: Vec<CMat2>) -> Self {
        let mut p = MatrixPolynomial { coeffs };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        MatrixPolynomial { coeffs: vec![] }
    }

    pub fn constant(a: CMat2) -> Self {
        MatrixPolynomial::new(vec![a])
    }

    pub fn identity() -> Self {
        Self::constant(CMat2::identity())
    }

    /// A t^k with the matrix coefficient A.
    pub fn monomial(a: CMat2, k: usize) -> Self {
        let mut coeffs = vec![CMat2::zero(); k + 1];
        coeffs[k] = a;
        MatrixPolynomial::new(coeffs)
    }

    /// Scalar polynomial times a constant matrix: sum_i s_i A t^i.
    pub fn from_scalar(s: &ScalarPoly, a: &CMat2) -> Self {
        MatrixPolynomial::new(s.coeffs.iter().map(|c| a.scale_re(*c)).collect())
    }

    fn trim(&mut self) {
        while self
            .coeffs
            .last()
            .is_some_and(|c| c.m.iter().flatten().all(|z| z.re == 0.0 && z.im == 0.0))
        {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the trimmed polynomial; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[CMat2] {
        &self.coeffs
    }

    /// Coefficient of t^i, zero-padded beyond the stored degree.
    pub fn coeff(&self, i: usize) -> CMat2 {
        self.coeffs.get(i).copied().unwrap_or_else(CMat2::zero)
    }

    pub fn leading_coefficient(&self) -> CMat2 {
        self.coeffs.last().copied().unwrap_or_else(CMat2::zero)
    }

    pub fn add(&self, other: &MatrixPolynomial) -> MatrixPolynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i).add(&other.coeff(i)));
        }
        MatrixPolynomial::new(out)
    }

    pub fn sub(&self, other: &MatrixPolynomial) -> MatrixPolynomial {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MatrixPolynomial {
        MatrixPolynomial::new(self.coeffs.iter().map(CMat2::neg).collect())
    }

    /// Cauchy product; the left factor's coefficients multiply from the
    /// left, preserving matrix order.
    pub fn mul(&self, other: &MatrixPolynomial) -> MatrixPolynomial {
        if self.is_zero() || other.is_zero() {
            return MatrixPolynomial::zero();
        }
        let mut out = vec![CMat2::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        MatrixPolynomial::new(out)
    }

    /// Left-multiplies every coefficient by the constant matrix a.
    pub fn lmul_mat(&self, a: &CMat2) -> MatrixPolynomial {
        MatrixPolynomial::new(self.coeffs.iter().map(|c| a.mul(c)).collect())
    }

    /// Right-multiplies every coefficient by the constant matrix a.
    pub fn rmul_mat(&self, a: &CMat2) -> MatrixPolynomial {
        MatrixPolynomial::new(self.coeffs.iter().map(|c| c.mul(a)).collect())
    }

    pub fn scale(&self, s: Complex64) -> MatrixPolynomial {
        MatrixPolynomial::new(self.coeffs.iter().map(|c| c.scale(s)).collect())
    }

    pub fn scale_re(&self, s: f64) -> MatrixPolynomial {
        self.scale(Complex64::new(s, 0.0))
    }

    pub fn mul_scalar_poly(&self, s: &ScalarPoly) -> MatrixPolynomial {
        if self.is_zero() || s.is_zero() {
            return MatrixPolynomial::zero();
        }
        let mut out = vec![CMat2::zero(); self.coeffs.len() + s.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in s.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.scale_re(*b));
            }
        }
        MatrixPolynomial::new(out)
    }

    /// Multiplies by t^k (shifts coefficients up).
    pub fn shift_up(&self, k: usize) -> MatrixPolynomial {
        if self.is_zero() {
            return MatrixPolynomial::zero();
        }
        let mut out = vec![CMat2::zero(); k];
        out.extend_from_slice(&self.coeffs);
        MatrixPolynomial::new(out)
    }

    /// Derivative of the given order: coefficient i of the result is
    /// (i+order)!/i! times coefficient i+order of self.
    pub fn derivative(&self, order: u32) -> MatrixPolynomial {
        let k = order as usize;
        if self.coeffs.len() <= k {
            return MatrixPolynomial::zero();
        }
        let mut out = Vec::with_capacity(self.coeffs.len() - k);
        for i in 0..self.coeffs.len() - k {
            // (i+k)! / i! as an iterative product
            let mut f = 1.0;
            for j in 1..=k {
                f *= (i + j) as f64;
            }
            out.push(self.coeffs[i + k].scale_re(f));
        }
        MatrixPolynomial::new(out)
    }

    /// Horner evaluation at a complex point.
    pub fn eval(&self, t: Complex64) -> CMat2 {
        let mut acc = CMat2::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.scale(t).add(c);
        }
        acc
    }

    pub fn eval_re(&self, t: f64) -> CMat2 {
        self.eval(Complex64::new(t, 0.0))
    }

    /// Coefficientwise conjugate transpose. For real t this is the
    /// conjugate-transpose of the polynomial's value, i.e. P*(t).
    pub fn adjoint(&self) -> MatrixPolynomial {
        MatrixPolynomial::new(self.coeffs.iter().map(CMat2::adjoint).collect())
    }

    /// Largest coefficient-entry magnitude; the scale used for relative
    /// comparisons.
    pub fn norm_max(&self) -> f64 {
        self.coeffs.iter().map(CMat2::norm_max).fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &MatrixPolynomial, tol_abs: f64) -> bool {
        self.sub(other).norm_max() <= tol_abs
    }

    /// Exact division by a scalar polynomial. Returns the quotient q with
    /// p = s q + r and errors with `DivisionResidual` when any entry of any
    /// coefficient of r exceeds tol times the largest coefficient magnitude
    /// of p. A failing residual means the divisibility claim behind the
    /// call is false.
    pub fn divide_scalar(&self, s: &ScalarPoly, tol: f64) -> Result<MatrixPolynomial> {
        if s.is_zero() {
            return Err(Error::InvalidParameter(
                "division by the zero polynomial".into(),
            ));
        }
        let scale = self.norm_max().max(f64::MIN_POSITIVE);
        let lead = *s.coeffs.last().unwrap();
        let ds = s.degree();
        let mut rem: Vec<CMat2> = self.coeffs.clone();
        let mut quot = vec![CMat2::zero(); rem.len().saturating_sub(ds)];
        let mut top = rem.len();
        while top > ds {
            let q = rem[top - 1].scale_re(1.0 / lead);
            quot[top - 1 - ds] = q;
            for (j, c) in s.coeffs.iter().enumerate() {
                rem[top - 1 - ds + j] = rem[top - 1 - ds + j].sub(&q.scale_re(*c));
            }
            top -= 1;
        }
        let residual = rem
            .iter()
            .take(top)
            .map(CMat2::norm_max)
            .fold(0.0, f64::max);
        if residual > tol * scale {
            return Err(Error::DivisionResidual {
                residual,
                tol: tol * scale,
            });
        }
        Ok(MatrixPolynomial::new(quot))
    }
}

impl Serialize for MatrixPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for MatrixPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(MatrixPolynomial::new(Vec::<CMat2>::deserialize(d)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn add_identities() {
        let p = MatrixPolynomial::new(vec![CMat2::from_real([[1.0, 2.0], [3.0, 4.0]])]);
        assert_eq!(MatrixPolynomial::zero().add(&p), p);
        assert!(p.add(&p.neg()).is_zero());
        // (I t) + I has coefficients [I, I]
        let it = MatrixPolynomial::monomial(CMat2::identity(), 1);
        let sum = it.add(&MatrixPolynomial::identity());
        assert_eq!(sum.coeffs().len(), 2);
        assert_eq!(sum.coeff(0), CMat2::identity());
        assert_eq!(sum.coeff(1), CMat2::identity());
    }

    #[test]
    fn mul_keeps_matrix_order() {
        let p = MatrixPolynomial::new(vec![
            CMat2::from_real([[0.0, 1.0], [2.0, 0.5]]),
            CMat2::from_real([[1.0, 0.0], [0.0, -1.0]]),
        ]);
        assert_eq!(MatrixPolynomial::identity().mul(&p), p);
        // E12 E21 = E11 but E21 E12 = E22
        let e12 = MatrixPolynomial::constant(CMat2::unit(0, 1));
        let e21 = MatrixPolynomial::constant(CMat2::unit(1, 0));
        assert_eq!(e12.mul(&e21), MatrixPolynomial::constant(CMat2::unit(0, 0)));
        assert_eq!(e21.mul(&e12), MatrixPolynomial::constant(CMat2::unit(1, 1)));
        // (I t)(I t) = I t^2
        let it = MatrixPolynomial::monomial(CMat2::identity(), 1);
        assert_eq!(it.mul(&it), MatrixPolynomial::monomial(CMat2::identity(), 2));
    }

    #[test]
    fn derivative_basics() {
        let const_i = MatrixPolynomial::identity();
        assert!(const_i.derivative(1).is_zero());
        let it2 = MatrixPolynomial::monomial(CMat2::identity(), 2);
        assert_eq!(
            it2.derivative(1),
            MatrixPolynomial::monomial(CMat2::identity().scale_re(2.0), 1)
        );
        assert_eq!(
            it2.derivative(2),
            MatrixPolynomial::constant(CMat2::identity().scale_re(2.0))
        );
    }

    #[test]
    fn eval_basics() {
        assert_eq!(MatrixPolynomial::zero().eval(c(3.0, 1.0)), CMat2::zero());
        let a = CMat2::from_real([[1.0, 2.0], [3.0, 4.0]]);
        let b = CMat2::from_real([[5.0, 6.0], [7.0, 8.0]]);
        let p = MatrixPolynomial::new(vec![a, b]);
        assert_eq!(p.eval(c(0.0, 0.0)), a);
        let it2 = MatrixPolynomial::monomial(CMat2::identity(), 2);
        assert_eq!(it2.eval(c(3.0, 0.0)), CMat2::identity().scale_re(9.0));
    }

    #[test]
    fn divide_exact_and_residual() {
        // (I t^2 - I t) / t = I t - I with zero remainder
        let p = MatrixPolynomial::new(vec![
            CMat2::zero(),
            CMat2::identity().neg(),
            CMat2::identity(),
        ]);
        let t = ScalarPoly::new(vec![0.0, 1.0]);
        let q = p.divide_scalar(&t, 1e-12).unwrap();
        assert_eq!(
            q,
            MatrixPolynomial::new(vec![CMat2::identity().neg(), CMat2::identity()])
        );

        // I t / (t - 1) leaves remainder I
        let it = MatrixPolynomial::monomial(CMat2::identity(), 1);
        let tm1 = ScalarPoly::new(vec![-1.0, 1.0]);
        match it.divide_scalar(&tm1, 1e-12) {
            Err(Error::DivisionResidual { .. }) => {}
            other => panic!("expected DivisionResidual, got {other:?}"),
        }
    }

    #[test]
    fn serde_round_trip() {
        let p = MatrixPolynomial::new(vec![
            CMat2::new([[c(1.0, -2.0), c(0.0, 0.5)], [c(3.0, 0.0), c(0.0, 0.0)]]),
            CMat2::identity(),
        ]);
        let js = serde_json::to_string(&p).unwrap();
        // complex scalars serialize as [re, im]
        assert!(js.starts_with("[[[[1.0,-2.0],[0.0,0.5]]"));
        let back: MatrixPolynomial = serde_json::from_str(&js).unwrap();
        assert_eq!(p, back);
    }

    fn arb_mat() -> impl Strategy<Value = CMat2> {
        proptest::collection::vec(-1.0f64..1.0, 8).prop_map(|v| {
            CMat2::new([
                [c(v[0], v[1]), c(v[2], v[3])],
                [c(v[4], v[5]), c(v[6], v[7])],
            ])
        })
    }

    fn arb_poly(max_deg: usize) -> impl Strategy<Value = MatrixPolynomial> {
        proptest::collection::vec(arb_mat(), 1..=max_deg + 1).prop_map(MatrixPolynomial::new)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn ring_axioms(p in arb_poly(4), q in arb_poly(4), r in arb_poly(4)) {
            let scale = p.norm_max().max(q.norm_max()).max(r.norm_max()).max(1.0);
            let tol = 1e-12 * scale * scale * scale;
            let assoc = p.mul(&q).mul(&r).sub(&p.mul(&q.mul(&r)));
            prop_assert!(assoc.norm_max() <= tol);
            let distr = p.mul(&q.add(&r)).sub(&p.mul(&q).add(&p.mul(&r)));
            prop_assert!(distr.norm_max() <= tol);
        }

        #[test]
        fn leibniz_rule(p in arb_poly(4), q in arb_poly(4)) {
            let lhs = p.mul(&q).derivative(1);
            let rhs = p.derivative(1).mul(&q).add(&p.mul(&q.derivative(1)));
            let scale = (p.norm_max() * q.norm_max()).max(1.0);
            prop_assert!(lhs.sub(&rhs).norm_max() <= 1e-12 * scale * 100.0);
        }

        #[test]
        fn eval_commutes_with_ops(p in arb_poly(4), q in arb_poly(4), t in -1.0f64..1.0) {
            let z = c(t, 0.3 * t);
            let scale = (p.norm_max() * q.norm_max()).max(1.0) * 32.0;
            let sum = p.add(&q).eval(z).sub(&p.eval(z).add(&q.eval(z)));
            prop_assert!(sum.norm_max() <= 1e-11 * scale);
            let prod = p.mul(&q).eval(z).sub(&p.eval(z).mul(&q.eval(z)));
            prop_assert!(prod.norm_max() <= 1e-11 * scale);
        }
    }
}
