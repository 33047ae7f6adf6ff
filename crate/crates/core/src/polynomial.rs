//! Polynomials in a real (central) indeterminate `t` with quaternion or
//! dual-quaternion coefficients, stored in ascending degree.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use crate::dual_quaternion::DualQuaternion;
use crate::quaternion::Quaternion;
use crate::tolerance;

/// A parameter value on the projective line.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Param {
    Finite(f64),
    Infinity,
}

impl Param {
    pub fn finite(self) -> Option<f64> {
        match self {
            Param::Finite(t) => Some(t),
            Param::Infinity => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Param::Infinity)
    }
}

impl From<f64> for Param {
    fn from(t: f64) -> Self {
        if t.is_infinite() {
            Param::Infinity
        } else {
            Param::Finite(t)
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::Finite(t) => write!(f, "{t}"),
            Param::Infinity => f.write_str("inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuatPolynomial {
    coeffs: Vec<Quaternion>,
}

impl QuatPolynomial {
    pub fn new(mut coeffs: Vec<Quaternion>) -> Self {
        while coeffs.last() == Some(&Quaternion::ZERO) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(q: Quaternion) -> Self {
        Self::new(vec![q])
    }

    /// Real-coefficient polynomial, ascending degree.
    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Quaternion::real(c)).collect())
    }

    /// Monic product `∏ (t - r)` over the given real roots.
    pub fn from_real_roots(roots: impl IntoIterator<Item = f64>) -> Self {
        roots.into_iter().fold(Self::constant(Quaternion::ONE), |acc, r| {
            &acc * &Self::from_real(&[-r, 1.0])
        })
    }

    pub fn coefficients(&self) -> &[Quaternion] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Quaternion {
        self.coeffs.get(k).copied().unwrap_or(Quaternion::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Quaternion {
        self.coeffs.last().copied().unwrap_or(Quaternion::ZERO)
    }

    pub fn eval(&self, t: f64) -> Quaternion {
        self.coeffs
            .iter()
            .rev()
            .fold(Quaternion::ZERO, |acc, &c| acc * t + c)
    }

    /// Evaluation on the projective line; `∞` yields the leading coefficient.
    pub fn eval_param(&self, t: Param) -> Quaternion {
        match t {
            Param::Finite(t) => self.eval(t),
            Param::Infinity => self.leading(),
        }
    }

    pub fn conj(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.conj()).collect())
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.scale(s)).collect())
    }

    /// `q * P(t)`.
    pub fn mul_left(&self, q: Quaternion) -> Self {
        Self::new(self.coeffs.iter().map(|&c| q * c).collect())
    }

    /// `P(t) * q`.
    pub fn mul_right(&self, q: Quaternion) -> Self {
        Self::new(self.coeffs.iter().map(|&c| c * q).collect())
    }

    /// Largest coefficient magnitude.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0_f64, |m, c| m.max(c.max_abs()))
    }
}

impl Add for &QuatPolynomial {
    type Output = QuatPolynomial;
    fn add(self, o: Self) -> QuatPolynomial {
        let n = self.coeffs.len().max(o.coeffs.len());
        QuatPolynomial::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
}

impl Sub for &QuatPolynomial {
    type Output = QuatPolynomial;
    fn sub(self, o: Self) -> QuatPolynomial {
        let n = self.coeffs.len().max(o.coeffs.len());
        QuatPolynomial::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }
}

impl Mul for &QuatPolynomial {
    type Output = QuatPolynomial;
    fn mul(self, o: Self) -> QuatPolynomial {
        if self.is_zero() || o.is_zero() {
            return QuatPolynomial::zero();
        }
        let mut out = vec![Quaternion::ZERO; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QuatPolynomial::new(out)
    }
}

/// Polynomial with dual-quaternion coefficients `C(t) = p(t) + ε q(t)`.
///
/// It parameterizes a rational motion when `C C*` is a nonzero real
/// polynomial; [`MotionPolynomial::study_residue`] measures how far it is from
/// that condition. The type itself admits any dual-quaternion polynomial so
/// that intermediate products and norm polynomials can share it.
#[derive(Clone, Debug, PartialEq)]
pub struct MotionPolynomial {
    coeffs: Vec<DualQuaternion>,
}

impl MotionPolynomial {
    pub fn new(mut coeffs: Vec<DualQuaternion>) -> Self {
        while coeffs.last() == Some(&DualQuaternion::ZERO) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_parts(primal: &QuatPolynomial, dual: &QuatPolynomial) -> Self {
        let n = primal.coefficients().len().max(dual.coefficients().len());
        Self::new(
            (0..n)
                .map(|k| DualQuaternion::new(primal.coeff(k), dual.coeff(k)))
                .collect(),
        )
    }

    pub fn constant(c: DualQuaternion) -> Self {
        Self::new(vec![c])
    }

    /// The linear polynomial `t - h`.
    pub fn linear(h: DualQuaternion) -> Self {
        Self::new(vec![-h, DualQuaternion::ONE])
    }

    pub fn coefficients(&self) -> &[DualQuaternion] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> DualQuaternion {
        self.coeffs.get(k).copied().unwrap_or(DualQuaternion::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> DualQuaternion {
        self.coeffs.last().copied().unwrap_or(DualQuaternion::ZERO)
    }

    pub fn primal(&self) -> QuatPolynomial {
        QuatPolynomial::new(self.coeffs.iter().map(|c| c.primal).collect())
    }

    pub fn dual(&self) -> QuatPolynomial {
        QuatPolynomial::new(self.coeffs.iter().map(|c| c.dual).collect())
    }

    pub fn eval(&self, t: f64) -> DualQuaternion {
        self.coeffs
            .iter()
            .rev()
            .fold(DualQuaternion::ZERO, |acc, &c| acc * t + c)
    }

    /// Evaluation on the projective line; `∞` yields the leading coefficient.
    pub fn eval_param(&self, t: Param) -> DualQuaternion {
        match t {
            Param::Finite(t) => self.eval(t),
            Param::Infinity => self.leading(),
        }
    }

    pub fn conj(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.conj()).collect())
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.scale(s)).collect())
    }

    pub fn mul_left(&self, c: DualQuaternion) -> Self {
        Self::new(self.coeffs.iter().map(|&x| c * x).collect())
    }

    pub fn mul_right(&self, c: DualQuaternion) -> Self {
        Self::new(self.coeffs.iter().map(|&x| x * c).collect())
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0_f64, |m, c| m.max(c.max_abs()))
    }

    /// The norm polynomial `C C* = p p* + ε (p q* + q p*)`.
    pub fn norm_polynomial(&self) -> MotionPolynomial {
        self * &self.conj()
    }

    /// Real part of the primal norm polynomial `p p*` (ascending).
    pub fn real_norm(&self) -> Vec<f64> {
        self.norm_polynomial()
            .coefficients()
            .iter()
            .map(|c| c.primal.w)
            .collect()
    }

    /// The Study polynomial `M(t)`, i.e. the coefficients of `p q* + q p*`.
    pub fn study_polynomial(&self) -> Vec<f64> {
        self.norm_polynomial()
            .coefficients()
            .iter()
            .map(|c| c.dual.w)
            .collect()
    }

    /// Largest non-real coefficient of `C C*` relative to `max_abs()^2`.
    ///
    /// Zero for an exact motion polynomial.
    pub fn study_residue(&self) -> f64 {
        let s = self.max_abs();
        if s == 0.0 {
            return 0.0;
        }
        let n = self.norm_polynomial();
        let worst = n.coefficients().iter().fold(0.0_f64, |m, c| {
            let vec_primal = c.primal.x.abs().max(c.primal.y.abs()).max(c.primal.z.abs());
            m.max(vec_primal).max(c.dual.max_abs())
        });
        worst / (s * s)
    }

    /// Real, nonzero norm polynomial within the algebraic tolerance.
    pub fn is_motion_polynomial(&self) -> bool {
        !self.is_zero()
            && self.study_residue() <= tolerance::ALG
            && self.real_norm().iter().any(|c| c.abs() > 0.0)
    }

    /// Right division by the monic linear polynomial `t - h`:
    /// returns `(Q, r)` with `C = Q (t - h) + r`.
    pub fn div_rem_linear_right(&self, h: DualQuaternion) -> (MotionPolynomial, DualQuaternion) {
        let d = self.coeffs.len();
        if d <= 1 {
            return (MotionPolynomial::new(Vec::new()), self.coeff(0));
        }
        let mut q = vec![DualQuaternion::ZERO; d - 1];
        q[d - 2] = self.coeffs[d - 1];
        for k in (1..d - 1).rev() {
            q[k - 1] = self.coeffs[k] + q[k] * h;
        }
        let rem = self.coeffs[0] + q[0] * h;
        (MotionPolynomial::new(q), rem)
    }

    /// Remainder modulo the real monic quadratic `t^2 + b t + c`, returned as
    /// `(r1, r0)` for `r1 t + r0`.
    pub fn rem_real_quadratic(&self, b: f64, c: f64) -> (DualQuaternion, DualQuaternion) {
        let mut work = self.coeffs.clone();
        for k in (2..work.len()).rev() {
            let lead = work[k];
            work[k - 1] = work[k - 1] - lead * b;
            work[k - 2] = work[k - 2] - lead * c;
            work[k] = DualQuaternion::ZERO;
        }
        let r0 = work.first().copied().unwrap_or(DualQuaternion::ZERO);
        let r1 = work.get(1).copied().unwrap_or(DualQuaternion::ZERO);
        (r1, r0)
    }
}

impl Add for &MotionPolynomial {
    type Output = MotionPolynomial;
    fn add(self, o: Self) -> MotionPolynomial {
        let n = self.coeffs.len().max(o.coeffs.len());
        MotionPolynomial::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
}

impl Sub for &MotionPolynomial {
    type Output = MotionPolynomial;
    fn sub(self, o: Self) -> MotionPolynomial {
        let n = self.coeffs.len().max(o.coeffs.len());
        MotionPolynomial::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }
}

impl Mul for &MotionPolynomial {
    type Output = MotionPolynomial;
    fn mul(self, o: Self) -> MotionPolynomial {
        if self.is_zero() || o.is_zero() {
            return MotionPolynomial::new(Vec::new());
        }
        let mut out = vec![DualQuaternion::ZERO; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j] + a * b;
            }
        }
        MotionPolynomial::new(out)
    }
}
