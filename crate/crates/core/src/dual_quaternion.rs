//! Dual quaternions `p + ε q` and the Study quadric.
//!
//! Points are identified with imaginary quaternions `x1 i + x2 j + x3 k` and a
//! dual quaternion acts on them by `x -> p x p^-1 + q p^-1`. With this
//! convention the pure translation by `v` is `1 + ε v`.

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::quaternion::{Quaternion, Vec3};
use crate::tolerance;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct DualQuaternion {
    pub primal: Quaternion,
    pub dual: Quaternion,
}

impl DualQuaternion {
    pub const ZERO: Self = Self::new(Quaternion::ZERO, Quaternion::ZERO);
    pub const ONE: Self = Self::new(Quaternion::ONE, Quaternion::ZERO);
    /// The dual unit `ε`.
    pub const EPS: Self = Self::new(Quaternion::ZERO, Quaternion::ONE);

    #[inline]
    pub const fn new(primal: Quaternion, dual: Quaternion) -> Self {
        Self { primal, dual }
    }

    #[inline]
    pub const fn real(s: f64) -> Self {
        Self::new(Quaternion::real(s), Quaternion::ZERO)
    }

    /// Displacement that rotates by `rotation` and then translates by `translation`.
    pub fn from_rotation_translation(rotation: Quaternion, translation: Vec3) -> Self {
        Self::new(rotation, Quaternion::from_vector(translation) * rotation)
    }

    pub fn translation(v: Vec3) -> Self {
        Self::new(Quaternion::ONE, Quaternion::from_vector(v))
    }

    /// Study parameters `[p0, p1, p2, p3, q0, q1, q2, q3]`.
    pub fn to_array(self) -> [f64; 8] {
        let p = self.primal.to_array();
        let q = self.dual.to_array();
        [p[0], p[1], p[2], p[3], q[0], q[1], q[2], q[3]]
    }

    pub fn from_array(a: [f64; 8]) -> Self {
        Self::new(
            Quaternion::new(a[0], a[1], a[2], a[3]),
            Quaternion::new(a[4], a[5], a[6], a[7]),
        )
    }

    /// `p* + ε q*`.
    #[inline]
    pub fn conj(self) -> Self {
        Self::new(self.primal.conj(), self.dual.conj())
    }

    /// `p - ε q`.
    #[inline]
    pub fn eps_conj(self) -> Self {
        Self::new(self.primal, -self.dual)
    }

    #[inline]
    pub fn scale(self, s: f64) -> Self {
        Self::new(self.primal.scale(s), self.dual.scale(s))
    }

    pub fn max_abs(self) -> f64 {
        self.primal.max_abs().max(self.dual.max_abs())
    }

    /// Inverse for invertible primal part: `(p + ε q)^-1 = p^-1 - ε p^-1 q p^-1`.
    pub fn inverse(self) -> Result<Self> {
        let pi = self.primal.inverse()?;
        Ok(Self::new(pi, -(pi * self.dual * pi)))
    }

    /// `2 (p0 q0 + p1 q1 + p2 q2 + p3 q3)`; zero exactly on the Study quadric.
    pub fn study_value(self) -> f64 {
        2.0 * self.primal.dot(self.dual)
    }

    /// Scale-free Study residue: `|study_value| / max_abs^2`.
    pub fn study_residue(self) -> f64 {
        let s = self.max_abs();
        if s == 0.0 {
            return 0.0;
        }
        self.study_value().abs() / (s * s)
    }

    /// Vector part of `q p^-1` before the on-quadric check.
    fn translation_part(self) -> Result<Quaternion> {
        Ok(self.dual * self.primal.inverse()?)
    }

    /// Image of the origin, `π(p + ε q) = q p^-1`.
    pub fn project_origin(self) -> Result<Vec3> {
        let qp = self.translation_part()?;
        let v = qp.vector();
        let scale = crate::quaternion::vnorm(v).max(1.0);
        let residue = qp.w.abs() / scale;
        if residue > tolerance::ALG {
            return Err(Error::NotOnStudyQuadric { residue });
        }
        self.act_on_point([0.0; 3])
    }

    /// `x -> p x p^-1 + q p^-1`, keeping the vector part.
    pub fn act_on_point(self, x: Vec3) -> Result<Vec3> {
        let pinv = self.primal.inverse()?;
        let img = self.primal * Quaternion::from_vector(x) * pinv + self.dual * pinv;
        Ok(img.vector())
    }

    /// Whether this represents a displacement: invertible primal and Study
    /// residue below the algebraic tolerance.
    pub fn is_displacement(self) -> bool {
        self.primal.is_invertible() && self.study_residue() <= tolerance::ALG
    }

    /// Projective representative: divided by the coordinate of largest
    /// magnitude, then sign-fixed so that the first non-negligible coordinate
    /// is positive.
    pub fn normalized(self) -> [f64; 8] {
        let a = self.to_array();
        let m = self.max_abs();
        if m == 0.0 {
            return a;
        }
        let mut out = a.map(|c| c / m);
        let lead = out.iter().copied().find(|c| c.abs() >= 1e-6).unwrap_or(1.0);
        if lead < 0.0 {
            out.iter_mut().for_each(|c| *c = -*c);
        }
        out
    }

    /// Distance between the projective classes of `self` and `other`: both are
    /// scaled to unit max-coordinate and the smaller of the two sign choices of
    /// the max coordinate difference is returned.
    pub fn projective_distance(self, other: Self) -> f64 {
        let (ma, mb) = (self.max_abs(), other.max_abs());
        if ma == 0.0 || mb == 0.0 {
            return if ma == mb { 0.0 } else { f64::INFINITY };
        }
        let a = self.to_array().map(|c| c / ma);
        let b = other.to_array().map(|c| c / mb);
        let same = a.iter().zip(&b).fold(0.0_f64, |m, (x, y)| m.max((x - y).abs()));
        let flip = a.iter().zip(&b).fold(0.0_f64, |m, (x, y)| m.max((x + y).abs()));
        same.min(flip)
    }
}

/// Polarization of the Study form: `Σ (x.p_i y.q_i + y.p_i x.q_i)`.
pub fn study_bilinear(x: DualQuaternion, y: DualQuaternion) -> f64 {
    x.primal.dot(y.dual) + y.primal.dot(x.dual)
}

impl From<Quaternion> for DualQuaternion {
    fn from(p: Quaternion) -> Self {
        Self::new(p, Quaternion::ZERO)
    }
}

impl Add for DualQuaternion {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Self::new(self.primal + o.primal, self.dual + o.dual)
    }
}

impl Sub for DualQuaternion {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Self::new(self.primal - o.primal, self.dual - o.dual)
    }
}

impl Neg for DualQuaternion {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        self.scale(-1.0)
    }
}

/// `(p1 + ε q1)(p2 + ε q2) = p1 p2 + ε (p1 q2 + q1 p2)`.
impl Mul for DualQuaternion {
    type Output = Self;
    #[inline]
    fn mul(self, o: Self) -> Self {
        Self::new(
            self.primal * o.primal,
            self.primal * o.dual + self.dual * o.primal,
        )
    }
}

impl Mul<f64> for DualQuaternion {
    type Output = Self;
    #[inline]
    fn mul(self, s: f64) -> Self {
        self.scale(s)
    }
}
