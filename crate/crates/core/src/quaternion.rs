//! Real quaternions `w + x i + y j + z k` with the Hamilton product.

use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::tolerance;

/// A 3D point or vector.
pub type Vec3 = [f64; 3];

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ZERO: Self = Self::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Self = Self::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Self = Self::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Self = Self::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Self = Self::new(0.0, 0.0, 0.0, 1.0);

    #[inline]
    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Self { w, x, y, z }
    }

    #[inline]
    pub const fn real(w: f64) -> Self {
        Self::new(w, 0.0, 0.0, 0.0)
    }

    /// Embeds a 3D point as the imaginary quaternion `x1 i + x2 j + x3 k`.
    #[inline]
    pub const fn from_vector(v: Vec3) -> Self {
        Self::new(0.0, v[0], v[1], v[2])
    }

    #[inline]
    pub const fn from_array(a: [f64; 4]) -> Self {
        Self::new(a[0], a[1], a[2], a[3])
    }

    #[inline]
    pub const fn to_array(self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    #[inline]
    pub const fn vector(self) -> Vec3 {
        [self.x, self.y, self.z]
    }

    #[inline]
    pub fn conj(self) -> Self {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    /// `q q*`, the squared Euclidean length.
    #[inline]
    pub fn norm(self) -> f64 {
        self.dot(self)
    }

    #[inline]
    pub fn length(self) -> f64 {
        self.norm().sqrt()
    }

    #[inline]
    pub fn dot(self, o: Self) -> f64 {
        self.w * o.w + self.x * o.x + self.y * o.y + self.z * o.z
    }

    #[inline]
    pub fn scale(self, s: f64) -> Self {
        Self::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }

    /// Largest absolute coordinate.
    pub fn max_abs(self) -> f64 {
        self.to_array().iter().fold(0.0_f64, |m, c| m.max(c.abs()))
    }

    pub fn is_invertible(self) -> bool {
        self.norm() > tolerance::SING
    }

    /// `q* / (q q*)`.
    pub fn inverse(self) -> Result<Self> {
        let n = self.norm();
        if n <= tolerance::SING {
            return Err(Error::SingularQuaternion { norm: n });
        }
        Ok(self.conj().scale(1.0 / n))
    }

    /// The 4×4 matrix `L(a)` with `a * b = L(a) b` on coordinate vectors.
    pub fn left_matrix(self) -> [[f64; 4]; 4] {
        let Self { w, x, y, z } = self;
        [
            [w, -x, -y, -z],
            [x, w, -z, y],
            [y, z, w, -x],
            [z, -y, x, w],
        ]
    }

    /// Rotation matrix of the normalized quaternion, acting as `v -> q v q^-1`.
    pub fn rotation_matrix(self) -> Result<[[f64; 3]; 3]> {
        let n = self.norm();
        if n <= tolerance::SING {
            return Err(Error::SingularQuaternion { norm: n });
        }
        let Self { w, x, y, z } = self.scale(1.0 / n.sqrt());
        Ok([
            [
                1.0 - 2.0 * (y * y + z * z),
                2.0 * (x * y - w * z),
                2.0 * (x * z + w * y),
            ],
            [
                2.0 * (x * y + w * z),
                1.0 - 2.0 * (x * x + z * z),
                2.0 * (y * z - w * x),
            ],
            [
                2.0 * (x * z - w * y),
                2.0 * (y * z + w * x),
                1.0 - 2.0 * (x * x + y * y),
            ],
        ])
    }
}

impl Add for Quaternion {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Self::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl AddAssign for Quaternion {
    #[inline]
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl Sub for Quaternion {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Self::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Quaternion {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        self.scale(-1.0)
    }
}

/// Hamilton product.
impl Mul for Quaternion {
    type Output = Self;
    #[inline]
    fn mul(self, b: Self) -> Self {
        let a = self;
        Self::new(
            a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Self;
    #[inline]
    fn mul(self, s: f64) -> Self {
        self.scale(s)
    }
}

impl Mul<Quaternion> for f64 {
    type Output = Quaternion;
    #[inline]
    fn mul(self, q: Quaternion) -> Quaternion {
        q.scale(self)
    }
}

pub fn vsub(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub fn vnorm(a: Vec3) -> f64 {
    (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt()
}

pub fn vdist(a: Vec3, b: Vec3) -> f64 {
    vnorm(vsub(a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: Quaternion, b: Quaternion, tol: f64) -> bool {
        (a - b).max_abs() <= tol
    }

    fn arb_quat() -> impl Strategy<Value = Quaternion> {
        prop::array::uniform4(-2.0..2.0f64).prop_map(Quaternion::from_array)
    }

    #[test]
    fn hamilton_basis() {
        use Quaternion as Q;
        assert_eq!(Q::I * Q::J, Q::K);
        assert_eq!(Q::J * Q::K, Q::I);
        assert_eq!(Q::K * Q::I, Q::J);
        assert_eq!(Q::J * Q::I, -Q::K);
        assert_eq!(Q::I * Q::I, Q::real(-1.0));
        let b = Q::new(0.3, -1.0, 2.0, 0.5);
        assert_eq!(Q::ONE * b, b);
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(Quaternion::I.inverse().unwrap(), -Quaternion::I);
        assert_eq!(
            Quaternion::real(2.0).inverse().unwrap(),
            Quaternion::real(0.5)
        );
        assert!(matches!(
            Quaternion::ZERO.inverse(),
            Err(Error::SingularQuaternion { .. })
        ));
    }

    #[test]
    fn rotation_matrix_of_i_flips_y() {
        let r = Quaternion::I.rotation_matrix().unwrap();
        assert_eq!(r, [[1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, -1.0]]);
    }

    proptest! {
        #[test]
        fn product_matches_left_matrix(a in arb_quat(), b in arb_quat()) {
            let m = a.left_matrix();
            let bv = b.to_array();
            let mut expected = [0.0; 4];
            for (r, row) in m.iter().enumerate() {
                expected[r] = (0..4).map(|c| row[c] * bv[c]).sum();
            }
            prop_assert!(close(a * b, Quaternion::from_array(expected), 1e-12));
        }

        #[test]
        fn associative(a in arb_quat(), b in arb_quat(), c in arb_quat()) {
            prop_assert!(close((a * b) * c, a * (b * c), 1e-12));
        }

        #[test]
        fn conjugate_reverses_products(a in arb_quat(), b in arb_quat()) {
            prop_assert!(close((a * b).conj(), b.conj() * a.conj(), 1e-12));
        }

        #[test]
        fn inverse_is_two_sided(p in arb_quat()) {
            prop_assume!(p.norm() > 1e-3);
            let inv = p.inverse().unwrap();
            prop_assert!(close(p * inv, Quaternion::ONE, 1e-12));
            prop_assert!(close(inv * p, Quaternion::ONE, 1e-12));
        }
    }
}
