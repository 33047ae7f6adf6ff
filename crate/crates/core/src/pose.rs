use crate::dual_quaternion::DualQuaternion;
use crate::error::Result;
use crate::quaternion::Vec3;

/// A proper rigid displacement `x -> R x + t`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Pose {
    pub rotation: [[f64; 3]; 3],
    pub translation: Vec3,
}

impl Pose {
    pub const IDENTITY: Self = Self {
        rotation: [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
        translation: [0.0; 3],
    };

    /// Rotation from the normalized primal part, translation as the vector
    /// part of `q p^-1`.
    pub fn from_dual_quaternion(c: DualQuaternion) -> Result<Self> {
        let rotation = c.primal.rotation_matrix()?;
        let translation = (c.dual * c.primal.inverse()?).vector();
        Ok(Self { rotation, translation })
    }

    pub fn apply(&self, x: Vec3) -> Vec3 {
        let r = &self.rotation;
        let mut out = self.translation;
        for (i, o) in out.iter_mut().enumerate() {
            *o += r[i][0] * x[0] + r[i][1] * x[1] + r[i][2] * x[2];
        }
        out
    }

    /// `max |R R^T - I|` over entries.
    pub fn orthonormality_error(&self) -> f64 {
        let r = &self.rotation;
        let mut worst = 0.0_f64;
        for i in 0..3 {
            for j in 0..3 {
                let dot: f64 = (0..3).map(|k| r[i][k] * r[j][k]).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).abs());
            }
        }
        worst
    }

    pub fn determinant(&self) -> f64 {
        let r = &self.rotation;
        r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1])
            - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
            + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0])
    }
}
