//! Rational motions through prescribed poses or points.

pub mod bezier;
pub mod points;
pub mod poses;

pub use bezier::{to_bezier, BezierMotion};
pub use points::{interpolate_points5, interpolate_points7, interpolate_points_generic, PointInterpolation};
pub use poses::{interpolate_poses3, interpolate_poses4, poses4_nodes, Branch, PoseInterpolation};

use crate::dual_quaternion::DualQuaternion;
use crate::error::{Error, Result};
use crate::polynomial::{MotionPolynomial, Param, QuatPolynomial};
use crate::quaternion::{Quaternion, Vec3};

/// Basis `f_i(t) = ∏_{k≠i} (t - t_k)` on pairwise distinct nodes.
///
/// The polynomials are not normalized: `f_i(t_i)` is the product of node gaps.
pub fn lagrange_basis(nodes: &[f64]) -> Result<Vec<QuatPolynomial>> {
    for i in 0..nodes.len() {
        for j in 0..i {
            if nodes[i] == nodes[j] {
                return Err(Error::DuplicateNodes);
            }
        }
    }
    Ok((0..nodes.len())
        .map(|i| {
            QuatPolynomial::from_real_roots(
                nodes.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &t)| t),
            )
        })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scheme {
    Poses3,
    Poses4,
    Points5,
    Points7,
    PointsGeneric,
}

impl Scheme {
    pub const ALL: [Scheme; 5] = [
        Scheme::Poses3,
        Scheme::Poses4,
        Scheme::Points5,
        Scheme::Points7,
        Scheme::PointsGeneric,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scheme::Poses3 => "poses3",
            Scheme::Poses4 => "poses4",
            Scheme::Points5 => "points5",
            Scheme::Points7 => "points7",
            Scheme::PointsGeneric => "pointsGeneric",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s)
    }

    pub fn uses_points(self) -> bool {
        matches!(self, Scheme::Points5 | Scheme::Points7 | Scheme::PointsGeneric)
    }
}

/// An interpolation request.
#[derive(Clone, Debug, PartialEq)]
pub struct ViaTask {
    pub scheme: Scheme,
    pub poses: Vec<DualQuaternion>,
    pub points: Vec<Vec3>,
    /// Nodes `T` (custom values only for the generic point scheme).
    pub via_times: Option<Vec<f64>>,
    /// Secondary times `T_s` (generic point scheme only).
    pub secondary_times: Option<Vec<f64>>,
    pub lambda: Option<f64>,
    pub branch: Branch,
}

impl ViaTask {
    fn empty(scheme: Scheme) -> Self {
        Self {
            scheme,
            poses: Vec::new(),
            points: Vec::new(),
            via_times: None,
            secondary_times: None,
            lambda: None,
            branch: Branch::K1,
        }
    }

    pub fn poses3(poses: Vec<DualQuaternion>) -> Self {
        Self { poses, ..Self::empty(Scheme::Poses3) }
    }

    pub fn poses4(poses: Vec<DualQuaternion>, lambda: Option<f64>, branch: Branch) -> Self {
        Self { poses, lambda, branch, ..Self::empty(Scheme::Poses4) }
    }

    pub fn points5(points: Vec<Vec3>) -> Self {
        Self { points, ..Self::empty(Scheme::Points5) }
    }

    pub fn points7(points: Vec<Vec3>) -> Self {
        Self { points, ..Self::empty(Scheme::Points7) }
    }

    pub fn points_generic(points: Vec<Vec3>, nodes: Vec<f64>, secondary: Vec<f64>) -> Self {
        Self {
            points,
            via_times: Some(nodes),
            secondary_times: Some(secondary),
            ..Self::empty(Scheme::PointsGeneric)
        }
    }

    /// Checks arity and option consistency.
    pub fn validate(&self) -> Result<()> {
        let arity = |what, expected: usize, got: usize| {
            if expected == got {
                Ok(())
            } else {
                Err(Error::BadArity { what, expected: expected.to_string(), got })
            }
        };
        match self.scheme {
            Scheme::Poses3 => arity("poses", 3, self.poses.len())?,
            Scheme::Poses4 => arity("poses", 4, self.poses.len())?,
            Scheme::Points5 => arity("points", 5, self.points.len())?,
            Scheme::Points7 => arity("points", 7, self.points.len())?,
            Scheme::PointsGeneric => {
                let (Some(t), Some(s)) = (&self.via_times, &self.secondary_times) else {
                    return Err(Error::BadOption(
                        "pointsGeneric requires via_times and secondary_times".into(),
                    ));
                };
                if t.len() < 2 {
                    return Err(Error::BadArity { what: "via_times", expected: "at least 2".into(), got: t.len() });
                }
                arity("secondary_times", t.len() - 1, s.len())?;
                arity("points", 2 * t.len() - 1, self.points.len())?;
            }
        }
        if self.scheme.uses_points() && !self.poses.is_empty() {
            return Err(Error::BadOption(format!("{} takes points, not poses", self.scheme.name())));
        }
        if !self.scheme.uses_points() && !self.points.is_empty() {
            return Err(Error::BadOption(format!("{} takes poses, not points", self.scheme.name())));
        }
        if self.scheme != Scheme::PointsGeneric
            && (self.via_times.is_some() || self.secondary_times.is_some())
        {
            return Err(Error::BadOption(format!(
                "{} uses fixed via times; custom times are only accepted by pointsGeneric",
                self.scheme.name()
            )));
        }
        if self.scheme != Scheme::Poses4 && self.lambda.is_some() {
            return Err(Error::BadOption("lambda only applies to poses4".into()));
        }
        Ok(())
    }

    /// Parameter at which each via datum is attained.
    pub fn nodes(&self) -> Result<Vec<Param>> {
        let finite = |v: Vec<f64>| v.into_iter().map(Param::Finite).collect();
        Ok(match self.scheme {
            Scheme::Poses3 => vec![Param::Finite(0.0), Param::Finite(1.0), Param::Infinity],
            Scheme::Poses4 => poses4_nodes(&self.poses, self.branch)?,
            Scheme::Points5 => finite(points::interleave_times(&bezier::NODES_2, &points::SECONDARY_2)),
            Scheme::Points7 => finite(points::interleave_times(&bezier::NODES_3, &points::SECONDARY_3)),
            Scheme::PointsGeneric => finite(points::interleave_times(
                self.via_times.as_deref().unwrap_or_default(),
                self.secondary_times.as_deref().unwrap_or_default(),
            )),
        })
    }
}

/// Outcome of [`interpolate`].
#[derive(Clone, Debug, PartialEq)]
pub struct Interpolation {
    pub scheme: Scheme,
    pub motion: MotionPolynomial,
    pub bezier: Option<BezierMotion>,
    /// Node weights `w_0, w_2, …` of point schemes; empty for poses.
    pub weights: Vec<Quaternion>,
    pub via_times: Vec<Param>,
    pub lambda: Option<f64>,
}

/// Runs the scheme selected by the task.
pub fn interpolate(task: &ViaTask) -> Result<Interpolation> {
    task.validate()?;
    let from_points = |fit: PointInterpolation| Interpolation {
        scheme: task.scheme,
        motion: fit.motion,
        bezier: fit.bezier,
        weights: fit.weights,
        via_times: fit.via_times.into_iter().map(Param::Finite).collect(),
        lambda: None,
    };
    let from_poses = |fit: PoseInterpolation| Interpolation {
        scheme: task.scheme,
        motion: fit.motion,
        bezier: None,
        weights: Vec::new(),
        via_times: fit.via_times,
        lambda: fit.lambda,
    };
    Ok(match task.scheme {
        Scheme::Poses3 => from_poses(interpolate_poses3(task.poses[0], task.poses[1], task.poses[2])?),
        Scheme::Poses4 => from_poses(interpolate_poses4(&task.poses, task.lambda, task.branch)?),
        Scheme::Points5 => from_points(interpolate_points5(&task.points)?),
        Scheme::Points7 => from_points(interpolate_points7(&task.points)?),
        Scheme::PointsGeneric => from_points(interpolate_points_generic(
            &task.points,
            task.via_times.as_deref().unwrap_or_default(),
            task.secondary_times.as_deref().unwrap_or_default(),
        )?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_values() {
        let f = lagrange_basis(&[0.0, 0.5, 1.0]).unwrap();
        assert_eq!(f[0].eval(0.0).w, 0.5);
        assert_eq!(f[0].eval(0.5).w, 0.0);
        assert_eq!(f[0].degree(), 2);
        let g = lagrange_basis(&[0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0]).unwrap();
        assert!((g[0].eval(0.0).w + 2.0 / 9.0).abs() < 1e-16);
        for (i, fi) in g.iter().enumerate() {
            for (k, &tk) in [0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0].iter().enumerate() {
                if i != k {
                    assert!(fi.eval(tk).w.abs() < 1e-15);
                } else {
                    assert!(fi.eval(tk).w.abs() > 0.01);
                }
            }
        }
        assert_eq!(lagrange_basis(&[0.0, 1.0, 0.0]), Err(Error::DuplicateNodes));
    }

    #[test]
    fn validation() {
        let six = vec![[0.0; 3]; 6];
        let err = interpolate(&ViaTask::points7(six)).unwrap_err();
        assert_eq!(err.code(), "BAD_ARITY");
        let mut t = ViaTask::points5(vec![[0.0; 3]; 5]);
        t.via_times = Some(vec![0.0, 0.4, 1.0]);
        assert_eq!(t.validate().unwrap_err().code(), "BAD_OPTION");
        let g = ViaTask::points_generic(vec![[0.0; 3]; 5], vec![0.0, 1.0], vec![0.5]);
        assert_eq!(g.validate().unwrap_err().code(), "BAD_ARITY");
        assert_eq!(Scheme::from_name("pointsGeneric"), Some(Scheme::PointsGeneric));
        assert_eq!(Scheme::from_name("points6"), None);
    }
}
