//! Poses, trajectories and end-to-end verification of interpolation tasks.

use crate::error::{Error, Result};
use crate::interp::{Scheme, ViaTask};
use crate::polynomial::{MotionPolynomial, Param};
use crate::pose::Pose;
use crate::quaternion::{vdist, Vec3};
use crate::tolerance;

/// Pose of `C` at `t`; `t = ∞` gives the pose of the leading coefficient.
pub fn pose_at(c: &MotionPolynomial, t: Param) -> Result<Pose> {
    let value = c.eval_param(t);
    let singular = || Error::SingularParameter {
        t: t.finite().unwrap_or(f64::INFINITY),
    };
    if value.primal.length() <= tolerance::SING * value.max_abs() || value.max_abs() == 0.0 {
        return Err(singular());
    }
    Pose::from_dual_quaternion(value).map_err(|_| singular())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrajectorySample {
    pub t: Param,
    pub pose: Pose,
    /// Image of the origin, equal to `pose.translation`.
    pub origin: Vec3,
    /// Image of the tracked point.
    pub point: Vec3,
}

fn sample_one(c: &MotionPolynomial, point: Vec3, t: Param) -> Result<TrajectorySample> {
    let pose = pose_at(c, t)?;
    Ok(TrajectorySample {
        t,
        pose,
        origin: pose.translation,
        point: pose.apply(point),
    })
}

/// One sample per parameter; fails on the first singular parameter.
pub fn sample_trajectory(c: &MotionPolynomial, point: Vec3, ts: &[Param]) -> Result<Vec<TrajectorySample>> {
    ts.iter().map(|&t| sample_one(c, point, t)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SamplePoint {
    Sample(TrajectorySample),
    /// The primal part is singular here; nothing is interpolated over it.
    Gap { t: Param },
}

/// Like [`sample_trajectory`], but singular parameters become gaps.
pub fn sample_with_gaps(c: &MotionPolynomial, point: Vec3, ts: &[Param]) -> Vec<SamplePoint> {
    ts.iter()
        .map(|&t| match sample_one(c, point, t) {
            Ok(s) => SamplePoint::Sample(s),
            Err(_) => SamplePoint::Gap { t },
        })
        .collect()
}

/// `n` equally spaced parameters covering `[a, b]`.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<Param> {
    match n {
        0 => Vec::new(),
        1 => vec![Param::Finite(a)],
        _ => (0..n)
            .map(|k| Param::Finite(a + (b - a) * k as f64 / (n - 1) as f64))
            .collect(),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct InterpolationReport {
    /// Distance of each via datum from the motion at its node: Euclidean for
    /// points, projective for poses. Infinite where the motion is singular.
    pub residuals: Vec<f64>,
    pub study_residue: f64,
    pub max_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

/// Default residual tolerance of a scheme.
pub fn default_tolerance(scheme: Scheme) -> f64 {
    match scheme {
        Scheme::Poses3 => 1e-8,
        Scheme::Poses4 => 1e-7,
        _ => tolerance::FIT,
    }
}

/// Checks `c` against the via data of `task`. Never fails.
pub fn verify(task: &ViaTask, c: &MotionPolynomial) -> InterpolationReport {
    verify_with_tolerance(task, c, default_tolerance(task.scheme))
}

pub fn verify_with_tolerance(task: &ViaTask, c: &MotionPolynomial, tol: f64) -> InterpolationReport {
    let count = if task.scheme.uses_points() { task.points.len() } else { task.poses.len() };
    let nodes = task.nodes().ok().filter(|n| n.len() == count);
    let residuals: Vec<f64> = match nodes {
        None => vec![f64::INFINITY; count],
        Some(nodes) => nodes
            .iter()
            .enumerate()
            .map(|(i, &t)| {
                if task.scheme.uses_points() {
                    pose_at(c, t)
                        .map(|p| vdist(p.translation, task.points[i]))
                        .unwrap_or(f64::INFINITY)
                } else {
                    c.eval_param(t).projective_distance(task.poses[i])
                }
            })
            .collect(),
    };
    let study_residue = if c.is_zero() { f64::INFINITY } else { c.study_residue() };
    let max_residual = residuals.iter().copied().fold(0.0, f64::max);
    let passed = count > 0 && max_residual <= tol && study_residue <= tol.max(tolerance::ALG);
    InterpolationReport {
        residuals,
        study_residue,
        max_residual,
        tolerance: tol,
        passed,
    }
}
