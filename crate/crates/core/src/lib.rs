//! Rational rigid-body motions from dual quaternions.
//!
//! The crate builds motion polynomials that interpolate poses or points,
//! converts point interpolants to Bézier form, factorizes motion polynomials
//! into revolute factors and turns pairs of factorizations into closed
//! linkages.

pub mod dual_quaternion;
pub mod error;
pub mod factor;
pub mod interp;
pub mod kinem;
pub mod linalg;
pub mod polynomial;
pub mod pose;
pub mod quaternion;
pub mod tolerance;

pub use dual_quaternion::{study_bilinear, DualQuaternion};
pub use error::{Error, Result};
pub use factor::{
    all_factorizations, axis_of, build_mechanism, factorize, factorize_motion, monic_normalize, synthesize,
    Factorization, JointAxis, LinearFactor, Mechanism, MonicMotion, NormFactor, Synthesis,
};
pub use interp::{interpolate, BezierMotion, Branch, Interpolation, Scheme, ViaTask};
pub use kinem::{pose_at, sample_trajectory, sample_with_gaps, verify, InterpolationReport, SamplePoint, TrajectorySample};
pub use polynomial::{MotionPolynomial, Param, QuatPolynomial};
pub use pose::Pose;
pub use quaternion::{Quaternion, Vec3};
