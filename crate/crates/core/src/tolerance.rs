//! Numerical thresholds shared across the engine.

/// Relative tolerance for algebraic identities (products, Study condition).
pub const ALG: f64 = 1e-9;

/// Absolute threshold below which a quaternion norm counts as zero. Also used
/// as the relative singular-value cutoff of the realified linear solver.
pub const SING: f64 = 1e-12;

/// Relative tolerance for factorization reconstruction.
pub const FACT: f64 = 1e-8;

/// Default via-point fit tolerance used by verification reports.
pub const FIT: f64 = 1e-9;

/// Admissible Study residue of user-supplied poses after projective normalization.
pub const POSE_ON_QUADRIC: f64 = 1e-8;
