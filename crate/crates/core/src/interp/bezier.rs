//! Quaternionic Bézier form of the point interpolants.

use crate::dual_quaternion::DualQuaternion;
use crate::error::{Error, Result};
use crate::polynomial::MotionPolynomial;
use crate::quaternion::{Quaternion, Vec3};

/// Coefficients of the quadratic Lagrange-type basis `f_k` (nodes `0, 1/2, 1`)
/// in the quadratic Bernstein basis, as `(numerator, denominator)`.
/// Row `k` holds `f_k = Σ_i LAGRANGE_TO_BERNSTEIN_2[k][i] β_i`.
pub const LAGRANGE_TO_BERNSTEIN_2: [[(i64, i64); 3]; 3] = [
    [(1, 2), (-1, 4), (0, 1)],
    [(0, 1), (-1, 2), (0, 1)],
    [(0, 1), (-1, 4), (1, 2)],
];

/// Same for the cubic basis with nodes `0, 1/3, 2/3, 1`.
pub const LAGRANGE_TO_BERNSTEIN_3: [[(i64, i64); 4]; 4] = [
    [(-2, 9), (5, 27), (-2, 27), (0, 1)],
    [(0, 1), (2, 9), (-1, 9), (0, 1)],
    [(0, 1), (1, 9), (-2, 9), (0, 1)],
    [(0, 1), (2, 27), (-5, 27), (2, 9)],
];

pub const NODES_2: [f64; 3] = [0.0, 0.5, 1.0];
pub const NODES_3: [f64; 4] = [0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0];

fn ratio((n, d): (i64, i64)) -> f64 {
    n as f64 / d as f64
}

fn basis_row(degree: usize, k: usize, i: usize) -> f64 {
    match degree {
        2 => ratio(LAGRANGE_TO_BERNSTEIN_2[k][i]),
        _ => ratio(LAGRANGE_TO_BERNSTEIN_3[k][i]),
    }
}

/// `C(t) = Σ u_i β_i(t) + ε Σ p_i u_i β_i(t)` with homogeneous control points
/// `u_i + ε p_i u_i`.
///
/// The end control points `p_0`, `p_n` are the interpolated end points. Inner
/// control points are `q_i u_i^-1` and can carry a scalar part, so they are kept
/// as full quaternions; [`BezierMotion::control_point`] returns the 3D part.
#[derive(Clone, Debug, PartialEq)]
pub struct BezierMotion {
    pub weights: Vec<Quaternion>,
    pub control_points: Vec<Quaternion>,
}

impl BezierMotion {
    pub fn degree(&self) -> usize {
        self.weights.len().saturating_sub(1)
    }

    pub fn control_point(&self, i: usize) -> Vec3 {
        self.control_points[i].vector()
    }

    /// The homogeneous control point `u_i + ε p_i u_i`.
    pub fn control_dual_quaternion(&self, i: usize) -> DualQuaternion {
        let u = self.weights[i];
        DualQuaternion::new(u, self.control_points[i] * u)
    }

    pub fn eval(&self, t: f64) -> DualQuaternion {
        let n = self.degree();
        (0..=n).fold(DualQuaternion::ZERO, |acc, i| {
            acc + self.control_dual_quaternion(i) * bernstein(n, i, t)
        })
    }

    /// Expansion into the monomial basis.
    pub fn to_motion_polynomial(&self) -> MotionPolynomial {
        let n = self.degree();
        let mut coeffs = vec![DualQuaternion::ZERO; n + 1];
        for i in 0..=n {
            let ci = self.control_dual_quaternion(i);
            // β_i = C(n,i) t^i (1-t)^(n-i) = Σ_j C(n,i) C(n-i,j) (-1)^j t^(i+j)
            for j in 0..=(n - i) {
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                let c = binomial(n, i) * binomial(n - i, j) * sign;
                coeffs[i + j] = coeffs[i + j] + ci * c;
            }
        }
        MotionPolynomial::new(coeffs)
    }
}

pub fn bernstein(n: usize, i: usize, t: f64) -> f64 {
    binomial(n, i) * t.powi(i as i32) * (1.0 - t).powi((n - i) as i32)
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * (n - j) as f64 / (j + 1) as f64)
}

/// Converts an interpolant built on the default nodes into Bézier form.
///
/// `weights` are `w_0, w_2, …, w_2n` and `node_points` the points
/// `a_0, a_2, …, a_2n` interpolated at the nodes, i.e. `p = Σ w f_k` and
/// `q = Σ a w f_k`.
pub fn to_bezier(
    motion: &MotionPolynomial,
    weights: &[Quaternion],
    node_points: &[Vec3],
    nodes: &[f64],
) -> Result<BezierMotion> {
    let degree = motion.degree();
    let default_nodes: &[f64] = match degree {
        2 => &NODES_2,
        3 => &NODES_3,
        d => return Err(Error::UnsupportedDegree(d)),
    };
    if nodes != default_nodes {
        return Err(Error::BadOption(
            "Bézier conversion requires the default interpolation nodes".into(),
        ));
    }
    if weights.len() != degree + 1 || node_points.len() != degree + 1 {
        return Err(Error::BadArity {
            what: "weights and node points",
            expected: format!("{}", degree + 1),
            got: weights.len().min(node_points.len()),
        });
    }

    let mut u = Vec::with_capacity(degree + 1);
    let mut p = Vec::with_capacity(degree + 1);
    for i in 0..=degree {
        let (mut ui, mut qi) = (Quaternion::ZERO, Quaternion::ZERO);
        for k in 0..=degree {
            let c = basis_row(degree, k, i);
            if c != 0.0 {
                ui += weights[k] * c;
                qi += Quaternion::from_vector(node_points[k]) * weights[k] * c;
            }
        }
        let pi = if i == 0 {
            Quaternion::from_vector(node_points[0])
        } else if i == degree {
            Quaternion::from_vector(node_points[degree])
        } else {
            qi * ui
                .inverse()
                .map_err(|_| Error::SingularWeight("inner Bézier weight"))?
        };
        u.push(ui);
        p.push(pi);
    }
    Ok(BezierMotion {
        weights: u,
        control_points: p,
    })
}
