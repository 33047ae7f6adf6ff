//! Motions whose origin passes through `2n + 1` prescribed points.
//!
//! With nodes `T = [t_0..t_n]` and the basis `f_i(t) = ∏_{k≠i} (t - t_k)`,
//! the motion `p = Σ w_2i f_i`, `q = Σ a_2i w_2i f_i` hits the even points at
//! the nodes for any weights. The odd points at the secondary times
//! `T_s = [s_1..s_n]` fix the weights through a linear quaternion system.

use crate::error::{Error, Result};
use crate::interp::bezier::{to_bezier, BezierMotion, NODES_2, NODES_3};
use crate::interp::lagrange_basis;
use crate::linalg::solve_left_quaternion_system;
use crate::polynomial::{MotionPolynomial, QuatPolynomial};
use crate::quaternion::{vnorm, vsub, Quaternion, Vec3};
use crate::tolerance;

pub const SECONDARY_2: [f64; 2] = [0.25, 0.75];
pub const SECONDARY_3: [f64; 3] = [1.0 / 6.0, 0.5, 5.0 / 6.0];

/// Result of a point interpolation.
#[derive(Clone, Debug, PartialEq)]
pub struct PointInterpolation {
    pub motion: MotionPolynomial,
    /// `w_0, w_2, …, w_2n` with `w_0 = 1`.
    pub weights: Vec<Quaternion>,
    /// Parameter at which each input point is attained, in input order.
    pub via_times: Vec<f64>,
    pub bezier: Option<BezierMotion>,
}

/// Builds `C = p + ε q` from the node weights.
pub fn motion_from_weights(points: &[Vec3], nodes: &[f64], weights: &[Quaternion]) -> Result<MotionPolynomial> {
    let basis = lagrange_basis(nodes)?;
    let (mut p, mut q) = (QuatPolynomial::zero(), QuatPolynomial::zero());
    for (i, f) in basis.iter().enumerate() {
        let w = weights[i];
        let aw = Quaternion::from_vector(points[2 * i]) * w;
        p = &p + &f.mul_right(w);
        q = &q + &f.mul_right(aw);
    }
    Ok(MotionPolynomial::from_parts(&p, &q))
}

/// Via time of each point: even points at the nodes, odd ones at the
/// secondary times.
pub fn interleave_times(nodes: &[f64], secondary: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(nodes.len() + secondary.len());
    for (i, &t) in nodes.iter().enumerate() {
        out.push(t);
        if let Some(&s) = secondary.get(i) {
            out.push(s);
        }
    }
    out
}

/// Solves the weight system for arbitrary `n` by realification.
pub fn interpolate_points_generic(points: &[Vec3], nodes: &[f64], secondary: &[f64]) -> Result<PointInterpolation> {
    let n = secondary.len();
    if nodes.len() != n + 1 {
        return Err(Error::BadArity {
            what: "interpolation nodes",
            expected: format!("{}", n + 1),
            got: nodes.len(),
        });
    }
    if points.len() != 2 * n + 1 {
        return Err(Error::BadArity {
            what: "points",
            expected: format!("{}", 2 * n + 1),
            got: points.len(),
        });
    }
    if n == 0 {
        return Err(Error::BadArity {
            what: "points",
            expected: "an odd number ≥ 3".into(),
            got: points.len(),
        });
    }
    let all = interleave_times(nodes, secondary);
    for i in 0..all.len() {
        for j in 0..i {
            if all[i] == all[j] {
                return Err(Error::DuplicateNodes);
            }
        }
    }
    let basis = lagrange_basis(nodes)?;

    let mut a = vec![vec![Quaternion::ZERO; n]; n];
    let mut b = vec![Quaternion::ZERO; n];
    for j in 1..=n {
        let s = secondary[j - 1];
        let odd = points[2 * j - 1];
        for i in 1..=n {
            let d = Quaternion::from_vector(vsub(points[2 * i], odd));
            a[j - 1][i - 1] = d * basis[i].eval(s).w;
        }
        b[j - 1] = Quaternion::from_vector(vsub(odd, points[0])) * basis[0].eval(s).w;
    }
    let solved = solve_left_quaternion_system(&a, &b)?;

    let mut weights = Vec::with_capacity(n + 1);
    weights.push(Quaternion::ONE);
    weights.extend(solved);
    let motion = motion_from_weights(points, nodes, &weights)?;
    Ok(PointInterpolation {
        motion,
        weights,
        via_times: all,
        bezier: None,
    })
}

fn diff(points: &[Vec3], i: usize, j: usize) -> Result<Quaternion> {
    let d = vsub(points[i], points[j]);
    let scale = 1.0 + vnorm(points[i]).max(vnorm(points[j]));
    if vnorm(d) <= tolerance::SING * scale {
        return Err(Error::SingularDifference { i: i.min(j), j: i.max(j) });
    }
    Ok(Quaternion::from_vector(d))
}

fn check_adjacent(points: &[Vec3]) -> Result<()> {
    (1..points.len()).try_for_each(|i| diff(points, i, i - 1).map(|_| ()))
}

fn inv(q: Quaternion, what: &'static str) -> Result<Quaternion> {
    q.inverse().map_err(|_| Error::SingularWeight(what))
}

fn arity(points: &[Vec3], expected: usize) -> Result<()> {
    if points.len() != expected {
        return Err(Error::BadArity {
            what: "points",
            expected: expected.to_string(),
            got: points.len(),
        });
    }
    Ok(())
}

/// Quadratic motion through five points attained at `t = k/4`.
pub fn interpolate_points5(points: &[Vec3]) -> Result<PointInterpolation> {
    arity(points, 5)?;
    check_adjacent(points)?;
    let d = |i, j| diff(points, i, j);
    let (d10, d21, d23, d30, d41, d43) = (d(1, 0)?, d(2, 1)?, d(2, 3)?, d(3, 0)?, d(4, 1)?, d(4, 3)?);
    let (d41i, d43i, d21i, d23i) = (inv(d41, "d41")?, inv(d43, "d43")?, inv(d21, "d21")?, inv(d23, "d23")?);

    let w0 = Quaternion::ONE;
    let w2 = inv(d41i * d21 * -9.0 - d43i * d23 * 3.0, "w2 factor")? * (d41i * d10 * 9.0 - d43i * d30) * w0;
    let w4 = inv(-(d21i * d41) - d23i * d43 * 3.0, "w4 factor")? * (d21i * d10 * 3.0 + d23i * d30) * w0;

    let weights = vec![w0, w2, w4];
    let motion = motion_from_weights(points, &NODES_2, &weights)?;
    let node_points = [points[0], points[2], points[4]];
    let bezier = to_bezier(&motion, &weights, &node_points, &NODES_2)?;
    Ok(PointInterpolation {
        motion,
        weights,
        via_times: interleave_times(&NODES_2, &SECONDARY_2),
        bezier: Some(bezier),
    })
}

/// `a^-1 b - c^-1 d`.
fn elim(a: Quaternion, b: Quaternion, c: Quaternion, d: Quaternion, step: &'static str) -> Result<Quaternion> {
    let ai = a.inverse().map_err(|_| Error::SingularElimination(step))?;
    let ci = c.inverse().map_err(|_| Error::SingularElimination(step))?;
    Ok(ai * b - ci * d)
}

/// Coefficients `c_{j,i}` of the three equations `l_j` for the cubic scheme,
/// columns `(w_2, w_4, w_6, rhs)`.
pub(crate) fn cubic_coefficients(points: &[Vec3]) -> Result<[[Quaternion; 4]; 3]> {
    let d = |i, j| diff(points, i, j);
    Ok([
        [d(2, 1)? * 15.0, d(4, 1)? * 5.0, d(6, 1)? * 3.0, d(1, 0)? * -15.0],
        [d(2, 3)? * 9.0, d(4, 3)? * -9.0, d(6, 3)? * -3.0, d(3, 0)? * 3.0],
        [d(2, 5)? * -5.0, d(4, 5)? * -15.0, d(6, 5)? * 15.0, d(5, 0)? * -3.0],
    ])
}

/// Cubic motion through seven points attained at `t = k/6`.
pub fn interpolate_points7(points: &[Vec3]) -> Result<PointInterpolation> {
    arity(points, 7)?;
    check_adjacent(points)?;
    let c = cubic_coefficients(points)?;

    // Eliminate w2 from l2 and l3 using l1.
    let e = |j: usize, k: usize, step| elim(c[0][0], c[0][k], c[j][0], c[j][k], step);
    let (e24, e26, e28) = (e(1, 1, "h424")?, e(1, 2, "h626")?, e(1, 3, "h828")?);
    let (e34, e36, e38) = (e(2, 1, "h434")?, e(2, 2, "h636")?, e(2, 3, "h838")?);

    let r44 = elim(e26, e24, e36, e34, "r44")?;
    let r48 = elim(e26, e28, e36, e38, "r48")?;
    let r66 = elim(e24, e26, e34, e36, "r66")?;
    let r68 = elim(e24, e28, e34, e38, "r68")?;

    let w0 = Quaternion::ONE;
    let w4 = r44.inverse().map_err(|_| Error::SingularElimination("w4"))? * r48;
    let w6 = r66.inverse().map_err(|_| Error::SingularElimination("w6"))? * r68;
    let c12i = c[0][0].inverse().map_err(|_| Error::SingularElimination("w2"))?;
    let w2 = c12i * (c[0][3] * w0 - c[0][1] * w4 - c[0][2] * w6);

    let weights = vec![w0, w2, w4, w6];
    let motion = motion_from_weights(points, &NODES_3, &weights)?;
    let node_points = [points[0], points[2], points[4], points[6]];
    let bezier = to_bezier(&motion, &weights, &node_points, &NODES_3)?;
    Ok(PointInterpolation {
        motion,
        weights,
        via_times: interleave_times(&NODES_3, &SECONDARY_3),
        bezier: Some(bezier),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quaternion::vdist;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_points(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec3> {
        (0..n)
            .map(|_| [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)])
            .collect()
    }

    fn max_residual(fit: &PointInterpolation, points: &[Vec3]) -> f64 {
        fit.via_times
            .iter()
            .zip(points)
            .map(|(&t, a)| vdist(fit.motion.eval(t).project_origin().unwrap(), *a))
            .fold(0.0, f64::max)
    }

    #[test]
    fn cubic_coefficient_table_matches_basis_evaluation() {
        // Recompute c_{j,i} from f_i(s_j) scaled by the row factors 216, 72, 216.
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let pts = random_points(&mut rng, 7);
        let table = cubic_coefficients(&pts).unwrap();
        let f = lagrange_basis(&NODES_3).unwrap();
        let scales = [216.0, 72.0 * 3.0, 216.0];
        for j in 1..=3 {
            let s = SECONDARY_3[j - 1];
            let odd = pts[2 * j - 1];
            for i in 1..=3 {
                let d = Quaternion::from_vector(vsub(pts[2 * i], odd));
                let expected = d * (f[i].eval(s).w * scales[j - 1]);
                assert!((table[j - 1][i - 1] - expected).max_abs() < 1e-12, "c[{j}][{i}]");
            }
            let rhs = Quaternion::from_vector(vsub(odd, pts[0])) * (f[0].eval(s).w * scales[j - 1]);
            assert!((table[j - 1][3] - rhs).max_abs() < 1e-12, "c[{j}][8]");
        }
    }

    #[test]
    fn five_points_hit_all_targets() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let pts = random_points(&mut rng, 5);
            let fit = interpolate_points5(&pts).unwrap();
            assert!(max_residual(&fit, &pts) < 1e-9);
            assert!(fit.motion.study_residue() < 1e-9);
            let b = fit.bezier.as_ref().unwrap();
            assert_eq!(b.control_point(0), pts[0]);
            assert_eq!(b.control_point(2), pts[4]);
        }
    }

    #[test]
    fn closed_forms_agree_with_generic_solver() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..50 {
            let pts = random_points(&mut rng, 5);
            let closed = interpolate_points5(&pts).unwrap();
            let generic = interpolate_points_generic(&pts, &NODES_2, &SECONDARY_2).unwrap();
            for (a, b) in closed.weights.iter().zip(&generic.weights) {
                assert!((*a - *b).max_abs() < 1e-10 * (1.0 + b.max_abs()));
            }
            let pts = random_points(&mut rng, 7);
            let closed = interpolate_points7(&pts).unwrap();
            let generic = interpolate_points_generic(&pts, &NODES_3, &SECONDARY_3).unwrap();
            for (a, b) in closed.weights.iter().zip(&generic.weights) {
                assert!((*a - *b).max_abs() < 1e-9 * (1.0 + b.max_abs()));
            }
        }
    }

    #[test]
    fn seven_points_hit_all_targets() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let pts = random_points(&mut rng, 7);
            let fit = interpolate_points7(&pts).unwrap();
            assert!(max_residual(&fit, &pts) < 1e-9);
            assert!(fit.motion.study_residue() < 1e-9);
            let b = fit.bezier.as_ref().unwrap();
            assert_eq!(b.control_point(0), pts[0]);
            assert_eq!(b.control_point(3), pts[6]);
        }
    }

    #[test]
    fn generic_with_custom_nodes() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let pts = random_points(&mut rng, 7);
        let fit = interpolate_points_generic(&pts, &[-1.0, 0.0, 2.0, 3.0], &[-0.5, 1.0, 2.5]).unwrap();
        assert!(max_residual(&fit, &pts) < 1e-9);
        assert!(fit.motion.study_residue() < 1e-9);
    }

    #[test]
    fn repeated_points_are_rejected() {
        let mut pts = vec![[0.1, 0.2, 0.3], [0.1, 0.2, 0.3], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
        assert_eq!(
            interpolate_points5(&pts),
            Err(Error::SingularDifference { i: 0, j: 1 })
        );
        pts = vec![[0.5; 3]; 5];
        assert!(matches!(
            interpolate_points_generic(&pts, &NODES_2, &SECONDARY_2),
            Err(Error::SingularSystem { .. })
        ));
        let mut seven = random_points(&mut ChaCha8Rng::seed_from_u64(5), 7);
        seven[4] = seven[3];
        assert_eq!(
            interpolate_points7(&seven),
            Err(Error::SingularDifference { i: 3, j: 4 })
        );
    }

    #[test]
    fn arity_and_node_errors() {
        let pts = vec![[0.0; 3]; 6];
        assert!(matches!(interpolate_points7(&pts), Err(Error::BadArity { .. })));
        let pts = random_points(&mut ChaCha8Rng::seed_from_u64(6), 5);
        assert_eq!(
            interpolate_points_generic(&pts, &[0.0, 0.5, 1.0], &[0.5, 0.75]),
            Err(Error::DuplicateNodes)
        );
    }
}
