//! Motions through prescribed poses: conics through three poses and the two
//! one-parameter families of cubics through four poses.

use crate::dual_quaternion::{study_bilinear, DualQuaternion};
use crate::error::{Error, Result};
use crate::linalg::{null_space, rank};
use crate::polynomial::{MotionPolynomial, Param};
use crate::tolerance;

/// Which of the two rulings through the first pose the cubic meets twice.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Branch {
    #[default]
    K1,
    K2,
}

impl Branch {
    pub fn name(self) -> &'static str {
        match self {
            Branch::K1 => "k1",
            Branch::K2 => "k2",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "k1" => Some(Branch::K1),
            "k2" => Some(Branch::K2),
            _ => None,
        }
    }
}

/// Result of a pose interpolation.
#[derive(Clone, Debug, PartialEq)]
pub struct PoseInterpolation {
    pub motion: MotionPolynomial,
    /// Parameter at which each input pose is attained, in input order.
    pub via_times: Vec<Param>,
    /// Free parameter of the 4-pose family (absent for conics).
    pub lambda: Option<f64>,
}

fn scaled(c: DualQuaternion) -> DualQuaternion {
    let m = c.max_abs();
    if m == 0.0 {
        c
    } else {
        c.scale(1.0 / m)
    }
}

/// Rejects poses that are not displacements; returns them scaled to unit
/// max-coordinate.
fn validate_poses(poses: &[DualQuaternion]) -> Result<Vec<DualQuaternion>> {
    poses
        .iter()
        .map(|&c| {
            let c = scaled(c);
            if !c.primal.is_invertible() {
                return Err(Error::SingularQuaternion { norm: c.primal.norm() });
            }
            let residue = c.study_residue();
            if residue > tolerance::POSE_ON_QUADRIC {
                return Err(Error::NotOnStudyQuadric { residue });
            }
            Ok(c)
        })
        .collect()
}

fn columns_rank(poses: &[DualQuaternion]) -> usize {
    let rows: Vec<Vec<f64>> = (0..8)
        .map(|r| poses.iter().map(|c| c.to_array()[r]).collect())
        .collect();
    rank(&rows, 1e-9)
}

/// Conic `C(t) = α c0 + (c1 - α c0 - β c2) t + β c2 t^2` through `c0` at
/// `t = 0`, `c1` at `t = 1` and `c2` at `t = ∞`.
///
/// Substituting into the Study form gives `t (t - 1) G(t)` with
/// `G(t) = α (β B02 - B01) + t β (B12 - α B02)`, where `Bij` is the polarized
/// Study form of `ci, cj`; hence `β = B01 / B02` and `α = B12 / B02`.
pub fn interpolate_poses3(c0: DualQuaternion, c1: DualQuaternion, c2: DualQuaternion) -> Result<PoseInterpolation> {
    let v = validate_poses(&[c0, c1, c2])?;
    let (c0, c1, c2) = (v[0], v[1], v[2]);
    if columns_rank(&v) < 3 {
        return Err(Error::DegenerateInput(
            "poses coincide or are collinear in the space of dual quaternions".into(),
        ));
    }
    let b01 = study_bilinear(c0, c1);
    let b02 = study_bilinear(c0, c2);
    let b12 = study_bilinear(c1, c2);
    let tol = 1e-12;
    if b01.abs() <= tol && b02.abs() <= tol && b12.abs() <= tol {
        return Err(Error::NoRealSolution(
            "G(t) vanishes identically: the plane of the poses lies on the Study quadric".into(),
        ));
    }
    if b02.abs() <= tol {
        return Err(Error::NoRealSolution(
            "B(c0, c2) = 0: the linear system for alpha and beta is singular".into(),
        ));
    }
    let beta = b01 / b02;
    let alpha = b12 / b02;
    if alpha.abs() <= tol || beta.abs() <= tol {
        return Err(Error::NoRealSolution(
            "the conic degenerates into a line through two of the poses".into(),
        ));
    }
    let motion = MotionPolynomial::new(vec![
        c0 * alpha,
        c1 - c0 * alpha - c2 * beta,
        c2 * beta,
    ]);
    Ok(PoseInterpolation {
        motion,
        via_times: vec![Param::Finite(0.0), Param::Finite(1.0), Param::Infinity],
        lambda: None,
    })
}

/// The four poses moved so that the first is the identity, with the chosen
/// ruling `t - k` through it and the parameters where the rulings through
/// the other poses meet that line.
struct RulingFrame {
    base: DualQuaternion,
    local: [DualQuaternion; 4],
    k: DualQuaternion,
    nodes: [f64; 3],
}

impl RulingFrame {
    fn new(poses: &[DualQuaternion], branch: Branch) -> Result<Self> {
        if poses.len() != 4 {
            return Err(Error::BadArity {
                what: "poses",
                expected: "4".into(),
                got: poses.len(),
            });
        }
        let v = validate_poses(poses)?;
        let base = v[0];
        let base_inv = base.inverse()?;
        let local: [DualQuaternion; 4] = [0, 1, 2, 3].map(|i| scaled(base_inv * v[i]));
        if columns_rank(&local) < 4 {
            return Err(Error::DegenerateSpan);
        }

        // Vectorial elements (zero scalar parts) of span{local}.
        let constraints = vec![
            local.iter().map(|c| c.primal.w).collect::<Vec<_>>(),
            local.iter().map(|c| c.dual.w).collect::<Vec<_>>(),
        ];
        let (basis, _) = null_space(&constraints, 1e-12);
        if basis.len() != 2 {
            return Err(Error::DegenerateSpan);
        }
        let combine = |mu: &[f64]| {
            (0..4).fold(DualQuaternion::ZERO, |acc, i| acc + local[i] * mu[i])
        };
        let (ka, kb) = (scaled(combine(&basis[0])), scaled(combine(&basis[1])));

        // Study condition on x ka + y kb: qa x^2 + 2 bab x y + qb y^2 = 0.
        let qa = ka.study_value();
        let qb = kb.study_value();
        let bab = study_bilinear(ka, kb);
        let mut disc = bab * bab - qa * qb;
        let scale = bab * bab + (qa * qb).abs();
        if disc < -1e-12 * scale.max(f64::MIN_POSITIVE) {
            return Err(Error::NoRulings);
        }
        disc = disc.max(0.0);
        let sq = disc.sqrt();
        let roots = if qa.abs() >= qb.abs() {
            if qa == 0.0 {
                // Both forms vanish: every vectorial element is on the quadric.
                return Err(Error::DegenerateSpan);
            }
            [(-bab + sq) / qa, (-bab - sq) / qa].map(|r| ka * r + kb)
        } else {
            [(-bab + sq) / qb, (-bab - sq) / qb].map(|r| ka + kb * r)
        };
        let mut ks = roots.map(scaled);
        // Canonical labelling independent of the null-space basis.
        let key = |k: &DualQuaternion| k.normalized();
        if key(&ks[1]).partial_cmp(&key(&ks[0])) == Some(std::cmp::Ordering::Less) {
            ks.swap(0, 1);
        }
        let k = match branch {
            Branch::K1 => ks[0],
            Branch::K2 => ks[1],
        };

        let mut nodes = [0.0; 3];
        for i in 1..4 {
            let denom = study_bilinear(local[i], DualQuaternion::ONE);
            if denom.abs() <= 1e-12 {
                // The ruling through this pose meets `t - k` at infinity.
                return Err(Error::DuplicateNodes);
            }
            nodes[i - 1] = study_bilinear(local[i], k) / denom;
        }
        for i in 0..3 {
            for j in 0..i {
                if (nodes[i] - nodes[j]).abs() <= 1e-12 * (1.0 + nodes[i].abs()) {
                    return Err(Error::DuplicateNodes);
                }
            }
        }
        Ok(Self { base, local, k, nodes })
    }
}

/// Parameters `[∞, t1, t2, t3]` at which a 4-pose cubic on `branch` attains
/// the input poses. They do not depend on the family parameter.
pub fn poses4_nodes(poses: &[DualQuaternion], branch: Branch) -> Result<Vec<Param>> {
    let frame = RulingFrame::new(poses, branch)?;
    Ok(std::iter::once(Param::Infinity)
        .chain(frame.nodes.iter().map(|&t| Param::Finite(t)))
        .collect())
}

/// Default family parameter: clear of all finite nodes.
pub fn default_lambda(nodes: &[f64]) -> f64 {
    2.0 * nodes.iter().fold(0.0_f64, |m, t| m.max(t.abs())) + 1.0
}

/// Cubic through four poses, `c0` at `t = ∞`.
///
/// After moving `c0` to the identity, the two lines of the Study quadric
/// through it read `t - k1`, `t - k2` with vectorial `k`. The cubic meets the
/// chosen line at `∞` and at `t = λ`, and the poses are attained where the
/// rulings through them cross that line.
pub fn interpolate_poses4(poses: &[DualQuaternion], lambda: Option<f64>, branch: Branch) -> Result<PoseInterpolation> {
    let frame = RulingFrame::new(poses, branch)?;
    let t = frame.nodes;
    let lambda = lambda.unwrap_or_else(|| default_lambda(&t));
    if !lambda.is_finite() {
        return Err(Error::BadOption("lambda must be finite".into()));
    }
    for &node in &t {
        if (lambda - node).abs() <= 1e-9 * (1.0 + node.abs()) {
            return Err(Error::BadLambda { lambda, node });
        }
    }

    // C(t) = λ0 c0 N(t) + Σ λi ci ℓi(t), N = ∏ (t - tj), ℓi the quadratic
    // Lagrange basis on t1..t3. Impose C(λ) = λ4 (λ - k).
    let nodal = |s: f64| t.iter().map(|tj| s - tj).product::<f64>();
    let lagrange = |i: usize, s: f64| {
        (0..3)
            .filter(|&j| j != i)
            .map(|j| (s - t[j]) / (t[i] - t[j]))
            .product::<f64>()
    };
    let line_point = DualQuaternion::real(lambda) - frame.k;
    let cols: Vec<[f64; 8]> = vec![
        (frame.local[0] * nodal(lambda)).to_array(),
        (frame.local[1] * lagrange(0, lambda)).to_array(),
        (frame.local[2] * lagrange(1, lambda)).to_array(),
        (frame.local[3] * lagrange(2, lambda)).to_array(),
        (-line_point).to_array(),
    ];
    let rows: Vec<Vec<f64>> = (0..8).map(|r| cols.iter().map(|c| c[r]).collect()).collect();
    let (_, spectrum) = null_space(&rows, 0.0);
    let (mut basis, _) = null_space(&rows, 1e-9);
    if basis.len() != 1 {
        let detail = if basis.is_empty() {
            format!("no consistent scaling (smallest singular value {:e})", spectrum[0])
        } else {
            "scaling of the poses is not unique".to_string()
        };
        return Err(Error::NoRealSolution(detail));
    }
    let mu = basis.pop().unwrap();
    let top = mu.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    if mu[..4].iter().any(|x| x.abs() <= 1e-9 * top) {
        return Err(Error::NoRealSolution(
            "a pose receives zero weight in the cubic".into(),
        ));
    }

    // Assemble coefficients in the monomial basis.
    let nodal_poly = crate::polynomial::QuatPolynomial::from_real_roots(t);
    let mut local = MotionPolynomial::new(
        nodal_poly
            .coefficients()
            .iter()
            .map(|c| frame.local[0] * (c.w * mu[0]))
            .collect(),
    );
    for i in 0..3 {
        let others: Vec<f64> = (0..3).filter(|&j| j != i).map(|j| t[j]).collect();
        let denom: f64 = others.iter().map(|tj| t[i] - tj).product();
        let li = crate::polynomial::QuatPolynomial::from_real_roots(others);
        let term = MotionPolynomial::new(
            li.coefficients()
                .iter()
                .map(|c| frame.local[i + 1] * (c.w * mu[i + 1] / denom))
                .collect(),
        );
        local = &local + &term;
    }
    let motion = local.mul_left(frame.base);
    let scale = motion.max_abs();
    let motion = if scale > 0.0 { motion.scale(1.0 / scale) } else { motion };

    Ok(PoseInterpolation {
        motion,
        via_times: std::iter::once(Param::Infinity)
            .chain(t.iter().map(|&x| Param::Finite(x)))
            .collect(),
        lambda: Some(lambda),
    })
}
