//! Factorization of motion polynomials into revolute factors `t - h` and
//! assembly of closed 4R / 6R loops from pairs of factorizations.
//!
//! For a monic `C` whose norm polynomial `C C*` splits into positive real
//! quadratics `M_1 … M_d`, each ordering of the `M_i` yields at most one
//! factorization `C = (t - h_1) ⋯ (t - h_d)` with `(t - h_i)(t - h_i)* = M_i`.
//! The rightmost factor is found from the remainder `C mod M = r1 t + r0` as
//! `h = -r1^-1 r0`, then `C` is right-divided by `t - h` and the procedure
//! repeats.

use crate::dual_quaternion::DualQuaternion;
use crate::error::{Error, Result};
use crate::linalg::real_poly_roots;
use crate::polynomial::MotionPolynomial;
use crate::quaternion::{vnorm, Quaternion, Vec3};
use crate::tolerance;

/// A factor `t - h`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinearFactor {
    pub h: DualQuaternion,
}

impl LinearFactor {
    pub fn polynomial(&self) -> MotionPolynomial {
        MotionPolynomial::linear(self.h)
    }

    /// The displacement `t - h` at parameter `t`.
    pub fn eval(&self, t: f64) -> DualQuaternion {
        DualQuaternion::real(t) - self.h
    }
}

/// A positive real quadratic `t^2 + b t + c` dividing the norm polynomial.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NormFactor {
    pub b: f64,
    pub c: f64,
}

impl NormFactor {
    fn from_root(re: f64, im: f64) -> Self {
        Self { b: -2.0 * re, c: re * re + im * im }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Factorization {
    /// Factors in product order, left to right.
    pub factors: Vec<LinearFactor>,
    /// Index into the distinct norm factors for each position.
    pub order: Vec<usize>,
    /// Real polynomial (ascending) multiplying the product; `[1]` for the
    /// bounded motions handled here.
    pub scalar_cofactor: Vec<f64>,
}

impl Factorization {
    pub fn product(&self) -> MotionPolynomial {
        let init = MotionPolynomial::new(
            self.scalar_cofactor.iter().map(|&c| DualQuaternion::real(c)).collect(),
        );
        self.factors.iter().fold(init, |acc, f| &acc * &f.polynomial())
    }

    /// Max coefficient deviation of the product from `motion`, relative to the
    /// largest coefficient of `motion`.
    pub fn reconstruction_error(&self, motion: &MotionPolynomial) -> f64 {
        let scale = motion.max_abs().max(f64::MIN_POSITIVE);
        (&self.product() - motion).max_abs() / scale
    }
}

/// A monic representative of a motion polynomial.
///
/// `motion(s) = C(t) * lead^-1` where `t = s` or, after a reparameterization
/// with offset `b`, `t = b + 1/s` (up to a real factor). Right multiplication
/// by the constant `lead^-1` moves the tool frame: the original origin path is
/// traced by [`MonicMotion::tool_point`].
#[derive(Clone, Debug, PartialEq)]
pub struct MonicMotion {
    pub motion: MotionPolynomial,
    pub lead: DualQuaternion,
    pub reparameterization: Option<f64>,
    pub tool_point: Vec3,
}

impl MonicMotion {
    /// Parameter of the monic motion corresponding to `t` of the input.
    pub fn map_parameter(&self, t: f64) -> f64 {
        match self.reparameterization {
            None => t,
            Some(b) => 1.0 / (t - b),
        }
    }
}

/// Coefficients of `C(t + b)`.
fn shift(c: &MotionPolynomial, b: f64) -> MotionPolynomial {
    // Repeated synthetic division yields the Taylor coefficients at b.
    let mut work: Vec<DualQuaternion> = c.coefficients().to_vec();
    let n = work.len();
    for k in 0..n {
        for j in (k..n - 1).rev() {
            work[j] = work[j] + work[j + 1] * b;
        }
    }
    MotionPolynomial::new(work)
}

/// Makes the leading coefficient the identity, reparameterizing with
/// `t -> b + 1/s` for `b = 1..=8` when the leading primal part is singular.
pub fn monic_normalize(c: &MotionPolynomial) -> Result<MonicMotion> {
    if c.is_zero() {
        return Err(Error::NotAMotion("zero polynomial".into()));
    }
    let scale = c.max_abs();
    let usable = |lead: DualQuaternion| lead.primal.length() > 1e-8 * scale;

    let (base, reparameterization) = if usable(c.leading()) {
        (c.clone(), None)
    } else {
        let d = c.degree();
        let found = (1..=8).map(f64::from).find_map(|b| {
            let shifted = shift(c, b);
            // s^d C(b + 1/s): reverse the coefficient list of C(b + u).
            let mut rev: Vec<DualQuaternion> = (0..=d).map(|k| shifted.coeff(k)).collect();
            rev.reverse();
            let candidate = MotionPolynomial::new(rev);
            usable(candidate.leading()).then_some((candidate, Some(b)))
        });
        found.ok_or(Error::IrreducibleLeading)?
    };

    let lead = base.leading();
    let lead_inv = lead.inverse()?;
    let mut coeffs: Vec<DualQuaternion> = base.coefficients().iter().map(|&x| x * lead_inv).collect();
    *coeffs.last_mut().expect("nonzero") = DualQuaternion::ONE;
    let tool_point = (lead.dual * lead.primal.inverse()?).vector();
    Ok(MonicMotion {
        motion: MotionPolynomial::new(coeffs),
        lead,
        reparameterization,
        tool_point,
    })
}

/// Distinct quadratic factors of `C C*` (sorted by real part, then imaginary
/// part of their roots) with their multiplicities.
pub fn norm_factors(c: &MotionPolynomial) -> Result<Vec<(NormFactor, usize)>> {
    let norm = c.real_norm();
    let roots = real_poly_roots(&norm);
    let d = c.degree();
    let mut upper = Vec::with_capacity(d);
    for z in &roots {
        let mag = z.norm().max(1.0);
        if z.im.abs() <= 1e-7 * mag {
            return Err(Error::RealNormRoots);
        }
        if z.im > 0.0 {
            upper.push(*z);
        }
    }
    if upper.len() != d || roots.len() != 2 * d {
        return Err(Error::RealNormRoots);
    }
    upper.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));

    // Group numerically repeated roots and average them.
    let mut groups: Vec<(nalgebra::Complex<f64>, usize)> = Vec::new();
    for z in upper {
        match groups
            .iter_mut()
            .find(|(g, n)| (*g / *n as f64 - z).norm() <= 1e-5 * z.norm().max(1.0))
        {
            Some((g, n)) => {
                *g += z;
                *n += 1;
            }
            None => groups.push((z, 1)),
        }
    }
    Ok(groups
        .into_iter()
        .map(|(sum, n)| {
            let z = sum / n as f64;
            (NormFactor::from_root(z.re, z.im), n)
        })
        .collect())
}

/// Factorizes a monic motion polynomial for one ordering of its norm factors.
///
/// `order[k]` selects the distinct norm factor (as returned by
/// [`norm_factors`]) of the `k`-th factor from the left; each factor must
/// appear as often as its multiplicity.
pub fn factorize(c: &MotionPolynomial, order: &[usize]) -> Result<Factorization> {
    let factors = norm_factors(c)?;
    factorize_with(c, &factors, order)
}

fn factorize_with(c: &MotionPolynomial, factors: &[(NormFactor, usize)], order: &[usize]) -> Result<Factorization> {
    let d = c.degree();
    if c.leading() != DualQuaternion::ONE {
        return Err(Error::NotAMotion("factorization requires a monic polynomial".into()));
    }
    let mut counts = vec![0usize; factors.len()];
    for &o in order {
        if o >= factors.len() {
            return Err(Error::BadOption(format!("norm factor index {o} out of range")));
        }
        counts[o] += 1;
    }
    if order.len() != d || counts.iter().zip(factors).any(|(n, (_, m))| n != m) {
        return Err(Error::BadOption(
            "ordering must use every norm factor according to its multiplicity".into(),
        ));
    }

    let scale = c.max_abs();
    let mut rest = c.clone();
    let mut hs = vec![DualQuaternion::ZERO; d];
    for pos in (0..d).rev() {
        let m = factors[order[pos]].0;
        let (r1, r0) = rest.rem_real_quadratic(m.b, m.c);
        let local = rest.max_abs().max(scale);
        if r1.primal.length() <= 1e-9 * local {
            return Err(Error::NonGenericMotion(format!(
                "remainder has no invertible linear coefficient at position {pos}"
            )));
        }
        let h = -(r1.inverse()? * r0);
        let (quotient, remainder) = rest.div_rem_linear_right(h);
        if remainder.max_abs() > 1e-6 * local {
            return Err(Error::NonGenericMotion(format!(
                "right division leaves a remainder of {:e}",
                remainder.max_abs()
            )));
        }
        hs[pos] = h;
        rest = quotient;
    }
    Ok(Factorization {
        factors: hs.into_iter().map(|h| LinearFactor { h }).collect(),
        order: order.to_vec(),
        scalar_cofactor: vec![1.0],
    })
}

/// Distinct orderings of a multiset in lexicographic order.
fn multiset_permutations(counts: &[usize]) -> Vec<Vec<usize>> {
    fn go(counts: &mut [usize], prefix: &mut Vec<usize>, total: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == total {
            out.push(prefix.clone());
            return;
        }
        for i in 0..counts.len() {
            if counts[i] > 0 {
                counts[i] -= 1;
                prefix.push(i);
                go(counts, prefix, total, out);
                prefix.pop();
                counts[i] += 1;
            }
        }
    }
    let mut counts = counts.to_vec();
    let total = counts.iter().sum();
    let mut out = Vec::new();
    go(&mut counts, &mut Vec::new(), total, &mut out);
    out
}

/// Every factorization of a monic motion polynomial, one per distinct
/// ordering of its norm factors that succeeds, in lexicographic order of the
/// ordering.
pub fn all_factorizations(c: &MotionPolynomial) -> Result<Vec<Factorization>> {
    let factors = norm_factors(c)?;
    let counts: Vec<usize> = factors.iter().map(|(_, m)| *m).collect();
    let mut found = Vec::new();
    let mut last_err = None;
    for order in multiset_permutations(&counts) {
        match factorize_with(c, &factors, &order) {
            Ok(f) => found.push(f),
            Err(e) => last_err = Some(e),
        }
    }
    if found.is_empty() {
        return Err(last_err.unwrap_or(Error::InsufficientFactorizations(0)));
    }
    Ok(found)
}

/// A revolute axis in Plücker coordinates: unit `direction` and
/// `moment = x × direction` for any point `x` on the line.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JointAxis {
    pub direction: Vec3,
    pub moment: Vec3,
}

impl JointAxis {
    /// Point of the axis closest to the origin.
    pub fn point(&self) -> Vec3 {
        cross(self.direction, self.moment)
    }
}

fn cross(a: Vec3, b: Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Fixed line of the rotations `t - h`.
///
/// With `h = h0 + v + ε (m0 + m)`, the points fixed by `t - h` satisfy
/// `x × v = m / 2`, so the unit-direction moment is `m / (2 |v|)`.
pub fn axis_of(f: &LinearFactor) -> Result<JointAxis> {
    let v = f.h.primal.vector();
    let len = vnorm(v);
    if len <= 1e-12 * f.h.max_abs().max(1.0) {
        return Err(Error::NoAxis);
    }
    let direction = v.map(|c| c / len);
    let m = f.h.dual.vector().map(|c| c / (2.0 * len));
    let along: f64 = (0..3).map(|i| m[i] * direction[i]).sum();
    let moment = [0, 1, 2].map(|i| m[i] - along * direction[i]);
    Ok(JointAxis { direction, moment })
}

/// A closed loop of revolute joints from two factorizations of one motion.
#[derive(Clone, Debug, PartialEq)]
pub struct Mechanism {
    /// Axes of the first factorization left to right, then those of the
    /// second right to left.
    pub loop_joints: Vec<JointAxis>,
    pub driving_parameterization: MotionPolynomial,
}

fn same_factors(a: &Factorization, b: &Factorization) -> bool {
    a.factors.len() == b.factors.len()
        && a.factors.iter().zip(&b.factors).all(|(x, y)| {
            (x.h - y.h).max_abs() <= tolerance::FACT * x.h.max_abs().max(1.0)
        })
}

pub fn build_mechanism(f1: &Factorization, f2: &Factorization) -> Result<Mechanism> {
    if same_factors(f1, f2) {
        return Err(Error::IdenticalFactorizations);
    }
    let p1 = f1.product();
    let p2 = f2.product();
    let scale = p1.max_abs().max(p2.max_abs());
    if (&p1 - &p2).max_abs() > 1e-6 * scale {
        return Err(Error::NotAMotion(
            "the two factorizations describe different motions".into(),
        ));
    }
    let mut loop_joints = Vec::with_capacity(f1.factors.len() + f2.factors.len());
    for f in &f1.factors {
        loop_joints.push(axis_of(f)?);
    }
    for f in f2.factors.iter().rev() {
        loop_joints.push(axis_of(f)?);
    }
    Ok(Mechanism {
        loop_joints,
        driving_parameterization: p1,
    })
}

/// Monic normalization, all factorizations and one mechanism per pair of
/// factorizations.
#[derive(Clone, Debug, PartialEq)]
pub struct Synthesis {
    pub monic: MonicMotion,
    pub factorizations: Vec<Factorization>,
    /// `(i, j, mechanism)` for each pair `i < j` of factorizations.
    pub mechanisms: Vec<(usize, usize, Mechanism)>,
}

/// Factorizes a motion without requiring a closed loop.
pub fn factorize_motion(c: &MotionPolynomial) -> Result<(MonicMotion, Vec<Factorization>)> {
    let monic = monic_normalize(c)?;
    let factorizations = all_factorizations(&monic.motion)?;
    Ok((monic, factorizations))
}

/// Full linkage synthesis; needs at least two factorizations.
pub fn synthesize(c: &MotionPolynomial) -> Result<Synthesis> {
    let (monic, factorizations) = factorize_motion(c)?;
    if factorizations.len() < 2 {
        return Err(Error::InsufficientFactorizations(factorizations.len()));
    }
    let mut mechanisms = Vec::new();
    for i in 0..factorizations.len() {
        for j in i + 1..factorizations.len() {
            if let Ok(m) = build_mechanism(&factorizations[i], &factorizations[j]) {
                mechanisms.push((i, j, m));
            }
        }
    }
    if mechanisms.is_empty() {
        return Err(Error::InsufficientFactorizations(1));
    }
    Ok(Synthesis {
        monic,
        factorizations,
        mechanisms,
    })
}

impl From<Quaternion> for LinearFactor {
    fn from(q: Quaternion) -> Self {
        Self { h: q.into() }
    }
}
