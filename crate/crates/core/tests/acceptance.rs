//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p motionforge-core --test acceptance`.

use std::process::ExitCode;
use std::time::Instant;

use motionforge_core::interp::bezier::{self, LAGRANGE_TO_BERNSTEIN_2, LAGRANGE_TO_BERNSTEIN_3};
use motionforge_core::interp::points::{interpolate_points_generic, SECONDARY_3};
use motionforge_core::interp::poses::{default_lambda, poses4_nodes};
use motionforge_core::interp::{interpolate_points5, interpolate_points7, interpolate_poses3, interpolate_poses4};
use motionforge_core::quaternion::vdist;
use motionforge_core::*;
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    name: &'static str,
    passed: bool,
    detail: String,
}

fn random_points(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec3> {
    (0..n)
        .map(|_| [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)])
        .collect()
}

fn random_pose(rng: &mut ChaCha8Rng) -> DualQuaternion {
    let p = Quaternion::new(
        rng.gen_range(-1.0..1.0),
        rng.gen_range(-1.0..1.0),
        rng.gen_range(-1.0..1.0),
        rng.gen_range(-1.0..1.0),
    );
    let t = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
    DualQuaternion::from_rotation_translation(p.scale(1.0 / p.length()), t)
}

/// A random pose times three random rotation factors.
fn random_cubic(rng: &mut ChaCha8Rng) -> MotionPolynomial {
    let mut c = MotionPolynomial::constant(random_pose(rng));
    for _ in 0..3 {
        let frame = random_pose(rng);
        let rot = Quaternion::new(rng.gen_range(-1.0..1.0), 0.0, 0.0, rng.gen_range(0.5..2.0));
        let h = frame * DualQuaternion::from(rot) * frame.inverse().unwrap();
        c = &c * &MotionPolynomial::linear(h);
    }
    c
}

/// Worst distance by which two points of the factor's axis move under the
/// relative displacement between two parameter values, relative to the
/// distance of the axis from the origin.
fn fixed_axis_error(f: &LinearFactor) -> f64 {
    let Ok(axis) = axis_of(f) else { return f64::INFINITY };
    let Ok(inv) = f.eval(-1.3).inverse() else { return f64::INFINITY };
    let rel = f.eval(0.9) * inv;
    let p0 = axis.point();
    let p1 = [0, 1, 2].map(|i| p0[i] + axis.direction[i]);
    let scale = p0.iter().fold(1.0_f64, |m, x| m.max(x.abs()));
    [p0, p1]
        .iter()
        .map(|&x| rel.act_on_point(x).map_or(f64::INFINITY, |y| vdist(x, y) / scale))
        .fold(0.0, f64::max)
}

fn points_scheme(
    name: &'static str,
    n: usize,
    seed: u64,
    budget_s: f64,
    fit: fn(&[Vec3]) -> Result<motionforge_core::interp::PointInterpolation>,
    compare_generic: bool,
) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tasks: Vec<Vec<Vec3>> = (0..1000).map(|_| random_points(&mut rng, n)).collect();
    let start = Instant::now();
    let mut ok = 0;
    let mut worst_res = 0.0_f64;
    let mut worst_study = 0.0_f64;
    let mut worst_weights = 0.0_f64;
    for pts in &tasks {
        let Ok(r) = fit(pts) else { continue };
        ok += 1;
        for (t, a) in r.via_times.iter().zip(pts) {
            let d = r.motion.eval(*t).project_origin().map_or(f64::INFINITY, |x| vdist(x, *a));
            worst_res = worst_res.max(d);
        }
        worst_study = worst_study.max(r.motion.study_residue());
        if compare_generic {
            match interpolate_points_generic(pts, &bezier::NODES_3, &SECONDARY_3) {
                Ok(g) => {
                    let scale = g.weights.iter().fold(1.0_f64, |m, w| m.max(w.max_abs()));
                    for (a, b) in r.weights.iter().zip(&g.weights) {
                        worst_weights = worst_weights.max((*a - *b).max_abs() / scale);
                    }
                }
                Err(_) => worst_weights = f64::INFINITY,
            }
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    let rate = ok as f64 / tasks.len() as f64;
    let mut passed = rate >= 0.99 && worst_res < 1e-9 && worst_study < 1e-9 && elapsed < budget_s;
    let mut detail = format!(
        "success {:.1}%, max residual {worst_res:.2e}, max study residue {worst_study:.2e}, {elapsed:.2}s",
        100.0 * rate
    );
    if compare_generic {
        passed &= worst_weights < 1e-8;
        detail += &format!(", closed form vs generic {worst_weights:.2e}");
    }
    Outcome { name, passed, detail }
}

fn poses3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    let mut worst_fit = 0.0_f64;
    let mut worst_m = 0.0_f64;
    let mut failures = 0;
    for _ in 0..500 {
        let c = [random_pose(&mut rng), random_pose(&mut rng), random_pose(&mut rng)];
        match interpolate_poses3(c[0], c[1], c[2]) {
            Ok(fit) => {
                for (t, ci) in fit.via_times.iter().zip(&c) {
                    worst_fit = worst_fit.max(fit.motion.eval_param(*t).projective_distance(*ci));
                }
                let s = fit.motion.max_abs();
                for m in fit.motion.study_polynomial() {
                    worst_m = worst_m.max(m.abs() / (s * s));
                }
            }
            Err(_) => failures += 1,
        }
    }
    Outcome {
        name: "3-pose conic",
        passed: failures == 0 && worst_fit < 1e-8 && worst_m < 1e-9,
        detail: format!("{failures} failures, max projective error {worst_fit:.2e}, max M(t) coefficient {worst_m:.2e}"),
    }
}

fn poses4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(104);
    let mut worst = 0.0_f64;
    let mut failures = 0;
    let cases = 100;
    for _ in 0..cases {
        let gen = random_cubic(&mut rng);
        let mut ts = [0.0_f64; 3];
        loop {
            for t in ts.iter_mut() {
                *t = rng.gen_range(-3.0..3.0);
            }
            let gap = (0..3)
                .flat_map(|i| (0..i).map(move |j| (i, j)))
                .map(|(i, j)| (ts[i] - ts[j]).abs())
                .fold(f64::INFINITY, f64::min);
            if gap > 0.2 {
                break;
            }
        }
        let poses: Vec<DualQuaternion> = std::iter::once(gen.leading())
            .chain(ts.iter().map(|&t| gen.eval(t)))
            .collect();
        for branch in [Branch::K1, Branch::K2] {
            let nodes = match poses4_nodes(&poses, branch) {
                Ok(n) => n,
                Err(_) => {
                    failures += 1;
                    continue;
                }
            };
            let finite: Vec<f64> = nodes.iter().filter_map(|t| t.finite()).collect();
            let base = default_lambda(&finite);
            for s in [1.0, -1.0, 1.7, -2.3, 3.1] {
                match interpolate_poses4(&poses, Some(base * s), branch) {
                    Ok(fit) => {
                        for (t, c) in fit.via_times.iter().zip(&poses) {
                            worst = worst.max(fit.motion.eval_param(*t).projective_distance(*c));
                        }
                    }
                    Err(_) => failures += 1,
                }
            }
        }
    }
    Outcome {
        name: "4-pose cubic",
        passed: failures == 0 && worst < 1e-7,
        detail: format!("{cases} cases x 2 branches x 5 lambdas, {failures} failures, max projective error {worst:.2e}"),
    }
}

fn factorization() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(105);
    let mut quad_ok = 0;
    let mut quad_total = 0;
    let mut worst_rec = 0.0_f64;
    let mut worst_axis = 0.0_f64;
    let mut bennett = true;
    while quad_total < 500 {
        let Ok(fit) = interpolate_points5(&random_points(&mut rng, 5)) else { continue };
        quad_total += 1;
        let Ok(syn) = synthesize(&fit.motion) else { continue };
        if syn.factorizations.len() == 2 {
            quad_ok += 1;
        }
        for f in &syn.factorizations {
            worst_rec = worst_rec.max(f.reconstruction_error(&syn.monic.motion));
            for lf in &f.factors {
                worst_axis = worst_axis.max(fixed_axis_error(lf));
            }
        }
        bennett &= !syn.mechanisms.is_empty() && syn.mechanisms.iter().all(|(_, _, m)| m.loop_joints.len() == 4);
    }

    let mut cubic_ok = 0;
    let mut cubic_total = 0;
    let mut six_bar = true;
    let mut counts = [0usize; 7];
    while cubic_total < 200 {
        let Ok(fit) = interpolate_points7(&random_points(&mut rng, 7)) else { continue };
        cubic_total += 1;
        let Ok((monic, fs)) = factorize_motion(&fit.motion) else { continue };
        counts[fs.len().min(6)] += 1;
        for f in &fs {
            worst_rec = worst_rec.max(f.reconstruction_error(&monic.motion));
            for lf in &f.factors {
                worst_axis = worst_axis.max(fixed_axis_error(lf));
            }
        }
        if fs.len() >= 2 {
            cubic_ok += 1;
            match synthesize(&fit.motion) {
                Ok(syn) => six_bar &= syn.mechanisms.iter().all(|(_, _, m)| m.loop_joints.len() == 6),
                Err(_) => six_bar = false,
            }
        }
    }
    let quad_rate = quad_ok as f64 / quad_total as f64;
    let cubic_rate = cubic_ok as f64 / cubic_total as f64;
    Outcome {
        name: "factorization",
        passed: quad_ok == quad_total
            && cubic_rate >= 0.9
            && worst_rec < 1e-8
            && worst_axis < 1e-8
            && bennett
            && six_bar,
        detail: format!(
            "quadratics with 2 factorizations {:.1}%, cubics with >= 2 {:.1}% (counts by number {:?}), \
             max reconstruction {worst_rec:.2e}, max fixed-axis error {worst_axis:.2e}, 4R loops {bennett}, 6R loops {six_bar}",
            100.0 * quad_rate,
            100.0 * cubic_rate,
            &counts[1..]
        ),
    }
}

type Q = Ratio<i64>;

fn bernstein_exact(n: usize, i: usize, t: Q) -> Q {
    let binom = (0..i).fold(1i64, |acc, j| acc * (n - j) as i64 / (j + 1) as i64);
    let one = Q::from_integer(1);
    let mut v = Q::from_integer(binom);
    for _ in 0..i {
        v *= t;
    }
    for _ in 0..n - i {
        v *= one - t;
    }
    v
}

fn bernstein_tables() -> Outcome {
    let nodes2 = [Q::new(0, 1), Q::new(1, 2), Q::new(1, 1)];
    let nodes3 = [Q::new(0, 1), Q::new(1, 3), Q::new(2, 3), Q::new(1, 1)];
    let params: Vec<Q> = (0..20).map(|k| Q::new(k - 4, 13)).collect();
    let mut mismatches = 0;
    let mut check = |nodes: &[Q], row: &dyn Fn(usize, usize) -> (i64, i64)| {
        let n = nodes.len() - 1;
        for &t in &params {
            for k in 0..=n {
                let f: Q = (0..=n).filter(|&j| j != k).map(|j| t - nodes[j]).product();
                let b: Q = (0..=n)
                    .map(|i| {
                        let (num, den) = row(k, i);
                        Q::new(num, den) * bernstein_exact(n, i, t)
                    })
                    .sum();
                if f != b {
                    mismatches += 1;
                }
            }
        }
    };
    check(&nodes2, &|k, i| LAGRANGE_TO_BERNSTEIN_2[k][i]);
    check(&nodes3, &|k, i| LAGRANGE_TO_BERNSTEIN_3[k][i]);
    Outcome {
        name: "Bernstein conversion tables",
        passed: mismatches == 0,
        detail: format!("{} exact comparisons at 20 rational parameters, {mismatches} mismatches", 20 * (3 + 4)),
    }
}

fn main() -> ExitCode {
    let outcomes = [
        points_scheme("5-point scheme", 5, 101, 5.0, interpolate_points5, false),
        points_scheme("7-point scheme", 7, 102, 10.0, interpolate_points7, true),
        poses3(),
        poses4(),
        factorization(),
        bernstein_tables(),
    ];
    let mut all = true;
    for o in &outcomes {
        println!("{} {}: {}", if o.passed { "PASS" } else { "FAIL" }, o.name, o.detail);
        all &= o.passed;
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
