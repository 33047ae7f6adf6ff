//! Dense real linear algebra behind the quaternion solvers.

use nalgebra::{Complex, DMatrix, DVector};

use crate::error::{Error, Result};
use crate::quaternion::Quaternion;
use crate::tolerance;

/// Solves the square quaternion system `Σ_i A[j][i] x_i = b_j` where every
/// coefficient multiplies its unknown from the left.
///
/// The system is realified (each unknown becomes 4 reals, each coefficient its
/// 4×4 left-multiplication matrix) and solved by SVD. The system is rejected
/// when the smallest singular value falls below `SING` times the largest.
pub fn solve_left_quaternion_system(a: &[Vec<Quaternion>], b: &[Quaternion]) -> Result<Vec<Quaternion>> {
    let n = b.len();
    assert!(a.len() == n && a.iter().all(|row| row.len() == n));
    let mut m = DMatrix::<f64>::zeros(4 * n, 4 * n);
    for (j, row) in a.iter().enumerate() {
        for (i, coeff) in row.iter().enumerate() {
            let l = coeff.left_matrix();
            for r in 0..4 {
                for c in 0..4 {
                    m[(4 * j + r, 4 * i + c)] = l[r][c];
                }
            }
        }
    }
    let rhs = DVector::from_iterator(4 * n, b.iter().flat_map(|q| q.to_array()));
    let x = solve_square(m, rhs)?;
    Ok((0..n)
        .map(|i| Quaternion::new(x[4 * i], x[4 * i + 1], x[4 * i + 2], x[4 * i + 3]))
        .collect())
}

fn solve_square(m: DMatrix<f64>, rhs: DVector<f64>) -> Result<DVector<f64>> {
    let svd = m.svd(true, true);
    let smax = svd.singular_values.max();
    let smin = svd.singular_values.min();
    let ratio = if smax > 0.0 { smin / smax } else { 0.0 };
    if ratio <= tolerance::SING {
        return Err(Error::SingularSystem { ratio });
    }
    svd.solve(&rhs, 0.0)
        .map_err(|_| Error::SingularSystem { ratio })
}

/// Singular values (descending) of a row-major matrix.
pub fn singular_values(rows: &[Vec<f64>]) -> Vec<f64> {
    let m = to_matrix(rows);
    let mut s: Vec<f64> = m.singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Numerical rank with a cutoff relative to the largest singular value.
pub fn rank(rows: &[Vec<f64>], rel_tol: f64) -> usize {
    let s = singular_values(rows);
    let top = s.first().copied().unwrap_or(0.0);
    if top == 0.0 {
        return 0;
    }
    s.iter().filter(|&&v| v > rel_tol * top).count()
}

/// Orthonormal basis of the right null space of a row-major matrix, using a
/// relative singular-value cutoff. Returns the basis vectors together with
/// the singular values of the full spectrum (ascending, padded with zeros up
/// to the number of columns).
pub fn null_space(rows: &[Vec<f64>], rel_tol: f64) -> (Vec<Vec<f64>>, Vec<f64>) {
    let m = to_matrix(rows);
    let ncols = m.ncols();
    // Pad to a square-or-tall matrix so that V^T is complete.
    let padded = if m.nrows() < ncols {
        let mut p = DMatrix::<f64>::zeros(ncols, ncols);
        p.view_mut((0, 0), (m.nrows(), ncols)).copy_from(&m);
        p
    } else {
        m
    };
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let sv = &svd.singular_values;
    let top = sv.max();
    let mut spectrum: Vec<f64> = sv.iter().copied().collect();
    spectrum.sort_by(|a, b| a.total_cmp(b));
    let basis = (0..sv.len())
        .filter(|&k| top == 0.0 || sv[k] <= rel_tol * top)
        .map(|k| v_t.row(k).iter().copied().collect())
        .collect();
    (basis, spectrum)
}

fn to_matrix(rows: &[Vec<f64>]) -> DMatrix<f64> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    DMatrix::from_fn(nrows, ncols, |r, c| rows[r][c])
}

/// Complex roots of a real polynomial (ascending coefficients) from the
/// eigenvalues of its companion matrix, each polished by Newton steps.
pub fn real_poly_roots(coeffs: &[f64]) -> Vec<Complex<f64>> {
    let mut c = coeffs.to_vec();
    while c.last() == Some(&0.0) {
        c.pop();
    }
    if c.len() < 2 {
        return Vec::new();
    }
    let deg = c.len() - 1;
    let lead = c[deg];
    let monic: Vec<f64> = c.iter().map(|x| x / lead).collect();
    let mut comp = DMatrix::<f64>::zeros(deg, deg);
    for i in 1..deg {
        comp[(i, i - 1)] = 1.0;
    }
    for i in 0..deg {
        comp[(i, deg - 1)] = -monic[i];
    }
    let eigen = nalgebra::linalg::Schur::try_new(comp, f64::EPSILON, 2000)
        .map(|schur| schur.complex_eigenvalues().iter().copied().collect::<Vec<_>>());
    let roots = eigen.unwrap_or_else(|| aberth(&monic));
    roots.into_iter().map(|z| polish_root(&monic, z)).collect()
}

/// Simultaneous root iteration, used when the QR iteration stalls (which
/// happens for some companion matrices with repeated roots).
fn aberth(monic: &[f64]) -> Vec<Complex<f64>> {
    let deg = monic.len() - 1;
    let eval = |z: Complex<f64>| {
        let (mut p, mut dp) = (Complex::new(0.0, 0.0), Complex::new(0.0, 0.0));
        for &a in monic.iter().rev() {
            dp = dp * z + p;
            p = p * z + a;
        }
        (p, dp)
    };
    // Cauchy bound for the root radius.
    let radius = 1.0 + monic[..deg].iter().fold(0.0_f64, |m, a| m.max(a.abs()));
    let mut z: Vec<Complex<f64>> = (0..deg)
        .map(|k| Complex::from_polar(radius * 0.5, 0.4 + std::f64::consts::TAU * k as f64 / deg as f64))
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0_f64;
        for i in 0..deg {
            let (p, dp) = eval(z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex<f64> = (0..deg)
                .filter(|&j| j != i)
                .map(|j| Complex::new(1.0, 0.0) / (z[i] - z[j]))
                .sum();
            let step = ratio / (Complex::new(1.0, 0.0) - ratio * repulsion);
            if step.re.is_finite() && step.im.is_finite() {
                z[i] -= step;
                moved = moved.max(step.norm() / z[i].norm().max(1.0));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

fn polish_root(monic: &[f64], mut z: Complex<f64>) -> Complex<f64> {
    for _ in 0..3 {
        let (mut p, mut dp) = (Complex::new(0.0, 0.0), Complex::new(0.0, 0.0));
        for &a in monic.iter().rev() {
            dp = dp * z + p;
            p = p * z + a;
        }
        if dp.norm() == 0.0 {
            break;
        }
        let step = p / dp;
        let next = z - step;
        if !next.re.is_finite() || !next.im.is_finite() {
            break;
        }
        // Newton diverges near multiple roots; only accept improving steps.
        let pn = monic.iter().rev().fold(Complex::new(0.0, 0.0), |acc, &a| acc * next + a);
        if pn.norm() >= p.norm() {
            break;
        }
        z = next;
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_scalar_quaternion_system() {
        // i x = j  =>  x = -i j = -k
        let x = solve_left_quaternion_system(&[vec![Quaternion::I]], &[Quaternion::J]).unwrap();
        assert!((x[0] - (-Quaternion::K)).max_abs() < 1e-15);
    }

    #[test]
    fn singular_system_is_rejected() {
        let err = solve_left_quaternion_system(&[vec![Quaternion::ZERO]], &[Quaternion::ONE]);
        assert!(matches!(err, Err(Error::SingularSystem { .. })));
    }

    #[test]
    fn two_by_two_system() {
        let a = vec![
            vec![Quaternion::new(1.0, 2.0, 0.0, -1.0), Quaternion::J],
            vec![Quaternion::K, Quaternion::new(0.5, 0.0, 1.0, 1.0)],
        ];
        let x = [Quaternion::new(0.3, -0.2, 0.7, 1.1), Quaternion::new(-1.0, 0.4, 0.0, 2.0)];
        let b: Vec<Quaternion> = a
            .iter()
            .map(|row| row[0] * x[0] + row[1] * x[1])
            .collect();
        let got = solve_left_quaternion_system(&a, &b).unwrap();
        for (g, e) in got.iter().zip(&x) {
            assert!((*g - *e).max_abs() < 1e-13);
        }
    }

    #[test]
    fn roots_of_t2_plus_1_times_t2_plus_4() {
        // (t^2+1)(t^2+4) = t^4 + 5 t^2 + 4
        let mut r = real_poly_roots(&[4.0, 0.0, 5.0, 0.0, 1.0]);
        r.sort_by(|a, b| a.im.total_cmp(&b.im));
        let ims: Vec<f64> = r.iter().map(|z| z.im).collect();
        for (got, want) in ims.iter().zip([-2.0, -1.0, 1.0, 2.0]) {
            assert!((got - want).abs() < 1e-12);
        }
        assert!(r.iter().all(|z| z.re.abs() < 1e-12));
    }

    #[test]
    fn null_space_of_rank_one_rows() {
        let (basis, _) = null_space(&[vec![1.0, 1.0, 0.0]], 1e-12);
        assert_eq!(basis.len(), 2);
        for v in &basis {
            assert!((v[0] + v[1]).abs() < 1e-12);
        }
        assert_eq!(rank(&[vec![1.0, 2.0], vec![2.0, 4.0]], 1e-12), 1);
    }
}
