//! Python bindings.
//!
//! Quaternions cross the boundary as `[w, x, y, z]` lists and dual
//! quaternions as `[p0, p1, p2, p3, q0, q1, q2, q3]`. Parameters at infinity
//! are `float("inf")`. Failures raise `MotionforgeError(code, message)`.

use motionforge_core as core;
use motionforge_core::{Branch, DualQuaternion, Param, Quaternion, Scheme, ViaTask};
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

create_exception!(motionforge, MotionforgeError, PyValueError);

fn to_py(e: core::Error) -> PyErr {
    MotionforgeError::new_err((e.code(), e.to_string()))
}

fn param(t: f64) -> Param {
    if t == f64::INFINITY {
        Param::Infinity
    } else {
        Param::Finite(t)
    }
}

fn from_param(t: Param) -> f64 {
    t.finite().unwrap_or(f64::INFINITY)
}

/// A polynomial `C(t) = Σ c_k t^k` with dual-quaternion coefficients.
#[pyclass(name = "MotionPolynomial", module = "motionforge", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyMotion {
    inner: core::MotionPolynomial,
}

#[pymethods]
impl PyMotion {
    /// From ascending primal and dual coefficient lists.
    #[new]
    fn new(primal: Vec<[f64; 4]>, dual: Vec<[f64; 4]>) -> PyResult<Self> {
        if primal.len() != dual.len() {
            return Err(PyValueError::new_err("primal and dual need the same number of coefficients"));
        }
        let coeffs = primal
            .into_iter()
            .zip(dual)
            .map(|(p, q)| DualQuaternion::new(Quaternion::from_array(p), Quaternion::from_array(q)))
            .collect();
        Ok(Self { inner: core::MotionPolynomial::new(coeffs) })
    }

    #[getter]
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    #[getter]
    fn primal(&self) -> Vec<[f64; 4]> {
        self.inner.coefficients().iter().map(|c| c.primal.to_array()).collect()
    }

    #[getter]
    fn dual(&self) -> Vec<[f64; 4]> {
        self.inner.coefficients().iter().map(|c| c.dual.to_array()).collect()
    }

    fn eval(&self, t: f64) -> [f64; 8] {
        self.inner.eval_param(param(t)).to_array()
    }

    /// `(rotation, translation)` at `t`.
    fn pose_at(&self, t: f64) -> PyResult<([[f64; 3]; 3], [f64; 3])> {
        let pose = core::pose_at(&self.inner, param(t)).map_err(to_py)?;
        Ok((pose.rotation, pose.translation))
    }

    /// Image of `point` (default the origin) at every parameter.
    #[pyo3(signature = (ts, point = [0.0, 0.0, 0.0]))]
    fn trajectory(&self, ts: Vec<f64>, point: [f64; 3]) -> PyResult<Vec<[f64; 3]>> {
        let ts: Vec<Param> = ts.into_iter().map(param).collect();
        let samples = core::sample_trajectory(&self.inner, point, &ts).map_err(to_py)?;
        Ok(samples.into_iter().map(|s| s.point).collect())
    }

    fn study_residue(&self) -> f64 {
        self.inner.study_residue()
    }

    fn norm_polynomial(&self) -> Vec<f64> {
        self.inner.real_norm()
    }

    fn __mul__(&self, other: &PyMotion) -> Self {
        Self { inner: &self.inner * &other.inner }
    }

    fn __repr__(&self) -> String {
        format!("MotionPolynomial(degree={})", self.inner.degree())
    }
}

#[pyclass(name = "Interpolation", module = "motionforge", frozen)]
struct PyInterpolation {
    #[pyo3(get)]
    motion: Py<PyMotion>,
    #[pyo3(get)]
    scheme: String,
    #[pyo3(get)]
    via_times: Vec<f64>,
    #[pyo3(get)]
    weights: Vec<[f64; 4]>,
    #[pyo3(get)]
    bezier_weights: Option<Vec<[f64; 4]>>,
    #[pyo3(get)]
    bezier_control_points: Option<Vec<[f64; 4]>>,
    #[pyo3(get)]
    residuals: Vec<f64>,
    #[pyo3(get)]
    max_residual: f64,
    #[pyo3(get)]
    passed: bool,
}

/// Runs an interpolation scheme: `poses3`, `poses4`, `points5`, `points7`
/// or `pointsGeneric`.
#[pyfunction]
#[pyo3(signature = (scheme, points = None, poses = None, via_times = None, secondary_times = None, lam = None, branch = "k1"))]
fn interpolate(
    py: Python<'_>,
    scheme: &str,
    points: Option<Vec<[f64; 3]>>,
    poses: Option<Vec<[f64; 8]>>,
    via_times: Option<Vec<f64>>,
    secondary_times: Option<Vec<f64>>,
    lam: Option<f64>,
    branch: &str,
) -> PyResult<PyInterpolation> {
    let scheme = Scheme::from_name(scheme).ok_or_else(|| to_py(core::Error::BadOption(format!("unknown scheme {scheme:?}"))))?;
    let branch = Branch::from_name(branch).ok_or_else(|| to_py(core::Error::BadOption(format!("unknown branch {branch:?}"))))?;
    let task = ViaTask {
        scheme,
        poses: poses.unwrap_or_default().into_iter().map(DualQuaternion::from_array).collect(),
        points: points.unwrap_or_default(),
        via_times,
        secondary_times,
        lambda: lam,
        branch,
    };
    let fit = core::interpolate(&task).map_err(to_py)?;
    let report = core::verify(&task, &fit.motion);
    Ok(PyInterpolation {
        motion: Py::new(py, PyMotion { inner: fit.motion })?,
        scheme: scheme.name().to_string(),
        via_times: fit.via_times.into_iter().map(from_param).collect(),
        weights: fit.weights.iter().map(|w| w.to_array()).collect(),
        bezier_weights: fit.bezier.as_ref().map(|b| b.weights.iter().map(|w| w.to_array()).collect()),
        bezier_control_points: fit
            .bezier
            .as_ref()
            .map(|b| b.control_points.iter().map(|p| p.to_array()).collect()),
        residuals: report.residuals,
        max_residual: report.max_residual,
        passed: report.passed,
    })
}

#[pyclass(name = "Factorization", module = "motionforge", frozen)]
struct PyFactorization {
    /// `h` of each factor `t - h`, left to right.
    #[pyo3(get)]
    factors: Vec<[f64; 8]>,
    #[pyo3(get)]
    order: Vec<usize>,
    /// `(direction, moment)` of each factor's revolute axis.
    #[pyo3(get)]
    axes: Vec<([f64; 3], [f64; 3])>,
    #[pyo3(get)]
    reconstruction_error: f64,
}

fn axis_pair(a: core::JointAxis) -> ([f64; 3], [f64; 3]) {
    (a.direction, a.moment)
}

/// `(monic, factorizations)`: the monic representative and all of its
/// factorizations into rotation factors.
#[pyfunction]
fn factorize(py: Python<'_>, motion: &PyMotion) -> PyResult<(Py<PyMotion>, Vec<PyFactorization>)> {
    let (monic, fs) = core::factorize_motion(&motion.inner).map_err(to_py)?;
    let mut out = Vec::with_capacity(fs.len());
    for f in &fs {
        let axes = f
            .factors
            .iter()
            .map(|lf| core::axis_of(lf).map(axis_pair))
            .collect::<core::Result<Vec<_>>>()
            .map_err(to_py)?;
        out.push(PyFactorization {
            factors: f.factors.iter().map(|lf| lf.h.to_array()).collect(),
            order: f.order.clone(),
            axes,
            reconstruction_error: f.reconstruction_error(&monic.motion),
        });
    }
    Ok((Py::new(py, PyMotion { inner: monic.motion })?, out))
}

/// Closed loops: `[(i, j, joints)]` with joints as `(direction, moment)`.
#[pyfunction]
fn mechanisms(motion: &PyMotion) -> PyResult<Vec<(usize, usize, Vec<([f64; 3], [f64; 3])>)>> {
    let syn = core::synthesize(&motion.inner).map_err(to_py)?;
    Ok(syn
        .mechanisms
        .into_iter()
        .map(|(i, j, m)| (i, j, m.loop_joints.into_iter().map(axis_pair).collect()))
        .collect())
}

/// Image of the origin under a dual quaternion.
#[pyfunction]
fn project_origin(c: [f64; 8]) -> PyResult<[f64; 3]> {
    DualQuaternion::from_array(c).project_origin().map_err(to_py)
}

/// Dual quaternion of the displacement `x -> R x + t` for a unit quaternion `R`.
#[pyfunction]
fn pose(rotation: [f64; 4], translation: [f64; 3]) -> [f64; 8] {
    DualQuaternion::from_rotation_translation(Quaternion::from_array(rotation), translation).to_array()
}

#[pymodule]
fn motionforge(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("MotionforgeError", m.py().get_type::<MotionforgeError>())?;
    m.add_class::<PyMotion>()?;
    m.add_class::<PyInterpolation>()?;
    m.add_class::<PyFactorization>()?;
    m.add_function(wrap_pyfunction!(interpolate, m)?)?;
    m.add_function(wrap_pyfunction!(factorize, m)?)?;
    m.add_function(wrap_pyfunction!(mechanisms, m)?)?;
    m.add_function(wrap_pyfunction!(project_origin, m)?)?;
    m.add_function(wrap_pyfunction!(pose, m)?)?;
    Ok(())
}
