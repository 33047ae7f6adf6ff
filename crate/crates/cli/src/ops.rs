//! Operations shared by the command line and the HTTP service.

use motionforge_core::factor::{build_mechanism, factorize_motion};
use motionforge_core::kinem::{linspace, sample_with_gaps, verify, verify_with_tolerance, SamplePoint};
use motionforge_core::{axis_of, interpolate as run_interpolation, Error, JointAxis, Param, Vec3};
use serde::{Deserialize, Serialize};

use crate::documents::{check_version, JsonParam, MotionDocument, TaskDocument, SCHEMA_VERSION};
use crate::error::ServiceError;

pub const TOLERANCE_VAR: &str = "MOTIONFORGE_TOLERANCE";

/// Fit tolerance override from the environment, if set.
pub fn tolerance_from_env() -> Result<Option<f64>, ServiceError> {
    match std::env::var(TOLERANCE_VAR) {
        Err(_) => Ok(None),
        Ok(raw) => match raw.trim().parse::<f64>() {
            Ok(t) if t.is_finite() && t > 0.0 => Ok(Some(t)),
            _ => Err(ServiceError::input(
                "BAD_OPTION",
                format!("{TOLERANCE_VAR} must be a positive number, got {raw:?}"),
            )),
        },
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportDocument {
    /// `null` where the motion is singular at a via parameter.
    pub residuals: Vec<f64>,
    pub max_residual: f64,
    pub study_residue: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InterpolateResponse {
    pub motion: MotionDocument,
    pub report: ReportDocument,
}

pub fn interpolate(task_json: &str, tolerance: Option<f64>) -> Result<InterpolateResponse, ServiceError> {
    let doc = TaskDocument::parse(task_json)?;
    let task = doc.to_task()?;
    let fit = run_interpolation(&task)?;
    let report = match tolerance {
        Some(tol) => verify_with_tolerance(&task, &fit.motion, tol),
        None => verify(&task, &fit.motion),
    };
    Ok(InterpolateResponse {
        motion: MotionDocument::from_interpolation(&fit, &task),
        report: ReportDocument {
            residuals: report.residuals,
            max_residual: report.max_residual,
            study_residue: report.study_residue,
            tolerance: report.tolerance,
            passed: report.passed,
        },
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AxisDocument {
    pub direction: [f64; 3],
    pub moment: [f64; 3],
}

impl From<JointAxis> for AxisDocument {
    fn from(a: JointAxis) -> Self {
        Self { direction: a.direction, moment: a.moment }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FactorDocument {
    /// `h` of the factor `t - h` as `[p0, p1, p2, p3, q0, q1, q2, q3]`.
    pub h: [f64; 8],
    pub axis: Option<AxisDocument>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FactorizationDocument {
    pub order: Vec<usize>,
    pub factors: Vec<FactorDocument>,
    pub reconstruction_error: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MechanismDocument {
    /// Indices of the two factorizations forming the loop.
    pub factorizations: [usize; 2],
    pub joints: Vec<AxisDocument>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MonicDocument {
    pub primal: Vec<[f64; 4]>,
    pub dual: Vec<[f64; 4]>,
    /// Offset `b` of the substitution `t = b + 1/s`, when one was needed.
    pub reparameterization: Option<f64>,
    /// Point of the monic motion that follows the original origin path.
    pub tool_point: Vec3,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FactorizeResponse {
    pub schema_version: &'static str,
    pub monic: MonicDocument,
    pub factorizations: Vec<FactorizationDocument>,
    pub mechanisms: Vec<MechanismDocument>,
}

/// Factorizations and every closed loop they admit. With `require_mechanism`
/// at least one loop must exist.
pub fn factorize(motion: &MotionDocument, require_mechanism: bool) -> Result<FactorizeResponse, ServiceError> {
    let c = motion.to_motion()?;
    let (monic, fs) = factorize_motion(&c)?;
    let mut mechanisms = Vec::new();
    for i in 0..fs.len() {
        for j in i + 1..fs.len() {
            if let Ok(m) = build_mechanism(&fs[i], &fs[j]) {
                mechanisms.push(MechanismDocument {
                    factorizations: [i, j],
                    joints: m.loop_joints.into_iter().map(AxisDocument::from).collect(),
                });
            }
        }
    }
    if require_mechanism && mechanisms.is_empty() {
        return Err(Error::InsufficientFactorizations(fs.len()).into());
    }
    let factorizations = fs
        .iter()
        .map(|f| FactorizationDocument {
            order: f.order.clone(),
            factors: f
                .factors
                .iter()
                .map(|lf| FactorDocument {
                    h: lf.h.to_array(),
                    axis: axis_of(lf).ok().map(AxisDocument::from),
                })
                .collect(),
            reconstruction_error: f.reconstruction_error(&monic.motion),
        })
        .collect();
    Ok(FactorizeResponse {
        schema_version: SCHEMA_VERSION,
        monic: MonicDocument {
            primal: monic.motion.coefficients().iter().map(|c| c.primal.to_array()).collect(),
            dual: monic.motion.coefficients().iter().map(|c| c.dual.to_array()).collect(),
            reparameterization: monic.reparameterization,
            tool_point: monic.tool_point,
        },
        factorizations,
        mechanisms,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub enum Grid {
    /// `count >= 2` equally spaced parameters over `range`.
    Sweep { count: usize, range: (f64, f64) },
    At(Vec<Param>),
}

impl Grid {
    /// Builds a grid from optional parts; misuse is reported with `code`.
    pub fn from_parts(
        count: Option<usize>,
        at: Option<Vec<Param>>,
        range: Option<(f64, f64)>,
        code: &'static str,
    ) -> Result<Self, ServiceError> {
        let err = |m: &str| ServiceError::input(code, m);
        match (count, at) {
            (Some(_), Some(_)) => Err(err("use either a sweep count or explicit parameters, not both")),
            (None, None) => Err(err("a sweep count or explicit parameters are required")),
            (Some(n), None) if n < 2 => Err(err("sweep count must be at least 2")),
            (Some(count), None) => {
                let range = range.unwrap_or((0.0, 1.0));
                if !range.0.is_finite() || !range.1.is_finite() {
                    return Err(err("sweep range must be finite"));
                }
                Ok(Grid::Sweep { count, range })
            }
            (None, Some(_)) if range.is_some() => Err(err("a range only applies to sweeps")),
            (None, Some(ts)) => Ok(Grid::At(ts)),
        }
    }

    pub fn parameters(&self) -> Vec<Param> {
        match self {
            Grid::Sweep { count, range } => linspace(range.0, range.1, *count),
            Grid::At(ts) => ts.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SampleRow {
    pub t: JsonParam,
    pub gap: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub origin: Option<[f64; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rotation: Option<[[f64; 3]; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point: Option<[f64; 3]>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SampleResponse {
    pub schema_version: &'static str,
    pub samples: Vec<SampleRow>,
}

pub fn sample(motion: &MotionDocument, grid: &Grid, point: Vec3) -> Result<SampleResponse, ServiceError> {
    let c = motion.to_motion()?;
    let samples = sample_with_gaps(&c, point, &grid.parameters())
        .into_iter()
        .map(|s| match s {
            SamplePoint::Sample(s) => SampleRow {
                t: JsonParam(s.t),
                gap: false,
                origin: Some(s.origin),
                rotation: Some(s.pose.rotation),
                point: Some(s.point),
            },
            SamplePoint::Gap { t } => SampleRow {
                t: JsonParam(t),
                gap: true,
                origin: None,
                rotation: None,
                point: None,
            },
        })
        .collect();
    Ok(SampleResponse { schema_version: SCHEMA_VERSION, samples })
}

/// CSV rendering; gap rows leave the numeric columns empty.
pub fn samples_to_csv(samples: &SampleResponse) -> String {
    let mut out = String::from("t,gap,ox,oy,oz,px,py,pz,r00,r01,r02,r10,r11,r12,r20,r21,r22\n");
    for row in &samples.samples {
        let t = match row.t.0 {
            Param::Finite(t) => t.to_string(),
            Param::Infinity => "inf".into(),
        };
        let mut fields = vec![t, u8::from(row.gap).to_string()];
        match (row.origin, row.point, row.rotation) {
            (Some(o), Some(p), Some(r)) => {
                fields.extend(o.iter().chain(&p).chain(r.iter().flatten()).map(f64::to_string));
            }
            _ => fields.extend(std::iter::repeat_n(String::new(), 15)),
        }
        out += &fields.join(",");
        out.push('\n');
    }
    out
}

/// Body of `POST /api/sample`.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SampleRequest {
    pub schema_version: String,
    pub motion: MotionDocument,
    #[serde(default)]
    pub count: Option<usize>,
    #[serde(default)]
    pub at: Option<Vec<JsonParam>>,
    #[serde(default)]
    pub range: Option<[f64; 2]>,
    #[serde(default)]
    pub point: Option<[f64; 3]>,
}

pub fn sample_request(text: &str) -> Result<SampleResponse, ServiceError> {
    let req: SampleRequest = serde_json::from_str(text).map_err(ServiceError::schema)?;
    check_version(&req.schema_version)?;
    check_version(&req.motion.schema_version)?;
    let grid = Grid::from_parts(
        req.count,
        req.at.map(|v| v.into_iter().map(|p| p.0).collect()),
        req.range.map(|[a, b]| (a, b)),
        "BAD_OPTION",
    )?;
    sample(&req.motion, &grid, req.point.unwrap_or([0.0; 3]))
}
