//! JSON interchange formats.
//!
//! Numbers are written by `serde_json`, which emits the shortest decimal that
//! parses back to the same `f64`, so documents round-trip exactly.

use motionforge_core::{
    BezierMotion, Branch, DualQuaternion, Interpolation, MotionPolynomial, Param, Quaternion, Scheme, ViaTask,
};
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::error::ServiceError;

pub const SCHEMA_VERSION: &str = "1";

/// A real parameter or `"inf"`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JsonParam(pub Param);

impl Serialize for JsonParam {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0 {
            Param::Finite(t) => s.serialize_f64(t),
            Param::Infinity => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for JsonParam {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Number(f64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Number(t) => Ok(Self(Param::Finite(t))),
            Raw::Text(s) if s == "inf" => Ok(Self(Param::Infinity)),
            Raw::Text(s) => Err(de::Error::custom(format!("expected a number or \"inf\", got {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TaskBody {
    #[serde(alias = "kind")]
    pub scheme: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<[f64; 3]>>,
    /// `[p0, p1, p2, p3, q0, q1, q2, q3]` per pose.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poses: Option<Vec<[f64; 8]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub via_times: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub secondary_times: Option<Vec<f64>>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TaskOptions {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub branch: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TaskDocument {
    pub schema_version: String,
    pub task: TaskBody,
    #[serde(default)]
    pub options: TaskOptions,
}

pub fn check_version(v: &str) -> Result<(), ServiceError> {
    if v == SCHEMA_VERSION {
        Ok(())
    } else {
        Err(ServiceError::input(
            "BAD_VERSION",
            format!("unsupported schema_version {v:?}, expected \"{SCHEMA_VERSION}\""),
        ))
    }
}

fn bad_option(msg: impl Into<String>) -> ServiceError {
    ServiceError::input("BAD_OPTION", msg)
}

impl TaskDocument {
    pub fn parse(text: &str) -> Result<Self, ServiceError> {
        let doc: Self = serde_json::from_str(text).map_err(ServiceError::schema)?;
        check_version(&doc.schema_version)?;
        Ok(doc)
    }

    pub fn to_task(&self) -> Result<ViaTask, ServiceError> {
        let scheme = Scheme::from_name(&self.task.scheme)
            .ok_or_else(|| bad_option(format!("unknown scheme {:?}", self.task.scheme)))?;
        let branch = match &self.options.branch {
            None => Branch::K1,
            Some(_) if scheme != Scheme::Poses4 => return Err(bad_option("branch only applies to poses4")),
            Some(name) => {
                Branch::from_name(name).ok_or_else(|| bad_option(format!("unknown branch {name:?}, expected k1 or k2")))?
            }
        };
        let task = ViaTask {
            scheme,
            poses: self
                .task
                .poses
                .iter()
                .flatten()
                .map(|&a| DualQuaternion::from_array(a))
                .collect(),
            points: self.task.points.clone().unwrap_or_default(),
            via_times: self.task.via_times.clone(),
            secondary_times: self.task.secondary_times.clone(),
            lambda: self.options.lambda,
            branch,
        };
        task.validate()?;
        Ok(task)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BezierDocument {
    pub weights: Vec<[f64; 4]>,
    /// Control points as quaternions `[w, x, y, z]`; the 3D point is `[x, y, z]`.
    pub control_points: Vec<[f64; 4]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Provenance {
    pub scheme: String,
    pub via_times: Vec<JsonParam>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub branch: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MotionDocument {
    pub schema_version: String,
    pub degree: usize,
    /// Primal coefficients `[w, x, y, z]`, ascending degree.
    pub primal: Vec<[f64; 4]>,
    pub dual: Vec<[f64; 4]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bezier: Option<BezierDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
}

impl MotionDocument {
    pub fn from_motion(motion: &MotionPolynomial) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.into(),
            degree: motion.degree(),
            primal: motion.coefficients().iter().map(|c| c.primal.to_array()).collect(),
            dual: motion.coefficients().iter().map(|c| c.dual.to_array()).collect(),
            bezier: None,
            provenance: None,
        }
    }

    pub fn from_interpolation(fit: &Interpolation, task: &ViaTask) -> Self {
        let mut doc = Self::from_motion(&fit.motion);
        doc.bezier = fit.bezier.as_ref().map(|b| BezierDocument {
            weights: b.weights.iter().map(|q| q.to_array()).collect(),
            control_points: b.control_points.iter().map(|q| q.to_array()).collect(),
        });
        doc.provenance = Some(Provenance {
            scheme: fit.scheme.name().into(),
            via_times: fit.via_times.iter().map(|&t| JsonParam(t)).collect(),
            lambda: fit.lambda,
            branch: (fit.scheme == Scheme::Poses4).then(|| task.branch.name().to_string()),
        });
        doc
    }

    pub fn parse(text: &str) -> Result<Self, ServiceError> {
        let doc: Self = serde_json::from_str(text).map_err(ServiceError::schema)?;
        check_version(&doc.schema_version)?;
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("motion document serializes")
    }

    pub fn to_motion(&self) -> Result<MotionPolynomial, ServiceError> {
        let arity = |what: &str, got: usize| {
            ServiceError::input(
                "BAD_ARITY",
                format!("expected {} {what} coefficients for degree {}, got {got}", self.degree + 1, self.degree),
            )
        };
        if self.primal.len() != self.degree + 1 {
            return Err(arity("primal", self.primal.len()));
        }
        if self.dual.len() != self.degree + 1 {
            return Err(arity("dual", self.dual.len()));
        }
        let coeffs = self
            .primal
            .iter()
            .zip(&self.dual)
            .map(|(p, q)| DualQuaternion::new(Quaternion::from_array(*p), Quaternion::from_array(*q)))
            .collect();
        let motion = MotionPolynomial::new(coeffs);
        if motion.is_zero() {
            return Err(ServiceError::from(motionforge_core::Error::NotAMotion("zero polynomial".into())));
        }
        Ok(motion)
    }

    pub fn bezier(&self) -> Option<BezierMotion> {
        self.bezier.as_ref().map(|b| BezierMotion {
            weights: b.weights.iter().map(|&a| Quaternion::from_array(a)).collect(),
            control_points: b.control_points.iter().map(|&a| Quaternion::from_array(a)).collect(),
        })
    }
}
