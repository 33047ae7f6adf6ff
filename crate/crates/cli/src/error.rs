use std::fmt;

use motionforge_core::Error;
use serde::Serialize;

/// Every code the CLI and the HTTP service can report.
pub const ERROR_CODES: &[&str] = &[
    // Malformed requests.
    "BAD_SCHEMA",
    "BAD_VERSION",
    "BAD_ARITY",
    "BAD_OPTION",
    "BAD_FLAGS",
    "IO_ERROR",
    // Mathematical failures.
    "SINGULAR_QUATERNION",
    "NOT_ON_STUDY_QUADRIC",
    "DUPLICATE_NODES",
    "DEGENERATE_INPUT",
    "NO_REAL_SOLUTION",
    "NO_RULINGS",
    "DEGENERATE_SPAN",
    "BAD_LAMBDA",
    "SINGULAR_SYSTEM",
    "SINGULAR_DIFFERENCE",
    "SINGULAR_WEIGHT",
    "SINGULAR_ELIMINATION",
    "UNSUPPORTED_DEGREE",
    "IRREDUCIBLE_LEADING",
    "NON_GENERIC_MOTION",
    "REAL_NORM_ROOTS",
    "INSUFFICIENT_FACTORIZATIONS",
    "NO_AXIS",
    "IDENTICAL_FACTORIZATIONS",
    "SINGULAR_PARAMETER",
    "NOT_A_MOTION",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    /// The request itself is malformed: exit 2, HTTP 400.
    Input,
    /// The request is well formed but the mathematics fails: exit 3, HTTP 422.
    Math,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ServiceError {
    pub kind: Kind,
    pub code: &'static str,
    pub message: String,
}

impl ServiceError {
    pub fn input(code: &'static str, message: impl Into<String>) -> Self {
        Self { kind: Kind::Input, code, message: message.into() }
    }

    pub fn schema(message: impl fmt::Display) -> Self {
        Self::input("BAD_SCHEMA", message.to_string())
    }

    pub fn exit_code(&self) -> i32 {
        match self.kind {
            Kind::Input => 2,
            Kind::Math => 3,
        }
    }

    pub fn http_status(&self) -> u16 {
        match self.kind {
            Kind::Input => 400,
            Kind::Math => 422,
        }
    }

    /// `{"error":{"code":…,"message":…}}`
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Body<'a> {
            code: &'a str,
            message: &'a str,
        }
        #[derive(Serialize)]
        struct Wrapper<'a> {
            error: Body<'a>,
        }
        serde_json::to_string(&Wrapper {
            error: Body { code: self.code, message: &self.message },
        })
        .expect("error body serializes")
    }
}

impl From<Error> for ServiceError {
    fn from(e: Error) -> Self {
        let kind = if e.is_input_error() { Kind::Input } else { Kind::Math };
        Self { kind, code: e.code(), message: e.to_string() }
    }
}

impl fmt::Display for ServiceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.code, self.message)
    }
}

impl std::error::Error for ServiceError {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn core_errors_map_to_documented_codes() {
        let samples = [
            Error::SingularDifference { i: 0, j: 1 },
            Error::RealNormRoots,
            Error::BadOption("x".into()),
            Error::NonGenericMotion("x".into()),
        ];
        for e in samples {
            let s = ServiceError::from(e);
            assert!(ERROR_CODES.contains(&s.code), "{}", s.code);
        }
        assert_eq!(ServiceError::from(Error::BadOption("x".into())).exit_code(), 2);
        assert_eq!(ServiceError::from(Error::RealNormRoots).http_status(), 422);
    }

    #[test]
    fn error_json_shape() {
        let e = ServiceError::input("BAD_FLAGS", "count must be at least 2");
        let v: serde_json::Value = serde_json::from_str(&e.to_json()).unwrap();
        assert_eq!(v["error"]["code"], "BAD_FLAGS");
        assert_eq!(v["error"]["message"], "count must be at least 2");
    }
}
