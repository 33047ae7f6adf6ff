use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Failures raised by the engine.
///
/// Every variant maps to a stable machine-readable code through [`Error::code`];
/// front ends report that code rather than the message text.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("quaternion is not invertible (norm {norm:e})")]
    SingularQuaternion { norm: f64 },
    #[error("dual quaternion is not on the Study quadric (residue {residue:e})")]
    NotOnStudyQuadric { residue: f64 },
    #[error("interpolation nodes are not pairwise distinct")]
    DuplicateNodes,
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("no real solution: {0}")]
    NoRealSolution(String),
    #[error("the quadric spanned by the poses carries no real rulings through the first pose")]
    NoRulings,
    #[error("poses do not span a projective 3-space")]
    DegenerateSpan,
    #[error("lambda {lambda} collides with interpolation node {node}")]
    BadLambda { lambda: f64, node: f64 },
    #[error("linear system is singular (condition ratio {ratio:e})")]
    SingularSystem { ratio: f64 },
    #[error("points a{i} and a{j} coincide")]
    SingularDifference { i: usize, j: usize },
    #[error("weight factor is not invertible: {0}")]
    SingularWeight(&'static str),
    #[error("elimination step {0} hit a non-invertible quaternion")]
    SingularElimination(&'static str),
    #[error("unsupported degree {0}")]
    UnsupportedDegree(usize),
    #[error("leading coefficient cannot be made invertible by reparameterization")]
    IrreducibleLeading,
    #[error("factorization does not exist for this ordering: {0}")]
    NonGenericMotion(String),
    #[error("norm polynomial has real roots")]
    RealNormRoots,
    #[error("only {0} factorization(s) found, at least two are required")]
    InsufficientFactorizations(usize),
    #[error("factor has no rotation axis")]
    NoAxis,
    #[error("the two factorizations are identical")]
    IdenticalFactorizations,
    #[error("motion is singular at parameter {t}")]
    SingularParameter { t: f64 },
    #[error("expected {expected} {what}, got {got}")]
    BadArity {
        what: &'static str,
        expected: String,
        got: usize,
    },
    #[error("invalid option: {0}")]
    BadOption(String),
    #[error("not a motion polynomial: {0}")]
    NotAMotion(String),
}

impl Error {
    /// Stable identifier used by the CLI and HTTP front ends.
    pub fn code(&self) -> &'static str {
        match self {
            Error::SingularQuaternion { .. } => "SINGULAR_QUATERNION",
            Error::NotOnStudyQuadric { .. } => "NOT_ON_STUDY_QUADRIC",
            Error::DuplicateNodes => "DUPLICATE_NODES",
            Error::DegenerateInput(_) => "DEGENERATE_INPUT",
            Error::NoRealSolution(_) => "NO_REAL_SOLUTION",
            Error::NoRulings => "NO_RULINGS",
            Error::DegenerateSpan => "DEGENERATE_SPAN",
            Error::BadLambda { .. } => "BAD_LAMBDA",
            Error::SingularSystem { .. } => "SINGULAR_SYSTEM",
            Error::SingularDifference { .. } => "SINGULAR_DIFFERENCE",
            Error::SingularWeight(_) => "SINGULAR_WEIGHT",
            Error::SingularElimination(_) => "SINGULAR_ELIMINATION",
            Error::UnsupportedDegree(_) => "UNSUPPORTED_DEGREE",
            Error::IrreducibleLeading => "IRREDUCIBLE_LEADING",
            Error::NonGenericMotion(_) => "NON_GENERIC_MOTION",
            Error::RealNormRoots => "REAL_NORM_ROOTS",
            Error::InsufficientFactorizations(_) => "INSUFFICIENT_FACTORIZATIONS",
            Error::NoAxis => "NO_AXIS",
            Error::IdenticalFactorizations => "IDENTICAL_FACTORIZATIONS",
            Error::SingularParameter { .. } => "SINGULAR_PARAMETER",
            Error::BadArity { .. } => "BAD_ARITY",
            Error::BadOption(_) => "BAD_OPTION",
            Error::NotAMotion(_) => "NOT_A_MOTION",
        }
    }

    /// True when the failure is caused by malformed input rather than by the
    /// mathematics of a well-formed request.
    pub fn is_input_error(&self) -> bool {
        matches!(self, Error::BadArity { .. } | Error::BadOption(_))
    }
}
