use thiserror::Error;

use crate::numfield::FieldElement;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    /// Inverting a nonzero zero divisor of `K[λ]/(λ² − c)`. `root` lies in the
    /// base field and satisfies `root² = c`, so `λ² − c = (λ − root)(λ + root)`.
    #[error("zero divisor in formal quadratic extension: lambda^2 - c splits with root {root}")]
    ZeroDivisorEncountered { root: FieldElement },

    #[error("primitive {n}-th root of unity not available in Q(zeta_{conductor}); use conductor {suggested}")]
    RootOfUnityUnavailable {
        n: u32,
        conductor: u32,
        suggested: u32,
    },

    #[error("operands live in different fields")]
    ContextMismatch,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("all coordinates are zero")]
    ZeroVector,

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),

    #[error("curve of degree {0} is below the supported minimum of 4")]
    DegreeTooLow(u32),

    #[error("curve is not smooth")]
    NotSmooth,

    #[error("line is contained in the curve")]
    LineContainedInCurve,

    #[error("point does not lie on the line")]
    PointNotOnLine,

    #[error("point does not lie on the curve")]
    PointNotOnCurve,

    #[error("curve is singular at the point")]
    SingularPoint,

    #[error("order {n} does not divide the projection degree {degree}")]
    OrderNotDividing { n: u32, degree: u32 },

    #[error("records refer to the same point")]
    SamePoint,

    #[error("not a G-pair: {0}")]
    NotAGPair(String),

    #[error("record not eligible: {0}")]
    NotEligible(String),

    #[error("closure exceeded cap of {cap} elements")]
    ClosureCapExceeded { cap: usize },

    #[error("matrix is not a homology: {0}")]
    NotAHomology(String),

    #[error("matrix does not preserve the line")]
    LineNotPreserved,

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("parameter violation: {0}")]
    ParameterViolation(String),

    #[error("unknown catalog family `{0}`")]
    UnknownFamily(String),

    #[error("schema error at `{field}`: {message}")]
    Schema { field: String, message: String },
}
