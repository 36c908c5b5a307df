use thiserror::Error;

/// Errors raised by poset construction, dynamics and verification routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rectangle dimensions must be positive, got a={a}, b={b}")]
    InvalidDimensions { a: usize, b: usize },

    #[error("invalid poset: {0}")]
    InvalidPoset(String),

    #[error("unknown element {0}")]
    UnknownElement(String),

    #[error("{0} requires a rectangle poset")]
    NotRectangle(&'static str),

    #[error("{0} requires a graded poset")]
    NotGraded(&'static str),

    #[error("state space has more than {limit} states")]
    SizeGuard { limit: usize },

    #[error("set is not {kind}: {detail}")]
    WrongKind { kind: &'static str, detail: String },

    #[error("singular input at {element}: {detail}")]
    Singular { element: String, detail: String },

    #[error("value {value} is not valid for the {algebra} algebra")]
    InvalidValue { algebra: &'static str, value: String },

    #[error("malformed toggle plan: {0}")]
    BadPlan(String),

    #[error("file index {index} outside 1..={max}")]
    FileIndex { index: usize, max: usize },

    #[error("cannot parse rational {0:?}")]
    ParseRational(String),

    #[error("{0}")]
    NotRational(String),

    #[error("point is outside the {polytope} polytope: {constraint}")]
    NotInPolytope { polytope: &'static str, constraint: String },

    #[error("expected {expected} values, got {got}")]
    Length { expected: usize, got: usize },

    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
