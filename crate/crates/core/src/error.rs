use num_complex::Complex64;
use thiserror::Error;

pub type Result<T, E = MonoError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum MonoError {
    #[error("exponent overflow evaluating at z = {z}")]
    Overflow { z: Complex64 },

    #[error("non-finite input {0}")]
    NonFinite(Complex64),

    #[error("double logarithm is singular at {0}")]
    SingularLog(Complex64),

    #[error("{what} out of range: {detail}")]
    OutOfRange { what: &'static str, detail: String },

    #[error("Lambert W branch {k} did not converge: last iterate {last}, residual {residual:e}")]
    NonConvergence {
        k: i64,
        last: Complex64,
        residual: f64,
    },

    #[error("oracle root for branch {k} has residual {residual:e}")]
    OracleResidual { k: i64, residual: f64 },

    #[error("root within {clearance:e} of the window boundary near {near}; jitter the window")]
    BoundaryTooClose { near: Complex64, clearance: f64 },

    #[error("winding integral did not settle: value {value}, residual {residual}")]
    ResidualTooLarge { value: f64, residual: f64 },

    #[error("subdivision depth exceeded near {near} ({count} roots in a cell of width {width:e})")]
    DepthExceeded {
        near: Complex64,
        count: usize,
        width: f64,
    },

    #[error("path pieces do not join: gap {gap:e}")]
    PathMismatch { gap: f64 },

    #[error("step size underflow at arc parameter {arc_param} (a = {a}, nearest critical value a_{nearest_n})")]
    StepUnderflow {
        arc_param: f64,
        a: Complex64,
        nearest_n: i64,
    },

    #[error("tracked roots {first} and {second} collided at arc parameter {arc_param} (distance {distance:e})")]
    CollisionAmbiguity {
        first: usize,
        second: usize,
        arc_param: f64,
        distance: f64,
    },

    #[error(
        "roots {first} and {second} nearly merged (distance {distance:e}); move the basepoint"
    )]
    NearMerge {
        first: usize,
        second: usize,
        distance: f64,
    },

    #[error("start roots do not satisfy the path start: {0}")]
    BadStart(String),

    #[error("root {label} has no match in the start set (worst mismatch {worst:e})")]
    UnmatchedRoot { label: usize, worst: f64 },

    #[error("ambiguous root match for label {label}: candidates at {first:e} and {second:e}")]
    AmbiguousMatch {
        label: usize,
        first: f64,
        second: f64,
    },

    #[error("permutation sizes differ: {0} vs {1}")]
    SizeMismatch(usize, usize),

    #[error("not a permutation: {0}")]
    NotBijective(String),

    #[error("config: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl MonoError {
    /// Process exit code: 2 for precondition violations, 3 for numerical failures.
    pub fn exit_code(&self) -> i32 {
        use MonoError::*;
        match self {
            NonFinite(_)
            | SingularLog(_)
            | OutOfRange { .. }
            | PathMismatch { .. }
            | NearMerge { .. }
            | BadStart(_)
            | SizeMismatch(..)
            | NotBijective(_)
            | Config(_)
            | Io(_)
            | Json(_) => 2,
            Overflow { .. }
            | NonConvergence { .. }
            | OracleResidual { .. }
            | BoundaryTooClose { .. }
            | ResidualTooLarge { .. }
            | DepthExceeded { .. }
            | StepUnderflow { .. }
            | CollisionAmbiguity { .. }
            | UnmatchedRoot { .. }
            | AmbiguousMatch { .. } => 3,
        }
    }
}
