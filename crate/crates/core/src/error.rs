use thiserror::Error;

/// Errors produced by the library.
///
/// Mathematical check failures that are *answers* (a Jacobi residual, a
/// non-closed form) are reported through report types, not through this
/// enum. The variants here signal malformed input or a broken contract.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("minimal polynomial must be monic")]
    NotMonic,

    #[error("minimal polynomial must have degree at least 1")]
    DegreeZero,

    #[error("minimal polynomial {poly} is reducible: it has the rational root {root}")]
    Reducible { poly: String, root: String },

    #[error("division by zero")]
    DivisionByZero,

    #[error("elements belong to different number fields ({0} vs {1})")]
    FieldMismatch(String, String),

    #[error("product of two parametric expressions is not affine: ({0}) * ({1})")]
    NonlinearProduct(String, String),

    #[error("row {row} of the system reduces to the nonzero constant {constant}: the template admits no derivation of this shape")]
    Inconsistent { row: usize, constant: String },

    #[error("parameter `{0}` is not among the declared unknowns")]
    UnknownParameter(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("basis index {index} out of range 1..={dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("repeated basis index {0} inside one monomial")]
    RepeatedIndex(usize),

    #[error("Jacobi identity fails: {0}")]
    Jacobi(String),

    #[error("linearity lemma violated: coefficient {coefficient} of d^2 e^{k} has nonzero constant part (the base algebra fails Jacobi)")]
    LinearityViolated { k: usize, coefficient: String },

    #[error("expected a non-parametric {0}")]
    Parametric(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("{0} is not stable-compatible: (J*)^2 != -id")]
    NotStable(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("postcondition failed: {0}")]
    Postcondition(String),

    #[error("matrix does not have the {shape} shape; offending entries (row, column): {entries:?}")]
    ShapeViolation {
        shape: String,
        entries: Vec<(usize, usize)>,
    },

    #[error("not a one-dimensional extension: {0}")]
    NotAnExtension(String),

    #[error("{line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
