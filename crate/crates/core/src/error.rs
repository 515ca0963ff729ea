use thiserror::Error;

/// Errors raised by the library. Rejections of mathematical inputs carry a
/// witness (1-based indices where a basis element is involved).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("Gram matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },

    #[error("Gram matrix is degenerate (rank {rank} < {dim})")]
    Degenerate { rank: usize, dim: usize },

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("repeated index {index} in a 3-vector term")]
    RepeatedIndex { index: usize },

    #[error("3-vector is not in the isotropic cone: eta_e{} o eta_e{} != 0", .pair.0, .pair.1)]
    NotInCone { pair: (usize, usize) },

    #[error("eta_e{index} does not anticommute with J")]
    NotAnticommuting { index: usize },

    #[error("matrix is not an isometry of the scalar product")]
    NotOrthogonal,

    #[error("invalid compatible structure: {0}")]
    InvalidStructure(String),

    #[error("support of eta is not J-invariant")]
    SupportNotInvariant,

    #[error("operation requires epsilon = {required:+}")]
    WrongEpsilon { required: i8 },

    #[error("infeasible request: {0}")]
    Infeasible(String),

    #[error("lattice is not closed under the group law: generators {} and {}", .pair.0, .pair.1)]
    LatticeNotClosed { pair: (usize, usize) },

    #[error("internal consistency check `{check}` failed: {detail}")]
    Inconsistency { check: &'static str, detail: String },

    #[error("{path}: {message}")]
    Parse { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn inconsistency(check: &'static str, detail: impl Into<String>) -> Error {
    Error::Inconsistency {
        check,
        detail: detail.into(),
    }
}
