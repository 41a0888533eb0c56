use alloc::string::String;

use crate::semiring::SemifieldKind;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("mixed semifields: {left} and {right}")]
    MixedSemifield {
        left: SemifieldKind,
        right: SemifieldKind,
    },
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid scalar literal {0:?}")]
    ParseScalar(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("degree {degree} out of range for ambient rank {n}")]
    DegreeOutOfRange { degree: usize, n: usize },
    #[error("invalid subset index: {0}")]
    InvalidSubset(String),
    #[error("nonzero required: the tensor is zero")]
    ZeroTensor,
    #[error("input is not a tropical Plücker vector")]
    NotPlucker,
    #[error("stable sum undefined: no pair of disjoint support indices")]
    UndefinedStableSum,
    #[error("resource cap exceeded: {what} (cap {cap})")]
    ResourceCap { what: &'static str, cap: usize },
    #[error("precondition failed: {0}")]
    Precondition(&'static str),
    /// A computed result contradicted a proven identity; never expected.
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

pub type Result<T> = core::result::Result<T, Error>;
