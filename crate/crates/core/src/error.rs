use alloc::string::String;
use alloc::vec::Vec;

/// Errors raised by the lattice, fan, root and Cox-ring computations.
///
/// Ray indices carried by the variants are 1-based, matching the way rays
/// are numbered in output.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("zero vector has no primitive generator")]
    ZeroVector,
    #[error("vector {0:?} is not primitive")]
    NotPrimitive(Vec<i64>),
    #[error("vectors do not form a lattice basis (determinant {det})")]
    NotABasis { det: i64 },
    #[error("integer overflow in lattice arithmetic")]
    Overflow,
    #[error("coordinate {0} exceeds the supported magnitude")]
    CoordinateTooLarge(i64),

    #[error("ray {0} is not primitive")]
    RayNotPrimitive(usize),
    #[error("rays {0} and {1} coincide")]
    DuplicateRay(usize, usize),
    #[error("fan is not complete: angular gap between rays {0} and {1} is at least pi")]
    NotComplete(usize, usize),
    #[error("a complete two-dimensional fan needs at least 3 rays, got {0}")]
    TooFewRays(usize),
    #[error("rays must be two-dimensional, got dimension {0}")]
    NotTwoDimensional(usize),
    #[error("ray index {index} out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("vector is not regular: pairing with root {0:?} vanishes")]
    NotRegular(Vec<i64>),
    #[error("no regular vector found within the search budget")]
    NoRegularVector,
    #[error("classification is only available for two-dimensional fans (got {0})")]
    UnsupportedDimension(usize),

    #[error("derivation would need a negative exponent of x{0}")]
    NegativeExponent(usize),
    #[error("derivations do not commute")]
    NotCommuting,
    #[error("derivation is not locally nilpotent on x{var} within {bound} steps")]
    NotLocallyNilpotent { var: usize, bound: usize },
    #[error("action maps act on different variable sets ({0} vs {1})")]
    VariableMismatch(usize, usize),
    #[error("derivation is not homogeneous: entries for x{0} and x{1} have different degrees")]
    NotHomogeneous(usize, usize),
    #[error("zero derivation has no degree")]
    ZeroDerivation,
    #[error("torus coordinate t{0} is zero")]
    ZeroTorusEntry(usize),
    #[error("point coordinate {0} is zero")]
    ZeroCoordinate(usize),
    #[error("operation requires d >= 1 (the fan is wide)")]
    NotApplicable,
    #[error("annihilator profile matches neither action class")]
    Inconclusive,
    #[error("polynomial parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;

pub(crate) fn inconsistency(msg: impl Into<String>) -> Error {
    Error::InternalInconsistency(msg.into())
}
