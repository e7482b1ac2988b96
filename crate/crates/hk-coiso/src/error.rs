//! Error type shared by all modules.

use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("matrix is not symmetric")]
    NonSymmetric,
    #[error("quadratic form is degenerate")]
    Degenerate,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("form restricted to the given sublattice is degenerate")]
    DegenerateNs,
    #[error("vectors are not linearly independent")]
    NotIndependent,
    #[error("no rational isotropic vector is available on this space")]
    NoIsotropicVector,
    #[error("elements belong to different quadratic spaces")]
    SpaceMismatch,
    #[error("degree {got} is too low (need at least {min})")]
    DegreeTooLow { min: usize, got: usize },
    #[error("wrong degree: expected {expected}, got {got}")]
    WrongDegree { expected: usize, got: usize },
    #[error("expected {expected} vector arguments, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("polarized integral is inconsistent across test vectors; this indicates a bug")]
    InconsistentConstant,
    #[error("sample vector is not isotropic")]
    NotIsotropic,
    #[error("transcendental part has dimension {dim} < 3; refusing the coisotropy test")]
    TrTooSmall { dim: usize },
    #[error("theorem contract violated: {0}; this indicates a bug")]
    ViolatesTheorem(String),
    #[error("class does not lie in the requested span")]
    NotInSpan,
    #[error("class is not coisotropic")]
    NotCoisotropic,
    #[error("class is zero")]
    ZeroClass,
    #[error("cycle is not of total degree zero")]
    NotDegreeZero,
    #[error("cannot parse rational {0:?}; expected \"p\" or \"p/q\"")]
    BadRational(String),
    #[error("unknown preset {0:?}")]
    UnknownPreset(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
