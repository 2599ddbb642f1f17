//! Crate-wide error type.

/// Errors produced by fan construction, validation and the various engines.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// Matrix or vector shapes do not line up.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A vector was required to lie in a lattice but does not.
    #[error("vector is not in the lattice")]
    NotInLattice,

    /// An operation required a saturated sublattice.
    #[error("sublattice is not saturated (index {index} in its saturation)")]
    NotSaturated { index: num_bigint::BigInt },

    /// A linear system had no exact solution.
    #[error("linear system has no integral solution")]
    NoIntegralSolution,

    /// Structural fan validation failed.
    #[error("invalid fan: {0}")]
    InvalidFan(String),

    /// Two cones of a claimed fan meet outside a common face.
    #[error("cones overlap off a common face: {0}")]
    ConeOverlap(String),

    /// The fan is not a stellar subdivision at the given ray.
    #[error("not a blow-up at the given ray: {0}")]
    NotABlowup(String),

    /// A tropical modification was requested along a non-reduced divisor.
    #[error("divisor is not reduced: {0}")]
    NonReducedDivisor(String),

    /// An operation requires a unimodular fan or cone.
    #[error("not unimodular: {0}")]
    NotUnimodular(String),

    /// A conewise linear function fails integrality on some cone lattice.
    #[error("conewise linear function is not integral: {0}")]
    NonIntegralFunction(String),

    /// Irreducible components were requested on a fan that is not normal.
    #[error("irreducible components requested on a non-normal fan")]
    NotNormal,

    /// A shellability witness failed to replay.
    #[error("invalid witness at {path}: {reason}")]
    InvalidWitness { path: String, reason: String },

    /// Malformed user input (files, flags, indices).
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
