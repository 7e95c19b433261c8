//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, QError>;

/// Errors raised by evaluation, quadrature and sampling routines.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum QError {
    /// A half-integer power of q was requested in exact mode without a
    /// rational square root of q configured.
    #[error("half-integer power of q requires a configured rational sqrt(q)")]
    HalfPowerUnavailable,

    /// The operation has no exact-mode implementation (e.g. infinite
    /// products).
    #[error("operation is not supported in exact mode: {0}")]
    ExactModeUnsupported(&'static str),

    /// Invalid configuration (q out of range, inconsistent sqrt, ...).
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// Evaluation points coincide where distinctness is required.
    #[error("coincident evaluation points: {0}")]
    CoincidentPoints(String),

    /// Evaluation points coincide as orbits {z, 1/z} where distinctness is
    /// required.
    #[error("coincident point orbits {{z, 1/z}}: {0}")]
    CoincidentOrbit(String),

    /// A zero evaluation point was passed where points must be invertible.
    #[error("zero evaluation point")]
    ZeroPoint,

    /// Mismatched lengths (signatures vs. point lists, interlacing levels).
    #[error("length mismatch: {0}")]
    LengthMismatch(String),

    /// A shape constraint on a signature argument is violated.
    #[error("bad shape: {0}")]
    BadShape(String),

    /// The argument lies outside the validity domain of the representation.
    #[error("domain violation: {0}")]
    DomainViolation(String),

    /// Node doubling (or a runtime tail check) changed the result by more
    /// than the requested tolerance.
    #[error("quadrature did not converge: {0}")]
    NonConvergedQuadrature(String),

    /// The argument is too close to a excluded pole/zero point of the
    /// integral representation.
    #[error("argument within excluded pole neighborhood: {0}")]
    PoleNeighborhood(String),

    /// Stabilization of kernel rows did not converge.
    #[error("did not converge: {0}")]
    NotConverged(String),

    /// Torus quadrature grid cannot resolve the integrand degree.
    #[error("quadrature grid too coarse: {0}")]
    GridTooCoarse(String),
}
