use thiserror::Error;

/// Errors raised by the physics and verification routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("rotation axis must be a unit vector (got norm {norm})")]
    NonUnitAxis { norm: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("state vector must be non-empty")]
    EmptyVector,

    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),

    #[error("speed must satisfy 0 <= beta < 1 (got {beta})")]
    SpeedOutOfRange { beta: f64 },

    #[error("velocity magnitude must be < 1 (got {magnitude})")]
    VelocityOutOfRange { magnitude: f64 },

    #[error("gamma factor must exceed 1 for the D factor (got {gamma})")]
    SingularKinematics { gamma: f64 },

    #[error("boosts are collinear (theta = {theta}); the limit is undefined")]
    DegenerateGeometry { theta: f64 },

    #[error("non-finite input: {0}")]
    NonFinite(&'static str),

    #[error("{0:?} is not a triplet state")]
    NotATriplet(crate::cooper::SpinKind),

    #[error("degenerate grid: {0}")]
    DegenerateGrid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
