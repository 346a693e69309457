//! Spin-velocity entanglement of spin-1/2 particles and Cooper pairs under
//! two non-collinear Lorentz boosts.
//!
//! The second boost rotates each particle's spin by a Wigner angle that
//! depends on which velocity branch the particle occupies. [`kinematics`]
//! computes those angles, [`single_particle`] and [`cooper`] apply them in
//! closed form and particle by particle, and [`oracle`] checks one route
//! against the other.

pub mod cli;
pub mod cooper;
pub mod error;
pub mod kinematics;
pub mod oracle;
pub mod qmath;
pub mod single_particle;

pub use error::{Error, Result};
