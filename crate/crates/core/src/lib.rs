//! Simulation toolkit for exchange gates between two-electron atoms held in
//! optical tweezers.
//!
//! The crate covers state-selective transport of a single atom in a moving
//! tweezer, contact interactions of two atoms sharing a trap, the
//! spin-dependent light shift and scattering of the optical-switch beam,
//! Lindblad dynamics of the two-qubit gate and sideband-cooling estimates.
//! All quantities are SI unless a name says otherwise.

pub mod angular;
pub mod constants;
pub mod cooling;
pub mod error;
pub mod figures;
pub mod gate;
pub mod interactions;
pub mod ode;
pub mod optical_switch;
pub mod special;
pub mod species;
pub mod transport;

pub use error::{Error, Result};
pub use species::{Species, SpeciesParams};
