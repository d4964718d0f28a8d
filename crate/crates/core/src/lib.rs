//! Simulation and verification of laser-switched couplings between ions held
//! in separate trap wells, and of the CNOT pulse sequence built on them.
//!
//! Units: every frequency and coupling is angular (rad/s). Hamiltonians are
//! represented as `H / hbar`, also in rad/s, so propagators are `exp(-i H t)`
//! with `t` in seconds.

pub mod dynamics;
pub mod error;
pub mod experiments;
pub mod gates;
pub mod model;
pub mod quantum;

pub use error::{Error, Result};
pub use quantum::C64;
