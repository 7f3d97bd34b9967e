//! Density-matrix simulation of two-qubit teleportation through a pair of
//! amplitude-damped Bell-like resource states, with closed-form and
//! numerical average-fidelity oracles.
//!
//! ```
//! use teleport_core::fidelity::{avg_fidelity_closed, avg_fidelity_process};
//! use teleport_core::noise::ScenarioParams;
//!
//! let s = ScenarioParams::bell(0.5, 0.5).unwrap();
//! let simulated = avg_fidelity_process(&s).unwrap().value;
//! assert!((simulated - avg_fidelity_closed(&s)).abs() < 1e-12);
//! ```

pub mod densemath;
mod error;
pub mod fidelity;
pub mod noise;
pub mod protocol;
pub mod random;
pub mod tolerance;
pub mod verify;

pub use error::{Error, Result};
