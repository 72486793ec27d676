//! Grover adaptive search for a two-shop, one-buffer shift scheduling model.
//!
//! The crate is split into:
//! - [`model`]: exact classical semantics (evaluation, brute force, bounds, annealing)
//! - [`simulator`]: dense and sparse state vectors over the gate set the circuits use
//! - [`circuits`]: Fourier-basis arithmetic, constraint checks, oracle, diffuser
//! - [`gas`]: Grover adaptive search driver with analytic and state vector backends
//! - [`resources`]: qubit and gate accounting
//! - [`report`]: CSV/JSON renderings used by the command-line front end

pub mod circuits;
pub mod error;
pub mod gas;
pub mod model;
pub mod report;
pub mod resources;
pub mod scalar;
pub mod simulator;

pub use error::{Error, Result};
pub use model::{EvaluationResult, FeasibleSet, ModelConfig, Schedule};
pub use scalar::Real;

/// Double precision dense state vector.
pub type StateVector64 = simulator::StateVector<f64>;
/// Single precision dense state vector.
pub type StateVector32 = simulator::StateVector<f32>;
/// Double precision sparse state vector.
pub type SparseState64 = simulator::SparseState<f64>;
/// Double precision complex amplitude.
pub type Amplitude64 = num_complex::Complex<f64>;
