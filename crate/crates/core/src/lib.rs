//! Simulation engine for a spin array coupled to the two counterpropagating
//! modes of a ring cavity.
//!
//! The crate covers the stationary structure of the extended Tavis-Cummings
//! model (coupling matrix, polariton singular-value decomposition, energy
//! spectra), exact time evolution in the single-excitation and truncated
//! Fock bases, and the named transfer protocols built on spin grouping:
//! quarter-wavelength transport, entangled-pair transfer, detuning gating,
//! remote transfer, and adiabatic ramp (STIRAP-style) transfer.
//!
//! Everything is generic over the real scalar type; `f64` is the working
//! precision for the quoted tolerances. Frequencies are in units of the
//! collective coupling `g_c` and times in `1/g_c` unless noted.

pub mod acceptance;
pub mod dynamics;
pub mod error;
pub mod model;
pub mod protocols;
pub mod scalar;
pub mod spectral;
pub mod util;

pub use error::{Error, Result};
pub use scalar::Scalar;

// Concrete aliases at working precision.
pub type SystemSpec64 = model::SystemSpec<f64>;
pub type SpinArray64 = model::SpinArray<f64>;
pub type CavityPair64 = model::CavityPair<f64>;
pub type DetuningSchedule64 = model::DetuningSchedule<f64>;
pub type QuantumState64 = model::QuantumState<f64>;
pub type CouplingMatrix64 = model::CouplingMatrix<f64>;
pub type HamiltonianMatrix64 = model::HamiltonianMatrix<f64>;
pub type PolaritonDecomposition64 = spectral::PolaritonDecomposition<f64>;
pub type SpectrumTable64 = spectral::SpectrumTable<f64>;
pub type PropagatorSettings64 = dynamics::PropagatorSettings<f64>;
pub type Trajectory64 = dynamics::Trajectory<f64>;

// Single-precision variants.
pub type SystemSpec32 = model::SystemSpec<f32>;
pub type QuantumState32 = model::QuantumState<f32>;
pub type PropagatorSettings32 = dynamics::PropagatorSettings<f32>;
pub type Trajectory32 = dynamics::Trajectory<f32>;
