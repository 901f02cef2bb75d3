//! Domain types and Hamiltonian construction.

mod basis;
mod hamiltonian;
mod schedule;
mod system;

pub use basis::{BasisSpec, ExcitationPattern, QuantumState, DEFAULT_DIMENSION_LIMIT};
pub use hamiltonian::{
    build_coupling_matrix, build_fock_hamiltonian, build_single_excitation_hamiltonian,
    excitation_number_diagonal, hermiticity_error, CouplingMatrix, HamiltonianMatrix,
};
pub use schedule::{DetuningSchedule, Segment};
pub use system::{CavityPair, SpinArray, SystemSpec};
