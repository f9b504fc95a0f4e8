//! Density-matrix simulation with per-gate depolarizing noise.

mod density;
mod noise;
mod run;
mod unitary;

pub use density::{DensityMatrix, IMAG_TOLERANCE};
pub use noise::{NoiseModel, TWO_QUBIT_NOISE_RATIO};
pub use run::{apply_gate, run_circuit};
pub use unitary::{circuit_state, circuit_unitary, state_overlap, unitary_distance_up_to_phase};
