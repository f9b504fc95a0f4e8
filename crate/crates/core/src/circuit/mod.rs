//! Gate circuits, ansatz compilation and randomized compiling.

mod ansatz;
#[allow(clippy::module_inception)]
mod circuit;
mod gate;
mod rc;

pub use ansatz::{
    build_adapt, build_reference, build_singlet_uccsd, build_uccd, exp_pauli_circuit,
    hartree_fock_occupation, push_generator, push_pauli_rotation, singlet_double,
    singlet_single, AnsatzFamily, AnsatzSpec, Generator, UCCD_GENERATOR,
};
pub use circuit::{Circuit, GateCounts};
pub use gate::{Angle, Gate, GateKind, Mat2};
pub use rc::{cnot_conjugate, randomized_compile};
