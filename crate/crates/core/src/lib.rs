//! Noisy variational-eigensolver laboratory.
//!
//! Compiles unitary-coupled-cluster style ansatz operators into gate
//! circuits, simulates them as density matrices under per-gate
//! depolarizing noise, optimizes the circuit parameters and compares the
//! result with exact diagonalization of the qubit Hamiltonian.
//!
//! Register convention used throughout: little-endian, so basis index
//! `b = sum_k q_k 2^k` with qubit 0 the least significant bit.

pub mod circuit;
pub mod error;
pub mod exact;
pub mod io;
pub mod linalg;
pub mod optim;
pub mod pauli;
pub mod sim;
pub mod vqe;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Largest register handled by the dense routines (1024 x 1024 matrices).
pub const DENSE_QUBIT_LIMIT: usize = 10;

pub(crate) fn check_dense(n_qubits: usize) -> Result<()> {
    if n_qubits > DENSE_QUBIT_LIMIT {
        Err(Error::Capacity {
            n_qubits,
            limit: DENSE_QUBIT_LIMIT,
        })
    } else {
        Ok(())
    }
}
