//! Pauli-string algebra, Pauli-sum operators and the Jordan-Wigner map.

mod fermion;
mod string;
mod sum;

pub use fermion::{jordan_wigner, ladder_to_pauli, FermionOp, Ladder};
pub use string::{Pauli, PauliString, Phase};
pub use sum::{PauliSum, DROP_TOLERANCE};
