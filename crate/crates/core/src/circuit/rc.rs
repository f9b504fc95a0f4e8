//! Randomized compiling with Pauli twirls around CNOT cycles.
//!
//! Single-qubit gates are the easy gates and CNOTs the hard gates. Every
//! hard cycle is preceded by an independent uniformly random Pauli on each
//! qubit it touches; the matching correction is the twirl conjugated
//! through the CNOT, which is again a Pauli. Twirls and corrections are
//! folded into the neighbouring easy cycle on the same wire: into an
//! existing gate (which becomes a `U1Q`) or, when that easy slot is empty,
//! as a standalone Pauli gate.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::circuit::Circuit;
use super::gate::{Gate, Mat2};
use crate::error::{Error, Result};
use crate::pauli::Pauli;

const PAULIS: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

/// Image of `tc ⊗ tt` under conjugation by CNOT(control, target), phase
/// dropped: `X_c -> X_c X_t`, `Z_t -> Z_c Z_t`.
pub fn cnot_conjugate(tc: Pauli, tt: Pauli) -> (Pauli, Pauli) {
    let (xc, zc) = tc.bits();
    let (xt, zt) = tt.bits();
    (Pauli::from_bits(xc, zc ^ zt), Pauli::from_bits(xt ^ xc, zt))
}

/// `first` then `second`, phase dropped.
fn compose(first: Pauli, second: Pauli) -> Pauli {
    second.compose(first).1
}

/// Logically equivalent circuit with randomized Pauli frames around every
/// CNOT. Requires numeric angles; the twirl choices depend only on the
/// seed and the gate structure, never on the angle values.
pub fn randomized_compile(circuit: &Circuit, seed: u64) -> Result<Circuit> {
    if !circuit.is_bound() {
        return Err(Error::Binding(
            "randomized compiling needs a circuit with numeric angles".into(),
        ));
    }
    let n = circuit.n_qubits();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<Gate> = Vec::with_capacity(circuit.gates().len() * 2);
    // Pauli still to be applied on each wire before its next operation.
    let mut pending = vec![Pauli::I; n];
    // Last easy gate on each wire since the previous hard gate.
    let mut last_easy: Vec<Option<usize>> = vec![None; n];

    for gate in circuit.gates() {
        match *gate {
            Gate::Cnot { control, target } => {
                let twirl_c = PAULIS[rng.random_range(0..4)];
                let twirl_t = PAULIS[rng.random_range(0..4)];
                for (q, t) in [(control, twirl_c), (target, twirl_t)] {
                    match last_easy[q] {
                        Some(i) => {
                            if t != Pauli::I {
                                let m = out[i].matrix()?.expect("easy gate");
                                out[i] = Gate::U1q(q, Mat2::pauli(t).mul(&m));
                            }
                        }
                        None => {
                            let combined = compose(pending[q], t);
                            if let Some(g) = Gate::pauli(combined, q) {
                                out.push(g);
                            }
                            pending[q] = Pauli::I;
                        }
                    }
                }
                out.push(*gate);
                let (cc, ct) = cnot_conjugate(twirl_c, twirl_t);
                pending[control] = cc;
                pending[target] = ct;
                last_easy[control] = None;
                last_easy[target] = None;
            }
            g => {
                let q = g.qubits()[0];
                let p = std::mem::replace(&mut pending[q], Pauli::I);
                if p == Pauli::I {
                    out.push(g);
                } else {
                    let m = g.matrix()?.ok_or_else(|| {
                        Error::Compilation(format!("unsupported easy gate {}", g.kind()))
                    })?;
                    out.push(Gate::U1q(q, m.mul(&Mat2::pauli(p))));
                }
                last_easy[q] = Some(out.len() - 1);
            }
        }
    }
    for (q, p) in pending.into_iter().enumerate() {
        if let Some(g) = Gate::pauli(p, q) {
            out.push(g);
        }
    }

    let mut compiled = Circuit::new(n);
    for g in out {
        compiled.push(g)?;
    }
    Ok(compiled)
}
