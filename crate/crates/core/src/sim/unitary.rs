use num_complex::Complex64;

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::linalg::CMatrix;

/// Dense unitary of a bound circuit, built gate by gate from full-register
/// matrices (`U = U_last ... U_first`).
pub fn circuit_unitary(circuit: &Circuit) -> Result<CMatrix> {
    crate::check_dense(circuit.n_qubits())?;
    if !circuit.is_bound() {
        return Err(Error::Binding("circuit has unbound slots".into()));
    }
    let dim = 1usize << circuit.n_qubits();
    let mut u = CMatrix::identity(dim);
    for g in circuit.gates() {
        let full = match g.matrix()? {
            Some(m) => {
                let bit = 1usize << g.qubits()[0];
                CMatrix::from_fn(dim, |r, c| {
                    if (r & !bit) != (c & !bit) {
                        Complex64::new(0.0, 0.0)
                    } else {
                        m.0[usize::from(r & bit != 0)][usize::from(c & bit != 0)]
                    }
                })
            }
            None => {
                let q = g.qubits();
                let (cb, tb) = (1usize << q[0], 1usize << q[1]);
                CMatrix::from_fn(dim, |r, c| {
                    let image = if c & cb != 0 { c ^ tb } else { c };
                    Complex64::new(if r == image { 1.0 } else { 0.0 }, 0.0)
                })
            }
        };
        u = &full * &u;
    }
    Ok(u)
}

/// Pure output state `U |index>`.
pub fn circuit_state(circuit: &Circuit, index: usize) -> Result<Vec<Complex64>> {
    let u = circuit_unitary(circuit)?;
    Ok((0..u.dim()).map(|r| u[(r, index)]).collect())
}

/// `|<a|b>|^2`
pub fn state_overlap(a: &[Complex64], b: &[Complex64]) -> f64 {
    crate::linalg::inner(a, b).norm_sqr()
}

/// Largest entry deviation between `a` and `b` after removing the global
/// phase that best aligns them.
pub fn unitary_distance_up_to_phase(a: &CMatrix, b: &CMatrix) -> f64 {
    let overlap: Complex64 = a
        .as_slice()
        .iter()
        .zip(b.as_slice())
        .map(|(x, y)| x.conj() * y)
        .sum();
    let phase = if overlap.norm() > 0.0 {
        overlap / overlap.norm()
    } else {
        Complex64::new(1.0, 0.0)
    };
    a.scale(phase).max_abs_diff(b)
}
