use num_complex::Complex64;

use super::string::{Pauli, PauliString};
use super::sum::PauliSum;
use crate::error::{Error, Result};

/// One creation (`dagger = true`) or annihilation operator on a mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Ladder {
    pub mode: usize,
    pub dagger: bool,
}

impl Ladder {
    pub fn create(mode: usize) -> Self {
        Self { mode, dagger: true }
    }

    pub fn annihilate(mode: usize) -> Self {
        Self { mode, dagger: false }
    }
}

/// Linear combination of products of fermionic ladder operators. Factors
/// are kept in the written order; no normal ordering is attempted.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct FermionOp {
    terms: Vec<(Complex64, Vec<Ladder>)>,
}

impl FermionOp {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn term(coefficient: Complex64, factors: Vec<Ladder>) -> Self {
        Self {
            terms: vec![(coefficient, factors)],
        }
    }

    /// `a†_p a_q`
    pub fn hopping(p: usize, q: usize) -> Self {
        Self::term(
            Complex64::new(1.0, 0.0),
            vec![Ladder::create(p), Ladder::annihilate(q)],
        )
    }

    /// `a†_a a†_b a_i a_j`
    pub fn double(a: usize, b: usize, i: usize, j: usize) -> Self {
        Self::term(
            Complex64::new(1.0, 0.0),
            vec![
                Ladder::create(a),
                Ladder::create(b),
                Ladder::annihilate(i),
                Ladder::annihilate(j),
            ],
        )
    }

    pub fn terms(&self) -> &[(Complex64, Vec<Ladder>)] {
        &self.terms
    }

    pub fn max_mode(&self) -> Option<usize> {
        self.terms
            .iter()
            .flat_map(|(_, f)| f.iter().map(|l| l.mode))
            .max()
    }

    pub fn plus(mut self, other: FermionOp) -> Self {
        self.terms.extend(other.terms);
        self
    }

    pub fn scale(mut self, s: Complex64) -> Self {
        for (c, _) in &mut self.terms {
            *c *= s;
        }
        self
    }

    /// Hermitian conjugate: reverse each product and flip every dagger.
    pub fn adjoint(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(c, f)| {
                    let factors = f
                        .iter()
                        .rev()
                        .map(|l| Ladder {
                            mode: l.mode,
                            dagger: !l.dagger,
                        })
                        .collect();
                    (c.conj(), factors)
                })
                .collect(),
        }
    }

    /// `T - T†`
    pub fn anti_hermitian_part(&self) -> Self {
        self.clone()
            .plus(self.adjoint().scale(Complex64::new(-1.0, 0.0)))
    }
}

/// Jordan-Wigner image of a single ladder operator.
///
/// `a†_p = Z_0 ... Z_{p-1} (X_p - iY_p)/2` and `a_p = Z_0 ... Z_{p-1} (X_p + iY_p)/2`,
/// so that `a†_p a_p = (I - Z_p)/2` and an occupied mode is `|1>`.
pub fn ladder_to_pauli(l: Ladder, n_qubits: usize) -> Result<PauliSum> {
    if l.mode >= n_qubits {
        return Err(Error::Dimension(format!(
            "mode {} needs at least {} qubits, register has {n_qubits}",
            l.mode,
            l.mode + 1
        )));
    }
    let mut base = PauliString::identity(n_qubits);
    for q in 0..l.mode {
        base.set(q, Pauli::Z);
    }
    let mut xs = base;
    xs.set(l.mode, Pauli::X);
    let mut ys = base;
    ys.set(l.mode, Pauli::Y);
    let y_coeff = if l.dagger { -0.5 } else { 0.5 };
    PauliSum::from_string(Complex64::new(0.5, 0.0), xs)
        .add(&PauliSum::from_string(Complex64::new(0.0, y_coeff), ys))
}

/// Maps a fermionic operator to qubits with the Jordan-Wigner encoding.
pub fn jordan_wigner(op: &FermionOp, n_qubits: usize) -> Result<PauliSum> {
    if let Some(m) = op.max_mode() {
        if m >= n_qubits {
            return Err(Error::Dimension(format!(
                "mode {m} does not fit a {n_qubits}-qubit register"
            )));
        }
    }
    let mut total = PauliSum::zero(n_qubits);
    for (coefficient, factors) in op.terms() {
        let mut product = PauliSum::from(PauliString::identity(n_qubits)).scale(*coefficient);
        for &l in factors {
            product = product.multiply(&ladder_to_pauli(l, n_qubits)?)?;
        }
        total = total.add(&product)?;
    }
    Ok(total)
}
