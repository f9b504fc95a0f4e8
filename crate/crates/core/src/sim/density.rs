use num_complex::Complex64;

use crate::circuit::Mat2;
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, CMatrix};
use crate::pauli::PauliSum;

/// Imaginary residue tolerated when reading off a real expectation value.
pub const IMAG_TOLERANCE: f64 = 1e-10;

/// Dense `2^n x 2^n` density operator.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    n_qubits: usize,
    data: CMatrix,
}

impl DensityMatrix {
    /// Computational basis projector `|index><index|`.
    pub fn basis_state(n_qubits: usize, index: usize) -> Result<Self> {
        crate::check_dense(n_qubits)?;
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(Error::Dimension(format!(
                "basis index {index} outside a {n_qubits}-qubit register"
            )));
        }
        let mut data = CMatrix::zeros(dim);
        data[(index, index)] = Complex64::new(1.0, 0.0);
        Ok(Self { n_qubits, data })
    }

    /// `|0...0><0...0|`
    pub fn zero_state(n_qubits: usize) -> Result<Self> {
        Self::basis_state(n_qubits, 0)
    }

    pub fn maximally_mixed(n_qubits: usize) -> Result<Self> {
        crate::check_dense(n_qubits)?;
        let dim = 1usize << n_qubits;
        let mut data = CMatrix::zeros(dim);
        for i in 0..dim {
            data[(i, i)] = Complex64::new(1.0 / dim as f64, 0.0);
        }
        Ok(Self { n_qubits, data })
    }

    /// Projector onto a normalized state vector.
    pub fn from_pure(psi: &[Complex64]) -> Result<Self> {
        let n_qubits = register_size(psi.len())?;
        check_normalized(psi)?;
        Ok(Self {
            n_qubits,
            data: CMatrix::outer(psi),
        })
    }

    /// Wraps a matrix after checking Hermiticity, unit trace and positivity.
    pub fn from_matrix(data: CMatrix) -> Result<Self> {
        let n_qubits = register_size(data.dim())?;
        let rho = Self { n_qubits, data };
        rho.validate()?;
        Ok(rho)
    }

    #[inline]
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.data.dim()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.data
    }

    pub fn trace(&self) -> Complex64 {
        self.data.trace()
    }

    /// `Tr(rho^2)`; equals the squared Frobenius norm for Hermitian rho.
    pub fn purity(&self) -> f64 {
        self.data.frobenius_norm().powi(2)
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        Ok(hermitian_eigen(&self.data)?.values[0])
    }

    /// Checks the density-operator invariants: Hermitian and trace one to
    /// 1e-12, smallest eigenvalue at least -1e-10.
    pub fn validate(&self) -> Result<()> {
        let herm = self.data.hermiticity_error();
        if herm > 1e-12 {
            return Err(Error::NonHermitian(herm));
        }
        let tr = self.trace();
        if (tr - 1.0).norm() > 1e-12 {
            return Err(Error::NumericalIntegrity(format!("trace {tr} != 1")));
        }
        let min = self.min_eigenvalue()?;
        if min < -1e-10 {
            return Err(Error::NumericalIntegrity(format!(
                "negative eigenvalue {min:e}"
            )));
        }
        Ok(())
    }

    /// `rho -> U rho U†` for a single-qubit `U` on `qubit`.
    pub fn apply_single(&mut self, qubit: usize, u: &Mat2) {
        let dim = self.dim();
        let bit = 1usize << qubit;
        let [[u00, u01], [u10, u11]] = u.0;
        let m = self.data.as_mut_slice();
        // rows
        for r0 in (0..dim).filter(|r| r & bit == 0) {
            let r1 = r0 | bit;
            for c in 0..dim {
                let a = m[r0 * dim + c];
                let b = m[r1 * dim + c];
                m[r0 * dim + c] = u00 * a + u01 * b;
                m[r1 * dim + c] = u10 * a + u11 * b;
            }
        }
        // columns, with U† on the right
        let (v00, v01, v10, v11) = (u00.conj(), u01.conj(), u10.conj(), u11.conj());
        for r in 0..dim {
            let row = &mut m[r * dim..(r + 1) * dim];
            for c0 in (0..dim).filter(|c| c & bit == 0) {
                let c1 = c0 | bit;
                let a = row[c0];
                let b = row[c1];
                row[c0] = a * v00 + b * v01;
                row[c1] = a * v10 + b * v11;
            }
        }
    }

    /// Conjugation by CNOT, a basis permutation.
    pub fn apply_cnot(&mut self, control: usize, target: usize) {
        let dim = self.dim();
        let (cb, tb) = (1usize << control, 1usize << target);
        let perm = |b: usize| if b & cb != 0 { b ^ tb } else { b };
        let old = self.data.clone();
        for r in 0..dim {
            let pr = perm(r);
            for c in 0..dim {
                self.data[(pr, perm(c))] = old[(r, c)];
            }
        }
    }

    /// Single-qubit depolarizing channel
    /// `(1-p) rho + (p/3)(X rho X + Y rho Y + Z rho Z)` on `qubit`.
    ///
    /// Within each 2x2 block over the qubit's bit the populations relax
    /// towards each other by `2p/3` and coherences shrink by `1 - 4p/3`.
    pub fn depolarize(&mut self, qubit: usize, p: f64) -> Result<()> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidProbability(p));
        }
        if p == 0.0 {
            return Ok(());
        }
        let dim = self.dim();
        let bit = 1usize << qubit;
        let mix = 2.0 * p / 3.0;
        let damp = 4.0 * p / 3.0;
        let m = self.data.as_mut_slice();
        for r0 in (0..dim).filter(|r| r & bit == 0) {
            let r1 = r0 | bit;
            for c0 in (0..dim).filter(|c| c & bit == 0) {
                let c1 = c0 | bit;
                let a = m[r0 * dim + c0];
                let d = m[r1 * dim + c1];
                m[r0 * dim + c0] = a + (d - a) * mix;
                m[r1 * dim + c1] = d + (a - d) * mix;
                let b = m[r0 * dim + c1];
                let c = m[r1 * dim + c0];
                m[r0 * dim + c1] = b - b * damp;
                m[r1 * dim + c0] = c - c * damp;
            }
        }
        Ok(())
    }

    /// `Tr(rho P)` for each term, paired with the term's coefficient.
    pub fn term_expectations(&self, obs: &PauliSum) -> Result<Vec<(String, f64, f64)>> {
        self.check_register(obs.n_qubits())?;
        obs.terms()
            .map(|(s, c)| {
                let mut acc = Complex64::new(0.0, 0.0);
                for col in 0..self.dim() {
                    let (row, amp) = s.apply_to_basis(col);
                    acc += amp * self.data[(col, row)];
                }
                if acc.im.abs() > IMAG_TOLERANCE {
                    return Err(Error::NumericalIntegrity(format!(
                        "<{s}> has imaginary part {:e}",
                        acc.im
                    )));
                }
                if c.im.abs() > IMAG_TOLERANCE {
                    return Err(Error::NumericalIntegrity(format!(
                        "observable coefficient of {s} is complex"
                    )));
                }
                Ok((s.to_string(), c.re, acc.re))
            })
            .collect()
    }

    /// `sum_j c_j Tr(rho P_j)`.
    pub fn expectation(&self, obs: &PauliSum) -> Result<f64> {
        Ok(self
            .term_expectations(obs)?
            .iter()
            .map(|(_, c, e)| c * e)
            .sum())
    }

    /// Trace of `rho M` for a dense operator, checked to be real.
    pub fn expectation_dense(&self, m: &CMatrix) -> Result<f64> {
        if m.dim() != self.dim() {
            return Err(Error::Dimension("operator size differs from state".into()));
        }
        let dim = self.dim();
        let mut acc = Complex64::new(0.0, 0.0);
        for r in 0..dim {
            for c in 0..dim {
                acc += self.data[(r, c)] * m[(c, r)];
            }
        }
        if acc.im.abs() > IMAG_TOLERANCE {
            return Err(Error::NumericalIntegrity(format!(
                "trace has imaginary part {:e}",
                acc.im
            )));
        }
        Ok(acc.re)
    }

    /// `<psi|rho|psi>` for a normalized pure target.
    pub fn fidelity(&self, psi: &[Complex64]) -> Result<f64> {
        if psi.len() != self.dim() {
            return Err(Error::Dimension(format!(
                "target of length {} for a {}-dimensional state",
                psi.len(),
                self.dim()
            )));
        }
        check_normalized(psi)?;
        let rho_psi = self.data.mul_vec(psi);
        let f = crate::linalg::inner(psi, &rho_psi);
        Ok(f.re)
    }

    /// Overlap with the projector onto an orthonormal set of targets.
    pub fn subspace_fidelity(&self, basis: &[Vec<Complex64>]) -> Result<f64> {
        basis.iter().map(|v| self.fidelity(v)).sum()
    }

    fn check_register(&self, n: usize) -> Result<()> {
        if n == self.n_qubits {
            Ok(())
        } else {
            Err(Error::Dimension(format!(
                "{n}-qubit operator on a {}-qubit state",
                self.n_qubits
            )))
        }
    }
}

fn register_size(dim: usize) -> Result<usize> {
    if dim < 2 || !dim.is_power_of_two() {
        return Err(Error::Dimension(format!(
            "dimension {dim} is not a qubit register"
        )));
    }
    let n = dim.trailing_zeros() as usize;
    crate::check_dense(n)?;
    Ok(n)
}

fn check_normalized(psi: &[Complex64]) -> Result<()> {
    let n2: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
    if (n2 - 1.0).abs() > 1e-12 {
        Err(Error::UnnormalizedTarget(n2))
    } else {
        Ok(())
    }
}
