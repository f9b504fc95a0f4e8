use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use super::string::PauliString;
use crate::error::{Error, Result};
use crate::linalg::CMatrix;

/// Coefficients with magnitude below this are dropped after merging.
pub const DROP_TOLERANCE: f64 = 1e-12;

/// Weighted sum of phase-free Pauli strings in canonical merged form.
///
/// Coefficients are complex so that anti-Hermitian generators and
/// commutators share the representation; Hamiltonians carry real weights
/// (see [`PauliSum::is_hermitian`]). Terms iterate in lexicographic order
/// of their letter patterns.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliSum {
    n_qubits: usize,
    terms: BTreeMap<PauliString, Complex64>,
}

impl PauliSum {
    pub fn zero(n_qubits: usize) -> Self {
        Self {
            n_qubits,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_string(coefficient: Complex64, s: PauliString) -> Self {
        let mut out = Self::zero(s.n_qubits());
        out.add_term(coefficient, s);
        out.prune();
        out
    }

    /// Builds a sum from `(coefficient, word)` pairs, merging repeats.
    pub fn from_real_terms<'a>(
        n_qubits: usize,
        terms: impl IntoIterator<Item = (f64, &'a str)>,
    ) -> Result<Self> {
        let mut out = Self::zero(n_qubits);
        for (c, word) in terms {
            let s: PauliString = word.parse()?;
            out.try_add_term(Complex64::new(c, 0.0), s)?;
        }
        out.prune();
        Ok(out)
    }

    #[inline]
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order; every string has phase +1.
    pub fn terms(&self) -> impl Iterator<Item = (&PauliString, Complex64)> {
        self.terms.iter().map(|(s, &c)| (s, c))
    }

    pub fn coefficient(&self, s: &PauliString) -> Complex64 {
        self.terms
            .get(&s.unphased())
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    /// Coefficient of the word `w` (e.g. `"ZZII"`), zero when absent.
    pub fn coefficient_of(&self, word: &str) -> Result<Complex64> {
        let s: PauliString = word.parse()?;
        if s.n_qubits() != self.n_qubits {
            return Err(Error::Dimension(format!(
                "word '{word}' does not match {} qubits",
                self.n_qubits
            )));
        }
        Ok(self.coefficient(&s))
    }

    fn try_add_term(&mut self, coefficient: Complex64, s: PauliString) -> Result<()> {
        if s.n_qubits() != self.n_qubits {
            return Err(Error::Dimension(format!(
                "{}-qubit term added to {}-qubit sum",
                s.n_qubits(),
                self.n_qubits
            )));
        }
        self.add_term(coefficient, s);
        Ok(())
    }

    /// Folds the string's phase into the coefficient; does not prune.
    fn add_term(&mut self, coefficient: Complex64, s: PauliString) {
        let c = coefficient * s.phase().to_complex();
        *self
            .terms
            .entry(s.unphased())
            .or_insert(Complex64::new(0.0, 0.0)) += c;
    }

    fn prune(&mut self) {
        self.terms.retain(|_, c| c.norm() >= DROP_TOLERANCE);
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let mut out = Self {
            n_qubits: self.n_qubits,
            terms: self.terms.iter().map(|(k, &c)| (*k, c * s)).collect(),
        };
        out.prune();
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (s, c) in other.terms() {
            out.add_term(c, *s);
        }
        out.prune();
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = Self::zero(self.n_qubits);
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                out.add_term(ca * cb, a.multiply(b)?);
            }
        }
        out.prune();
        Ok(out)
    }

    /// `[self, other] = self*other - other*self`.
    ///
    /// Commuting string pairs are skipped, anticommuting pairs contribute
    /// twice their product.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = Self::zero(self.n_qubits);
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                if !a.commutes_with(b) {
                    out.add_term(ca * cb * 2.0, a.multiply(b)?);
                }
            }
        }
        out.prune();
        Ok(out)
    }

    /// Hermitian conjugate.
    pub fn adjoint(&self) -> Self {
        Self {
            n_qubits: self.n_qubits,
            terms: self.terms.iter().map(|(k, c)| (*k, c.conj())).collect(),
        }
    }

    /// All coefficients real (to `tol`).
    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.terms.values().all(|c| c.im.abs() <= tol)
    }

    /// All coefficients purely imaginary (to `tol`).
    pub fn is_anti_hermitian(&self, tol: f64) -> bool {
        self.terms.values().all(|c| c.re.abs() <= tol)
    }

    /// Re-merges the terms. Canonical form is already maintained, so this
    /// returns an equal sum.
    pub fn canonicalize(&self) -> Self {
        let mut out = Self::zero(self.n_qubits);
        for (s, c) in self.terms() {
            out.add_term(c, *s);
        }
        out.prune();
        out
    }

    /// Sum of squared coefficient magnitudes (Hilbert-Schmidt norm / 2^n).
    pub fn coefficient_norm_sqr(&self) -> f64 {
        self.terms.values().map(|c| c.norm_sqr()).sum()
    }

    /// Dense `2^n x 2^n` matrix in the little-endian basis.
    pub fn to_matrix(&self) -> Result<CMatrix> {
        crate::check_dense(self.n_qubits)?;
        let dim = 1usize << self.n_qubits;
        let mut m = CMatrix::zeros(dim);
        for (s, c) in self.terms() {
            for col in 0..dim {
                let (row, amp) = s.apply_to_basis(col);
                m[(row, col)] += c * amp;
            }
        }
        Ok(m)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.n_qubits == other.n_qubits {
            Ok(())
        } else {
            Err(Error::Dimension(format!(
                "{}-qubit and {}-qubit operators",
                self.n_qubits, other.n_qubits
            )))
        }
    }
}

impl From<PauliString> for PauliSum {
    fn from(s: PauliString) -> Self {
        Self::from_string(Complex64::new(1.0, 0.0), s)
    }
}

impl fmt::Display for PauliSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (s, c)) in self.terms().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if c.im == 0.0 {
                write!(f, "{}*{}", c.re, s)?;
            } else {
                write!(f, "({}{:+}i)*{}", c.re, c.im, s)?;
            }
        }
        Ok(())
    }
}
