use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Single-qubit Pauli letter. The derived order `I < X < Y < Z` is the
/// canonical term order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }

    /// `self * other = i^k * product`, returns `(k, product)`.
    pub fn compose(self, other: Pauli) -> (u8, Pauli) {
        use Pauli::*;
        match (self, other) {
            (I, p) | (p, I) => (0, p),
            (a, b) if a == b => (0, I),
            (X, Y) => (1, Z),
            (Y, Z) => (1, X),
            (Z, X) => (1, Y),
            (Y, X) => (3, Z),
            (Z, Y) => (3, X),
            (X, Z) => (3, Y),
            _ => unreachable!(),
        }
    }
}

/// Global phase restricted to powers of `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Phase(u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    pub fn from_power(k: u8) -> Self {
        Phase(k % 4)
    }

    pub fn power(self) -> u8 {
        self.0
    }

    pub fn to_complex(self) -> Complex64 {
        match self.0 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        }
    }

    pub fn is_real(self) -> bool {
        self.0.is_multiple_of(2)
    }
}

impl std::ops::Mul for Phase {
    type Output = Phase;

    fn mul(self, rhs: Phase) -> Phase {
        Phase((self.0 + rhs.0) % 4)
    }
}

/// Tensor product of Pauli letters with a phase in `{+1, -1, +i, -i}`.
///
/// Stored in symplectic form: bit `k` of `x`/`z` describes qubit `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PauliString {
    n_qubits: usize,
    x: u64,
    z: u64,
    phase: Phase,
}

impl PauliString {
    pub const MAX_QUBITS: usize = 64;

    pub fn identity(n_qubits: usize) -> Self {
        assert!(
            (1..=Self::MAX_QUBITS).contains(&n_qubits),
            "register size {n_qubits} out of range"
        );
        Self {
            n_qubits,
            x: 0,
            z: 0,
            phase: Phase::ONE,
        }
    }

    pub fn from_letters(letters: &[Pauli]) -> Self {
        let mut s = Self::identity(letters.len());
        for (q, &p) in letters.iter().enumerate() {
            s.set(q, p);
        }
        s
    }

    /// Places `letters` on the given qubits of an `n_qubits` register.
    pub fn from_sparse(n_qubits: usize, letters: &[(usize, Pauli)]) -> Result<Self> {
        let mut s = Self::identity(n_qubits);
        for &(q, p) in letters {
            if q >= n_qubits {
                return Err(Error::Dimension(format!(
                    "qubit {q} outside a {n_qubits}-qubit register"
                )));
            }
            s.set(q, p);
        }
        Ok(s)
    }

    pub fn single(n_qubits: usize, qubit: usize, p: Pauli) -> Self {
        Self::from_sparse(n_qubits, &[(qubit, p)]).expect("qubit in range")
    }

    pub fn from_bits(n_qubits: usize, x: u64, z: u64, phase: Phase) -> Self {
        let mask = mask(n_qubits);
        Self {
            n_qubits,
            x: x & mask,
            z: z & mask,
            phase,
        }
    }

    #[inline]
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    #[inline]
    pub fn x_bits(&self) -> u64 {
        self.x
    }

    #[inline]
    pub fn z_bits(&self) -> u64 {
        self.z
    }

    #[inline]
    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn with_phase(mut self, phase: Phase) -> Self {
        self.phase = phase;
        self
    }

    /// Same letters, phase reset to +1.
    pub fn unphased(self) -> Self {
        self.with_phase(Phase::ONE)
    }

    pub fn get(&self, qubit: usize) -> Pauli {
        Pauli::from_bits((self.x >> qubit) & 1 == 1, (self.z >> qubit) & 1 == 1)
    }

    pub fn set(&mut self, qubit: usize, p: Pauli) {
        let (x, z) = p.bits();
        let bit = 1u64 << qubit;
        self.x = if x { self.x | bit } else { self.x & !bit };
        self.z = if z { self.z | bit } else { self.z & !bit };
    }

    pub fn letters(&self) -> Vec<Pauli> {
        (0..self.n_qubits).map(|q| self.get(q)).collect()
    }

    /// Qubits carrying a non-identity letter, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.n_qubits)
            .filter(|&q| ((self.x | self.z) >> q) & 1 == 1)
            .collect()
    }

    pub fn weight(&self) -> usize {
        (self.x | self.z).count_ones() as usize
    }

    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    /// Diagonal in the computational basis.
    pub fn is_diagonal(&self) -> bool {
        self.x == 0
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        ((self.x & other.z).count_ones() + (self.z & other.x).count_ones()).is_multiple_of(2)
    }

    /// Phase-tracking product `self * other`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::Dimension(format!(
                "cannot multiply {}-qubit and {}-qubit strings",
                self.n_qubits, other.n_qubits
            )));
        }
        let mut power = self.phase.power() + other.phase.power();
        for q in 0..self.n_qubits {
            let (k, _) = self.get(q).compose(other.get(q));
            power += k;
        }
        Ok(Self {
            n_qubits: self.n_qubits,
            x: self.x ^ other.x,
            z: self.z ^ other.z,
            phase: Phase::from_power(power),
        })
    }

    /// Action on a computational basis state: `P|b> = amplitude |b'>`.
    pub fn apply_to_basis(&self, basis: usize) -> (usize, Complex64) {
        let b = basis as u64;
        let n_y = (self.x & self.z).count_ones() as u8;
        let flips = (b & self.z).count_ones() as u8 * 2;
        let amp = (self.phase * Phase::from_power(n_y + flips)).to_complex();
        ((b ^ self.x) as usize, amp)
    }
}

fn mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl Ord for PauliString {
    /// Lexicographic on letters with qubit 0 first, then by phase.
    fn cmp(&self, other: &Self) -> Ordering {
        self.n_qubits
            .cmp(&other.n_qubits)
            .then_with(|| {
                (0..self.n_qubits)
                    .map(|q| self.get(q).cmp(&other.get(q)))
                    .find(|o| o.is_ne())
                    .unwrap_or(Ordering::Equal)
            })
            .then_with(|| self.phase.cmp(&other.phase))
    }
}

impl PartialOrd for PauliString {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = match self.phase.power() {
            0 => "",
            1 => "i",
            2 => "-",
            _ => "-i",
        };
        f.write_str(prefix)?;
        for p in self.letters() {
            write!(f, "{}", p.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    /// Parses a word such as `YXXX` (qubit 0 first).
    fn from_str(s: &str) -> Result<Self> {
        let mut letters = Vec::with_capacity(s.len());
        for (i, ch) in s.chars().enumerate() {
            match Pauli::from_char(ch) {
                Some(p) => letters.push(p),
                None => {
                    return Err(Error::Parse {
                        line: 0,
                        message: format!("invalid Pauli letter '{ch}' at position {i} in '{s}'"),
                    })
                }
            }
        }
        if letters.is_empty() || letters.len() > Self::MAX_QUBITS {
            return Err(Error::Parse {
                line: 0,
                message: format!("Pauli word '{s}' has unsupported length"),
            });
        }
        Ok(Self::from_letters(&letters))
    }
}
