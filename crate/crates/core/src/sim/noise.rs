use crate::error::{Error, Result};

/// Ratio between the two-qubit and single-qubit depolarizing levels.
pub const TWO_QUBIT_NOISE_RATIO: f64 = 10.0;

/// Per-gate depolarizing noise.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NoiseModel {
    /// Depolarizing probability after each single-qubit gate.
    pub p1: f64,
    /// Depolarizing probability applied to each qubit after a CNOT.
    pub p2: f64,
    /// Skip noise after gates diagonal in the computational basis (Z, RZ).
    pub exempt_diagonal: bool,
}

impl NoiseModel {
    pub fn noiseless() -> Self {
        Self {
            p1: 0.0,
            p2: 0.0,
            exempt_diagonal: true,
        }
    }

    /// `p2 = 10 p1`, diagonal gates exempt. Requires `0 <= p1 <= 0.1`.
    pub fn depolarizing(p1: f64) -> Result<Self> {
        if !(0.0..=1.0 / TWO_QUBIT_NOISE_RATIO).contains(&p1) {
            return Err(Error::InvalidNoise(format!(
                "p1 = {p1} must lie in [0, {}] so that p2 = {TWO_QUBIT_NOISE_RATIO} p1 <= 1",
                1.0 / TWO_QUBIT_NOISE_RATIO
            )));
        }
        Ok(Self {
            p1,
            p2: TWO_QUBIT_NOISE_RATIO * p1,
            exempt_diagonal: true,
        })
    }

    pub fn new(p1: f64, p2: f64, exempt_diagonal: bool) -> Result<Self> {
        for p in [p1, p2] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidProbability(p));
            }
        }
        Ok(Self {
            p1,
            p2,
            exempt_diagonal,
        })
    }

    pub fn with_diagonal_exemption(mut self, exempt: bool) -> Self {
        self.exempt_diagonal = exempt;
        self
    }

    pub fn is_noiseless(&self) -> bool {
        self.p1 == 0.0 && self.p2 == 0.0
    }
}

impl Default for NoiseModel {
    fn default() -> Self {
        Self::noiseless()
    }
}
