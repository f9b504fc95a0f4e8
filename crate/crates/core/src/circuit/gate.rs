use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::pauli::Pauli;

/// 2x2 complex matrix, row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat2(pub [[Complex64; 2]; 2]);

const fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2([[c(1., 0.), c(0., 0.)], [c(0., 0.), c(1., 0.)]]);

    pub fn pauli(p: Pauli) -> Self {
        match p {
            Pauli::I => Self::IDENTITY,
            Pauli::X => Mat2([[c(0., 0.), c(1., 0.)], [c(1., 0.), c(0., 0.)]]),
            Pauli::Y => Mat2([[c(0., 0.), c(0., -1.)], [c(0., 1.), c(0., 0.)]]),
            Pauli::Z => Mat2([[c(1., 0.), c(0., 0.)], [c(0., 0.), c(-1., 0.)]]),
        }
    }

    pub fn hadamard() -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        Mat2([[c(s, 0.), c(s, 0.)], [c(s, 0.), c(-s, 0.)]])
    }

    /// `exp(-i angle P / 2)` for a non-identity Pauli `P`.
    pub fn rotation(p: Pauli, angle: f64) -> Self {
        let (cos, sin) = ((angle / 2.0).cos(), (angle / 2.0).sin());
        let pm = Self::pauli(p).0;
        let mut out = [[c(0., 0.); 2]; 2];
        for r in 0..2 {
            for k in 0..2 {
                let id = if r == k { cos } else { 0.0 };
                out[r][k] = c(id, 0.0) + c(0.0, -sin) * pm[r][k];
            }
        }
        Mat2(out)
    }

    pub fn mul(&self, rhs: &Mat2) -> Mat2 {
        let (a, b) = (&self.0, &rhs.0);
        let mut out = [[c(0., 0.); 2]; 2];
        for r in 0..2 {
            for k in 0..2 {
                out[r][k] = a[r][0] * b[0][k] + a[r][1] * b[1][k];
            }
        }
        Mat2(out)
    }

    pub fn adjoint(&self) -> Mat2 {
        let a = &self.0;
        Mat2([
            [a[0][0].conj(), a[1][0].conj()],
            [a[0][1].conj(), a[1][1].conj()],
        ])
    }

    pub fn unitarity_error(&self) -> f64 {
        let p = self.adjoint().mul(self);
        let id = Self::IDENTITY;
        (0..2)
            .flat_map(|r| (0..2).map(move |k| (r, k)))
            .map(|(r, k)| (p.0[r][k] - id.0[r][k]).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_diagonal(&self) -> bool {
        self.0[0][1].norm() < 1e-12 && self.0[1][0].norm() < 1e-12
    }
}

/// Rotation angle: either numeric or an affine function of a parameter
/// slot, `scale * theta[slot] + offset`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Angle {
    Value(f64),
    Param { slot: usize, scale: f64, offset: f64 },
}

impl Angle {
    pub fn param(slot: usize, scale: f64) -> Self {
        Angle::Param {
            slot,
            scale,
            offset: 0.0,
        }
    }

    pub fn value(&self) -> Option<f64> {
        match *self {
            Angle::Value(v) => Some(v),
            Angle::Param { .. } => None,
        }
    }

    pub fn bind(&self, values: &[f64]) -> Result<f64> {
        match *self {
            Angle::Value(v) => Ok(v),
            Angle::Param {
                slot,
                scale,
                offset,
            } => values
                .get(slot)
                .map(|t| scale * t + offset)
                .ok_or_else(|| Error::Binding(format!("no value for parameter slot {slot}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GateKind {
    H,
    X,
    Y,
    Z,
    Rx,
    Ry,
    Rz,
    U1q,
    Cnot,
}

impl GateKind {
    pub fn name(self) -> &'static str {
        match self {
            GateKind::H => "H",
            GateKind::X => "X",
            GateKind::Y => "Y",
            GateKind::Z => "Z",
            GateKind::Rx => "RX",
            GateKind::Ry => "RY",
            GateKind::Rz => "RZ",
            GateKind::U1q => "U1Q",
            GateKind::Cnot => "CNOT",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Some(match s {
            "H" => GateKind::H,
            "X" => GateKind::X,
            "Y" => GateKind::Y,
            "Z" => GateKind::Z,
            "RX" => GateKind::Rx,
            "RY" => GateKind::Ry,
            "RZ" => GateKind::Rz,
            "U1Q" => GateKind::U1q,
            "CNOT" => GateKind::Cnot,
            _ => return None,
        })
    }

    /// Diagonal in the computational basis for every angle.
    pub fn is_diagonal(self) -> bool {
        matches!(self, GateKind::Z | GateKind::Rz)
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Gate {
    H(usize),
    X(usize),
    Y(usize),
    Z(usize),
    Rx(usize, Angle),
    Ry(usize, Angle),
    Rz(usize, Angle),
    U1q(usize, Mat2),
    Cnot { control: usize, target: usize },
}

impl Gate {
    pub fn cnot(control: usize, target: usize) -> Self {
        Gate::Cnot { control, target }
    }

    pub fn pauli(p: Pauli, qubit: usize) -> Option<Self> {
        match p {
            Pauli::I => None,
            Pauli::X => Some(Gate::X(qubit)),
            Pauli::Y => Some(Gate::Y(qubit)),
            Pauli::Z => Some(Gate::Z(qubit)),
        }
    }

    pub fn kind(&self) -> GateKind {
        match self {
            Gate::H(_) => GateKind::H,
            Gate::X(_) => GateKind::X,
            Gate::Y(_) => GateKind::Y,
            Gate::Z(_) => GateKind::Z,
            Gate::Rx(..) => GateKind::Rx,
            Gate::Ry(..) => GateKind::Ry,
            Gate::Rz(..) => GateKind::Rz,
            Gate::U1q(..) => GateKind::U1q,
            Gate::Cnot { .. } => GateKind::Cnot,
        }
    }

    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::Cnot { control, target } => vec![control, target],
            Gate::H(q) | Gate::X(q) | Gate::Y(q) | Gate::Z(q) => vec![q],
            Gate::Rx(q, _) | Gate::Ry(q, _) | Gate::Rz(q, _) | Gate::U1q(q, _) => vec![q],
        }
    }

    pub fn is_single_qubit(&self) -> bool {
        !matches!(self, Gate::Cnot { .. })
    }

    pub fn angle(&self) -> Option<Angle> {
        match *self {
            Gate::Rx(_, a) | Gate::Ry(_, a) | Gate::Rz(_, a) => Some(a),
            _ => None,
        }
    }

    pub fn is_bound(&self) -> bool {
        !matches!(self.angle(), Some(Angle::Param { .. }))
    }

    pub fn bind(&self, values: &[f64]) -> Result<Gate> {
        Ok(match *self {
            Gate::Rx(q, a) => Gate::Rx(q, Angle::Value(a.bind(values)?)),
            Gate::Ry(q, a) => Gate::Ry(q, Angle::Value(a.bind(values)?)),
            Gate::Rz(q, a) => Gate::Rz(q, Angle::Value(a.bind(values)?)),
            g => g,
        })
    }

    /// Unitary of a bound single-qubit gate. `None` for CNOT.
    pub fn matrix(&self) -> Result<Option<Mat2>> {
        let bound = |a: Angle| {
            a.value()
                .ok_or_else(|| Error::Binding(format!("{} has an unbound angle", self.kind())))
        };
        Ok(Some(match *self {
            Gate::H(_) => Mat2::hadamard(),
            Gate::X(_) => Mat2::pauli(Pauli::X),
            Gate::Y(_) => Mat2::pauli(Pauli::Y),
            Gate::Z(_) => Mat2::pauli(Pauli::Z),
            Gate::Rx(_, a) => Mat2::rotation(Pauli::X, bound(a)?),
            Gate::Ry(_, a) => Mat2::rotation(Pauli::Y, bound(a)?),
            Gate::Rz(_, a) => Mat2::rotation(Pauli::Z, bound(a)?),
            Gate::U1q(_, m) => m,
            Gate::Cnot { .. } => return Ok(None),
        }))
    }
}
