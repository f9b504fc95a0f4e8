//! Ansatz construction: Pauli-exponential compilation, reference states,
//! and the UCCD / singlet-UCCSD / ADAPT circuit families.

use std::collections::BTreeSet;
use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use super::circuit::Circuit;
use super::gate::{Angle, Gate};
use crate::error::{Error, Result};
use crate::pauli::{jordan_wigner, FermionOp, Pauli, PauliString, PauliSum, Phase};

/// Generator of the one-parameter doubles ansatz, qubit 0 first.
pub const UCCD_GENERATOR: &str = "YXXX";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AnsatzFamily {
    Uccd,
    SingletUccsd,
    Adapt,
}

impl AnsatzFamily {
    pub fn name(self) -> &'static str {
        match self {
            AnsatzFamily::Uccd => "uccd",
            AnsatzFamily::SingletUccsd => "uccsd-singlet",
            AnsatzFamily::Adapt => "adapt",
        }
    }
}

impl fmt::Display for AnsatzFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AnsatzFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "uccd" => Ok(AnsatzFamily::Uccd),
            "uccsd-singlet" | "singlet-uccsd" | "uccsd" => Ok(AnsatzFamily::SingletUccsd),
            "adapt" => Ok(AnsatzFamily::Adapt),
            other => Err(Error::Model(format!("unknown ansatz family '{other}'"))),
        }
    }
}

/// Anti-Hermitian generator `A = T - T†` with a stable identifier.
#[derive(Clone, Debug, PartialEq)]
pub struct Generator {
    pub id: String,
    pub operator: PauliSum,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AnsatzSpec {
    pub family: AnsatzFamily,
    pub n_qubits: usize,
    pub reference: BTreeSet<usize>,
    /// ADAPT only: one parameter slot per entry, applied in order.
    pub generators: Vec<Generator>,
}

impl AnsatzSpec {
    /// One-parameter doubles ansatz on the 4-qubit, 2-electron register.
    pub fn uccd() -> Self {
        Self {
            family: AnsatzFamily::Uccd,
            n_qubits: 4,
            reference: hartree_fock_occupation(2, 4),
            generators: Vec::new(),
        }
    }

    pub fn singlet_uccsd() -> Self {
        Self {
            family: AnsatzFamily::SingletUccsd,
            ..Self::uccd()
        }
    }

    pub fn adapt(n_qubits: usize, reference: BTreeSet<usize>, generators: Vec<Generator>) -> Self {
        Self {
            family: AnsatzFamily::Adapt,
            n_qubits,
            reference,
            generators,
        }
    }

    pub fn for_family(family: AnsatzFamily) -> Result<Self> {
        match family {
            AnsatzFamily::Uccd => Ok(Self::uccd()),
            AnsatzFamily::SingletUccsd => Ok(Self::singlet_uccsd()),
            AnsatzFamily::Adapt => Err(Error::Model(
                "ADAPT ansatz is assembled by the ADAPT driver".into(),
            )),
        }
    }

    pub fn n_params(&self) -> usize {
        match self.family {
            AnsatzFamily::Uccd => 1,
            AnsatzFamily::SingletUccsd => 2,
            AnsatzFamily::Adapt => self.generators.len(),
        }
    }

    /// Basis index of the reference determinant.
    pub fn reference_index(&self) -> usize {
        self.reference.iter().map(|q| 1usize << q).sum()
    }

    pub fn build(&self) -> Result<Circuit> {
        match self.family {
            AnsatzFamily::Uccd => build_uccd(self),
            AnsatzFamily::SingletUccsd => build_singlet_uccsd(self),
            AnsatzFamily::Adapt => build_adapt(self),
        }
    }
}

/// Closed-shell occupation in block spin ordering: spin-up spatial orbital
/// `k` is qubit `k`, spin-down is qubit `n_qubits/2 + k`.
pub fn hartree_fock_occupation(n_electrons: usize, n_qubits: usize) -> BTreeSet<usize> {
    let half = n_qubits / 2;
    (0..n_electrons / 2)
        .flat_map(|k| [k, half + k])
        .collect()
}

/// Emits `exp(-i (scale*theta/2) P)` onto `circuit` using slot `slot`.
///
/// Basis change (H for X, RX(pi/2) for Y), CNOT ladder over the support,
/// RZ on the last support qubit, then the mirror image.
pub fn push_pauli_rotation(
    circuit: &mut Circuit,
    p: &PauliString,
    angle: Angle,
) -> Result<()> {
    if p.n_qubits() != circuit.n_qubits() {
        return Err(Error::Dimension(format!(
            "{}-qubit string on a {}-qubit circuit",
            p.n_qubits(),
            circuit.n_qubits()
        )));
    }
    if p.is_identity() {
        return Err(Error::DegenerateGenerator);
    }
    let angle = match p.phase() {
        Phase::ONE => angle,
        Phase::MINUS_ONE => negate(angle),
        _ => {
            return Err(Error::Compilation(format!(
                "Pauli exponent needs a real phase, got {p}"
            )))
        }
    };
    let support = p.support();
    let basis = |q: usize, forward: bool| -> Option<Gate> {
        match p.get(q) {
            Pauli::X => Some(Gate::H(q)),
            Pauli::Y => {
                let a = if forward { FRAC_PI_2 } else { -FRAC_PI_2 };
                Some(Gate::Rx(q, Angle::Value(a)))
            }
            _ => None,
        }
    };
    for &q in &support {
        if let Some(g) = basis(q, true) {
            circuit.push(g)?;
        }
    }
    for w in support.windows(2) {
        circuit.push(Gate::cnot(w[0], w[1]))?;
    }
    circuit.push(Gate::Rz(*support.last().unwrap(), angle))?;
    for w in support.windows(2).rev() {
        circuit.push(Gate::cnot(w[0], w[1]))?;
    }
    for &q in &support {
        if let Some(g) = basis(q, false) {
            circuit.push(g)?;
        }
    }
    Ok(())
}

fn negate(a: Angle) -> Angle {
    match a {
        Angle::Value(v) => Angle::Value(-v),
        Angle::Param {
            slot,
            scale,
            offset,
        } => Angle::Param {
            slot,
            scale: -scale,
            offset: -offset,
        },
    }
}

/// Circuit for `exp(-i (scale*theta/2) P)` with a single slot `theta`.
pub fn exp_pauli_circuit(p: &PauliString, scale: f64) -> Result<Circuit> {
    let mut c = Circuit::new(p.n_qubits());
    let slot = c.add_slot("theta");
    push_pauli_rotation(&mut c, p, Angle::param(slot, scale))?;
    Ok(c)
}

/// Emits `exp(theta * A)` for anti-Hermitian `A = sum_j i c_j P_j`, one
/// Pauli exponential per term in canonical order. Exact when the terms
/// commute (true for single and double excitations).
pub fn push_generator(circuit: &mut Circuit, generator: &PauliSum, slot: usize) -> Result<()> {
    if !generator.is_anti_hermitian(1e-12) {
        return Err(Error::Compilation(
            "generator must be anti-Hermitian (purely imaginary coefficients)".into(),
        ));
    }
    let mut emitted = false;
    for (s, c) in generator.terms() {
        if s.is_identity() {
            // global phase only
            continue;
        }
        // exp(i theta c P) = exp(-i (-2c theta)/2 P)
        push_pauli_rotation(circuit, s, Angle::param(slot, -2.0 * c.im))?;
        emitted = true;
    }
    if emitted {
        Ok(())
    } else {
        Err(Error::DegenerateGenerator)
    }
}

/// X on every occupied qubit.
pub fn build_reference(occupation: &BTreeSet<usize>, n_qubits: usize) -> Result<Circuit> {
    let mut c = Circuit::new(n_qubits);
    for &q in occupation {
        c.push(Gate::X(q))?;
    }
    Ok(c)
}

fn expect_family(spec: &AnsatzSpec, family: AnsatzFamily) -> Result<()> {
    if spec.family == family {
        Ok(())
    } else {
        Err(Error::UnsupportedModel(format!(
            "expected a {family} spec, got {}",
            spec.family
        )))
    }
}

/// Reference preparation followed by `exp(-i (theta/2) Y0 X1 X2 X3)`.
pub fn build_uccd(spec: &AnsatzSpec) -> Result<Circuit> {
    expect_family(spec, AnsatzFamily::Uccd)?;
    if spec.n_qubits != 4 {
        return Err(Error::UnsupportedModel(
            "UCCD ansatz is defined on 4 qubits".into(),
        ));
    }
    let mut c = build_reference(&spec.reference, spec.n_qubits)?;
    let slot = c.add_slot("theta");
    let p: PauliString = UCCD_GENERATOR.parse()?;
    push_pauli_rotation(&mut c, &p, Angle::param(slot, 1.0))?;
    Ok(c)
}

/// `exp(theta0 S) exp(theta1 D) |ref>`: after the reference, the double
/// excitation (slot `theta1`) is applied first and the singlet single
/// excitation (slot `theta0`) last.
pub fn build_singlet_uccsd(spec: &AnsatzSpec) -> Result<Circuit> {
    expect_family(spec, AnsatzFamily::SingletUccsd)?;
    if spec.n_qubits != 4 || spec.reference.len() != 2 {
        return Err(Error::UnsupportedModel(format!(
            "singlet UCCSD needs 4 qubits and 2 electrons, got {} qubits and {} electrons",
            spec.n_qubits,
            spec.reference.len()
        )));
    }
    let mut c = build_reference(&spec.reference, spec.n_qubits)?;
    let s0 = c.add_slot("theta0");
    let s1 = c.add_slot("theta1");
    push_generator(&mut c, &singlet_double(0, 0, 1, 1, 2)?, s1)?;
    push_generator(&mut c, &singlet_single(0, 1, 2)?, s0)?;
    Ok(c)
}

/// Reference preparation followed by one exponential per selected generator.
pub fn build_adapt(spec: &AnsatzSpec) -> Result<Circuit> {
    expect_family(spec, AnsatzFamily::Adapt)?;
    let mut c = build_reference(&spec.reference, spec.n_qubits)?;
    for (k, g) in spec.generators.iter().enumerate() {
        let slot = c.add_slot(format!("theta{k}"));
        push_generator(&mut c, &g.operator, slot)?;
    }
    Ok(c)
}

fn alpha(k: usize) -> usize {
    k
}

fn beta(k: usize, n_spatial: usize) -> usize {
    n_spatial + k
}

/// Rescales a generator to the coefficient norm of one elementary
/// excitation minus its adjoint of the given rank (1/2 for singles,
/// 1/8 for doubles).
fn normalize(op: PauliSum, rank: usize) -> Option<PauliSum> {
    let norm_sqr = op.coefficient_norm_sqr();
    if norm_sqr < 1e-20 {
        return None;
    }
    let target = if rank == 1 { 0.5 } else { 0.125 };
    Some(op.scale(Complex64::new((target / norm_sqr).sqrt(), 0.0)))
}

/// Spin-adapted single excitation from spatial orbital `i` to `a`:
/// `(E_ai - E_ia)/sqrt(2)` with `E_ai` summed over both spins.
pub fn singlet_single(i: usize, a: usize, n_spatial: usize) -> Result<PauliSum> {
    let n_qubits = 2 * n_spatial;
    if i >= n_spatial || a >= n_spatial || i == a {
        return Err(Error::Model(format!(
            "invalid single excitation {i}->{a} over {n_spatial} spatial orbitals"
        )));
    }
    let t = FermionOp::hopping(alpha(a), alpha(i))
        .plus(FermionOp::hopping(beta(a, n_spatial), beta(i, n_spatial)))
        .scale(Complex64::new(FRAC_1_SQRT_2, 0.0));
    jordan_wigner(&t.anti_hermitian_part(), n_qubits)
}

/// Spin-summed double excitation `sum_{s,t} a†_{a s} a†_{b t} a_{j t} a_{i s} - h.c.`,
/// normalized to one elementary double. Excitations that cancel to zero
/// are model errors.
pub fn singlet_double(i: usize, j: usize, a: usize, b: usize, n_spatial: usize) -> Result<PauliSum> {
    let n_qubits = 2 * n_spatial;
    let spin = |k: usize, up: bool| if up { alpha(k) } else { beta(k, n_spatial) };
    let mut t = FermionOp::new();
    for s in [true, false] {
        for u in [true, false] {
            let (pa, pb, pj, pi) = (spin(a, s), spin(b, u), spin(j, u), spin(i, s));
            if pa == pb || pi == pj {
                continue;
            }
            t = t.plus(FermionOp::double(pa, pb, pj, pi));
        }
    }
    let op = jordan_wigner(&t.anti_hermitian_part(), n_qubits)?;
    normalize(op, 2).ok_or_else(|| {
        Error::Model(format!("double excitation ({i},{j})->({a},{b}) vanishes"))
    })
}
