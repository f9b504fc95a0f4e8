use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::sim::{DensityMatrix, NoiseModel};

/// Conjugates by the gate and applies the gate's noise channel.
///
/// Non-diagonal single-qubit gates get `depolarize(q, p1)`; Z and RZ are
/// noiseless while `exempt_diagonal` holds. A CNOT is followed by
/// `depolarize(target, p2)` and then `depolarize(control, p2)`.
pub fn apply_gate(rho: &mut DensityMatrix, gate: &Gate, noise: &NoiseModel) -> Result<()> {
    let n = rho.n_qubits();
    if let Some(&q) = gate.qubits().iter().find(|&&q| q >= n) {
        return Err(Error::Dimension(format!(
            "{} on qubit {q} outside a {n}-qubit state",
            gate.kind()
        )));
    }
    match *gate {
        Gate::Cnot { control, target } => {
            rho.apply_cnot(control, target);
            rho.depolarize(target, noise.p2)?;
            rho.depolarize(control, noise.p2)?;
        }
        ref g => {
            let q = g.qubits()[0];
            let u = g.matrix()?.expect("single-qubit gate");
            rho.apply_single(q, &u);
            if !(noise.exempt_diagonal && g.kind().is_diagonal()) {
                rho.depolarize(q, noise.p1)?;
            }
        }
    }
    Ok(())
}

/// Left fold of [`apply_gate`] over the circuit, starting from `initial`
/// or `|0...0>`. `bindings` must cover every slot (empty for bound circuits).
pub fn run_circuit(
    circuit: &Circuit,
    bindings: &[f64],
    noise: &NoiseModel,
    initial: Option<&DensityMatrix>,
) -> Result<DensityMatrix> {
    let bound;
    let circuit = if circuit.n_slots() > 0 || !bindings.is_empty() {
        bound = circuit.bind(bindings)?;
        &bound
    } else {
        circuit
    };
    let mut rho = match initial {
        Some(r) => {
            if r.n_qubits() != circuit.n_qubits() {
                return Err(Error::Dimension(format!(
                    "{}-qubit initial state for a {}-qubit circuit",
                    r.n_qubits(),
                    circuit.n_qubits()
                )));
            }
            r.clone()
        }
        None => DensityMatrix::zero_state(circuit.n_qubits())?,
    };
    for g in circuit.gates() {
        apply_gate(&mut rho, g, noise)?;
    }
    Ok(rho)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::Angle;

    #[test]
    fn empty_circuit_keeps_initial_state() {
        let c = Circuit::new(2);
        let init = DensityMatrix::basis_state(2, 3).unwrap();
        let out = run_circuit(&c, &[], &NoiseModel::depolarizing(0.05).unwrap(), Some(&init)).unwrap();
        assert_eq!(out, init);
    }

    #[test]
    fn x_flips_without_noise() {
        let mut c = Circuit::new(1);
        c.push(Gate::X(0)).unwrap();
        let out = run_circuit(&c, &[], &NoiseModel::noiseless(), None).unwrap();
        assert_eq!(out, DensityMatrix::basis_state(1, 1).unwrap());
    }

    #[test]
    fn diagonal_gates_exempt() {
        let mut c = Circuit::new(1);
        c.push(Gate::H(0)).unwrap();
        let noise = NoiseModel::noiseless();
        let plus = run_circuit(&c, &[], &noise, None).unwrap();
        let mut z = Circuit::new(1);
        z.push(Gate::Z(0)).unwrap();
        z.push(Gate::Rz(0, Angle::Value(0.7))).unwrap();
        let noisy = NoiseModel::depolarizing(0.1).unwrap();
        let out = run_circuit(&z, &[], &noisy, Some(&plus)).unwrap();
        assert!((out.purity() - 1.0).abs() < 1e-14);
        assert!((out.trace().re - 1.0).abs() < 1e-15);
        let out = run_circuit(&z, &[], &noisy.with_diagonal_exemption(false), Some(&plus)).unwrap();
        assert!(out.purity() < 1.0 - 1e-3);
    }

    #[test]
    fn missing_binding() {
        let c = crate::circuit::AnsatzSpec::uccd().build().unwrap();
        let err = run_circuit(&c, &[], &NoiseModel::noiseless(), None).unwrap_err();
        assert!(matches!(err, Error::Binding(_)));
    }
}
