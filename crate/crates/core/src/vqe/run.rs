use crate::circuit::{randomized_compile, AnsatzFamily, AnsatzSpec, Circuit, GateCounts};
use crate::error::{Error, Result};
use crate::exact::{ground_state, SpectrumResult};
use crate::optim::{minimize, Objective, OptimizerConfig, OptimizerKind};
use crate::pauli::PauliSum;
use crate::sim::{run_circuit, DensityMatrix, NoiseModel};

#[derive(Clone, Debug, PartialEq)]
pub struct VqeResult {
    pub family: AnsatzFamily,
    pub optimizer: OptimizerKind,
    pub noise_p1: f64,
    /// Randomized-compiling seed, if the circuit was randomized.
    pub rc_seed: Option<u64>,
    pub energy: f64,
    pub exact_e0: f64,
    pub parameters: Vec<f64>,
    pub fidelity: f64,
    pub gate_counts: GateCounts,
    pub evaluations: usize,
    pub converged: bool,
    pub status: String,
    /// `(word, coefficient, <P>)` in Hamiltonian term order.
    pub per_term_expectations: Vec<(String, f64, f64)>,
}

impl VqeResult {
    /// Report for fixed parameters: no evaluations are counted and the
    /// result is marked converged.
    pub fn at_parameters(
        h: &PauliSum,
        spec: &AnsatzSpec,
        params: &[f64],
        noise: &NoiseModel,
        rc_seed: Option<u64>,
        exact: &SpectrumResult,
        optimizer: OptimizerKind,
    ) -> Result<Self> {
        let (rho, gate_counts) = evaluate_parameters(spec, params, noise, rc_seed)?;
        let per_term_expectations = rho.term_expectations(h)?;
        Ok(VqeResult {
            family: spec.family,
            optimizer,
            noise_p1: noise.p1,
            rc_seed,
            energy: per_term_expectations.iter().map(|(_, c, e)| c * e).sum(),
            exact_e0: exact.ground_energy(),
            fidelity: exact.fidelity(&rho)?,
            gate_counts,
            parameters: params.to_vec(),
            evaluations: 0,
            converged: true,
            status: String::new(),
            per_term_expectations,
        })
    }

    pub fn energy_error(&self) -> f64 {
        self.energy - self.exact_e0
    }
}

/// Circuit actually executed for `params`: the bound ansatz, randomized
/// with `rc_seed` when given.
fn executed_circuit(circuit: &Circuit, params: &[f64], rc_seed: Option<u64>) -> Result<Circuit> {
    let bound = circuit.bind(params)?;
    match rc_seed {
        Some(seed) => randomized_compile(&bound, seed),
        None => Ok(bound),
    }
}

fn simulate(
    circuit: &Circuit,
    params: &[f64],
    noise: &NoiseModel,
    rc_seed: Option<u64>,
) -> Result<DensityMatrix> {
    run_circuit(&executed_circuit(circuit, params, rc_seed)?, &[], noise, None)
}

/// Final state and executed gate counts for fixed parameters.
pub fn evaluate_parameters(
    spec: &AnsatzSpec,
    params: &[f64],
    noise: &NoiseModel,
    rc_seed: Option<u64>,
) -> Result<(DensityMatrix, GateCounts)> {
    let executed = executed_circuit(&spec.build()?, params, rc_seed)?;
    let rho = run_circuit(&executed, &[], noise, None)?;
    Ok((rho, executed.gate_counts()))
}

/// Optimizes a fixed ansatz (UCCD or singlet UCCSD) against the exact
/// ground state of `h`.
pub fn run_vqe(
    h: &PauliSum,
    spec: &AnsatzSpec,
    noise: &NoiseModel,
    cfg: &OptimizerConfig,
) -> Result<VqeResult> {
    if spec.family == AnsatzFamily::Adapt {
        return Err(Error::UnsupportedModel(
            "use run_adapt for the ADAPT ansatz".into(),
        ));
    }
    run_vqe_with(h, spec, noise, cfg, None, &ground_state(h)?)
}

/// [`run_vqe`] for any ansatz family, with an optional randomized-compiling
/// seed and a precomputed exact reference. Randomization is applied after
/// binding at every objective evaluation with the same seed, so the
/// objective stays deterministic.
pub fn run_vqe_with(
    h: &PauliSum,
    spec: &AnsatzSpec,
    noise: &NoiseModel,
    cfg: &OptimizerConfig,
    rc_seed: Option<u64>,
    exact: &SpectrumResult,
) -> Result<VqeResult> {
    if h.n_qubits() != spec.n_qubits {
        return Err(Error::Dimension(format!(
            "{}-qubit Hamiltonian for a {}-qubit ansatz",
            h.n_qubits(),
            spec.n_qubits
        )));
    }
    let circuit = spec.build()?;
    let obj = Objective::new(circuit.n_slots(), |x| {
        simulate(&circuit, x, noise, rc_seed)?.expectation(h)
    });
    let opt = minimize(&obj, cfg)?;
    let mut result = VqeResult::at_parameters(h, spec, &opt.params, noise, rc_seed, exact, cfg.kind)?;
    result.evaluations = opt.evaluations;
    result.converged = opt.converged;
    result.status = opt.status;
    Ok(result)
}
