use std::fmt;
use std::str::FromStr;

use super::pool::{build_pool, PoolGradients};
use super::run::{evaluate_parameters, run_vqe_with, VqeResult};
use crate::circuit::{hartree_fock_occupation, AnsatzSpec, Generator};
use crate::error::{Error, Result};
use crate::exact::ground_state;
use crate::optim::OptimizerConfig;
use crate::pauli::PauliSum;
use crate::sim::NoiseModel;

/// Norm of the pool-gradient vector compared against the threshold.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GradientNorm {
    L2,
    Max,
}

impl GradientNorm {
    pub fn apply(self, g: &[f64]) -> f64 {
        match self {
            GradientNorm::L2 => g.iter().map(|v| v * v).sum::<f64>().sqrt(),
            GradientNorm::Max => g.iter().fold(0.0, |m, v| m.max(v.abs())),
        }
    }
}

impl fmt::Display for GradientNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GradientNorm::L2 => "l2",
            GradientNorm::Max => "max",
        })
    }
}

impl FromStr for GradientNorm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "l2" | "2" => Ok(GradientNorm::L2),
            "max" | "inf" | "linf" => Ok(GradientNorm::Max),
            other => Err(Error::Model(format!("unknown gradient norm '{other}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AdaptConfig {
    pub grad_threshold: f64,
    pub max_depth: usize,
    pub norm: GradientNorm,
    /// Evaluate pool gradients on the noiseless state instead of the noisy one.
    pub noiseless_gradients: bool,
    pub n_electrons: usize,
}

impl Default for AdaptConfig {
    fn default() -> Self {
        Self {
            grad_threshold: 1e-2,
            max_depth: 20,
            norm: GradientNorm::L2,
            noiseless_gradients: true,
            n_electrons: 2,
        }
    }
}

/// One ansatz-growth step.
#[derive(Clone, Debug, PartialEq)]
pub struct AdaptIteration {
    pub selected: String,
    pub selected_index: usize,
    /// Norm of the gradient vector that triggered this step.
    pub gradient_norm: f64,
    pub gradients: Vec<f64>,
    pub parameters: Vec<f64>,
    pub energy: f64,
    pub fidelity: f64,
    pub evaluations: usize,
    pub converged: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AdaptResult {
    pub pool: Vec<Generator>,
    pub iterations: Vec<AdaptIteration>,
    /// Gradient norm at the final state.
    pub final_gradient_norm: f64,
    pub final_gradients: Vec<f64>,
    pub final_result: VqeResult,
    pub converged: bool,
}

/// Index of the largest `|g_k|`, lowest index on ties.
fn argmax_abs(g: &[f64]) -> usize {
    let mut best = 0;
    for (k, v) in g.iter().enumerate() {
        if v.abs() > g[best].abs() {
            best = k;
        }
    }
    best
}

/// Grows the ansatz from the Hartree-Fock reference until the pool
/// gradient norm drops below the threshold or `max_depth` operators have
/// been appended. Every step re-optimizes all parameters, warm-started
/// from the previous optimum with the new parameter at 0.
pub fn run_adapt(
    h: &PauliSum,
    noise: &NoiseModel,
    cfg: &OptimizerConfig,
    adapt: &AdaptConfig,
) -> Result<AdaptResult> {
    if adapt.grad_threshold.is_nan() || adapt.grad_threshold <= 0.0 {
        return Err(Error::Model("gradient threshold must be positive".into()));
    }
    if adapt.max_depth == 0 {
        return Err(Error::Model("max depth must be at least 1".into()));
    }
    let n = h.n_qubits();
    if adapt.n_electrons > n {
        return Err(Error::Model(format!(
            "{} electrons do not fit {n} spin orbitals",
            adapt.n_electrons
        )));
    }
    let pool = build_pool(adapt.n_electrons, n - adapt.n_electrons)?;
    let exact = ground_state(h)?;
    let gradients = PoolGradients::new(h, &pool)?;
    let reference = hartree_fock_occupation(adapt.n_electrons, n);
    let noiseless = NoiseModel::noiseless();
    let gradient_noise = if adapt.noiseless_gradients { &noiseless } else { noise };

    let mut spec = AnsatzSpec::adapt(n, reference, Vec::new());
    let mut params: Vec<f64> = Vec::new();
    let mut iterations = Vec::new();
    let mut evaluations = 0;
    let (final_gradients, final_gradient_norm, converged) = loop {
        let (rho, _) = evaluate_parameters(&spec, &params, gradient_noise, None)?;
        let g = gradients.evaluate(&rho)?;
        let norm = adapt.norm.apply(&g);
        if norm < adapt.grad_threshold {
            break (g, norm, true);
        }
        if spec.generators.len() >= adapt.max_depth {
            break (g, norm, false);
        }
        let k = argmax_abs(&g);
        spec.generators.push(pool[k].clone());
        params.push(0.0);
        let step_cfg = cfg.clone().with_initial_point(params.clone());
        let step = run_vqe_with(h, &spec, noise, &step_cfg, None, &exact)?;
        evaluations += step.evaluations;
        params = step.parameters.clone();
        iterations.push(AdaptIteration {
            selected: pool[k].id.clone(),
            selected_index: k,
            gradient_norm: norm,
            gradients: g,
            parameters: step.parameters,
            energy: step.energy,
            fidelity: step.fidelity,
            evaluations: step.evaluations,
            converged: step.converged,
        });
    };

    let mut final_result =
        VqeResult::at_parameters(h, &spec, &params, noise, None, &exact, cfg.kind)?;
    final_result.evaluations = evaluations;
    final_result.converged = converged;
    final_result.status = if converged {
        "gradient norm below threshold".into()
    } else {
        "max depth reached".into()
    };
    Ok(AdaptResult {
        pool,
        iterations,
        final_gradient_norm,
        final_gradients,
        final_result,
        converged,
    })
}
