//! Parameter optimizers over circuit-energy objectives.

mod gradient_free;
mod objective;
mod quasi_newton;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub use gradient_free::minimize_gradient_free;
pub use objective::{central_difference, Objective};
pub use quasi_newton::minimize_quasi_newton;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OptimizerKind {
    /// COBYLA: successive linear approximations in a trust region.
    GradientFree,
    /// L-BFGS with central finite-difference gradients.
    QuasiNewton,
}

impl OptimizerKind {
    pub fn name(self) -> &'static str {
        match self {
            OptimizerKind::GradientFree => "cobyla",
            OptimizerKind::QuasiNewton => "lbfgs",
        }
    }
}

impl fmt::Display for OptimizerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OptimizerKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "cobyla" | "gradient-free" => Ok(OptimizerKind::GradientFree),
            "lbfgs" | "l-bfgs" | "quasi-newton" => Ok(OptimizerKind::QuasiNewton),
            other => Err(Error::Model(format!("unknown optimizer '{other}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OptimizerConfig {
    pub kind: OptimizerKind,
    /// Objective evaluations for COBYLA, iterations for L-BFGS.
    pub max_iterations: usize,
    /// Absolute change in energy (COBYLA) or gradient 2-norm (L-BFGS).
    pub tolerance: f64,
    /// Central-difference step in radians.
    pub fd_step: f64,
    /// Starting parameters; all zeros when `None`.
    pub initial_point: Option<Vec<f64>>,
    /// L-BFGS history length.
    pub memory: usize,
    /// Initial COBYLA trust-region radius.
    pub rho_begin: f64,
}

impl OptimizerConfig {
    pub fn gradient_free() -> Self {
        Self {
            kind: OptimizerKind::GradientFree,
            max_iterations: 1000,
            tolerance: 1e-6,
            fd_step: 1e-4,
            initial_point: None,
            memory: 10,
            rho_begin: 0.5,
        }
    }

    pub fn quasi_newton() -> Self {
        Self {
            kind: OptimizerKind::QuasiNewton,
            max_iterations: 500_000,
            tolerance: 1e-4,
            ..Self::gradient_free()
        }
    }

    pub fn for_kind(kind: OptimizerKind) -> Self {
        match kind {
            OptimizerKind::GradientFree => Self::gradient_free(),
            OptimizerKind::QuasiNewton => Self::quasi_newton(),
        }
    }

    pub fn with_initial_point(mut self, x0: Vec<f64>) -> Self {
        self.initial_point = Some(x0);
        self
    }

    pub(crate) fn start(&self, arity: usize) -> Result<Vec<f64>> {
        match &self.initial_point {
            None => Ok(vec![0.0; arity]),
            Some(x) if x.len() == arity => Ok(x.clone()),
            Some(x) => Err(Error::Optimization(format!(
                "initial point has {} entries, objective takes {arity}",
                x.len()
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OptimizeResult {
    pub params: Vec<f64>,
    pub energy: f64,
    pub evaluations: usize,
    pub converged: bool,
    /// Termination reason.
    pub status: String,
}

/// Dispatches on `cfg.kind`.
pub fn minimize(obj: &Objective<'_>, cfg: &OptimizerConfig) -> Result<OptimizeResult> {
    match cfg.kind {
        OptimizerKind::GradientFree => minimize_gradient_free(obj, cfg),
        OptimizerKind::QuasiNewton => minimize_quasi_newton(obj, cfg),
    }
}

/// Zero-parameter objectives need a single evaluation.
pub(crate) fn trivial(obj: &Objective<'_>) -> Result<OptimizeResult> {
    let energy = obj.evaluate(&[])?;
    Ok(OptimizeResult {
        params: Vec::new(),
        energy,
        evaluations: obj.evaluations(),
        converged: true,
        status: "no parameters".into(),
    })
}
