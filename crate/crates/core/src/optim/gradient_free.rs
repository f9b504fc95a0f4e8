use std::cell::RefCell;
use std::f64::consts::PI;

use cobyla::{minimize, Func, RhoBeg, StopTols, SuccessStatus};

use super::{trivial, Objective, OptimizeResult, OptimizerConfig};
use crate::error::{Error, Result};

/// Angles are 4*pi periodic, so this box never excludes an optimum.
const ANGLE_BOUND: f64 = 4.0 * PI;

/// COBYLA with at most `max_iterations` objective evaluations. `tolerance`
/// is the final trust-region radius; reaching it counts as converged.
pub fn minimize_gradient_free(obj: &Objective<'_>, cfg: &OptimizerConfig) -> Result<OptimizeResult> {
    let n = obj.arity();
    if n == 0 {
        return trivial(obj);
    }
    let x0 = cfg.start(n)?;
    let failure: RefCell<Option<Error>> = RefCell::new(None);
    let func = |x: &[f64], _: &mut ()| -> f64 {
        if failure.borrow().is_some() {
            return f64::MAX;
        }
        match obj.evaluate(x) {
            Ok(v) => v,
            Err(e) => {
                *failure.borrow_mut() = Some(e);
                f64::MAX
            }
        }
    };
    let bounds = vec![(-ANGLE_BOUND, ANGLE_BOUND); n];
    let cons: Vec<&dyn Func<()>> = Vec::new();
    let tols = StopTols {
        xtol_abs: vec![cfg.tolerance; n],
        ..StopTols::default()
    };
    let outcome = minimize(
        func,
        &x0,
        &bounds,
        &cons,
        (),
        cfg.max_iterations,
        RhoBeg::All(cfg.rho_begin),
        Some(tols),
    );
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    let (converged, status, x, f) = match outcome {
        Ok((s, x, f)) => (
            matches!(
                s,
                SuccessStatus::Success | SuccessStatus::FtolReached | SuccessStatus::XtolReached
            ),
            format!("{s:?}"),
            x,
            f,
        ),
        Err((s, x, f)) => (false, format!("{s:?}"), x, f),
    };
    Ok(OptimizeResult {
        params: x,
        energy: f,
        evaluations: obj.evaluations(),
        converged,
        status,
    })
}
