use std::collections::VecDeque;

use super::{central_difference, trivial, Objective, OptimizeResult, OptimizerConfig};
use crate::error::Result;

const ARMIJO_C1: f64 = 1e-4;
const MIN_STEP: f64 = 1e-12;

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Two-loop recursion: returns `-H g` for the implicit inverse Hessian.
fn search_direction(g: &[f64], history: &VecDeque<(Vec<f64>, Vec<f64>, f64)>) -> Vec<f64> {
    let mut q = g.to_vec();
    let mut alphas = Vec::with_capacity(history.len());
    for (s, y, rho) in history.iter().rev() {
        let a = rho * dot(s, &q);
        for (qi, yi) in q.iter_mut().zip(y) {
            *qi -= a * yi;
        }
        alphas.push(a);
    }
    if let Some((s, y, _)) = history.back() {
        let gamma = dot(s, y) / dot(y, y);
        q.iter_mut().for_each(|v| *v *= gamma);
    }
    for ((s, y, rho), a) in history.iter().zip(alphas.into_iter().rev()) {
        let b = rho * dot(y, &q);
        for (qi, si) in q.iter_mut().zip(s) {
            *qi += (a - b) * si;
        }
    }
    q.iter_mut().for_each(|v| *v = -*v);
    q
}

/// L-BFGS with central-difference gradients and backtracking Armijo line
/// search. Converged when the gradient 2-norm drops below `tolerance`; a
/// failed line search returns the best point with `converged = false`.
pub fn minimize_quasi_newton(obj: &Objective<'_>, cfg: &OptimizerConfig) -> Result<OptimizeResult> {
    let n = obj.arity();
    if n == 0 {
        return trivial(obj);
    }
    let h = cfg.fd_step;
    let mut x = cfg.start(n)?;
    let mut f = obj.evaluate(&x)?;
    let mut g = central_difference(obj, &x, h)?;
    let mut history: VecDeque<(Vec<f64>, Vec<f64>, f64)> = VecDeque::new();

    let finish = |x: Vec<f64>, f: f64, converged: bool, status: &str| OptimizeResult {
        params: x,
        energy: f,
        evaluations: obj.evaluations(),
        converged,
        status: status.into(),
    };

    for _ in 0..cfg.max_iterations {
        if norm(&g) < cfg.tolerance {
            return Ok(finish(x, f, true, "gradient norm below tolerance"));
        }
        let mut d = search_direction(&g, &history);
        let mut slope = dot(&g, &d);
        if slope >= 0.0 {
            history.clear();
            d = g.iter().map(|v| -v).collect();
            slope = -dot(&g, &g);
        }

        let mut step = 1.0;
        let accepted = loop {
            let trial: Vec<f64> = x.iter().zip(&d).map(|(xi, di)| xi + step * di).collect();
            let ft = obj.evaluate(&trial)?;
            if ft <= f + ARMIJO_C1 * step * slope {
                break Some((trial, ft));
            }
            step *= 0.5;
            if step < MIN_STEP {
                break None;
            }
        };
        let Some((x_new, f_new)) = accepted else {
            return Ok(finish(x, f, false, "line search failed"));
        };
        let g_new = central_difference(obj, &x_new, h)?;
        let s: Vec<f64> = x_new.iter().zip(&x).map(|(a, b)| a - b).collect();
        let y: Vec<f64> = g_new.iter().zip(&g).map(|(a, b)| a - b).collect();
        let sy = dot(&s, &y);
        if sy > 1e-12 * norm(&s) * norm(&y) {
            if history.len() == cfg.memory.max(1) {
                history.pop_front();
            }
            history.push_back((s, y, 1.0 / sy));
        }
        x = x_new;
        f = f_new;
        g = g_new;
    }
    let converged = norm(&g) < cfg.tolerance;
    Ok(finish(x, f, converged, "iteration limit"))
}
