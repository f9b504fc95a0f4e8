use std::cell::Cell;

use crate::error::{Error, Result};

type EvalFn<'a> = Box<dyn Fn(&[f64]) -> Result<f64> + 'a>;

/// Real-valued objective with an exact evaluation tally.
pub struct Objective<'a> {
    arity: usize,
    f: EvalFn<'a>,
    count: Cell<usize>,
}

impl<'a> Objective<'a> {
    pub fn new(arity: usize, f: impl Fn(&[f64]) -> Result<f64> + 'a) -> Self {
        Self {
            arity,
            f: Box::new(f),
            count: Cell::new(0),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn evaluations(&self) -> usize {
        self.count.get()
    }

    /// Counts the call; non-finite values abort with a diagnostic.
    pub fn evaluate(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.arity {
            return Err(Error::Dimension(format!(
                "objective takes {} parameters, got {}",
                self.arity,
                x.len()
            )));
        }
        self.count.set(self.count.get() + 1);
        let v = (self.f)(x)?;
        if !v.is_finite() {
            return Err(Error::Optimization(format!(
                "objective returned {v} at {x:?}"
            )));
        }
        Ok(v)
    }
}

/// `g_i = (f(x + h e_i) - f(x - h e_i)) / 2h`
pub fn central_difference(obj: &Objective<'_>, x: &[f64], h: f64) -> Result<Vec<f64>> {
    let mut probe = x.to_vec();
    (0..x.len())
        .map(|i| {
            probe[i] = x[i] + h;
            let up = obj.evaluate(&probe)?;
            probe[i] = x[i] - h;
            let down = obj.evaluate(&probe)?;
            probe[i] = x[i];
            Ok((up - down) / (2.0 * h))
        })
        .collect()
}
