//! Thin wrapper over `microlp` for the small dense programs used here.

use microlp::{ComparisonOp, OptimizationDirection, Problem};

use crate::error::{Error, Result};

pub enum LpOutcome {
    Optimal { x: Vec<f64> },
    Infeasible,
    Unbounded,
}

/// Maximise `objective · x` subject to `a · x <= b` for every row and the
/// per-variable bounds.
pub fn maximize(objective: &[f64], bounds: &[(f64, f64)], rows: &[(Vec<f64>, f64)]) -> Result<LpOutcome> {
    let mut problem = Problem::new(OptimizationDirection::Maximize);
    let vars: Vec<_> = objective
        .iter()
        .zip(bounds)
        .map(|(&c, &b)| problem.add_var(c, b))
        .collect();
    for (a, b) in rows {
        let expr: Vec<_> = vars
            .iter()
            .zip(a)
            .filter(|(_, c)| **c != 0.0)
            .map(|(v, c)| (*v, *c))
            .collect();
        if expr.is_empty() {
            if *b < 0.0 {
                return Ok(LpOutcome::Infeasible);
            }
            continue;
        }
        problem.add_constraint(expr, ComparisonOp::Le, *b);
    }
    match problem.solve() {
        Ok(sol) => {
            let x: Vec<f64> = vars.iter().map(|v| *sol.var_value(*v)).collect();
            Ok(LpOutcome::Optimal { x })
        }
        Err(microlp::Error::Infeasible) => Ok(LpOutcome::Infeasible),
        Err(microlp::Error::Unbounded) => Ok(LpOutcome::Unbounded),
        Err(e) => Err(Error::Lp(e.to_string())),
    }
}

pub const FREE: (f64, f64) = (f64::NEG_INFINITY, f64::INFINITY);
