use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use super::{boundary_tol, lp, min_enclosing_ball, ConvexBody, Shape};
use crate::error::{Error, Result};
use crate::linalg::{dot, sub};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Fit {
    /// Some translate holds every point in its interior.
    Fits,
    /// No translate holds the points, even on the boundary.
    NoFit,
    /// Closed containment possible, open containment not (within the band).
    Boundary,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitReport {
    pub fit: Fit,
    /// Largest uniform margin by which the translated points sit inside the body.
    pub margin: f64,
    /// Shift `s` attaining it: every `q - s` is inside with that margin.
    pub shift: Vec<f64>,
}

/// max over s of min over q of margin(q - s), with a maximiser.
pub fn fit_margin(points: &[Vec<f64>], body: &ConvexBody) -> Result<(f64, Vec<f64>)> {
    let d = body.dim();
    if points.is_empty() {
        return Err(Error::InvalidInput("no points to fit".into()));
    }
    for p in points {
        if p.len() != d {
            return Err(Error::DimensionMismatch { expected: d, got: p.len() });
        }
    }
    match &body.shape {
        Shape::Ball { center, radius } => {
            let meb = min_enclosing_ball(points);
            Ok((radius - meb.radius, sub(&meb.center, center)))
        }
        Shape::Polytope { halfspaces, .. } => {
            // slack_k(s) = b_k - max_q a_k.q + a_k.s
            let reach: Vec<f64> = halfspaces
                .iter()
                .map(|h| h.b - points.iter().map(|q| dot(&h.a, q)).fold(f64::NEG_INFINITY, f64::max))
                .collect();
            let slack = |s: &[f64]| -> f64 {
                halfspaces.iter().zip(&reach).map(|(h, c)| c + dot(&h.a, s)).fold(f64::INFINITY, f64::min)
            };
            let mut obj = vec![0.0; d];
            obj.push(1.0);
            let rows: Vec<(Vec<f64>, f64)> = halfspaces
                .iter()
                .zip(&reach)
                .map(|(h, c)| {
                    let mut a: Vec<f64> = h.a.iter().map(|x| -x).collect();
                    a.push(1.0);
                    (a, *c)
                })
                .collect();
            let mut s = match lp::maximize(&obj, &vec![lp::FREE; d + 1], &rows)? {
                lp::LpOutcome::Optimal { mut x, .. } => {
                    x.truncate(d);
                    x
                }
                _ => return Err(Error::Lp("translate-fit program has no optimum".into())),
            };
            let mut best = slack(&s);
            // Re-solve on the active set to clean up simplex round-off.
            let scale = 1.0 + reach.iter().fold(0.0f64, |m, c| m.max(c.abs()));
            let active: Vec<usize> = (0..halfspaces.len())
                .filter(|&k| reach[k] + dot(&halfspaces[k].a, &s) - best <= 1e-7 * scale)
                .collect();
            if active.len() > d {
                let m = DMatrix::from_fn(active.len(), d + 1, |i, j| {
                    if j < d { -halfspaces[active[i]].a[j] } else { 1.0 }
                });
                let rhs = DVector::from_iterator(active.len(), active.iter().map(|&k| reach[k]));
                let svd = m.svd(true, true);
                if svd.singular_values.iter().all(|&v| v > 1e-10) {
                    if let Ok(x) = svd.solve(&rhs, 1e-14) {
                        let cand: Vec<f64> = x.iter().take(d).copied().collect();
                        let val = slack(&cand);
                        if val > best {
                            best = val;
                            s = cand;
                        }
                    }
                }
            }
            Ok((best, s))
        }
    }
}

/// Decides whether some translate `body + s` contains every point.
pub fn fits_in_translate(points: &[Vec<f64>], body: &ConvexBody) -> Result<FitReport> {
    let (margin, shift) = fit_margin(points, body)?;
    let tol = boundary_tol();
    let fit = if margin > tol {
        Fit::Fits
    } else if margin < -tol {
        Fit::NoFit
    } else {
        Fit::Boundary
    };
    Ok(FitReport { fit, margin, shift })
}
