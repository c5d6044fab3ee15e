//! Trajectory length and manifold volume inside a ball.

use std::f64::consts::PI;

use super::{TrajectorySet, UniformLinesD};
use crate::error::{Error, Result};
use crate::linalg::{axpy, dist, dot, norm, sub};

/// Volume of the unit ball in R^k.
pub fn unit_ball_volume(k: usize) -> f64 {
    match k {
        0 => 1.0,
        1 => 2.0,
        _ => 2.0 * PI / k as f64 * unit_ball_volume(k - 2),
    }
}

pub(crate) fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn rec(f: &dyn Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) + rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
    }
    if a == b {
        return 0.0;
    }
    let (fa, fm, fb) = (f(a), f(0.5 * (a + b)), f(b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    rec(f, a, b, fa, fm, fb, whole, tol, 40)
}

fn spiral_speed(c: f64, t: f64) -> f64 {
    c * (1.0 + 4.0 * PI * PI * t * t).sqrt()
}

/// Arc length of one spiral arm between parameters t0 and t1.
pub fn spiral_arc_length(c: f64, t0: f64, t1: f64) -> f64 {
    let tol = 1e-13 * (1.0 + spiral_speed(c, t1.abs().max(t0.abs())) * (t1 - t0).abs());
    simpson(&|t| spiral_speed(c, t), t0, t1, tol)
}

/// Parameter t1 >= t0 with arc length `ds` between t0 and t1.
pub(crate) fn spiral_advance(c: f64, t0: f64, ds: f64) -> f64 {
    let mut t = t0 + ds / spiral_speed(c, t0);
    for _ in 0..50 {
        let f = spiral_arc_length(c, t0, t) - ds;
        let step = f / spiral_speed(c, t);
        t -= step;
        if step.abs() <= 1e-15 * (1.0 + t.abs()) {
            break;
        }
    }
    t
}

/// Total length (or (d-1)-volume for hyperplanes) of the set inside B(x, a).
pub fn arc_length_in_ball(set: &TrajectorySet, a: f64, x: &[f64]) -> Result<f64> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::InvalidInput("radius must be positive".into()));
    }
    if x.len() != set.dim() {
        return Err(Error::DimensionMismatch { expected: set.dim(), got: x.len() });
    }
    let chord = |off: f64| if off.abs() < a { 2.0 * (a * a - off * off).sqrt() } else { 0.0 };
    Ok(match set {
        TrajectorySet::UniformLines2d(_) | TrajectorySet::UnionUniform2d(_) => set
            .families()
            .unwrap()
            .iter()
            .map(|f| {
                let c = dot(&sub(x, &f.offset), &f.normal);
                let lo = ((c - a) / f.spacing).ceil() as i64;
                let hi = ((c + a) / f.spacing).floor() as i64;
                (lo..=hi).map(|j| chord(j as f64 * f.spacing - c)).sum::<f64>()
            })
            .sum(),
        TrajectorySet::UniformLinesD(s) => lines_d_length(s, a, x),
        TrajectorySet::Circles(c) => {
            let d = norm(x);
            let lo = ((d - a).max(0.0) / c.spacing()).ceil() as i64;
            let hi = ((d + a) / c.spacing()).floor() as i64;
            (lo.max(1)..=hi).map(|i| circle_arc(i as f64 * c.spacing(), d, a)).sum()
        }
        TrajectorySet::Spirals(s) => (0..s.count()).map(|arm| spiral_length_in_ball(s, arm, a, x)).sum(),
        TrajectorySet::Hyperplanes(_) | TrajectorySet::UnionHyperplanes(_) => {
            let k = set.dim() - 1;
            set.families()
                .unwrap()
                .iter()
                .map(|f| {
                    let c = dot(&sub(x, &f.offset), &f.normal);
                    let lo = ((c - a) / f.spacing).ceil() as i64;
                    let hi = ((c + a) / f.spacing).floor() as i64;
                    (lo..=hi)
                        .map(|j| {
                            let off = j as f64 * f.spacing - c;
                            let r2 = a * a - off * off;
                            if r2 > 0.0 { unit_ball_volume(k) * r2.sqrt().powi(k as i32) } else { 0.0 }
                        })
                        .sum::<f64>()
                })
                .sum()
        }
    })
}

fn circle_arc(r: f64, d: f64, a: f64) -> f64 {
    if r + d <= a {
        return 2.0 * PI * r;
    }
    if d >= r + a || r >= d + a {
        return 0.0;
    }
    let c = ((r * r + d * d - a * a) / (2.0 * r * d)).clamp(-1.0, 1.0);
    2.0 * r * c.acos()
}

fn lines_d_length(s: &UniformLinesD, a: f64, x: &[f64]) -> f64 {
    let d = s.dim();
    let vd = s.direction();
    let rel = sub(x, s.offset());
    let perp = axpy(&rel, -dot(&rel, vd), vd);
    let duals: Vec<Vec<f64>> = s.reciprocal().iter().map(|u| u.iter().map(|v| v / (2.0 * PI)).collect()).collect();
    let lo: Vec<i64> = duals.iter().map(|r| (dot(r, &perp) - a * norm(r)).ceil() as i64).collect();
    let hi: Vec<i64> = duals.iter().map(|r| (dot(r, &perp) + a * norm(r)).floor() as i64).collect();
    if lo.iter().zip(&hi).any(|(l, h)| l > h) {
        return 0.0;
    }
    let mut m = lo.clone();
    let mut total = 0.0;
    loop {
        let mut o = vec![0.0; d];
        for (c, v) in m.iter().zip(s.basis()) {
            o = axpy(&o, *c as f64, v);
        }
        let off = dist(&o, &perp);
        if off < a {
            total += 2.0 * (a * a - off * off).sqrt();
        }
        let mut i = d - 1;
        loop {
            if i == 0 {
                return total;
            }
            i -= 1;
            if m[i] < hi[i] {
                m[i] += 1;
                break;
            }
            m[i] = lo[i];
        }
    }
}

fn spiral_length_in_ball(s: &super::SpiralSet, arm: usize, a: f64, x: &[f64]) -> f64 {
    let c = s.pitch();
    let dx = norm(x);
    let t_lo = ((dx - a) / c).max(0.0);
    let t_hi = (dx + a) / c;
    let g = |t: f64| {
        let p = s.point(arm, t);
        a - dist(&p, x)
    };
    // inside-intervals located on a grid fine against one turn, then refined
    let steps = (((t_hi - t_lo) / 0.005).ceil() as usize).max(1);
    let dt = (t_hi - t_lo) / steps as f64;
    let refine = |mut lo: f64, mut hi: f64, lo_inside: bool| {
        for _ in 0..100 {
            let mid = 0.5 * (lo + hi);
            if (g(mid) >= 0.0) == lo_inside {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    };
    let mut total = 0.0;
    let mut start = (g(t_lo) >= 0.0).then_some(t_lo);
    for k in 1..=steps {
        let (t0, t1) = (t_lo + (k - 1) as f64 * dt, t_lo + k as f64 * dt);
        let (in0, in1) = (g(t0) >= 0.0, g(t1) >= 0.0);
        if in0 != in1 {
            let edge = refine(t0, t1, in0);
            if in0 {
                total += spiral_arc_length(c, start.take().unwrap_or(t0), edge);
            } else {
                start = Some(edge);
            }
        }
    }
    if let Some(s0) = start {
        total += spiral_arc_length(c, s0, t_hi);
    }
    total
}
