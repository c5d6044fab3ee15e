//! Minimum enclosing ball (Welzl) in any dimension.

use crate::linalg::{axpy, dist, dot, sub};

#[derive(Debug, Clone)]
pub struct Sphere {
    pub center: Vec<f64>,
    pub radius: f64,
}

pub fn min_enclosing_ball(points: &[Vec<f64>]) -> Sphere {
    assert!(!points.is_empty());
    let d = points[0].len();
    let mut pts: Vec<Vec<f64>> = Vec::with_capacity(points.len());
    for p in points {
        if !pts.iter().any(|q| dist(p, q) <= 1e-14 * (1.0 + crate::linalg::norm(p))) {
            pts.push(p.clone());
        }
    }
    let mut boundary = Vec::with_capacity(d + 1);
    welzl(&pts, pts.len(), &mut boundary, d).expect("nonempty point set")
}

fn welzl(pts: &[Vec<f64>], n: usize, boundary: &mut Vec<Vec<f64>>, d: usize) -> Option<Sphere> {
    if n == 0 || boundary.len() == d + 1 {
        return circumsphere(boundary);
    }
    let p = &pts[n - 1];
    if let Some(s) = welzl(pts, n - 1, boundary, d) {
        if dist(&s.center, p) <= s.radius * (1.0 + 1e-12) + 1e-15 {
            return Some(s);
        }
    }
    boundary.push(p.clone());
    let s = welzl(pts, n - 1, boundary, d);
    boundary.pop();
    s
}

/// Smallest sphere through all of `r` with centre in their affine hull.
fn circumsphere(r: &[Vec<f64>]) -> Option<Sphere> {
    match r.len() {
        0 => None,
        1 => Some(Sphere { center: r[0].clone(), radius: 0.0 }),
        k => {
            let p0 = &r[0];
            let diffs: Vec<Vec<f64>> = r[1..].iter().map(|p| sub(p, p0)).collect();
            let m = k - 1;
            let a = nalgebra::DMatrix::from_fn(m, m, |i, j| 2.0 * dot(&diffs[i], &diffs[j]));
            let b: Vec<f64> = diffs.iter().map(|v| dot(v, v)).collect();
            let lambda = crate::linalg::solve(a, &b)?;
            let mut c = p0.clone();
            for (l, v) in lambda.iter().zip(&diffs) {
                c = axpy(&c, *l, v);
            }
            let radius = r.iter().map(|p| dist(p, &c)).fold(0.0, f64::max);
            Some(Sphere { center: c, radius })
        }
    }
}
