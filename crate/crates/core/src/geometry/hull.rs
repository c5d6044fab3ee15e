//! Facet and vertex enumeration at desk scale (d <= 4, tens of points).

use nalgebra::DMatrix;

use super::Halfspace;
use crate::error::{Error, Result};
use crate::linalg::{dist, dot, norm, normalized, sub};

pub const MAX_DIM: usize = 4;
pub const MAX_INPUTS: usize = 64;

/// Counter-clockwise hull of planar points (monotone chain), collinear points dropped.
pub fn hull_2d(points: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let mut pts: Vec<[f64; 2]> = points.iter().map(|p| [p[0], p[1]]).collect();
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    pts.dedup();
    if pts.len() < 3 {
        return pts.into_iter().map(|p| p.to_vec()).collect();
    }
    let scale = pts.iter().map(|p| p[0].abs().max(p[1].abs())).fold(0.0, f64::max).max(1e-300);
    let eps = 1e-12 * scale * scale;
    let cross = |o: [f64; 2], a: [f64; 2], b: [f64; 2]| (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
    let mut hull: Vec<[f64; 2]> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &[f64; 2]>> =
            if pass == 0 { Box::new(pts.iter()) } else { Box::new(pts.iter().rev()) };
        for &p in iter {
            while hull.len() >= start + 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= eps {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull.into_iter().map(|p| p.to_vec()).collect()
}

pub fn affine_rank(points: &[Vec<f64>]) -> usize {
    if points.len() < 2 {
        return 0;
    }
    let d = points[0].len();
    let diffs: Vec<Vec<f64>> = points[1..].iter().map(|p| sub(p, &points[0])).collect();
    let scale = diffs.iter().map(|v| norm(v)).fold(0.0, f64::max);
    if scale == 0.0 {
        return 0;
    }
    let m = DMatrix::from_fn(diffs.len(), d, |i, j| diffs[i][j] / scale);
    m.rank(1e-9)
}

/// Facets of the hull of `points` in R^d, d >= 2.
pub fn facets(points: &[Vec<f64>]) -> Result<Vec<Halfspace>> {
    let d = points[0].len();
    if d == 2 {
        let h = hull_2d(points);
        if h.len() < 3 {
            return Err(Error::DegenerateBody("vertices are collinear".into()));
        }
        let n = h.len();
        return Ok((0..n)
            .map(|i| {
                let (p, q) = (&h[i], &h[(i + 1) % n]);
                let a = normalized(&[q[1] - p[1], p[0] - q[0]]).unwrap();
                let b = dot(&a, p);
                Halfspace { a, b }
            })
            .collect());
    }
    let scale = points.iter().map(|p| norm(p)).fold(0.0, f64::max).max(1e-300);
    let tol = 1e-9 * scale;
    let mut out: Vec<Halfspace> = Vec::new();
    for combo in Combinations::new(points.len(), d) {
        let base = &points[combo[0]];
        let diffs: Vec<Vec<f64>> = combo[1..].iter().map(|&i| sub(&points[i], base)).collect();
        let Some(normal) = generalized_cross(&diffs) else { continue };
        let offset = dot(&normal, base);
        let (mut above, mut below) = (false, false);
        for p in points {
            let s = dot(&normal, p) - offset;
            above |= s > tol;
            below |= s < -tol;
        }
        let hs = match (above, below) {
            (false, _) => Halfspace { a: normal, b: offset },
            (true, false) => Halfspace { a: normal.iter().map(|x| -x).collect(), b: -offset },
            (true, true) => continue,
        };
        if !out.iter().any(|f| dist(&f.a, &hs.a) < 1e-9 && (f.b - hs.b).abs() < tol) {
            out.push(hs);
        }
    }
    Ok(out)
}

/// Unit normal to the span of `d - 1` vectors in R^d, if they are independent.
fn generalized_cross(vs: &[Vec<f64>]) -> Option<Vec<f64>> {
    let d = vs.len() + 1;
    let scale: f64 = vs.iter().map(|v| norm(v)).product();
    if scale == 0.0 {
        return None;
    }
    let mut n = vec![0.0; d];
    for (k, nk) in n.iter_mut().enumerate() {
        let minor = DMatrix::from_fn(d - 1, d - 1, |i, j| vs[i][if j < k { j } else { j + 1 }]);
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        *nk = sign * minor.determinant();
    }
    if norm(&n) <= 1e-10 * scale {
        return None;
    }
    normalized(&n)
}

/// Vertices of {x : a_k x <= b_k}, assumed bounded and full-dimensional.
pub fn vertices(halfspaces: &[Halfspace], d: usize) -> Vec<Vec<f64>> {
    let scale = halfspaces.iter().map(|h| h.b.abs()).fold(0.0, f64::max).max(1.0);
    let tol = 1e-9 * scale;
    let mut out: Vec<Vec<f64>> = Vec::new();
    for combo in Combinations::new(halfspaces.len(), d) {
        let a = DMatrix::from_fn(d, d, |i, j| halfspaces[combo[i]].a[j]);
        if a.determinant().abs() < 1e-12 {
            continue;
        }
        let b: Vec<f64> = combo.iter().map(|&i| halfspaces[i].b).collect();
        let Some(x) = crate::linalg::solve(a, &b) else { continue };
        if halfspaces.iter().all(|h| dot(&h.a, &x) <= h.b + tol)
            && !out.iter().any(|v| dist(v, &x) < tol)
        {
            out.push(x);
        }
    }
    out.sort_by(|p, q| p.iter().zip(q).map(|(a, b)| a.total_cmp(b)).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal));
    out
}

/// Lexicographic k-subsets of 0..n.
pub struct Combinations {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        Combinations { n, idx: (0..k).collect(), done: k > n }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combinations_count() {
        assert_eq!(Combinations::new(6, 3).count(), 20);
        assert_eq!(Combinations::new(3, 0).count(), 1);
        assert_eq!(Combinations::new(2, 3).count(), 0);
    }

    #[test]
    fn cube_facets_and_vertices() {
        let mut pts = Vec::new();
        for m in 0..8 {
            pts.push((0..3).map(|i| if m >> i & 1 == 1 { 1.0 } else { -1.0 }).collect::<Vec<f64>>());
        }
        pts.push(vec![0.1, 0.2, 0.3]);
        let f = facets(&pts).unwrap();
        assert_eq!(f.len(), 6);
        let v = vertices(&f, 3);
        assert_eq!(v.len(), 8);
    }

    #[test]
    fn planar_hull_drops_interior() {
        let pts = vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.5, 0.0], vec![0.0, 1.0], vec![0.2, 0.2]];
        assert_eq!(hull_2d(&pts).len(), 3);
    }
}
