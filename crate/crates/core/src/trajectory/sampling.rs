use std::collections::HashMap;

use serde::Serialize;

use super::{
    measure::spiral_advance, spiral_arc_length, unit_ball_volume, CircleSet, HyperplaneSet, SpiralSet,
    TrajectorySet, UniformLines2D, UniformLinesD, Window,
};
use crate::error::{Error, Result};
use crate::linalg::{axpy, dist, dot, norm, orthonormal_complement, sub};

const MAX_SAMPLES: usize = 5_000_000;

/// A generated sample location with its provenance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SamplePoint {
    pub part: usize,
    /// Which carrier of the part: line index j, lattice index m, circle index,
    /// or (plane index, in-plane grid index) for hyperplanes.
    pub carrier: Vec<i64>,
    /// Path parameter: arc length t along lines and circles, the spiral
    /// parameter t, or the plane index j for hyperplanes.
    pub param: f64,
    pub point: Vec<f64>,
}

/// Points at along-path pitch `eps` on every carrier meeting the window.
pub fn sample_points(set: &TrajectorySet, window: &Window, eps: f64) -> Result<Vec<SamplePoint>> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::InvalidInput(format!("pitch must be positive, got {eps}")));
    }
    if window.dim() != set.dim() {
        return Err(Error::DimensionMismatch { expected: set.dim(), got: window.dim() });
    }
    let expected = estimate_count(set, window, eps);
    if expected > MAX_SAMPLES as f64 {
        return Err(Error::InvalidInput(format!("about {expected:.0} samples requested; refine the window or pitch")));
    }
    let mut out = Vec::new();
    match set {
        TrajectorySet::UniformLines2d(l) => lines_2d(0, l, window, eps, &mut out),
        TrajectorySet::UnionUniform2d(u) => {
            for (i, l) in u.parts().iter().enumerate() {
                lines_2d(i, l, window, eps, &mut out);
            }
        }
        TrajectorySet::UniformLinesD(s) => lines_d(s, window, eps, &mut out),
        TrajectorySet::Circles(c) => circles(c, window, eps, &mut out),
        TrajectorySet::Spirals(s) => spirals(s, window, eps, &mut out),
        TrajectorySet::Hyperplanes(p) => planes(0, p, window, eps, &mut out),
        TrajectorySet::UnionHyperplanes(u) => {
            for (i, p) in u.parts().iter().enumerate() {
                planes(i, p, window, eps, &mut out);
            }
        }
    }
    if out.is_empty() {
        return Err(Error::WindowTooSmall);
    }
    let sep = 0.5 * eps.min(set.min_spacing());
    Ok(dedupe(out, sep))
}

fn estimate_count(set: &TrajectorySet, window: &Window, eps: f64) -> f64 {
    let d = set.dim();
    let vol = unit_ball_volume(d) * window.radius.powi(d as i32);
    let per_volume = super::density(set).unwrap_or(0.0);
    let manifold_dim = match set {
        TrajectorySet::Hyperplanes(_) | TrajectorySet::UnionHyperplanes(_) => d - 1,
        _ => 1,
    };
    vol * per_volume / eps.powi(manifold_dim as i32) + 1.0
}

fn inside(p: &[f64], window: &Window) -> bool {
    dist(p, &window.center) <= window.radius * (1.0 + 1e-12)
}

fn lines_2d(part: usize, l: &UniformLines2D, window: &Window, eps: f64, out: &mut Vec<SamplePoint>) {
    let x = &window.center;
    let a = window.radius;
    let rel = sub(x, &l.offset());
    let cn = dot(&rel, &l.normal());
    let tc = dot(&rel, &l.direction());
    let delta = l.spacing();
    for j in ((cn - a) / delta).ceil() as i64..=((cn + a) / delta).floor() as i64 {
        let off = j as f64 * delta - cn;
        let half = (a * a - off * off).max(0.0).sqrt();
        for k in ((tc - half) / eps).ceil() as i64..=((tc + half) / eps).floor() as i64 {
            let t = k as f64 * eps;
            let p = l.point(j, t).to_vec();
            if inside(&p, window) {
                out.push(SamplePoint { part, carrier: vec![j], param: t, point: p });
            }
        }
    }
}

fn lines_d(s: &UniformLinesD, window: &Window, eps: f64, out: &mut Vec<SamplePoint>) {
    let d = s.dim();
    let a = window.radius;
    let vd = s.direction();
    let rel = sub(&window.center, s.offset());
    let along = dot(&rel, vd);
    let perp = axpy(&rel, -along, vd);
    let duals: Vec<Vec<f64>> =
        s.reciprocal().iter().map(|u| u.iter().map(|x| x / (2.0 * std::f64::consts::PI)).collect()).collect();
    let lo: Vec<i64> = duals.iter().map(|r| (dot(r, &perp) - a * norm(r)).ceil() as i64).collect();
    let hi: Vec<i64> = duals.iter().map(|r| (dot(r, &perp) + a * norm(r)).floor() as i64).collect();
    if lo.iter().zip(&hi).any(|(l, h)| l > h) {
        return;
    }
    let mut m = lo.clone();
    loop {
        let mut o = s.offset().to_vec();
        for (c, v) in m.iter().zip(s.basis()) {
            o = axpy(&o, *c as f64, v);
        }
        let diff = sub(&window.center, &o);
        let tc = dot(&diff, vd);
        let off2 = dot(&diff, &diff) - tc * tc;
        if off2 <= a * a {
            let half = (a * a - off2).sqrt();
            for k in ((tc - half) / eps).ceil() as i64..=((tc + half) / eps).floor() as i64 {
                let t = k as f64 * eps;
                let p = axpy(&o, t, vd);
                if inside(&p, window) {
                    out.push(SamplePoint { part: 0, carrier: m.clone(), param: t, point: p });
                }
            }
        }
        let mut i = d - 1;
        loop {
            if i == 0 {
                return;
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

fn circles(c: &CircleSet, window: &Window, eps: f64, out: &mut Vec<SamplePoint>) {
    let dc = norm(&window.center);
    let a = window.radius;
    let delta = c.spacing();
    let first = ((dc - a).max(0.0) / delta).ceil() as i64;
    let last = ((dc + a) / delta).floor() as i64;
    for i in first..=last {
        let r = i as f64 * delta;
        if i == 0 {
            let p = vec![0.0, 0.0];
            if inside(&p, window) {
                out.push(SamplePoint { part: 0, carrier: vec![0], param: 0.0, point: p });
            }
            continue;
        }
        let n = (2.0 * std::f64::consts::PI * r / eps).ceil().max(1.0) as i64;
        let step = 2.0 * std::f64::consts::PI / n as f64;
        for k in 0..n {
            let th = k as f64 * step;
            let p = vec![r * th.cos(), r * th.sin()];
            if inside(&p, window) {
                out.push(SamplePoint { part: 0, carrier: vec![i], param: th * r, point: p });
            }
        }
    }
}

fn spirals(s: &SpiralSet, window: &Window, eps: f64, out: &mut Vec<SamplePoint>) {
    let c = s.pitch();
    let dc = norm(&window.center);
    let t_lo = ((dc - window.radius) / c).max(0.0);
    let t_hi = (dc + window.radius) / c;
    let s_lo = spiral_arc_length(c, 0.0, t_lo);
    for arm in 0..s.count() {
        // arc-length grid eps Z, advanced incrementally
        let first = (s_lo / eps).ceil() * eps;
        let mut t = spiral_advance(c, t_lo, first - s_lo);
        while t <= t_hi {
            let p = s.point(arm, t).to_vec();
            if inside(&p, window) {
                out.push(SamplePoint { part: arm, carrier: vec![arm as i64], param: t, point: p });
            }
            t = spiral_advance(c, t, eps);
        }
    }
}

fn planes(part: usize, p: &HyperplaneSet, window: &Window, eps: f64, out: &mut Vec<SamplePoint>) {
    let a = window.radius;
    let h = p.normal();
    let frame = orthonormal_complement(h);
    let rel = sub(&window.center, p.offset());
    let ch = dot(&rel, h);
    let delta = p.spacing();
    let coords: Vec<f64> = frame.iter().map(|b| dot(&rel, b)).collect();
    for j in ((ch - a) / delta).ceil() as i64..=((ch + a) / delta).floor() as i64 {
        let off = j as f64 * delta - ch;
        let r = (a * a - off * off).max(0.0).sqrt();
        let lo: Vec<i64> = coords.iter().map(|c| ((c - r) / eps).ceil() as i64).collect();
        let hi: Vec<i64> = coords.iter().map(|c| ((c + r) / eps).floor() as i64).collect();
        if lo.iter().zip(&hi).any(|(l, h)| l > h) {
            continue;
        }
        let base = axpy(p.offset(), j as f64 * delta, h);
        let mut n = lo.clone();
        'grid: loop {
            let mut q = base.clone();
            for (k, b) in n.iter().zip(&frame) {
                q = axpy(&q, *k as f64 * eps, b);
            }
            if inside(&q, window) {
                let mut carrier = vec![j];
                carrier.extend_from_slice(&n);
                out.push(SamplePoint { part, carrier, param: j as f64, point: q });
            }
            let mut i = n.len();
            loop {
                if i == 0 {
                    break 'grid;
                }
                i -= 1;
                if n[i] < hi[i] {
                    n[i] += 1;
                    break;
                }
                n[i] = lo[i];
            }
        }
    }
}

/// Keeps the first of any points closer than `sep`.
fn dedupe(points: Vec<SamplePoint>, sep: f64) -> Vec<SamplePoint> {
    let mut index = PointIndex::empty(points.first().map_or(1, |p| p.point.len()), sep);
    let mut out = Vec::with_capacity(points.len());
    for p in points {
        if index.any_within(&p.point, sep) {
            continue;
        }
        index.insert(p.point.clone());
        out.push(p);
    }
    out
}

/// Uniform grid hash over points for radius and nearest-neighbour queries.
#[derive(Debug, Clone)]
pub struct PointIndex {
    cell: f64,
    dim: usize,
    points: Vec<Vec<f64>>,
    cells: HashMap<Vec<i64>, Vec<usize>>,
}

impl PointIndex {
    pub fn empty(dim: usize, cell: f64) -> Self {
        PointIndex { cell: cell.max(1e-12), dim, points: Vec::new(), cells: HashMap::new() }
    }

    pub fn new(points: &[Vec<f64>], cell: f64) -> Self {
        let mut idx = Self::empty(points.first().map_or(1, Vec::len), cell);
        for p in points {
            idx.insert(p.clone());
        }
        idx
    }

    fn key(&self, p: &[f64]) -> Vec<i64> {
        p.iter().map(|x| (x / self.cell).floor() as i64).collect()
    }

    pub fn insert(&mut self, p: Vec<f64>) {
        let k = self.key(&p);
        self.cells.entry(k).or_default().push(self.points.len());
        self.points.push(p);
    }

    fn ring(&self, center: &[i64], k: i64, mut visit: impl FnMut(&Vec<usize>)) {
        let d = self.dim;
        let mut off = vec![-k; d];
        loop {
            if off.iter().any(|o| o.abs() == k) {
                let key: Vec<i64> = center.iter().zip(&off).map(|(c, o)| c + o).collect();
                if let Some(ids) = self.cells.get(&key) {
                    visit(ids);
                }
            }
            let mut i = d;
            loop {
                if i == 0 {
                    return;
                }
                i -= 1;
                if off[i] < k {
                    off[i] += 1;
                    break;
                }
                off[i] = -k;
            }
        }
    }

    pub fn any_within(&self, q: &[f64], r: f64) -> bool {
        let c = self.key(q);
        let reach = (r / self.cell).ceil() as i64;
        let mut found = false;
        for k in 0..=reach {
            self.ring(&c, k, |ids| found |= ids.iter().any(|&i| dist(&self.points[i], q) < r));
            if found {
                return true;
            }
        }
        false
    }

    /// Distance to the nearest indexed point (infinite when empty).
    pub fn nearest(&self, q: &[f64]) -> f64 {
        if self.points.is_empty() {
            return f64::INFINITY;
        }
        let c = self.key(q);
        let mut best = f64::INFINITY;
        let mut k = 0;
        loop {
            self.ring(&c, k, |ids| {
                for &i in ids {
                    best = best.min(dist(&self.points[i], q));
                }
            });
            if best <= k as f64 * self.cell {
                return best;
            }
            k += 1;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoverEstimate {
    /// Largest probed distance to the nearest point.
    pub radius: f64,
    /// Probe pitch; the true supremum over the probed ball lies within
    /// `radius + pitch * sqrt(d) / 2`.
    pub pitch: f64,
}

/// Covering radius estimate over the window shrunk by `layer`, probing a grid
/// of pitch `pitch`.
pub fn covering_radius(points: &[Vec<f64>], window: &Window, pitch: f64, layer: f64) -> Result<CoverEstimate> {
    if points.is_empty() {
        return Err(Error::InvalidInput("no points".into()));
    }
    if !(pitch > 0.0) {
        return Err(Error::InvalidInput("probe pitch must be positive".into()));
    }
    let d = window.dim();
    let inner = window.radius - layer.max(0.0);
    if inner <= 0.0 {
        return Err(Error::WindowTooSmall);
    }
    let vol = unit_ball_volume(d) * window.radius.powi(d as i32);
    let cell = (vol / points.len() as f64).powf(1.0 / d as f64);
    let index = PointIndex::new(points, cell);
    let n = (inner / pitch).floor() as i64;
    let mut k = vec![-n; d];
    let mut worst: f64 = 0.0;
    loop {
        let q: Vec<f64> = window.center.iter().zip(&k).map(|(c, i)| c + *i as f64 * pitch).collect();
        if dist(&q, &window.center) <= inner {
            worst = worst.max(index.nearest(&q));
        }
        let mut i = d;
        loop {
            if i == 0 {
                return Ok(CoverEstimate { radius: worst, pitch });
            }
            i -= 1;
            if k[i] < n {
                k[i] += 1;
                break;
            }
            k[i] = -n;
        }
    }
}

/// `part,param,x1..xd` rows for generated sample locations.
pub fn samples_csv(points: &[SamplePoint], dim: usize) -> String {
    let mut out = String::from("part,param");
    for i in 1..=dim {
        out.push_str(&format!(",x{i}"));
    }
    out.push('\n');
    for p in points {
        out.push_str(&format!("{},{}", p.part, p.param));
        for x in &p.point {
            out.push_str(&format!(",{x}"));
        }
        out.push('\n');
    }
    out
}
