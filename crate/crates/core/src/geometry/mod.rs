//! Compact convex spectral supports.
//!
//! A [`ConvexBody`] is either an exact ball or a polytope held in H-form with
//! unit normals, together with its vertex list. Every predicate used by the
//! verdict engines reduces to support values, membership margins or the
//! translate-fit program in [`fits_in_translate`].

mod fit;
pub(crate) mod hull;
pub(crate) mod lp;
mod meb;

use std::sync::OnceLock;

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{dist, dot, norm, normalized, unit};

pub use fit::{fit_margin, fits_in_translate, Fit, FitReport};
pub use meb::{min_enclosing_ball, Sphere};

/// Half-width of the band in which a translate-fit is reported as `Boundary`.
pub const BOUNDARY_TOL: f64 = 1e-9;

/// Boundary band, overridable through `SAMPTRAJ_BOUNDARY_TOL`.
pub fn boundary_tol() -> f64 {
    static TOL: OnceLock<f64> = OnceLock::new();
    *TOL.get_or_init(|| {
        std::env::var("SAMPTRAJ_BOUNDARY_TOL")
            .ok()
            .and_then(|s| s.trim().parse::<f64>().ok())
            .filter(|t| t.is_finite() && *t > 0.0)
            .unwrap_or(BOUNDARY_TOL)
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Halfspace {
    pub a: Vec<f64>,
    pub b: f64,
}

/// Nonzero direction, normalised on construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Direction(Vec<f64>);

impl Direction {
    pub fn new(v: &[f64]) -> Result<Self> {
        if v.is_empty() || v.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidInput("direction must be finite".into()));
        }
        normalized(v)
            .map(Direction)
            .ok_or_else(|| Error::InvalidInput("direction must be nonzero".into()))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn reversed(&self) -> Direction {
        Direction(self.0.iter().map(|x| -x).collect())
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Shape {
    Ball { center: Vec<f64>, radius: f64 },
    Polytope { halfspaces: Vec<Halfspace>, vertices: Vec<Vec<f64>> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "BodySpec", into = "BodySpec")]
pub struct ConvexBody {
    dim: usize,
    shape: Shape,
    symmetric: bool,
}

impl ConvexBody {
    pub fn ball(center: Vec<f64>, radius: f64) -> Result<Self> {
        if center.is_empty() || center.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidInput("ball centre must be finite".into()));
        }
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidInput(format!("ball radius must be positive, got {radius}")));
        }
        Ok(ConvexBody { dim: center.len(), shape: Shape::Ball { center, radius }, symmetric: false })
    }

    pub fn from_vertices(points: Vec<Vec<f64>>) -> Result<Self> {
        let d = check_points(&points)?;
        if d > hull::MAX_DIM || points.len() > hull::MAX_INPUTS && d > 2 {
            return Err(Error::InvalidInput(format!(
                "vertex input limited to d <= {} and {} points",
                hull::MAX_DIM,
                hull::MAX_INPUTS
            )));
        }
        if points.len() < d + 1 || hull::affine_rank(&points) < d {
            return Err(Error::DegenerateBody("vertices do not span the space".into()));
        }
        if d == 1 {
            let lo = points.iter().map(|p| p[0]).fold(f64::INFINITY, f64::min);
            let hi = points.iter().map(|p| p[0]).fold(f64::NEG_INFINITY, f64::max);
            return Self::from_halfspaces(vec![Halfspace { a: vec![1.0], b: hi }, Halfspace { a: vec![-1.0], b: -lo }]);
        }
        let hs = hull::facets(&points)?;
        Self::from_halfspaces(hs)
    }

    pub fn from_halfspaces(halfspaces: Vec<Halfspace>) -> Result<Self> {
        let Some(first) = halfspaces.first() else {
            return Err(Error::UnboundedBody);
        };
        let d = first.a.len();
        if d == 0 || d > hull::MAX_DIM {
            return Err(Error::InvalidInput(format!("dimension {d} outside 1..={}", hull::MAX_DIM)));
        }
        if halfspaces.len() > hull::MAX_INPUTS {
            return Err(Error::InvalidInput(format!("at most {} halfspaces", hull::MAX_INPUTS)));
        }
        let mut hs = Vec::with_capacity(halfspaces.len());
        for h in halfspaces {
            if h.a.len() != d {
                return Err(Error::DimensionMismatch { expected: d, got: h.a.len() });
            }
            if !h.b.is_finite() || h.a.iter().any(|x| !x.is_finite()) {
                return Err(Error::InvalidInput("halfspace entries must be finite".into()));
            }
            let n = norm(&h.a);
            if n == 0.0 {
                if h.b < 0.0 {
                    return Err(Error::InvalidInput("halfspaces have empty intersection".into()));
                }
                continue;
            }
            hs.push(Halfspace { a: h.a.iter().map(|x| x / n).collect(), b: h.b / n });
        }
        let rows: Vec<(Vec<f64>, f64)> = hs.iter().map(|h| (h.a.clone(), h.b)).collect();
        for i in 0..d {
            for sign in [1.0, -1.0] {
                let c: Vec<f64> = unit(d, i).iter().map(|x| x * sign).collect();
                match lp::maximize(&c, &vec![lp::FREE; d], &rows)? {
                    lp::LpOutcome::Unbounded => return Err(Error::UnboundedBody),
                    lp::LpOutcome::Infeasible => {
                        return Err(Error::InvalidInput("halfspaces have empty intersection".into()))
                    }
                    lp::LpOutcome::Optimal { .. } => {}
                }
            }
        }
        let (_, r) = chebyshev(&hs, d)?;
        let verts = hull::vertices(&hs, d);
        let scale = verts.iter().map(|v| norm(v)).fold(0.0, f64::max).max(1.0);
        if r <= 1e-9 * scale || verts.len() < d + 1 {
            return Err(Error::DegenerateBody("polytope has empty interior".into()));
        }
        // drop halfspaces that never touch the body
        let hs: Vec<Halfspace> = hs
            .into_iter()
            .filter(|h| {
                let top = verts.iter().map(|v| dot(&h.a, v)).fold(f64::NEG_INFINITY, f64::max);
                h.b - top <= 1e-9 * scale
            })
            .collect();
        Ok(ConvexBody { dim: d, shape: Shape::Polytope { halfspaces: hs, vertices: verts }, symmetric: false })
    }

    /// Asserts central symmetry, verified on probe directions.
    pub fn with_symmetry(mut self, symmetric: bool) -> Result<Self> {
        if symmetric {
            let mismatch = self.symmetry_defect();
            if mismatch > 1e-9 * (1.0 + self.circumradius()) {
                return Err(Error::NotSymmetric(mismatch));
            }
        }
        self.symmetric = symmetric;
        Ok(self)
    }

    fn symmetry_defect(&self) -> f64 {
        let mut probes: Vec<Vec<f64>> = (0..self.dim).map(|i| unit(self.dim, i)).collect();
        if let Shape::Polytope { halfspaces, .. } = &self.shape {
            probes.extend(halfspaces.iter().map(|h| h.a.clone()));
        }
        probes.extend(sphere_directions(self.dim, 64));
        probes
            .iter()
            .map(|u| (self.support_unit(u) - self.support_unit(&u.iter().map(|x| -x).collect::<Vec<_>>())).abs())
            .fold(0.0, f64::max)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn as_ball(&self) -> Option<(&[f64], f64)> {
        match &self.shape {
            Shape::Ball { center, radius } => Some((center, *radius)),
            Shape::Polytope { .. } => None,
        }
    }

    pub fn halfspaces(&self) -> Option<&[Halfspace]> {
        match &self.shape {
            Shape::Polytope { halfspaces, .. } => Some(halfspaces),
            Shape::Ball { .. } => None,
        }
    }

    pub fn vertices(&self) -> Option<&[Vec<f64>]> {
        match &self.shape {
            Shape::Polytope { vertices, .. } => Some(vertices),
            Shape::Ball { .. } => None,
        }
    }

    pub fn support(&self, u: &Direction) -> f64 {
        self.support_unit(u.as_slice())
    }

    /// h(u) for an arbitrary vector; positively homogeneous in `u`.
    pub(crate) fn support_unit(&self, u: &[f64]) -> f64 {
        match &self.shape {
            Shape::Ball { center, radius } => dot(center, u) + radius * norm(u),
            Shape::Polytope { vertices, .. } => vertices.iter().map(|v| dot(v, u)).fold(f64::NEG_INFINITY, f64::max),
        }
    }

    /// Distance between the two supporting hyperplanes normal to `u`.
    pub fn breadth(&self, u: &Direction) -> f64 {
        self.support(u) + self.support(&u.reversed())
    }

    /// Signed membership margin: positive inside, zero on the boundary.
    /// For polytopes this is the smallest slack over the unit-normal halfspaces.
    pub fn margin(&self, x: &[f64]) -> f64 {
        match &self.shape {
            Shape::Ball { center, radius } => radius - dist(x, center),
            Shape::Polytope { halfspaces, .. } => {
                halfspaces.iter().map(|h| h.b - dot(&h.a, x)).fold(f64::INFINITY, f64::min)
            }
        }
    }

    pub fn contains(&self, x: &[f64], tol: f64) -> bool {
        self.margin(x) >= -tol
    }

    /// max over the body of the Euclidean norm.
    pub fn circumradius(&self) -> f64 {
        match &self.shape {
            Shape::Ball { center, radius } => norm(center) + radius,
            Shape::Polytope { vertices, .. } => vertices.iter().map(|v| norm(v)).fold(0.0, f64::max),
        }
    }

    pub fn bounding_box(&self) -> (Vec<f64>, Vec<f64>) {
        let d = self.dim;
        let hi: Vec<f64> = (0..d).map(|i| self.support_unit(&unit(d, i))).collect();
        let lo: Vec<f64> = (0..d).map(|i| -self.support_unit(&scale_neg(&unit(d, i)))).collect();
        (lo, hi)
    }

    /// Largest inscribed ball (centre, radius).
    pub fn inball(&self) -> Result<(Vec<f64>, f64)> {
        match &self.shape {
            Shape::Ball { center, radius } => Ok((center.clone(), *radius)),
            Shape::Polytope { halfspaces, .. } => chebyshev(halfspaces, self.dim),
        }
    }

    /// {x : margin(x) >= t}.
    pub fn shrunk(&self, t: f64) -> Result<Self> {
        let body = match &self.shape {
            Shape::Ball { center, radius } => {
                if *radius - t <= 0.0 {
                    return Err(Error::EmptyInterior);
                }
                ConvexBody::ball(center.clone(), radius - t)?
            }
            Shape::Polytope { halfspaces, .. } => {
                let hs = halfspaces.iter().map(|h| Halfspace { a: h.a.clone(), b: h.b - t }).collect();
                ConvexBody::from_halfspaces(hs).map_err(|_| Error::EmptyInterior)?
            }
        };
        Ok(ConvexBody { symmetric: self.symmetric, ..body })
    }

    /// Image under x -> alpha x.
    pub fn scaled(&self, alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::InvalidInput("scale must be positive".into()));
        }
        let shape = match &self.shape {
            Shape::Ball { center, radius } => Shape::Ball { center: center.iter().map(|x| x * alpha).collect(), radius: radius * alpha },
            Shape::Polytope { halfspaces, vertices } => Shape::Polytope {
                halfspaces: halfspaces.iter().map(|h| Halfspace { a: h.a.clone(), b: h.b * alpha }).collect(),
                vertices: vertices.iter().map(|v| v.iter().map(|x| x * alpha).collect()).collect(),
            },
        };
        Ok(ConvexBody { dim: self.dim, shape, symmetric: self.symmetric })
    }

    /// {A^T w : w in body} for orthonormal columns `cols` (each of length d).
    pub fn project(&self, cols: &[Vec<f64>]) -> Result<Self> {
        check_orthonormal(cols, self.dim)?;
        match &self.shape {
            Shape::Ball { center, radius } => {
                ConvexBody::ball(cols.iter().map(|c| dot(c, center)).collect(), *radius)
            }
            Shape::Polytope { vertices, .. } => {
                let pts: Vec<Vec<f64>> = vertices.iter().map(|v| cols.iter().map(|c| dot(c, v)).collect()).collect();
                ConvexBody::from_vertices(pts)
            }
        }
        .and_then(|b| b.with_symmetry(self.symmetric))
    }
}

fn scale_neg(v: &[f64]) -> Vec<f64> {
    v.iter().map(|x| -x).collect()
}

fn check_points(points: &[Vec<f64>]) -> Result<usize> {
    let d = points.first().map(Vec::len).ok_or_else(|| Error::InvalidInput("no vertices".into()))?;
    if d == 0 {
        return Err(Error::InvalidInput("zero-dimensional vertices".into()));
    }
    for p in points {
        if p.len() != d {
            return Err(Error::DimensionMismatch { expected: d, got: p.len() });
        }
        if p.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidInput("vertex coordinates must be finite".into()));
        }
    }
    Ok(d)
}

fn check_orthonormal(rows: &[Vec<f64>], d: usize) -> Result<()> {
    for (i, r) in rows.iter().enumerate() {
        if r.len() != d {
            return Err(Error::DimensionMismatch { expected: d, got: r.len() });
        }
        for (j, s) in rows.iter().enumerate().take(i + 1) {
            let target = if i == j { 1.0 } else { 0.0 };
            if (dot(r, s) - target).abs() > 1e-12 {
                return Err(Error::InvalidInput("matrix is not orthonormal within 1e-12".into()));
            }
        }
    }
    Ok(())
}

fn chebyshev(hs: &[Halfspace], d: usize) -> Result<(Vec<f64>, f64)> {
    let mut obj = vec![0.0; d];
    obj.push(1.0);
    let rows: Vec<(Vec<f64>, f64)> = hs
        .iter()
        .map(|h| {
            let mut a = h.a.clone();
            a.push(1.0);
            (a, h.b)
        })
        .collect();
    let mut bounds = vec![lp::FREE; d];
    bounds.push(lp::FREE);
    match lp::maximize(&obj, &bounds, &rows)? {
        lp::LpOutcome::Optimal { mut x, .. } => {
            x.truncate(d);
            let r = hs.iter().map(|h| h.b - dot(&h.a, &x)).fold(f64::INFINITY, f64::min);
            Ok((x, r))
        }
        lp::LpOutcome::Infeasible => Err(Error::InvalidInput("halfspaces have empty intersection".into())),
        lp::LpOutcome::Unbounded => Err(Error::UnboundedBody),
    }
}

pub fn support(body: &ConvexBody, u: &Direction) -> Result<f64> {
    if u.dim() != body.dim() {
        return Err(Error::DimensionMismatch { expected: body.dim(), got: u.dim() });
    }
    Ok(body.support(u))
}

/// Deterministic well-spread unit vectors: Fibonacci lattice for d = 3,
/// evenly spaced angles for d = 2, seeded Gaussian directions otherwise.
pub fn sphere_directions(d: usize, n: usize) -> Vec<Vec<f64>> {
    match d {
        1 => vec![vec![1.0]],
        2 => (0..n)
            .map(|k| {
                let t = std::f64::consts::PI * k as f64 / n as f64;
                vec![t.cos(), t.sin()]
            })
            .collect(),
        3 => {
            let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
            (0..n)
                .map(|k| {
                    let z = 1.0 - (2 * k + 1) as f64 / n as f64;
                    let r = (1.0 - z * z).sqrt();
                    let phi = golden * k as f64;
                    vec![r * phi.cos(), r * phi.sin(), z]
                })
                .collect()
        }
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            (0..n)
                .map(|_| loop {
                    let g: Vec<f64> = (0..d).map(|_| StandardNormal.sample(&mut rng)).collect();
                    if let Some(u) = normalized(&g) {
                        break u;
                    }
                })
                .collect()
        }
    }
}

/// Minimum breadth and a direction attaining it.
pub fn width_direction(body: &ConvexBody) -> Result<(f64, Direction)> {
    let d = body.dim();
    let (w, u) = match &body.shape {
        Shape::Ball { radius, .. } => (2.0 * radius, unit(d, 0)),
        Shape::Polytope { halfspaces, .. } if d <= 2 => halfspaces
            .iter()
            .map(|h| (body.support_unit(&h.a) + body.support_unit(&scale_neg(&h.a)), h.a.clone()))
            .min_by(|a, b| a.0.total_cmp(&b.0))
            .expect("polytope has halfspaces"),
        Shape::Polytope { halfspaces, .. } => {
            let mut cands: Vec<Vec<f64>> = halfspaces.iter().map(|h| h.a.clone()).collect();
            cands.extend(sphere_directions(d, 2048));
            width_refined(body, cands)
        }
    };
    let scale = body.circumradius().max(1e-300);
    if w <= 1e-9 * scale {
        return Err(Error::DegenerateBody("width vanishes".into()));
    }
    Ok((w, Direction::new(&u)?))
}

fn width_refined(body: &ConvexBody, cands: Vec<Vec<f64>>) -> (f64, Vec<f64>) {
    let breadth = |x: &[f64]| -> f64 {
        match normalized(x) {
            Some(u) => body.support_unit(&u) + body.support_unit(&scale_neg(&u)),
            None => f64::INFINITY,
        }
    };
    let mut scored: Vec<(f64, Vec<f64>)> = cands.into_iter().map(|u| (breadth(&u), u)).collect();
    scored.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut best = scored[0].clone();
    let mut starts: Vec<Vec<f64>> = Vec::new();
    for (_, u) in &scored {
        if starts.len() == 6 {
            break;
        }
        if starts.iter().all(|s| dot(s, u).abs() < 0.999) {
            starts.push(u.clone());
        }
    }
    for s in starts {
        let x = nelder_mead(&breadth, &s, 0.05, 1e-12);
        let w = breadth(&x);
        if w < best.0 {
            best = (w, normalized(&x).unwrap());
        }
    }
    best
}

/// Nelder-Mead minimisation from `x0` with initial step `step`.
pub(crate) fn nelder_mead(f: &dyn Fn(&[f64]) -> f64, x0: &[f64], step: f64, rel_tol: f64) -> Vec<f64> {
    let n = x0.len();
    let mut simplex: Vec<Vec<f64>> = vec![x0.to_vec()];
    for i in 0..n {
        let mut x = x0.to_vec();
        x[i] += step;
        simplex.push(x);
    }
    let mut vals: Vec<f64> = simplex.iter().map(|x| f(x)).collect();
    for _ in 0..20_000 {
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
        simplex = order.iter().map(|&i| simplex[i].clone()).collect();
        vals = order.iter().map(|&i| vals[i]).collect();
        let spread = vals[n] - vals[0];
        let size = simplex[1..].iter().map(|x| dist(x, &simplex[0])).fold(0.0, f64::max);
        if spread <= rel_tol * vals[0].abs().max(1e-300) && size < 1e-10 {
            break;
        }
        let centroid: Vec<f64> = (0..n).map(|j| simplex[..n].iter().map(|x| x[j]).sum::<f64>() / n as f64).collect();
        let along = |t: f64| -> Vec<f64> { (0..n).map(|j| centroid[j] + t * (simplex[n][j] - centroid[j])).collect() };
        let xr = along(-1.0);
        let fr = f(&xr);
        if fr < vals[0] {
            let xe = along(-2.0);
            let fe = f(&xe);
            if fe < fr {
                simplex[n] = xe;
                vals[n] = fe;
            } else {
                simplex[n] = xr;
                vals[n] = fr;
            }
        } else if fr < vals[n - 1] {
            simplex[n] = xr;
            vals[n] = fr;
        } else {
            let xc = if fr < vals[n] { along(-0.5) } else { along(0.5) };
            let fc = f(&xc);
            if fc < vals[n].min(fr) {
                simplex[n] = xc;
                vals[n] = fc;
            } else {
                for i in 1..=n {
                    simplex[i] = (0..n).map(|j| simplex[0][j] + 0.5 * (simplex[i][j] - simplex[0][j])).collect();
                    vals[i] = f(&simplex[i]);
                }
            }
        }
    }
    let best = (0..=n).min_by(|&a, &b| vals[a].total_cmp(&vals[b])).unwrap();
    simplex[best].clone()
}

/// Slice {s in R^{d-1} : U^T (s, 0) in body} for orthonormal `rows` (U).
pub fn cross_section(body: &ConvexBody, rows: &[Vec<f64>]) -> Result<ConvexBody> {
    let d = body.dim();
    if rows.len() != d || d < 2 {
        return Err(Error::InvalidInput(format!("cross-section needs a {d}x{d} orthonormal matrix")));
    }
    check_orthonormal(rows, d)?;
    let plane = &rows[..d - 1];
    let sliced = match &body.shape {
        Shape::Ball { center, radius } => {
            let proj: Vec<f64> = plane.iter().map(|r| dot(r, center)).collect();
            let off2 = dot(center, center) - dot(&proj, &proj);
            let r2 = radius * radius - off2.max(0.0);
            if r2 <= (1e-12 * radius).powi(2) {
                return Err(Error::EmptySlice);
            }
            ConvexBody::ball(proj, r2.sqrt())?
        }
        Shape::Polytope { halfspaces, .. } => {
            let mut hs = Vec::new();
            for h in halfspaces {
                let a: Vec<f64> = plane.iter().map(|r| dot(r, &h.a)).collect();
                if norm(&a) <= 1e-12 {
                    if h.b < 0.0 {
                        return Err(Error::EmptySlice);
                    }
                    continue;
                }
                hs.push(Halfspace { a, b: h.b });
            }
            ConvexBody::from_halfspaces(hs).map_err(|e| match e {
                Error::UnboundedBody => Error::UnboundedBody,
                _ => Error::EmptySlice,
            })?
        }
    };
    Ok(ConvexBody { symmetric: body.symmetric, ..sliced })
}

/// Orthonormal rows whose last row is `u`.
pub fn frame_with_last(u: &Direction) -> Vec<Vec<f64>> {
    let m: DMatrix<f64> = crate::linalg::rotation_to_last_axis(u.as_slice());
    (0..m.nrows()).map(|i| m.row(i).iter().copied().collect()).collect()
}

#[derive(Serialize, Deserialize)]
struct BallSpec {
    center: Vec<f64>,
    radius: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BodySpec {
    dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    ball: Option<BallSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    vertices: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    halfspaces: Option<Vec<Halfspace>>,
    #[serde(default)]
    symmetric: bool,
}

impl TryFrom<BodySpec> for ConvexBody {
    type Error = Error;

    fn try_from(spec: BodySpec) -> Result<Self> {
        let body = match (spec.ball, spec.vertices, spec.halfspaces) {
            (Some(b), None, None) => ConvexBody::ball(b.center, b.radius)?,
            (None, Some(v), None) => ConvexBody::from_vertices(v)?,
            (None, None, Some(h)) => ConvexBody::from_halfspaces(h)?,
            (None, Some(v), Some(h)) => {
                let from_h = ConvexBody::from_halfspaces(h)?;
                let from_v = ConvexBody::from_vertices(v)?;
                let scale = 1.0 + from_h.circumradius();
                for u in sphere_directions(from_h.dim(), 64).iter().chain(from_h.halfspaces().unwrap().iter().map(|h| &h.a)) {
                    if (from_h.support_unit(u) - from_v.support_unit(u)).abs() > 1e-9 * scale {
                        return Err(Error::InvalidInput("vertex and halfspace forms describe different bodies".into()));
                    }
                }
                from_h
            }
            _ => return Err(Error::InvalidInput("give exactly one of ball, vertices or halfspaces".into())),
        };
        if body.dim() != spec.dim {
            return Err(Error::DimensionMismatch { expected: spec.dim, got: body.dim() });
        }
        body.with_symmetry(spec.symmetric)
    }
}

impl From<ConvexBody> for BodySpec {
    fn from(body: ConvexBody) -> Self {
        let dim = body.dim;
        let symmetric = body.symmetric;
        match body.shape {
            Shape::Ball { center, radius } => BodySpec {
                dim,
                ball: Some(BallSpec { center, radius }),
                vertices: None,
                halfspaces: None,
                symmetric,
            },
            Shape::Polytope { halfspaces, vertices } => BodySpec {
                dim,
                ball: None,
                vertices: Some(vertices),
                halfspaces: Some(halfspaces),
                symmetric,
            },
        }
    }
}

#[cfg(test)]
mod tests;
