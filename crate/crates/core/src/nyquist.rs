//! Verdict engines: does a trajectory or manifold set determine every field
//! whose spectrum lies in a given convex body?
//!
//! Unions of line or hyperplane families reduce to a translate-fit of the
//! half-sum set of their reciprocal vectors. Periodic line sets in R^d reduce
//! to lattice half-sums inside a symmetric body. Circles and spirals only get
//! the sufficient covering condition.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{boundary_tol, fits_in_translate, ConvexBody, Fit};
use crate::linalg::{norm, scale};
use crate::trajectory::{
    covering_radius, half_sums, sample_points, AffineFamily, CircleSet, SpiralSet, TrajectorySet, UnionHyperplanes,
    UnionUniform2D, UniformLinesD, Window,
};

/// Candidate budget for the lattice half-sum enumeration.
pub const MAX_CANDIDATES: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Nyquist,
    NotNyquist,
    /// The half-sum set only touches the boundary of a translate.
    Critical,
    /// Holds by a sufficient condition; nothing is claimed beyond it.
    SufficientOnly,
    Unknown,
}

impl Status {
    /// Nyquist either exactly or by a sufficient condition.
    pub fn is_reconstructible(self) -> bool {
        matches!(self, Status::Nyquist | Status::SufficientOnly)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Witness {
    /// Shift s such that every q - s lies in the body.
    Shift { s: Vec<f64> },
    /// Lattice index whose half-sum lies in the body.
    LatticeIndex { m: Vec<i64> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NyquistVerdict {
    pub status: Status,
    pub witness: Option<Witness>,
    pub basis: String,
    /// Signed slack of the deciding test; positive means aliasing room.
    pub margin: Option<f64>,
    /// Whether the bounded-detour path condition is known to hold.
    pub path_condition: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<String>,
}

impl NyquistVerdict {
    fn new(status: Status, basis: &str) -> Self {
        NyquistVerdict {
            status,
            witness: None,
            basis: basis.to_string(),
            margin: None,
            path_condition: true,
            diagnostic: None,
        }
    }
}

const BASIS_UNION: &str = "line families (N <= 2): translate fit of the half-sum set";
const BASIS_UNION_NECESSARY: &str = "line families (N >= 3): necessary condition only";
const BASIS_PLANES: &str = "hyperplane families with independent normals: translate fit of the half-sum set";
const BASIS_PLANES_NECESSARY: &str = "hyperplane families with dependent normals: necessary condition only";
const BASIS_LATTICE: &str = "periodic lines in R^d: lattice half-sums in the symmetric body";
const BASIS_CIRCLES: &str = "concentric circles: covering-radius sufficient condition";
const BASIS_SPIRALS: &str = "interleaved spirals: covering-radius sufficient condition";

fn q_fit(families: &[AffineFamily], omega: &ConvexBody, exact: bool, basis: &str) -> Result<NyquistVerdict> {
    let u: Vec<Vec<f64>> = families.iter().map(AffineFamily::reciprocal).collect();
    let q = half_sums(&u);
    let report = fits_in_translate(&q, omega)?;
    let status = match (report.fit, exact) {
        (Fit::Fits, _) => Status::NotNyquist,
        (Fit::NoFit, true) => Status::Nyquist,
        (Fit::Boundary, true) => Status::Critical,
        (_, false) => Status::Unknown,
    };
    let mut v = NyquistVerdict::new(status, basis);
    v.margin = Some(report.margin);
    if matches!(status, Status::NotNyquist | Status::Critical) {
        v.witness = Some(Witness::Shift { s: report.shift });
    }
    Ok(v)
}

pub fn check_union_uniform_2d(set: &UnionUniform2D, omega: &ConvexBody) -> Result<NyquistVerdict> {
    if omega.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, got: omega.dim() });
    }
    let parts = set.parts();
    if parts.len() == 2 {
        let (a, b) = (parts[0].direction(), parts[1].direction());
        if (a[0] * b[1] - a[1] * b[0]).abs() <= 1e-12 {
            return Err(Error::CollinearParts);
        }
    }
    let families = TrajectorySet::UnionUniform2d(set.clone()).families().expect("line union");
    if parts.len() <= 2 {
        q_fit(&families, omega, true, BASIS_UNION)
    } else {
        q_fit(&families, omega, false, BASIS_UNION_NECESSARY)
    }
}

pub fn check_hyperplane_union(set: &UnionHyperplanes, omega: &ConvexBody) -> Result<NyquistVerdict> {
    let d = set.dim();
    if omega.dim() != d {
        return Err(Error::DimensionMismatch { expected: d, got: omega.dim() });
    }
    let parts = set.parts();
    let normals = DMatrix::from_fn(parts.len(), d, |i, j| parts[i].normal()[j]);
    let independent = parts.len() <= d && normals.singular_values().iter().all(|&s| s > 1e-9);
    let families = TrajectorySet::UnionHyperplanes(set.clone()).families().expect("plane union");
    if independent {
        q_fit(&families, omega, true, BASIS_PLANES)
    } else {
        q_fit(&families, omega, false, BASIS_PLANES_NECESSARY)
    }
}

/// Lattice indices m != 0, one per +-pair, whose half-sum norm can reach `radius`.
pub(crate) fn half_sum_candidates(u: &[Vec<f64>], radius: f64) -> Result<Vec<Vec<i64>>> {
    let k = u.len();
    let umat = DMatrix::from_fn(u[0].len(), k, |i, j| u[j][i]);
    let pinv = (umat.transpose() * &umat)
        .try_inverse()
        .ok_or(Error::SingularBasis)?
        * umat.transpose();
    let bounds: Vec<i64> = (0..k)
        .map(|i| (2.0 * radius * pinv.row(i).norm() * (1.0 + 1e-12)).floor() as i64)
        .collect();
    let count: f64 = bounds.iter().map(|b| (2 * b + 1) as f64).product();
    if count > MAX_CANDIDATES as f64 {
        return Err(Error::EnumerationOverflow(count.min(u64::MAX as f64) as u64));
    }
    let mut out = Vec::new();
    let mut m: Vec<i64> = bounds.iter().map(|b| -b).collect();
    loop {
        let canonical = m.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0);
        if canonical {
            let p = half_sum(u, &m);
            if norm(&p) <= radius * (1.0 + 1e-12) {
                out.push(m.clone());
            }
        }
        let mut i = k;
        loop {
            if i == 0 {
                out.sort_by(|a, b| {
                    let l1 = |v: &Vec<i64>| v.iter().map(|x| x.abs()).sum::<i64>();
                    l1(a).cmp(&l1(b)).then_with(|| a.cmp(b))
                });
                return Ok(out);
            }
            i -= 1;
            if m[i] < bounds[i] {
                m[i] += 1;
                break;
            }
            m[i] = -bounds[i];
        }
    }
}

pub(crate) fn half_sum(u: &[Vec<f64>], m: &[i64]) -> Vec<f64> {
    let mut p = vec![0.0; u[0].len()];
    for (c, ui) in m.iter().zip(u) {
        for (x, y) in p.iter_mut().zip(ui) {
            *x += 0.5 * *c as f64 * y;
        }
    }
    p
}

pub fn check_uniform_d(set: &UniformLinesD, omega: &ConvexBody) -> Result<NyquistVerdict> {
    let d = set.dim();
    if omega.dim() != d {
        return Err(Error::DimensionMismatch { expected: d, got: omega.dim() });
    }
    if !omega.is_symmetric() {
        return Err(Error::SymmetryRequired);
    }
    let u = set.reciprocal();
    let tol = boundary_tol();
    let mut inside: Option<(Vec<i64>, f64)> = None;
    let mut touching: Option<(Vec<i64>, f64)> = None;
    let mut closest = f64::NEG_INFINITY;
    for m in half_sum_candidates(&u, omega.circumradius())? {
        let margin = omega.margin(&half_sum(&u, &m));
        closest = closest.max(margin);
        if margin > tol {
            inside = Some((m, margin));
            break;
        }
        if margin >= -tol && touching.is_none() {
            touching = Some((m, margin));
        }
    }
    let (status, hit) = match (inside, touching) {
        (Some(hit), _) => (Status::NotNyquist, Some(hit)),
        (None, Some(hit)) => (Status::Critical, Some(hit)),
        (None, None) => (Status::Nyquist, None),
    };
    let mut v = NyquistVerdict::new(status, BASIS_LATTICE);
    match hit {
        Some((m, margin)) => {
            v.margin = Some(margin);
            v.witness = Some(Witness::LatticeIndex { m });
        }
        None => v.margin = Some(if closest.is_finite() { closest } else { -omega.circumradius() }),
    }
    Ok(v)
}

fn centred_ball_radius(omega: &ConvexBody) -> Result<f64> {
    match omega.as_ball() {
        Some((c, r)) if omega.dim() == 2 && norm(c) <= 1e-12 * r => Ok(r),
        _ => Err(Error::NonIsotropicOmega),
    }
}

/// Covering check for circles and spirals with spectrum in a centred disc.
pub fn check_nonaffine(set: &TrajectorySet, omega: &ConvexBody) -> Result<NyquistVerdict> {
    let rho = centred_ball_radius(omega)?;
    let (gap, basis) = match set {
        TrajectorySet::Circles(c) => (c.spacing(), BASIS_CIRCLES),
        TrajectorySet::Spirals(s) => (s.arm_gap(), BASIS_SPIRALS),
        _ => return Err(Error::Unsupported("covering check applies to circles and spirals".into())),
    };
    let bound = PI / rho;
    if gap >= bound {
        let mut v = NyquistVerdict::new(Status::Unknown, basis);
        v.margin = Some(bound - gap);
        v.diagnostic = Some(format!("spacing {gap} is not below pi/rho = {bound}; the covering condition gives no verdict"));
        return Ok(v);
    }
    let cover = empirical_cover(set, rho)?;
    let target = PI / (2.0 * rho);
    let bound_with_error = cover.radius + cover.pitch * 2f64.sqrt() / 2.0;
    let mut v = NyquistVerdict::new(Status::SufficientOnly, basis);
    v.margin = Some(target - bound_with_error);
    if bound_with_error >= target {
        v.status = Status::Unknown;
        v.diagnostic = Some(format!(
            "probed covering radius {:.6} (+{:.2e}) does not beat pi/(2 rho) = {target:.6}",
            cover.radius, cover.pitch
        ));
    }
    Ok(v)
}

/// Covering radius of on-trajectory samples at the arc pitch that keeps the
/// sampled set inside the covering bound, probed around the origin.
pub fn empirical_cover(set: &TrajectorySet, rho: f64) -> Result<crate::trajectory::CoverEstimate> {
    let gap = match set {
        TrajectorySet::Circles(CircleSet { .. }) | TrajectorySet::Spirals(SpiralSet { .. }) => set.min_spacing(),
        _ => return Err(Error::Unsupported("covering check applies to circles and spirals".into())),
    };
    let eps = beurling_pitch(gap, rho);
    if eps <= 0.0 {
        return Err(Error::InvalidInput("spacing leaves no room for an arc pitch".into()));
    }
    let window = Window::new(vec![0.0, 0.0], 4.0 * gap)?;
    let pts: Vec<Vec<f64>> = sample_points(set, &window, eps)?.into_iter().map(|p| p.point).collect();
    covering_radius(&pts, &window, eps / 4.0, gap)
}

/// Arc pitch (pi/(2 rho) - gap/2) / 2 for carriers `gap` apart.
pub fn beurling_pitch(gap: f64, rho: f64) -> f64 {
    (PI / (2.0 * rho) - gap / 2.0) / 2.0
}

/// Dispatches to the engine matching the set kind.
pub fn check(set: &TrajectorySet, omega: &ConvexBody) -> Result<NyquistVerdict> {
    match set {
        TrajectorySet::UniformLines2d(l) => check_union_uniform_2d(&UnionUniform2D::new(vec![l.clone()])?, omega),
        TrajectorySet::UnionUniform2d(u) => check_union_uniform_2d(u, omega),
        TrajectorySet::UniformLinesD(s) => check_uniform_d(s, omega),
        TrajectorySet::Hyperplanes(p) => check_hyperplane_union(&UnionHyperplanes::new(vec![p.clone()])?, omega),
        TrajectorySet::UnionHyperplanes(u) => check_hyperplane_union(u, omega),
        TrajectorySet::Circles(_) | TrajectorySet::Spirals(_) => check_nonaffine(set, omega),
    }
}

/// Bracket of the first spacing at which the verdict stops being Nyquist.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Threshold {
    /// Largest probed spacing still Nyquist.
    pub below: f64,
    /// Smallest probed spacing no longer Nyquist.
    pub above: f64,
}

impl Threshold {
    pub fn estimate(&self) -> f64 {
        0.5 * (self.below + self.above)
    }
}

/// Bisection on a spacing-parameterised family, assuming `lo` is Nyquist and
/// `hi` is not.
pub fn locate_threshold(
    status_at: impl Fn(f64) -> Result<Status>,
    mut lo: f64,
    mut hi: f64,
    rel_tol: f64,
) -> Result<Threshold> {
    if status_at(lo)? != Status::Nyquist || status_at(hi)? == Status::Nyquist {
        return Err(Error::InvalidInput("bracket does not straddle the threshold".into()));
    }
    while hi - lo > rel_tol * lo {
        let mid = 0.5 * (lo + hi);
        if status_at(mid)? == Status::Nyquist {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Threshold { below: lo, above: hi })
}

/// Half-sum of reciprocal vectors scaled for a spacing `delta`.
pub fn scaled_reciprocal(normal: &[f64], delta: f64) -> Vec<f64> {
    scale(normal, 2.0 * PI / delta)
}
