//! Built-in trajectory and manifold set families, their reciprocal data and
//! densities.
//!
//! Every set is infinite; concrete point sets are produced by
//! [`sample_points`] inside a window ball.

mod measure;
mod sampling;

use std::f64::consts::PI;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{dot, norm, normalized, scale};

pub use measure::{arc_length_in_ball, spiral_arc_length, unit_ball_volume};
pub use sampling::{covering_radius, sample_points, samples_csv, CoverEstimate, PointIndex, SamplePoint};

/// Ball B(center, radius) restricting generation and probing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Window {
    pub center: Vec<f64>,
    pub radius: f64,
}

impl Window {
    pub fn new(center: Vec<f64>, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) || center.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidInput("window needs a finite centre and positive radius".into()));
        }
        Ok(Window { center, radius })
    }

    pub fn dim(&self) -> usize {
        self.center.len()
    }
}

/// Parallel lines w + j delta v_perp + t v in the plane.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "LinesSpec", into = "LinesSpec")]
pub struct UniformLines2D {
    w: [f64; 2],
    v: [f64; 2],
    delta: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LinesSpec {
    #[serde(default)]
    w: [f64; 2],
    v: [f64; 2],
    delta: f64,
}

impl TryFrom<LinesSpec> for UniformLines2D {
    type Error = Error;
    fn try_from(s: LinesSpec) -> Result<Self> {
        UniformLines2D::new(s.w, s.v, s.delta)
    }
}

impl From<UniformLines2D> for LinesSpec {
    fn from(l: UniformLines2D) -> Self {
        LinesSpec { w: l.w, v: l.v, delta: l.delta }
    }
}

impl UniformLines2D {
    pub fn new(w: [f64; 2], v: [f64; 2], delta: f64) -> Result<Self> {
        check_spacing(delta)?;
        if w.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidInput("offset must be finite".into()));
        }
        let v = normalized(&v)
            .filter(|_| v.iter().all(|x| x.is_finite()))
            .ok_or_else(|| Error::InvalidInput("line direction must be nonzero".into()))?;
        Ok(UniformLines2D { w, v: [v[0], v[1]], delta })
    }

    pub fn offset(&self) -> [f64; 2] {
        self.w
    }

    pub fn direction(&self) -> [f64; 2] {
        self.v
    }

    pub fn spacing(&self) -> f64 {
        self.delta
    }

    /// Unit normal v_perp = (-v_y, v_x); successive lines step along it.
    pub fn normal(&self) -> [f64; 2] {
        [-self.v[1], self.v[0]]
    }

    pub fn point(&self, j: i64, t: f64) -> [f64; 2] {
        let n = self.normal();
        let s = j as f64 * self.delta;
        [self.w[0] + s * n[0] + t * self.v[0], self.w[1] + s * n[1] + t * self.v[1]]
    }

    pub fn reciprocal(&self) -> [f64; 2] {
        let n = self.normal();
        let k = 2.0 * PI / self.delta;
        [k * n[0], k * n[1]]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "UnionSpec<UniformLines2D>", into = "UnionSpec<UniformLines2D>")]
pub struct UnionUniform2D {
    parts: Vec<UniformLines2D>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct UnionSpec<T> {
    parts: Vec<T>,
}

impl TryFrom<UnionSpec<UniformLines2D>> for UnionUniform2D {
    type Error = Error;
    fn try_from(s: UnionSpec<UniformLines2D>) -> Result<Self> {
        UnionUniform2D::new(s.parts)
    }
}

impl From<UnionUniform2D> for UnionSpec<UniformLines2D> {
    fn from(u: UnionUniform2D) -> Self {
        UnionSpec { parts: u.parts }
    }
}

impl UnionUniform2D {
    pub fn new(parts: Vec<UniformLines2D>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidInput("a union needs at least one part".into()));
        }
        Ok(UnionUniform2D { parts })
    }

    pub fn parts(&self) -> &[UniformLines2D] {
        &self.parts
    }
}

/// Parallel lines w + sum_i m_i v_i + t v_d in R^d, with v_d a unit vector
/// orthogonal to every other basis vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "LinesDSpec", into = "LinesDSpec")]
pub struct UniformLinesD {
    basis: Vec<Vec<f64>>,
    w: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LinesDSpec {
    basis: Vec<Vec<f64>>,
    #[serde(default)]
    w: Option<Vec<f64>>,
}

impl TryFrom<LinesDSpec> for UniformLinesD {
    type Error = Error;
    fn try_from(s: LinesDSpec) -> Result<Self> {
        UniformLinesD::new(s.basis, s.w)
    }
}

impl From<UniformLinesD> for LinesDSpec {
    fn from(l: UniformLinesD) -> Self {
        LinesDSpec { basis: l.basis, w: Some(l.w) }
    }
}

impl UniformLinesD {
    pub fn new(basis: Vec<Vec<f64>>, w: Option<Vec<f64>>) -> Result<Self> {
        let d = basis.len();
        if d < 2 {
            return Err(Error::InvalidInput("need at least two basis vectors".into()));
        }
        for b in &basis {
            if b.len() != d {
                return Err(Error::DimensionMismatch { expected: d, got: b.len() });
            }
            if b.iter().any(|x| !x.is_finite()) {
                return Err(Error::InvalidInput("basis entries must be finite".into()));
            }
        }
        let w = w.unwrap_or_else(|| vec![0.0; d]);
        if w.len() != d {
            return Err(Error::DimensionMismatch { expected: d, got: w.len() });
        }
        let vd = &basis[d - 1];
        if (norm(vd) - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidInput("line direction (last basis vector) must be a unit vector".into()));
        }
        if basis[..d - 1].iter().any(|v| dot(v, vd).abs() > 1e-12) {
            return Err(Error::InvalidInput("transverse basis vectors must be orthogonal to the line direction".into()));
        }
        let set = UniformLinesD { basis, w };
        let scale = set.basis[..d - 1].iter().map(|v| dot(v, v)).product::<f64>();
        if set.gram_det() <= 1e-12 * scale {
            return Err(Error::SingularBasis);
        }
        Ok(set)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<f64>] {
        &self.basis
    }

    pub fn offset(&self) -> &[f64] {
        &self.w
    }

    pub fn direction(&self) -> &[f64] {
        &self.basis[self.dim() - 1]
    }

    /// Determinant of the Gram matrix of the transverse vectors.
    pub fn gram_det(&self) -> f64 {
        let k = self.dim() - 1;
        DMatrix::from_fn(k, k, |i, j| dot(&self.basis[i], &self.basis[j])).determinant()
    }

    /// u_1..u_{d-1} with <u_i, v_j> = 2 pi delta_ij.
    pub fn reciprocal(&self) -> Vec<Vec<f64>> {
        let d = self.dim();
        let v = DMatrix::from_fn(d, d, |i, j| self.basis[j][i]);
        let inv_t = v.try_inverse().expect("basis validated on construction").transpose();
        (0..d - 1).map(|i| inv_t.column(i).iter().map(|x| 2.0 * PI * x).collect()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CircleSpec", into = "CircleSpec")]
pub struct CircleSet {
    delta: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CircleSpec {
    delta: f64,
}

impl TryFrom<CircleSpec> for CircleSet {
    type Error = Error;
    fn try_from(s: CircleSpec) -> Result<Self> {
        CircleSet::new(s.delta)
    }
}

impl From<CircleSet> for CircleSpec {
    fn from(c: CircleSet) -> Self {
        CircleSpec { delta: c.delta }
    }
}

impl CircleSet {
    pub fn new(delta: f64) -> Result<Self> {
        check_spacing(delta)?;
        Ok(CircleSet { delta })
    }

    pub fn spacing(&self) -> f64 {
        self.delta
    }
}

/// N interleaved spirals (c t cos 2 pi (t - i/N), c t sin 2 pi (t - i/N)), t >= 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SpiralSpec", into = "SpiralSpec")]
pub struct SpiralSet {
    c: f64,
    n: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpiralSpec {
    c: f64,
    n: usize,
}

impl TryFrom<SpiralSpec> for SpiralSet {
    type Error = Error;
    fn try_from(s: SpiralSpec) -> Result<Self> {
        SpiralSet::new(s.c, s.n)
    }
}

impl From<SpiralSet> for SpiralSpec {
    fn from(s: SpiralSet) -> Self {
        SpiralSpec { c: s.c, n: s.n }
    }
}

impl SpiralSet {
    pub fn new(c: f64, n: usize) -> Result<Self> {
        check_spacing(c)?;
        if n == 0 {
            return Err(Error::InvalidInput("need at least one spiral".into()));
        }
        Ok(SpiralSet { c, n })
    }

    pub fn pitch(&self) -> f64 {
        self.c
    }

    pub fn count(&self) -> usize {
        self.n
    }

    /// Radial gap between neighbouring arms.
    pub fn arm_gap(&self) -> f64 {
        self.c / self.n as f64
    }

    pub fn point(&self, arm: usize, t: f64) -> [f64; 2] {
        let phase = 2.0 * PI * (t - arm as f64 / self.n as f64);
        [self.c * t * phase.cos(), self.c * t * phase.sin()]
    }
}

/// Parallel hyperplanes {r : <h, r - w> = j delta}.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PlanesSpec", into = "PlanesSpec")]
pub struct HyperplaneSet {
    w: Vec<f64>,
    h: Vec<f64>,
    delta: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PlanesSpec {
    #[serde(default)]
    w: Option<Vec<f64>>,
    h: Vec<f64>,
    delta: f64,
}

impl TryFrom<PlanesSpec> for HyperplaneSet {
    type Error = Error;
    fn try_from(s: PlanesSpec) -> Result<Self> {
        let w = s.w.unwrap_or_else(|| vec![0.0; s.h.len()]);
        HyperplaneSet::new(w, s.h, s.delta)
    }
}

impl From<HyperplaneSet> for PlanesSpec {
    fn from(p: HyperplaneSet) -> Self {
        PlanesSpec { w: Some(p.w), h: p.h, delta: p.delta }
    }
}

impl HyperplaneSet {
    pub fn new(w: Vec<f64>, h: Vec<f64>, delta: f64) -> Result<Self> {
        check_spacing(delta)?;
        if h.len() < 2 {
            return Err(Error::InvalidInput("hyperplanes need dimension >= 2".into()));
        }
        if w.len() != h.len() {
            return Err(Error::DimensionMismatch { expected: h.len(), got: w.len() });
        }
        if w.iter().chain(&h).any(|x| !x.is_finite()) {
            return Err(Error::InvalidInput("hyperplane data must be finite".into()));
        }
        let h = normalized(&h).ok_or_else(|| Error::InvalidInput("normal must be nonzero".into()))?;
        Ok(HyperplaneSet { w, h, delta })
    }

    pub fn dim(&self) -> usize {
        self.h.len()
    }

    pub fn offset(&self) -> &[f64] {
        &self.w
    }

    pub fn normal(&self) -> &[f64] {
        &self.h
    }

    pub fn spacing(&self) -> f64 {
        self.delta
    }

    pub fn reciprocal(&self) -> Vec<f64> {
        scale(&self.h, 2.0 * PI / self.delta)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "UnionSpec<HyperplaneSet>", into = "UnionSpec<HyperplaneSet>")]
pub struct UnionHyperplanes {
    parts: Vec<HyperplaneSet>,
}

impl TryFrom<UnionSpec<HyperplaneSet>> for UnionHyperplanes {
    type Error = Error;
    fn try_from(s: UnionSpec<HyperplaneSet>) -> Result<Self> {
        UnionHyperplanes::new(s.parts)
    }
}

impl From<UnionHyperplanes> for UnionSpec<HyperplaneSet> {
    fn from(u: UnionHyperplanes) -> Self {
        UnionSpec { parts: u.parts }
    }
}

impl UnionHyperplanes {
    pub fn new(parts: Vec<HyperplaneSet>) -> Result<Self> {
        let d = parts.first().ok_or_else(|| Error::InvalidInput("a union needs at least one part".into()))?.dim();
        if let Some(p) = parts.iter().find(|p| p.dim() != d) {
            return Err(Error::DimensionMismatch { expected: d, got: p.dim() });
        }
        Ok(UnionHyperplanes { parts })
    }

    pub fn parts(&self) -> &[HyperplaneSet] {
        &self.parts
    }

    pub fn dim(&self) -> usize {
        self.parts[0].dim()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TrajectorySet {
    #[serde(rename = "uniform_lines_2d")]
    UniformLines2d(UniformLines2D),
    #[serde(rename = "union_uniform_2d")]
    UnionUniform2d(UnionUniform2D),
    UniformLinesD(UniformLinesD),
    Circles(CircleSet),
    Spirals(SpiralSet),
    Hyperplanes(HyperplaneSet),
    UnionHyperplanes(UnionHyperplanes),
}

/// One family of parallel affine carriers seen through its normal: lines in
/// the plane or hyperplanes in R^d.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineFamily {
    pub offset: Vec<f64>,
    pub normal: Vec<f64>,
    pub spacing: f64,
}

impl AffineFamily {
    pub fn reciprocal(&self) -> Vec<f64> {
        scale(&self.normal, 2.0 * PI / self.spacing)
    }
}

impl TrajectorySet {
    pub fn dim(&self) -> usize {
        match self {
            TrajectorySet::UniformLines2d(_) | TrajectorySet::UnionUniform2d(_) => 2,
            TrajectorySet::Circles(_) | TrajectorySet::Spirals(_) => 2,
            TrajectorySet::UniformLinesD(s) => s.dim(),
            TrajectorySet::Hyperplanes(s) => s.dim(),
            TrajectorySet::UnionHyperplanes(s) => s.dim(),
        }
    }

    /// Affine families for the union-type sets, `None` for the others.
    pub fn families(&self) -> Option<Vec<AffineFamily>> {
        let line = |l: &UniformLines2D| AffineFamily {
            offset: l.w.to_vec(),
            normal: l.normal().to_vec(),
            spacing: l.delta,
        };
        let plane = |p: &HyperplaneSet| AffineFamily { offset: p.w.clone(), normal: p.h.clone(), spacing: p.delta };
        match self {
            TrajectorySet::UniformLines2d(l) => Some(vec![line(l)]),
            TrajectorySet::UnionUniform2d(u) => Some(u.parts.iter().map(line).collect()),
            TrajectorySet::Hyperplanes(p) => Some(vec![plane(p)]),
            TrajectorySet::UnionHyperplanes(u) => Some(u.parts.iter().map(plane).collect()),
            _ => None,
        }
    }

    /// Number of parts (families or arms) used to tag samples.
    pub fn part_count(&self) -> usize {
        match self {
            TrajectorySet::UnionUniform2d(u) => u.parts.len(),
            TrajectorySet::UnionHyperplanes(u) => u.parts.len(),
            TrajectorySet::Spirals(s) => s.n,
            _ => 1,
        }
    }

    /// Smallest distance between distinct carriers of one family.
    pub fn min_spacing(&self) -> f64 {
        match self {
            TrajectorySet::UniformLinesD(s) => {
                let d = s.dim();
                let (_, v) = crate::lattice::shortest_vector(&s.basis[..d - 1]);
                norm(&v)
            }
            TrajectorySet::Circles(c) => c.delta,
            TrajectorySet::Spirals(s) => s.arm_gap(),
            _ => self
                .families()
                .expect("remaining kinds are affine")
                .iter()
                .map(|f| f.spacing)
                .fold(f64::INFINITY, f64::min),
        }
    }
}

fn check_spacing(delta: f64) -> Result<()> {
    if delta > 0.0 && delta.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("spacing must be positive and finite, got {delta}")))
    }
}

/// Reciprocal vectors and the 2^N half-sum set of a line or hyperplane union.
#[derive(Debug, Clone, PartialEq)]
pub struct Reciprocal {
    pub u: Vec<Vec<f64>>,
    pub q: Vec<Vec<f64>>,
}

/// All sign combinations sum_i (+-1/2) u_i; bit i of the index selects the minus sign.
pub fn half_sums(u: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let d = u.first().map_or(0, Vec::len);
    (0..1usize << u.len())
        .map(|mask| {
            let mut q = vec![0.0; d];
            for (i, ui) in u.iter().enumerate() {
                let s = if mask >> i & 1 == 1 { -0.5 } else { 0.5 };
                for (x, y) in q.iter_mut().zip(ui) {
                    *x += s * y;
                }
            }
            q
        })
        .collect()
}

pub fn reciprocal_and_qset(set: &TrajectorySet) -> Result<Reciprocal> {
    let families = set
        .families()
        .ok_or_else(|| Error::Unsupported("reciprocal set is defined for line and hyperplane unions".into()))?;
    let u: Vec<Vec<f64>> = families.iter().map(AffineFamily::reciprocal).collect();
    let q = half_sums(&u);
    Ok(Reciprocal { u, q })
}

pub fn density(set: &TrajectorySet) -> Result<f64> {
    Ok(match set {
        TrajectorySet::UniformLines2d(l) => 1.0 / l.delta,
        TrajectorySet::UnionUniform2d(u) => u.parts.iter().map(|p| 1.0 / p.delta).sum(),
        TrajectorySet::UniformLinesD(s) => {
            let g = s.gram_det();
            if g <= 0.0 {
                return Err(Error::SingularBasis);
            }
            1.0 / g.sqrt()
        }
        TrajectorySet::Circles(c) => 1.0 / c.delta,
        TrajectorySet::Spirals(s) => s.n as f64 / s.c,
        TrajectorySet::Hyperplanes(p) => 1.0 / p.delta,
        TrajectorySet::UnionHyperplanes(u) => u.parts.iter().map(|p| 1.0 / p.delta).sum(),
    })
}
