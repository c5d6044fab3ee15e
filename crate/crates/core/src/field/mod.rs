//! Exactly bandlimited test fields: finite sums of complex exponentials whose
//! frequencies lie in a convex body, their samples on trajectory sets, and
//! reconstruction from those samples.

mod alias;
mod circle;
mod reconstruct;

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{width_direction, ConvexBody};
use crate::linalg::{dist, dot, normalized, orthonormal_complement};
use crate::nyquist::Witness;
use crate::trajectory::{sample_points, TrajectorySet, Window};

pub use alias::{
    alias_atoms, contains_unit_cell, is_lattice_convex, least_squares_decode, unfold_decode, AliasSystem,
    LeastSquares,
};
pub use circle::{bessel_j, bessel_j_upto, circle_series, circle_series_with_order, CircleSeries};
pub use reconstruct::{reconstruct_and_error, ReconstructionReport};

/// Frequencies closer than this are treated as the same atom.
pub const MIN_ATOM_SEPARATION: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct Atom {
    pub omega: Vec<f64>,
    pub coeff: Complex64,
}

/// f(r) = sum_k c_k exp(i <omega_k, r>).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "FieldSpec", into = "FieldSpec")]
pub struct AtomField {
    dim: usize,
    atoms: Vec<Atom>,
    /// Body the atoms were drawn from, when known. Not serialised.
    pub omega_ref: Option<ConvexBody>,
}

#[derive(Serialize, Deserialize)]
struct AtomSpec {
    omega: Vec<f64>,
    re: f64,
    im: f64,
}

#[derive(Serialize, Deserialize)]
struct FieldSpec {
    dim: usize,
    atoms: Vec<AtomSpec>,
}

impl TryFrom<FieldSpec> for AtomField {
    type Error = Error;

    fn try_from(spec: FieldSpec) -> Result<Self> {
        let atoms = spec
            .atoms
            .into_iter()
            .map(|a| Atom { omega: a.omega, coeff: Complex64::new(a.re, a.im) })
            .collect();
        AtomField::new(spec.dim, atoms)
    }
}

impl From<AtomField> for FieldSpec {
    fn from(f: AtomField) -> Self {
        FieldSpec {
            dim: f.dim,
            atoms: f
                .atoms
                .into_iter()
                .map(|a| AtomSpec { omega: a.omega, re: a.coeff.re, im: a.coeff.im })
                .collect(),
        }
    }
}

impl AtomField {
    pub fn new(dim: usize, atoms: Vec<Atom>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("field dimension must be positive".into()));
        }
        for (k, a) in atoms.iter().enumerate() {
            if a.omega.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: a.omega.len() });
            }
            if a.omega.iter().any(|x| !x.is_finite()) || !a.coeff.is_finite() {
                return Err(Error::InvalidInput(format!("atom {k} is not finite")));
            }
            if atoms[..k].iter().any(|b| dist(&a.omega, &b.omega) <= MIN_ATOM_SEPARATION) {
                return Err(Error::InvalidInput(format!("atom {k} repeats an earlier frequency")));
            }
        }
        Ok(AtomField { dim, atoms, omega_ref: None })
    }

    pub fn zero(dim: usize) -> Self {
        AtomField { dim, atoms: Vec::new(), omega_ref: None }
    }

    pub fn with_omega(mut self, omega: ConvexBody) -> Result<Self> {
        if omega.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: omega.dim() });
        }
        self.omega_ref = Some(omega);
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    /// Sum of |c_k|, an upper bound for |f|.
    pub fn l1(&self) -> f64 {
        self.atoms.iter().map(|a| a.coeff.norm()).sum()
    }

    pub fn value(&self, r: &[f64]) -> Complex64 {
        self.atoms
            .iter()
            .map(|a| a.coeff * Complex64::from_polar(1.0, dot(&a.omega, r)))
            .sum()
    }
}

pub fn evaluate(field: &AtomField, r: &[f64]) -> Result<Complex64> {
    if r.len() != field.dim {
        return Err(Error::DimensionMismatch { expected: field.dim, got: r.len() });
    }
    Ok(field.value(r))
}

/// Random atoms inside the body shrunk by `margin` times its width, with
/// complex Gaussian coefficients (E|c|^2 = 1).
pub fn make_field(omega: &ConvexBody, n_atoms: usize, margin: f64, seed: u64) -> Result<AtomField> {
    if !(margin > 0.0 && margin < 0.5) {
        return Err(Error::InvalidInput(format!("margin must lie in (0, 0.5), got {margin}")));
    }
    let d = omega.dim();
    let (width, _) = width_direction(omega)?;
    let inner = omega.shrunk(margin * width)?;
    let (lo, hi) = inner.bounding_box();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gauss = Normal::new(0.0, 0.5f64.sqrt()).expect("valid deviation");
    let mut atoms: Vec<Atom> = Vec::with_capacity(n_atoms);
    let mut attempts = 0usize;
    while atoms.len() < n_atoms {
        attempts += 1;
        if attempts > 1_000_000 + 1000 * n_atoms {
            return Err(Error::EmptyInterior);
        }
        let w: Vec<f64> = (0..d).map(|i| rng.gen_range(lo[i]..=hi[i])).collect();
        if inner.margin(&w) < 0.0 || atoms.iter().any(|a| dist(&a.omega, &w) <= MIN_ATOM_SEPARATION) {
            continue;
        }
        let coeff = Complex64::new(gauss.sample(&mut rng), gauss.sample(&mut rng));
        atoms.push(Atom { omega: w, coeff });
    }
    AtomField::new(d, atoms)?.with_omega(omega.clone())
}

#[derive(Debug, Clone, PartialEq)]
pub enum Carrier {
    /// Line with direction v; the band is in units of the parameter along v.
    Line(Vec<f64>),
    /// Hyperplane spanned by orthonormal columns.
    Hyperplane(Vec<Vec<f64>>),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Band {
    Interval { lo: f64, hi: f64 },
    Body(ConvexBody),
}

/// Spectral support of the field restricted to a carrier.
pub fn restriction_band(omega: &ConvexBody, carrier: &Carrier) -> Result<Band> {
    match carrier {
        Carrier::Line(v) => {
            if v.len() != omega.dim() {
                return Err(Error::DimensionMismatch { expected: omega.dim(), got: v.len() });
            }
            let u = normalized(v).ok_or_else(|| Error::InvalidInput("zero line direction".into()))?;
            let s = crate::linalg::norm(v);
            let neg: Vec<f64> = u.iter().map(|x| -x).collect();
            Ok(Band::Interval { lo: -s * omega.support_unit(&neg), hi: s * omega.support_unit(&u) })
        }
        Carrier::Hyperplane(cols) => Ok(Band::Body(omega.project(cols)?)),
    }
}

/// Band of an atom field along v: extreme values of <omega_k, v>.
pub fn field_band(field: &AtomField, v: &[f64]) -> Option<(f64, f64)> {
    let proj = field.atoms.iter().map(|a| dot(&a.omega, v));
    let lo = proj.clone().fold(f64::INFINITY, f64::min);
    let hi = proj.fold(f64::NEG_INFINITY, f64::max);
    (lo <= hi).then_some((lo, hi))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FieldSample {
    pub part: usize,
    pub carrier: Vec<i64>,
    pub param: f64,
    pub point: Vec<f64>,
    pub value: Complex64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampleBatch {
    pub set: TrajectorySet,
    pub eps: f64,
    pub samples: Vec<FieldSample>,
}

impl SampleBatch {
    /// `part,param,x1..xd,re,im` rows.
    pub fn to_csv(&self) -> String {
        let d = self.set.dim();
        let mut out = String::from("part,param");
        for i in 1..=d {
            out.push_str(&format!(",x{i}"));
        }
        out.push_str(",re,im\n");
        for s in &self.samples {
            out.push_str(&format!("{},{}", s.part, s.param));
            for x in &s.point {
                out.push_str(&format!(",{x}"));
            }
            out.push_str(&format!(",{},{}\n", s.value.re, s.value.im));
        }
        out
    }
}

/// Unit directions along which samples are spaced `eps` apart, for the
/// carriers where the pitch bound applies.
fn pitch_directions(set: &TrajectorySet) -> Vec<Vec<f64>> {
    match set {
        TrajectorySet::UniformLines2d(l) => vec![l.direction().to_vec()],
        TrajectorySet::UnionUniform2d(u) => u.parts().iter().map(|l| l.direction().to_vec()).collect(),
        TrajectorySet::UniformLinesD(s) => vec![s.direction().to_vec()],
        TrajectorySet::Hyperplanes(p) => orthonormal_complement(p.normal()),
        TrajectorySet::UnionHyperplanes(u) => u.parts().iter().flat_map(|p| orthonormal_complement(p.normal())).collect(),
        TrajectorySet::Circles(_) | TrajectorySet::Spirals(_) => Vec::new(),
    }
}

/// Largest along-carrier pitch that keeps the restricted samples unaliased.
pub fn max_pitch(field: &AtomField, set: &TrajectorySet) -> Result<f64> {
    let mut widest: f64 = 0.0;
    for a in pitch_directions(set) {
        let half = match &field.omega_ref {
            Some(omega) => match restriction_band(omega, &Carrier::Line(a))? {
                Band::Interval { lo, hi } => 0.5 * (hi - lo),
                Band::Body(_) => unreachable!("line carriers give intervals"),
            },
            None => field_band(field, &a).map_or(0.0, |(lo, hi)| 0.5 * (hi - lo)),
        };
        widest = widest.max(half);
    }
    Ok(if widest > 0.0 { PI / widest } else { f64::INFINITY })
}

pub fn sample_on_set(field: &AtomField, set: &TrajectorySet, window: &Window, eps: f64) -> Result<SampleBatch> {
    if set.dim() != field.dim {
        return Err(Error::DimensionMismatch { expected: field.dim, got: set.dim() });
    }
    let required = max_pitch(field, set)?;
    if eps > required * (1.0 + 1e-12) {
        return Err(Error::EpsTooCoarse { eps, required });
    }
    let samples = sample_points(set, window, eps)?
        .into_iter()
        .map(|p| FieldSample { value: field.value(&p.point), part: p.part, carrier: p.carrier, param: p.param, point: p.point })
        .collect();
    Ok(SampleBatch { set: set.clone(), eps, samples })
}

/// c exp(-i<s,r>) prod_i sin(<u_i, r - w_i>/2), expanded into atoms. Each
/// factor vanishes on the carriers <u_i, r - w_i> in 2 pi Z.
pub fn sine_product(dim: usize, factors: &[(Vec<f64>, Vec<f64>)], shift: &[f64], c: Complex64) -> Result<AtomField> {
    if shift.len() != dim || factors.iter().any(|(u, w)| u.len() != dim || w.len() != dim) {
        return Err(Error::DimensionMismatch { expected: dim, got: shift.len() });
    }
    let n = factors.len();
    let mut atoms: Vec<Atom> = Vec::new();
    for mask in 0..1usize << n {
        let mut omega: Vec<f64> = shift.iter().map(|x| -x).collect();
        let mut coeff = c;
        for (i, (u, w)) in factors.iter().enumerate() {
            let sigma = if mask >> i & 1 == 1 { -1.0 } else { 1.0 };
            for (o, x) in omega.iter_mut().zip(u) {
                *o += 0.5 * sigma * x;
            }
            coeff *= Complex64::new(0.0, -0.5 * sigma) * Complex64::from_polar(1.0, -0.5 * sigma * dot(u, w));
        }
        match atoms.iter_mut().find(|a| dist(&a.omega, &omega) <= MIN_ATOM_SEPARATION) {
            Some(a) => a.coeff += coeff,
            None => atoms.push(Atom { omega, coeff }),
        }
    }
    atoms.retain(|a| a.coeff.norm() > 1e-15 * c.norm());
    AtomField::new(dim, atoms)
}

/// A nonzero field that vanishes on every carrier of `set`, with spectrum in
/// the body the witness was found for.
pub fn null_field(set: &TrajectorySet, witness: &Witness) -> Result<AtomField> {
    let d = set.dim();
    let one = Complex64::new(1.0, 0.0);
    match (set, witness) {
        (TrajectorySet::UniformLinesD(s), Witness::LatticeIndex { m }) => {
            let u = s.reciprocal();
            if m.len() != u.len() {
                return Err(Error::DimensionMismatch { expected: u.len(), got: m.len() });
            }
            let mut um = vec![0.0; d];
            for (c, ui) in m.iter().zip(&u) {
                for (x, y) in um.iter_mut().zip(ui) {
                    *x += *c as f64 * y;
                }
            }
            sine_product(d, &[(um, s.offset().to_vec())], &vec![0.0; d], one)
        }
        (_, Witness::Shift { s }) => {
            let families = set
                .families()
                .ok_or_else(|| Error::Unsupported("shift witnesses belong to line or hyperplane families".into()))?;
            let factors: Vec<(Vec<f64>, Vec<f64>)> =
                families.iter().map(|f| (f.reciprocal(), f.offset.clone())).collect();
            sine_product(d, &factors, s, one)
        }
        _ => Err(Error::Unsupported("witness does not match the set kind".into())),
    }
}

/// Least-squares solution of a ≈ y through a thin QR factorisation.
pub(crate) fn complex_lstsq(a: DMatrix<Complex64>, y: &[Complex64]) -> Option<Vec<Complex64>> {
    let n = a.ncols();
    if n == 0 {
        return Some(Vec::new());
    }
    if a.nrows() < n {
        return None;
    }
    let rhs = nalgebra::DVector::from_column_slice(y);
    let (q, r) = a.qr().unpack();
    let qty = q.adjoint() * rhs;
    let diag_max = (0..n).map(|i| r[(i, i)].norm()).fold(0.0, f64::max);
    if (0..n).any(|i| r[(i, i)].norm() <= 1e-13 * diag_max) {
        return None;
    }
    r.solve_upper_triangular(&qty).map(|x| x.iter().copied().collect())
}

/// Probe points on a grid of `per_axis`^d nodes over the window's bounding
/// cube, kept when inside the window.
pub fn probe_grid(window: &Window, per_axis: usize) -> Vec<Vec<f64>> {
    let d = window.dim();
    let n = per_axis.max(2);
    let step = 2.0 * window.radius / (n - 1) as f64;
    let mut out = Vec::new();
    let mut idx = vec![0usize; d];
    loop {
        let p: Vec<f64> = idx
            .iter()
            .zip(&window.center)
            .map(|(&i, c)| c - window.radius + i as f64 * step)
            .collect();
        if dist(&p, &window.center) <= window.radius {
            out.push(p);
        }
        let mut k = d;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < n {
                break;
            }
            idx[k] = 0;
        }
    }
}
