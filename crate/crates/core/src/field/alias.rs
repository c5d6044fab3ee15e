//! Aliasing relations between frequencies that differ by integer combinations
//! of the reciprocal vectors, and the peeling decoder that inverts them.

use std::collections::{BTreeMap, HashMap, HashSet};

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::AtomField;
use crate::error::{Error, Result};
use crate::geometry::ConvexBody;
use crate::linalg::{dot, norm};
use crate::trajectory::{AffineFamily, TrajectorySet};

/// Coset offsets closer to an integer combination than this are exact.
pub(crate) const COSET_EXACT: f64 = 1e-10;
/// Offsets closer than this, but not exact, are refused.
pub(crate) const COSET_AMBIGUOUS: f64 = 1e-7;
const MAX_INDEX_BOX: f64 = 1e6;

/// Relations g^i_key = sum over the axis-i line `key` of tau[i][k] v(n_k) for
/// the frequencies base + U n_k inside the body.
#[derive(Debug, Clone, PartialEq)]
pub struct AliasSystem {
    pub base: Vec<f64>,
    /// Columns of U.
    pub reciprocal: Vec<Vec<f64>>,
    pub indices: Vec<Vec<i64>>,
    /// phases[i][k] = exp(i <base + U n_k, w_i>).
    pub phases: Vec<Vec<Complex64>>,
    /// Per axis i, keyed by the index with component i zeroed.
    pub measurements: Vec<BTreeMap<Vec<i64>, Complex64>>,
}

pub(crate) fn line_key(n: &[i64], axis: usize) -> Vec<i64> {
    let mut k = n.to_vec();
    k[axis] = 0;
    k
}

impl AliasSystem {
    /// System with all measurements zero.
    pub fn new(base: Vec<f64>, reciprocal: Vec<Vec<f64>>, offsets: &[Vec<f64>], indices: Vec<Vec<i64>>) -> Result<Self> {
        let axes = reciprocal.len();
        if offsets.len() != axes || indices.iter().any(|n| n.len() != axes) {
            return Err(Error::DimensionMismatch { expected: axes, got: offsets.len() });
        }
        let mut sys = AliasSystem { base, reciprocal, indices, phases: Vec::new(), measurements: Vec::new() };
        sys.phases = offsets
            .iter()
            .map(|w| (0..sys.indices.len()).map(|k| Complex64::from_polar(1.0, dot(&sys.frequency(k), w))).collect())
            .collect();
        sys.measurements = (0..axes)
            .map(|i| sys.indices.iter().map(|n| (line_key(n, i), Complex64::default())).collect())
            .collect();
        Ok(sys)
    }

    /// Same relations with arbitrary nonzero phases, for exercising the decoder.
    pub fn with_phases(indices: Vec<Vec<i64>>, phases: Vec<Vec<Complex64>>) -> Result<Self> {
        let axes = phases.len();
        if axes == 0 || indices.iter().any(|n| n.len() != axes) || phases.iter().any(|p| p.len() != indices.len()) {
            return Err(Error::InvalidInput("phase table does not match the index set".into()));
        }
        if phases.iter().flatten().any(|t| t.norm() == 0.0) {
            return Err(Error::InvalidInput("phases must be nonzero".into()));
        }
        let measurements = (0..axes)
            .map(|i| indices.iter().map(|n| (line_key(n, i), Complex64::default())).collect())
            .collect();
        Ok(AliasSystem { base: Vec::new(), reciprocal: Vec::new(), indices, phases, measurements })
    }

    pub fn axes(&self) -> usize {
        self.phases.len()
    }

    /// base + U n_k.
    pub fn frequency(&self, k: usize) -> Vec<f64> {
        let mut w = self.base.clone();
        for (c, u) in self.indices[k].iter().zip(&self.reciprocal) {
            for (x, y) in w.iter_mut().zip(u) {
                *x += *c as f64 * y;
            }
        }
        w
    }

    pub fn position(&self, n: &[i64]) -> Option<usize> {
        self.indices.iter().position(|m| m == n)
    }

    /// Sets the measurements produced by the values `v`.
    pub fn synthesize(&mut self, v: &[Complex64]) {
        for i in 0..self.axes() {
            for g in self.measurements[i].values_mut() {
                *g = Complex64::default();
            }
            for (k, n) in self.indices.iter().enumerate() {
                *self.measurements[i].get_mut(&line_key(n, i)).expect("key exists") += self.phases[i][k] * v[k];
            }
        }
    }

    /// Dense relation matrix, rows ordered by axis then key.
    pub fn dense(&self) -> (DMatrix<Complex64>, Vec<Complex64>) {
        let rows: Vec<(usize, &Vec<i64>, Complex64)> = self
            .measurements
            .iter()
            .enumerate()
            .flat_map(|(i, m)| m.iter().map(move |(key, g)| (i, key, *g)))
            .collect();
        let mut a = DMatrix::zeros(rows.len(), self.indices.len());
        for (r, (i, key, _)) in rows.iter().enumerate() {
            for (k, n) in self.indices.iter().enumerate() {
                if line_key(n, *i) == **key {
                    a[(r, k)] = self.phases[*i][k];
                }
            }
        }
        (a, rows.into_iter().map(|(_, _, g)| g).collect())
    }

    /// (||A v - g||, ||g||).
    pub fn residual(&self, v: &[Complex64]) -> (f64, f64) {
        let (a, g) = self.dense();
        let av = &a * nalgebra::DVector::from_column_slice(v);
        let r = av.iter().zip(&g).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt();
        (r, g.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt())
    }
}

/// Corner z of a translate z + {0,1}^N inside the set, smallest first.
pub fn contains_unit_cell(indices: &[Vec<i64>]) -> Option<Vec<i64>> {
    let n = indices.first()?.len();
    let set: HashSet<&[i64]> = indices.iter().map(|v| v.as_slice()).collect();
    let mut sorted: Vec<&Vec<i64>> = indices.iter().collect();
    sorted.sort();
    sorted
        .into_iter()
        .find(|z| {
            (0..1usize << n).all(|mask| {
                let c: Vec<i64> = z.iter().enumerate().map(|(i, x)| x + (mask >> i & 1) as i64).collect();
                set.contains(c.as_slice())
            })
        })
        .cloned()
}

/// Every lattice point on a segment between members is a member.
pub fn is_lattice_convex(indices: &[Vec<i64>]) -> bool {
    let set: HashSet<&[i64]> = indices.iter().map(|v| v.as_slice()).collect();
    for (i, a) in indices.iter().enumerate() {
        for b in &indices[i + 1..] {
            let diff: Vec<i64> = b.iter().zip(a).map(|(x, y)| x - y).collect();
            let g = diff.iter().fold(0, |g, &x| crate::linalg::gcd(g, x.abs()));
            for k in 1..g {
                let p: Vec<i64> = a.iter().zip(&diff).map(|(x, d)| x + k * d / g).collect();
                if !set.contains(p.as_slice()) {
                    return false;
                }
            }
        }
    }
    true
}

struct Peeler<'a> {
    sys: &'a AliasSystem,
    pos: HashMap<&'a [i64], usize>,
    values: Vec<Option<Complex64>>,
    remaining: Vec<BTreeMap<Vec<i64>, Complex64>>,
}

impl Peeler<'_> {
    fn settle(&mut self, k: usize, v: Complex64) {
        self.values[k] = Some(v);
        let n = &self.sys.indices[k];
        for i in 0..self.sys.axes() {
            *self.remaining[i].get_mut(&line_key(n, i)).expect("key exists") -= self.sys.phases[i][k] * v;
        }
    }

    /// Decodes `set`, whose members agree in every coordinate from `axes` on.
    fn peel(&mut self, mut set: Vec<usize>, axes: usize) -> Result<()> {
        let a = axes - 1;
        while !set.is_empty() {
            let idx = &self.sys.indices;
            let top = set.iter().map(|&k| idx[k][a]).max().expect("nonempty");
            let members: HashSet<usize> = set.iter().copied().collect();
            let (stacked, free): (Vec<usize>, Vec<usize>) =
                set.iter().copied().filter(|&k| idx[k][a] == top).partition(|&k| {
                    let mut below = idx[k].clone();
                    below[a] -= 1;
                    self.pos.get(below.as_slice()).is_some_and(|j| members.contains(j))
                });
            for k in free {
                let g = self.remaining[a][&line_key(&idx[k], a)];
                self.settle(k, g / self.sys.phases[a][k]);
            }
            if !stacked.is_empty() {
                if a == 0 {
                    let mut corner = idx[stacked[0]].clone();
                    corner[0] -= 1;
                    return Err(Error::UnitCellPresent(corner));
                }
                self.peel(stacked, a)?;
            }
            set.retain(|&k| idx[k][a] != top);
        }
        Ok(())
    }
}

/// Constructive decoding of a lattice-convex system with no unit-cell
/// translate: repeatedly take the slice of largest last coordinate, read off
/// the entries whose last-axis line is a singleton, and recurse one dimension
/// down on the rest of the slice.
pub fn unfold_decode(sys: &AliasSystem) -> Result<Vec<Complex64>> {
    if sys.indices.is_empty() {
        return Ok(Vec::new());
    }
    if !is_lattice_convex(&sys.indices) {
        return Err(Error::NotLatticeConvex);
    }
    if let Some(z) = contains_unit_cell(&sys.indices) {
        return Err(Error::UnitCellPresent(z));
    }
    let mut peeler = Peeler {
        sys,
        pos: sys.indices.iter().enumerate().map(|(k, n)| (n.as_slice(), k)).collect(),
        values: vec![None; sys.indices.len()],
        remaining: sys.measurements.clone(),
    };
    peeler.peel((0..sys.indices.len()).collect(), sys.axes())?;
    let v: Vec<Complex64> = peeler.values.into_iter().map(|x| x.expect("every index is settled")).collect();
    let (r, g) = sys.residual(&v);
    if r > 1e-9 * g {
        return Err(Error::InconsistentSystem(r / g.max(f64::MIN_POSITIVE)));
    }
    Ok(v)
}

#[derive(Debug, Clone, PartialEq)]
pub struct LeastSquares {
    pub values: Vec<Complex64>,
    pub sigma_min: f64,
    pub sigma_max: f64,
}

/// Dense minimum-norm least-squares solution with its singular value range.
pub fn least_squares_decode(sys: &AliasSystem) -> LeastSquares {
    let (a, g) = sys.dense();
    let svd = a.svd(true, true);
    let sigma_max = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let sigma_min = svd.singular_values.iter().copied().fold(f64::INFINITY, f64::min);
    let x = svd
        .solve(&nalgebra::DVector::from_column_slice(&g), 1e-12 * sigma_max)
        .expect("factors were computed");
    LeastSquares { values: x.iter().copied().collect(), sigma_min, sigma_max }
}

/// Integer coordinates of frequency offsets in the reciprocal lattice.
pub(crate) struct CosetLattice {
    pub u: Vec<Vec<f64>>,
    pinv: DMatrix<f64>,
}

impl CosetLattice {
    pub fn new(u: Vec<Vec<f64>>) -> Result<Self> {
        let d = u[0].len();
        let m = DMatrix::from_fn(d, u.len(), |i, j| u[j][i]);
        let gram = m.transpose() * &m;
        if gram.clone().svd(false, false).singular_values.min() <= 1e-18 * gram.norm() {
            return Err(Error::SingularBasis);
        }
        let pinv = gram.try_inverse().ok_or(Error::SingularBasis)? * m.transpose();
        Ok(CosetLattice { u, pinv })
    }

    fn combine(&self, n: &[i64]) -> Vec<f64> {
        let mut w = vec![0.0; self.u[0].len()];
        for (c, u) in n.iter().zip(&self.u) {
            for (x, y) in w.iter_mut().zip(u) {
                *x += *c as f64 * y;
            }
        }
        w
    }

    /// Nearest lattice offset and the distance to it.
    pub fn split(&self, diff: &[f64]) -> (Vec<i64>, f64) {
        let n: Vec<i64> = (0..self.u.len())
            .map(|i| (0..diff.len()).map(|j| self.pinv[(i, j)] * diff[j]).sum::<f64>().round() as i64)
            .collect();
        let um = self.combine(&n);
        let r = diff.iter().zip(&um).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
        (n, r)
    }

    /// {n : base + U n in the body}, boundary included.
    pub fn index_set(&self, base: &[f64], omega: &ConvexBody) -> Result<Vec<Vec<i64>>> {
        let reach = norm(base) + omega.circumradius();
        let bounds: Vec<i64> = (0..self.u.len())
            .map(|i| (reach * self.pinv.row(i).norm() * (1.0 + 1e-12)).floor() as i64)
            .collect();
        let count: f64 = bounds.iter().map(|b| (2 * b + 1) as f64).product();
        if count > MAX_INDEX_BOX {
            return Err(Error::EnumerationOverflow(count as u64));
        }
        let tol = 1e-12 * (1.0 + omega.circumradius());
        let mut out = Vec::new();
        let mut n: Vec<i64> = bounds.iter().map(|b| -b).collect();
        loop {
            let w: Vec<f64> = base.iter().zip(self.combine(&n)).map(|(a, b)| a + b).collect();
            if omega.margin(&w) >= -tol {
                out.push(n.clone());
            }
            let mut i = n.len();
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                if n[i] < bounds[i] {
                    n[i] += 1;
                    break;
                }
                n[i] = -bounds[i];
            }
        }
    }
}

/// Atoms grouped by coset: representative, index set inside the body, and
/// (atom, index position) pairs.
pub(crate) struct Coset {
    pub base: Vec<f64>,
    pub indices: Vec<Vec<i64>>,
    pub members: Vec<(usize, usize)>,
}

pub(crate) fn cosets(field: &AtomField, lattice: &CosetLattice, omega: &ConvexBody) -> Result<Vec<Coset>> {
    let mut groups: Vec<(usize, Vec<(usize, Vec<i64>)>)> = Vec::new();
    for (a, atom) in field.atoms().iter().enumerate() {
        let mut placed = false;
        for (rep, members) in groups.iter_mut() {
            let diff: Vec<f64> = atom.omega.iter().zip(&field.atoms()[*rep].omega).map(|(x, y)| x - y).collect();
            let (n, r) = lattice.split(&diff);
            let scale = 1.0 + norm(&atom.omega);
            if r <= COSET_EXACT * scale {
                members.push((a, n));
                placed = true;
                break;
            }
            if r < COSET_AMBIGUOUS * scale {
                return Err(Error::NearCosetAmbiguity(r));
            }
        }
        if !placed {
            groups.push((a, vec![(a, vec![0; lattice.u.len()])]));
        }
    }
    groups
        .into_iter()
        .map(|(rep, members)| {
            let base = field.atoms()[rep].omega.clone();
            let indices = lattice.index_set(&base, omega)?;
            let members = members
                .into_iter()
                .map(|(a, n)| {
                    indices
                        .iter()
                        .position(|m| *m == n)
                        .map(|p| (a, p))
                        .ok_or_else(|| Error::InvalidInput(format!("atom {a} lies outside the spectral body")))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Coset { base, indices, members })
        })
        .collect()
}

/// Families of a line or hyperplane union whose reciprocal vectors are
/// linearly independent.
pub(crate) fn independent_families(set: &TrajectorySet) -> Result<Vec<AffineFamily>> {
    let families = set
        .families()
        .ok_or_else(|| Error::Unsupported("aliasing relations need line or hyperplane families".into()))?;
    if families.len() > set.dim() {
        return Err(Error::Unsupported("more families than dimensions".into()));
    }
    CosetLattice::new(families.iter().map(AffineFamily::reciprocal).collect()).map_err(|_| {
        if families.len() == 2 && set.dim() == 2 {
            Error::CollinearParts
        } else {
            Error::Unsupported("family normals are linearly dependent".into())
        }
    })?;
    Ok(families)
}

/// One relation system per coset of atoms, with exact measurements.
pub fn alias_atoms(field: &AtomField, set: &TrajectorySet, omega: &ConvexBody) -> Result<Vec<AliasSystem>> {
    if field.dim() != set.dim() || omega.dim() != set.dim() {
        return Err(Error::DimensionMismatch { expected: set.dim(), got: field.dim() });
    }
    let families = independent_families(set)?;
    let u: Vec<Vec<f64>> = families.iter().map(AffineFamily::reciprocal).collect();
    let offsets: Vec<Vec<f64>> = families.iter().map(|f| f.offset.clone()).collect();
    let lattice = CosetLattice::new(u.clone())?;
    cosets(field, &lattice, omega)?
        .into_iter()
        .map(|c| {
            let mut v = vec![Complex64::default(); c.indices.len()];
            for &(a, p) in &c.members {
                v[p] = field.atoms()[a].coeff;
            }
            let mut sys = AliasSystem::new(c.base, u.clone(), &offsets, c.indices)?;
            sys.synthesize(&v);
            Ok(sys)
        })
        .collect()
}
