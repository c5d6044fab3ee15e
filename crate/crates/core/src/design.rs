//! Minimum-density designs: uniform line and hyperplane sets from the width
//! of the spectral body, and periodic line sets in R^d from a sampling
//! lattice of a cross-section.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{cross_section, frame_with_last, sphere_directions, width_direction, ConvexBody, Direction};
use crate::lattice::shortest_vector;
use crate::linalg::{axpy, dot, norm, unit};
use crate::nyquist::{check_hyperplane_union, check_union_uniform_2d, check_uniform_d, Status};
use crate::trajectory::{
    density, HyperplaneSet, TrajectorySet, UnionHyperplanes, UnionUniform2D, UniformLines2D, UniformLinesD,
};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DesignResult {
    pub set: TrajectorySet,
    pub density: f64,
    pub epsilon: f64,
    /// Infimum approached as epsilon goes to 0.
    pub critical_density: f64,
    /// Rows of the chosen orientation; a single row is the spacing direction.
    pub orientation: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosedForm {
    Ball,
    Cuboid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Search {
    ClosedForm(ClosedForm),
    /// Number of line directions tried.
    OrientationGrid(usize),
}

fn spacing_for(omega: &ConvexBody, epsilon: f64) -> Result<(f64, Direction, f64)> {
    let (w, u) = width_direction(omega)?;
    let bound = 2.0 * PI / w;
    if !(epsilon > 0.0 && epsilon < bound) {
        return Err(Error::EpsilonOutOfRange { epsilon, bound });
    }
    Ok((w, u, bound - epsilon))
}

fn require_nyquist(status: Status, epsilon: f64, bound: f64) -> Result<()> {
    if status == Status::Nyquist {
        Ok(())
    } else {
        // only reachable when epsilon sits inside the boundary tolerance
        Err(Error::EpsilonOutOfRange { epsilon, bound })
    }
}

/// Lines perpendicular to the width direction, 2 pi / W - epsilon apart.
pub fn optimal_uniform_2d(omega: &ConvexBody, epsilon: f64) -> Result<DesignResult> {
    if omega.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, got: omega.dim() });
    }
    let (w, u, delta) = spacing_for(omega, epsilon)?;
    let n = u.as_slice();
    let lines = UniformLines2D::new([0.0, 0.0], [-n[1], n[0]], delta)?;
    let union = UnionUniform2D::new(vec![lines.clone()])?;
    require_nyquist(check_union_uniform_2d(&union, omega)?.status, epsilon, 2.0 * PI / w)?;
    Ok(DesignResult {
        set: TrajectorySet::UniformLines2d(lines),
        density: 1.0 / delta,
        epsilon,
        critical_density: w / (2.0 * PI),
        orientation: vec![n.to_vec()],
    })
}

/// Hyperplanes normal to the width direction, 2 pi / W - epsilon apart.
pub fn optimal_hyperplane_set(omega: &ConvexBody, epsilon: f64) -> Result<DesignResult> {
    let (w, u, delta) = spacing_for(omega, epsilon)?;
    let planes = HyperplaneSet::new(vec![0.0; omega.dim()], u.as_slice().to_vec(), delta)?;
    let union = UnionHyperplanes::new(vec![planes.clone()])?;
    require_nyquist(check_hyperplane_union(&union, omega)?.status, epsilon, 2.0 * PI / w)?;
    Ok(DesignResult {
        set: TrajectorySet::Hyperplanes(planes),
        density: 1.0 / delta,
        epsilon,
        critical_density: w / (2.0 * PI),
        orientation: vec![u.as_slice().to_vec()],
    })
}

/// Periodic lines for a symmetric body. `epsilon` in (0, 1) shrinks the
/// transverse lattice by the factor 1 - epsilon.
pub fn optimal_uniform_d(omega: &ConvexBody, search: Search, epsilon: f64) -> Result<DesignResult> {
    if !omega.is_symmetric() {
        return Err(Error::SymmetryRequired);
    }
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::EpsilonOutOfRange { epsilon, bound: 1.0 });
    }
    let d = omega.dim();
    let s = 1.0 - epsilon;
    let (basis, critical, orientation) = match search {
        Search::ClosedForm(ClosedForm::Ball) => {
            let (center, rho) = match omega.as_ball() {
                Some((c, r)) if d == 3 && norm(c) == 0.0 => (c, r),
                _ => return Err(Error::Unsupported("closed-form ball design needs an origin ball in R^3".into())),
            };
            let _ = center;
            let r3 = 3f64.sqrt();
            let basis = vec![
                vec![s * PI / (r3 * rho), s * PI / rho, 0.0],
                vec![s * 2.0 * PI / (r3 * rho), 0.0, 0.0],
                vec![0.0, 0.0, 1.0],
            ];
            (basis, r3 * rho * rho / (2.0 * PI * PI), identity(3))
        }
        Search::ClosedForm(ClosedForm::Cuboid) => {
            let half = axis_box(omega).filter(|_| d == 3).ok_or_else(|| {
                Error::Unsupported("closed-form cuboid design needs an origin-centred axis-aligned box in R^3".into())
            })?;
            let mut axes = [0usize, 1, 2];
            axes.sort_by(|&a, &b| half[a].total_cmp(&half[b]).then(a.cmp(&b)));
            let basis = vec![
                crate::linalg::scale(&unit(3, axes[0]), s * PI / half[axes[0]]),
                crate::linalg::scale(&unit(3, axes[1]), s * PI / half[axes[1]]),
                unit(3, axes[2]),
            ];
            let rows = axes.iter().map(|&a| unit(3, a)).collect();
            (basis, half[axes[0]] * half[axes[1]] / (PI * PI), rows)
        }
        Search::OrientationGrid(k) => {
            if k == 0 || k > 10_000 {
                return Err(Error::InvalidInput("orientation grid takes 1..=10000 directions".into()));
            }
            orientation_grid(omega, k, s)?
        }
    };
    let set = UniformLinesD::new(basis, None)?;
    let status = check_uniform_d(&set, omega)?.status;
    require_nyquist(status, epsilon, 1.0)?;
    let set = TrajectorySet::UniformLinesD(set);
    Ok(DesignResult { density: density(&set)?, set, epsilon, critical_density: critical, orientation })
}

fn identity(d: usize) -> Vec<Vec<f64>> {
    (0..d).map(|i| unit(d, i)).collect()
}

/// Half-widths of an origin-centred axis-aligned box.
fn axis_box(omega: &ConvexBody) -> Option<Vec<f64>> {
    let verts = omega.vertices()?;
    let (lo, hi) = omega.bounding_box();
    let d = omega.dim();
    let centred = lo.iter().zip(&hi).all(|(l, h)| (l + h).abs() <= 1e-12 * (h - l));
    let corners = verts.len() == 1 << d
        && verts.iter().all(|v| v.iter().zip(&hi).all(|(x, h)| (x.abs() - h).abs() <= 1e-12 * h.abs().max(1.0)));
    (centred && corners).then_some(hi)
}

/// Candidate transverse lattices for a symmetric slice in R^k: rectangular
/// lattices on rotated orthogonal frames, and for k = 2 a hexagonal lattice
/// for the circumscribed disc. Returns (density, generators).
fn slice_lattices(slice: &ConvexBody, s: f64) -> Vec<(f64, Vec<Vec<f64>>)> {
    let k = slice.dim();
    let mut out = Vec::new();
    let rect = |frame: Vec<Vec<f64>>| {
        let half: Vec<f64> = frame.iter().map(|e| slice.support_unit(e)).collect();
        let dens = half.iter().map(|h| h / PI).product::<f64>() / s.powi(k as i32);
        let gens = frame.iter().zip(&half).map(|(e, h)| crate::linalg::scale(e, s * PI / h)).collect();
        (dens, gens)
    };
    if k == 1 {
        out.push(rect(vec![vec![1.0]]));
        return out;
    }
    if k == 2 {
        for j in 0..90 {
            let t = PI * j as f64 / 180.0;
            out.push(rect(vec![vec![t.cos(), t.sin()], vec![-t.sin(), t.cos()]]));
        }
        let r = slice.circumradius();
        let r3 = 3f64.sqrt();
        out.push((
            r3 * r * r / (2.0 * PI * PI * s * s),
            vec![vec![s * PI / (r3 * r), s * PI / r], vec![s * 2.0 * PI / (r3 * r), 0.0]],
        ));
    } else {
        out.push(rect(identity(k)));
    }
    out
}

fn orientation_grid(omega: &ConvexBody, k: usize, s: f64) -> Result<(Vec<Vec<f64>>, f64, Vec<Vec<f64>>)> {
    let d = omega.dim();
    let mut best: Option<(f64, Vec<f64>, Vec<Vec<f64>>, Vec<Vec<f64>>)> = None;
    for dir in sphere_directions(d, k) {
        // lines along +-dir are the same set
        let dir = if dir.iter().find(|x| x.abs() > 1e-15).is_some_and(|x| *x < 0.0) {
            dir.iter().map(|x| -x).collect()
        } else {
            dir
        };
        let rows = frame_with_last(&Direction::new(&dir)?);
        let slice = cross_section(omega, &rows)?;
        for (dens, gens) in slice_lattices(&slice, s) {
            let better = match &best {
                None => true,
                Some((bd, bdir, _, _)) => dens < bd * (1.0 - 1e-12) || (dens <= bd * (1.0 + 1e-12) && dir < *bdir),
            };
            if better {
                best = Some((dens, dir.clone(), rows.clone(), gens));
            }
        }
    }
    let (dens, _, rows, gens) = best.expect("at least one direction");
    // v_i = U^T (g_i, 0), v_d = U^T e_d
    let lift = |g: &[f64]| {
        let mut v = vec![0.0; d];
        for (c, row) in g.iter().zip(&rows) {
            v = axpy(&v, *c, row);
        }
        v
    };
    let mut basis: Vec<Vec<f64>> = gens.iter().map(|g| lift(g)).collect();
    basis.push(rows[d - 1].clone());
    Ok((basis, dens, rows))
}

/// Lattice density 1 / |det B| for basis rows.
pub fn lattice_density(basis: &[Vec<f64>]) -> Result<f64> {
    let d = basis.len();
    if basis.iter().any(|b| b.len() != d) {
        return Err(Error::SingularBasis);
    }
    let m = nalgebra::DMatrix::from_fn(d, d, |i, j| basis[i][j]);
    let det = m.determinant().abs();
    let scale: f64 = basis.iter().map(|b| norm(b)).product();
    if !(det > 1e-12 * scale) {
        return Err(Error::SingularBasis);
    }
    Ok(1.0 / det)
}

/// Periodic lines through every point of the lattice spanned by `basis`,
/// running along a shortest lattice vector.
pub fn uniform_from_lattice(basis: &[Vec<f64>]) -> Result<UniformLinesD> {
    let d = basis.len();
    lattice_density(basis)?;
    if d < 2 {
        return Err(Error::InvalidInput("lattice lines need d >= 2".into()));
    }
    let (a, c1) = shortest_vector(basis);
    let completion = unimodular_with_first_column(&a)?;
    // c_j = sum_i M[i][j] b_i
    let cols: Vec<Vec<f64>> = (0..d)
        .map(|j| {
            let mut c = vec![0.0; d];
            for (i, b) in basis.iter().enumerate() {
                c = axpy(&c, completion[i][j] as f64, b);
            }
            c
        })
        .collect();
    debug_assert!(cols[0].iter().zip(&c1).all(|(x, y)| (x - y).abs() <= 1e-9 * (1.0 + norm(&c1))));
    let dir: Vec<f64> = crate::linalg::scale(&cols[0], 1.0 / norm(&cols[0]));
    let mut rows: Vec<Vec<f64>> = cols[1..].iter().map(|c| axpy(c, -dot(c, &dir), &dir)).collect();
    rows.push(dir);
    UniformLinesD::new(rows, None)
}

/// Integer matrix with determinant +-1 whose first column is the primitive
/// vector `a`.
fn unimodular_with_first_column(a: &[i64]) -> Result<Vec<Vec<i64>>> {
    let d = a.len();
    let mut v = a.to_vec();
    let mut t: Vec<Vec<i64>> = (0..d).map(|i| (0..d).map(|j| i64::from(i == j)).collect()).collect();
    // row operations T with T a = e_1
    loop {
        let nonzero: Vec<usize> = (0..d).filter(|&i| v[i] != 0).collect();
        if nonzero.len() <= 1 {
            break;
        }
        let p = *nonzero.iter().min_by_key(|&&i| v[i].abs()).expect("nonempty");
        for &j in &nonzero {
            if j != p {
                let q = v[j].div_euclid(v[p]);
                v[j] -= q * v[p];
                let rp = t[p].clone();
                for (x, y) in t[j].iter_mut().zip(&rp) {
                    *x -= q * y;
                }
            }
        }
    }
    let k = (0..d).find(|&i| v[i] != 0).ok_or(Error::SingularBasis)?;
    if v[k].abs() != 1 {
        return Err(Error::InvalidInput("shortest vector is not primitive".into()));
    }
    t.swap(0, k);
    v.swap(0, k);
    if v[0] < 0 {
        t[0].iter_mut().for_each(|x| *x = -*x);
    }
    // M = T^-1, exact for unimodular integer T
    let tm = nalgebra::DMatrix::from_fn(d, d, |i, j| t[i][j] as f64);
    let inv = tm.try_inverse().ok_or(Error::SingularBasis)?;
    let m: Vec<Vec<i64>> = (0..d).map(|i| (0..d).map(|j| inv[(i, j)].round() as i64).collect()).collect();
    if (0..d).any(|i| m[i][0] != a[i]) {
        return Err(Error::SingularBasis);
    }
    Ok(m)
}
