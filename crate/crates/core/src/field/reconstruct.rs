//! End-to-end recovery of an atom field from its samples on a line or
//! hyperplane union, or on a periodic line set in R^d.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use super::alias::{contains_unit_cell, cosets, independent_families, line_key, unfold_decode, AliasSystem, CosetLattice};
use super::{complex_lstsq, probe_grid, sample_on_set, Atom, AtomField, FieldSample};
use crate::error::{Error, Result};
use crate::linalg::{dot, sub};
use crate::nyquist::{check, Status};
use crate::trajectory::{AffineFamily, TrajectorySet, Window};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReconstructionReport {
    /// Recovered coefficients at the input atom frequencies.
    #[serde(skip)]
    pub estimate: AtomField,
    pub sup_error: f64,
    pub rms_error: f64,
    /// Largest recovered magnitude at an aliasing candidate that carries no atom.
    pub spurious_max: f64,
    /// The set was certified for the field's body.
    pub certified: bool,
    pub status: Status,
    pub samples: usize,
    pub probes: usize,
}

/// Samples the field on `set`, recovers every candidate frequency of each
/// atom coset inside the body, and measures the error on a probe grid with
/// `probe` nodes per axis.
pub fn reconstruct_and_error(
    field: &AtomField,
    set: &TrajectorySet,
    window: &Window,
    eps: f64,
    probe: usize,
) -> Result<ReconstructionReport> {
    let omega = field
        .omega_ref
        .as_ref()
        .ok_or_else(|| Error::InvalidInput("field has no spectral body attached".into()))?;
    if set.dim() != field.dim() || omega.dim() != field.dim() {
        return Err(Error::DimensionMismatch { expected: field.dim(), got: set.dim() });
    }
    let status = check(set, omega)?.status;
    let batch = sample_on_set(field, set, window, eps)?;
    let decoded = match set {
        TrajectorySet::UniformLinesD(s) => {
            let lattice = CosetLattice::new(s.reciprocal())?;
            lattice_lines(field, &batch.samples, &lattice, omega)?
        }
        TrajectorySet::Circles(_) | TrajectorySet::Spirals(_) => {
            return Err(Error::Unsupported("reconstruction covers line and hyperplane sets".into()))
        }
        _ => families(field, &batch.samples, &independent_families(set)?, omega)?,
    };

    let mut coeffs = vec![Complex64::default(); field.atoms().len()];
    let mut spurious_max: f64 = 0.0;
    let mut all = Vec::with_capacity(decoded.len());
    for d in decoded {
        match d.atom {
            Some(a) => coeffs[a] = d.value,
            None => spurious_max = spurious_max.max(d.value.norm()),
        }
        all.push(Atom { omega: d.omega, coeff: d.value });
    }
    let estimate = AtomField::new(
        field.dim(),
        field
            .atoms()
            .iter()
            .zip(&coeffs)
            .map(|(a, c)| Atom { omega: a.omega.clone(), coeff: *c })
            .collect(),
    )?
    .with_omega(omega.clone())?;

    let probes = probe_grid(window, probe);
    let mut sup: f64 = 0.0;
    let mut sq = 0.0;
    for p in &probes {
        let truth = field.value(p);
        let approx: Complex64 = all.iter().map(|a| a.coeff * Complex64::from_polar(1.0, dot(&a.omega, p))).sum();
        let e = (truth - approx).norm();
        sup = sup.max(e);
        sq += e * e;
    }
    Ok(ReconstructionReport {
        estimate,
        sup_error: sup,
        rms_error: (sq / probes.len().max(1) as f64).sqrt(),
        spurious_max,
        certified: status.is_reconstructible(),
        status,
        samples: batch.samples.len(),
        probes: probes.len(),
    })
}

struct Decoded {
    omega: Vec<f64>,
    value: Complex64,
    atom: Option<usize>,
}

fn families(
    field: &AtomField,
    samples: &[FieldSample],
    fams: &[AffineFamily],
    omega: &crate::geometry::ConvexBody,
) -> Result<Vec<Decoded>> {
    let u: Vec<Vec<f64>> = fams.iter().map(AffineFamily::reciprocal).collect();
    let offsets: Vec<Vec<f64>> = fams.iter().map(|f| f.offset.clone()).collect();
    let lattice = CosetLattice::new(u.clone())?;
    let groups = cosets(field, &lattice, omega)?;
    let mut systems = Vec::with_capacity(groups.len());
    for c in &groups {
        if let Some(z) = contains_unit_cell(&c.indices) {
            return Err(Error::ReconstructionImpossible { base: c.base.clone(), witness: z });
        }
        systems.push(AliasSystem::new(c.base.clone(), u.clone(), &offsets, c.indices.clone())?);
    }

    // Each family sees one sampled-spectrum value per (coset, line key).
    for (i, fam) in fams.iter().enumerate() {
        let mut classes: BTreeMap<(usize, Vec<i64>), Vec<f64>> = BTreeMap::new();
        for (s, sys) in systems.iter().enumerate() {
            for (k, n) in sys.indices.iter().enumerate() {
                classes.entry((s, line_key(n, i))).or_insert_with(|| sys.frequency(k));
            }
        }
        let rows: Vec<&FieldSample> = samples.iter().filter(|p| p.part == i).collect();
        let reps: Vec<&Vec<f64>> = classes.values().collect();
        let a = DMatrix::from_fn(rows.len(), reps.len(), |r, c| {
            Complex64::from_polar(1.0, dot(reps[c], &sub(&rows[r].point, &fam.offset)))
        });
        let y: Vec<Complex64> = rows.iter().map(|p| p.value).collect();
        let g = complex_lstsq(a, &y).ok_or(Error::WindowTooSmall)?;
        for (((s, key), _), value) in classes.iter().zip(g) {
            systems[*s].measurements[i].insert(key.clone(), value);
        }
    }

    let mut out = Vec::new();
    for (c, sys) in groups.iter().zip(&systems) {
        let v = unfold_decode(sys).map_err(|e| match e {
            Error::UnitCellPresent(z) => Error::ReconstructionImpossible { base: c.base.clone(), witness: z },
            other => other,
        })?;
        for (k, value) in v.into_iter().enumerate() {
            let atom = c.members.iter().find(|&&(_, p)| p == k).map(|&(a, _)| a);
            out.push(Decoded { omega: sys.frequency(k), value, atom });
        }
    }
    Ok(out)
}

/// Periodic lines: one aliasing class per coset, so each coset must hold a
/// single candidate inside the body; the coefficients then follow from one
/// least-squares fit over all samples.
fn lattice_lines(
    field: &AtomField,
    samples: &[FieldSample],
    lattice: &CosetLattice,
    omega: &crate::geometry::ConvexBody,
) -> Result<Vec<Decoded>> {
    let groups = cosets(field, lattice, omega)?;
    for c in &groups {
        if c.indices.len() > 1 {
            let (a, b) = (&c.indices[0], &c.indices[1]);
            return Err(Error::ReconstructionImpossible {
                base: c.base.clone(),
                witness: b.iter().zip(a).map(|(x, y)| x - y).collect(),
            });
        }
    }
    let freqs: Vec<&Vec<f64>> = groups.iter().map(|c| &c.base).collect();
    let a = DMatrix::from_fn(samples.len(), freqs.len(), |r, c| {
        Complex64::from_polar(1.0, dot(freqs[c], &samples[r].point))
    });
    let y: Vec<Complex64> = samples.iter().map(|p| p.value).collect();
    let v = complex_lstsq(a, &y).ok_or(Error::WindowTooSmall)?;
    Ok(groups
        .iter()
        .zip(v)
        .map(|(c, value)| Decoded { omega: c.base.clone(), value, atom: Some(c.members[0].0) })
        .collect())
}
