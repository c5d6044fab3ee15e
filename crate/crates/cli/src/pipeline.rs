use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use samptraj::design::{optimal_hyperplane_set, optimal_uniform_2d, optimal_uniform_d};
use samptraj::field::{make_field, reconstruct_and_error, sample_on_set};
use samptraj::nyquist::check;
use samptraj::trajectory::{
    density, sample_points, samples_csv, CircleSet, HyperplaneSet, SpiralSet, UnionHyperplanes, UnionUniform2D,
    UniformLines2D, UniformLinesD,
};
use samptraj::{Status, TrajectorySet};
use serde::Serialize;

use crate::config::{Action, DesignMode, PipelineConfig};

pub const EXIT_OK: u8 = 0;
pub const EXIT_ERROR: u8 = 1;
pub const EXIT_NOT_NYQUIST: u8 = 2;
pub const EXIT_UNDECIDED: u8 = 3;

pub fn exit_code(status: Status) -> u8 {
    match status {
        Status::Nyquist | Status::SufficientOnly => EXIT_OK,
        Status::NotNyquist => EXIT_NOT_NYQUIST,
        Status::Critical | Status::Unknown => EXIT_UNDECIDED,
    }
}

fn write(out: &Path, name: &str, body: &str) -> Result<(), String> {
    let path = out.join(name);
    fs::write(&path, body).map_err(|e| format!("cannot write {}: {e}", path.display()))
}

fn write_json(out: &Path, name: &str, value: &impl Serialize) -> Result<(), String> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| e.to_string())?;
    text.push('\n');
    write(out, name, &text)
}

fn lib<T>(r: samptraj::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

/// The same set with its first spacing set to `delta` and the other
/// spacings scaled along.
pub fn with_spacing(set: &TrajectorySet, delta: f64) -> samptraj::Result<TrajectorySet> {
    let lines = |parts: &[UniformLines2D]| -> samptraj::Result<Vec<UniformLines2D>> {
        let k = delta / parts[0].spacing();
        parts.iter().map(|p| UniformLines2D::new(p.offset(), p.direction(), k * p.spacing())).collect()
    };
    let planes = |parts: &[HyperplaneSet]| -> samptraj::Result<Vec<HyperplaneSet>> {
        let k = delta / parts[0].spacing();
        parts.iter().map(|p| HyperplaneSet::new(p.offset().to_vec(), p.normal().to_vec(), k * p.spacing())).collect()
    };
    Ok(match set {
        TrajectorySet::UniformLines2d(l) => TrajectorySet::UniformLines2d(lines(std::slice::from_ref(l))?.remove(0)),
        TrajectorySet::UnionUniform2d(u) => TrajectorySet::UnionUniform2d(UnionUniform2D::new(lines(u.parts())?)?),
        TrajectorySet::Hyperplanes(p) => TrajectorySet::Hyperplanes(planes(std::slice::from_ref(p))?.remove(0)),
        TrajectorySet::UnionHyperplanes(u) => TrajectorySet::UnionHyperplanes(UnionHyperplanes::new(planes(u.parts())?)?),
        TrajectorySet::Circles(_) => TrajectorySet::Circles(CircleSet::new(delta)?),
        TrajectorySet::Spirals(s) => TrajectorySet::Spirals(SpiralSet::new(delta * s.count() as f64, s.count())?),
        TrajectorySet::UniformLinesD(s) => {
            let d = s.dim();
            let first: f64 = s.basis()[0].iter().map(|x| x * x).sum::<f64>().sqrt();
            let k = delta / first;
            let mut basis: Vec<Vec<f64>> = s.basis()[..d - 1].iter().map(|v| v.iter().map(|x| k * x).collect()).collect();
            basis.push(s.direction().to_vec());
            TrajectorySet::UniformLinesD(UniformLinesD::new(basis, Some(s.offset().to_vec()))?)
        }
    })
}

fn status_name(s: Status) -> String {
    serde_json::to_value(s).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default()
}

#[derive(Serialize)]
struct DensityOut<'a> {
    set: &'a TrajectorySet,
    density: f64,
}

pub fn run(action: Action, cfg: &PipelineConfig, out: &Path, seed: Option<u64>) -> Result<u8, String> {
    cfg.validate(action)?;
    fs::create_dir_all(out).map_err(|e| format!("cannot create {}: {e}", out.display()))?;
    let omega = &cfg.omega;
    let seed = seed.or(cfg.seed).unwrap_or(0);
    let names = &cfg.outputs;
    match action {
        Action::Check => {
            let set = cfg.set.as_ref().expect("validated");
            let v = lib(check(set, omega))?;
            write_json(out, &names.verdict, &v)?;
            Ok(exit_code(v.status))
        }
        Action::Design => {
            let eps = cfg.epsilon.expect("validated");
            let result = lib(match cfg.mode.expect("validated") {
                DesignMode::Uniform2d => optimal_uniform_2d(omega, eps),
                DesignMode::Hyperplanes => optimal_hyperplane_set(omega, eps),
                DesignMode::LinesD => optimal_uniform_d(omega, cfg.search.expect("validated"), eps),
            })?;
            write_json(out, &names.design, &result)?;
            write_json(out, &names.set, &result.set)?;
            Ok(EXIT_OK)
        }
        Action::Density => {
            let set = cfg.set.as_ref().expect("validated");
            let density = lib(density(set))?;
            write_json(out, &names.density, &DensityOut { set, density })?;
            Ok(EXIT_OK)
        }
        Action::Sample => {
            let set = cfg.set.as_ref().expect("validated");
            let window = cfg.window.as_ref().expect("validated");
            let pitch = cfg.pitch.expect("validated");
            let field = match (&cfg.field, cfg.atoms) {
                (Some(f), _) => Some(lib(f.clone().with_omega(omega.clone()))?),
                (None, Some(n)) => Some(lib(make_field(omega, n, cfg.margin.unwrap_or(0.05), seed))?),
                (None, None) => None,
            };
            let csv = match field {
                Some(f) => lib(sample_on_set(&f, set, window, pitch))?.to_csv(),
                None => samples_csv(&lib(sample_points(set, window, pitch))?, set.dim()),
            };
            write(out, &names.samples, &csv)?;
            Ok(EXIT_OK)
        }
        Action::Reconstruct => {
            let set = cfg.set.as_ref().expect("validated");
            let window = cfg.window.as_ref().expect("validated");
            let field = match &cfg.field {
                Some(f) => lib(f.clone().with_omega(omega.clone()))?,
                None => lib(make_field(omega, cfg.atoms.expect("validated"), cfg.margin.unwrap_or(0.05), seed))?,
            };
            let report = lib(reconstruct_and_error(&field, set, window, cfg.pitch.expect("validated"), cfg.probe.unwrap_or(32)))?;
            write_json(out, &names.reconstruction, &report)?;
            Ok(EXIT_OK)
        }
        Action::Report => {
            let set = cfg.set.as_ref().expect("validated");
            let sweep = cfg.sweep.as_ref().expect("validated");
            let mut csv = String::from("delta,verdict,density\n");
            for k in 0..sweep.steps {
                let delta = if k + 1 == sweep.steps {
                    sweep.to
                } else {
                    sweep.from + (sweep.to - sweep.from) * k as f64 / (sweep.steps - 1) as f64
                };
                let s = lib(with_spacing(set, delta))?;
                let v = lib(check(&s, omega))?;
                let _ = writeln!(csv, "{delta},{},{}", status_name(v.status), lib(density(&s))?);
            }
            write(out, &names.report, &csv)?;
            Ok(EXIT_OK)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spacing_keeps_ratios() {
        let u = UnionUniform2D::new(vec![
            UniformLines2D::new([0.5, 0.0], [1.0, 0.0], 2.0).unwrap(),
            UniformLines2D::new([0.0, 0.0], [0.0, 1.0], 1.0).unwrap(),
        ])
        .unwrap();
        match with_spacing(&TrajectorySet::UnionUniform2d(u), 3.0).unwrap() {
            TrajectorySet::UnionUniform2d(v) => {
                assert_eq!(v.parts()[0].spacing(), 3.0);
                assert_eq!(v.parts()[1].spacing(), 1.5);
                assert_eq!(v.parts()[0].offset(), [0.5, 0.0]);
            }
            other => panic!("{other:?}"),
        }
        let s = TrajectorySet::Spirals(SpiralSet::new(6.0, 3).unwrap());
        match with_spacing(&s, 1.0).unwrap() {
            TrajectorySet::Spirals(t) => assert_eq!(t.arm_gap(), 1.0),
            other => panic!("{other:?}"),
        }
        let lines = UniformLinesD::new(vec![vec![2.0, 0.0], vec![0.0, 1.0]], None).unwrap();
        match with_spacing(&TrajectorySet::UniformLinesD(lines), 0.5).unwrap() {
            TrajectorySet::UniformLinesD(l) => assert_eq!(l.basis()[0], vec![0.5, 0.0]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(Status::Nyquist), 0);
        assert_eq!(exit_code(Status::SufficientOnly), 0);
        assert_eq!(exit_code(Status::NotNyquist), 2);
        assert_eq!(exit_code(Status::Critical), 3);
        assert_eq!(exit_code(Status::Unknown), 3);
        assert_eq!(status_name(Status::NotNyquist), "not_nyquist");
    }
}
