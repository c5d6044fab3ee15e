//! Browser demo bindings. Every export takes and returns JSON text so the
//! page needs no generated types; the `*_json` functions are the same calls
//! without the wasm boundary.

use std::f64::consts::PI;

use samptraj::design::optimal_uniform_2d;
use samptraj::nyquist::{check, locate_threshold, NyquistVerdict};
use samptraj::trajectory::{density, reciprocal_and_qset, UnionUniform2D, UniformLines2D};
use samptraj::{ConvexBody, Status, TrajectorySet};
use serde::{Deserialize, Serialize};
use wasm_bindgen::prelude::*;

const OUTLINE_POINTS: usize = 96;

#[derive(Deserialize)]
struct CheckIn {
    omega: ConvexBody,
    set: TrajectorySet,
}

#[derive(Serialize)]
struct CheckOut {
    verdict: NyquistVerdict,
    density: f64,
    outline: Vec<[f64; 2]>,
    q: Vec<Vec<f64>>,
}

#[derive(Deserialize)]
struct DesignIn {
    omega: ConvexBody,
    epsilon: f64,
}

#[derive(Serialize)]
struct DesignOut {
    set: TrajectorySet,
    density: f64,
    critical_density: f64,
    spacing: f64,
    direction: [f64; 2],
    outline: Vec<[f64; 2]>,
}

#[derive(Deserialize)]
struct SweepIn {
    omega: ConvexBody,
    /// One line family per direction, all sharing the swept spacing.
    directions: Vec<[f64; 2]>,
    from: f64,
    to: f64,
    steps: usize,
}

#[derive(Serialize)]
struct SweepRow {
    delta: f64,
    status: Status,
    density: f64,
}

#[derive(Serialize)]
struct SweepOut {
    rows: Vec<SweepRow>,
    /// Bisected first non-Nyquist spacing when the sweep brackets one.
    threshold: Option<f64>,
}

fn parse<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T, String> {
    serde_json::from_str(text).map_err(|e| e.to_string())
}

fn emit(value: &impl Serialize) -> Result<String, String> {
    serde_json::to_string(value).map_err(|e| e.to_string())
}

fn lib<T>(r: samptraj::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

/// Closed boundary polygon of a planar body, counter-clockwise.
pub fn outline(omega: &ConvexBody) -> Result<Vec<[f64; 2]>, String> {
    if omega.dim() != 2 {
        return Err(format!("the demo draws planar bodies only, got dimension {}", omega.dim()));
    }
    if let Some((c, r)) = omega.as_ball() {
        return Ok((0..OUTLINE_POINTS)
            .map(|k| {
                let t = 2.0 * PI * k as f64 / OUTLINE_POINTS as f64;
                [c[0] + r * t.cos(), c[1] + r * t.sin()]
            })
            .collect());
    }
    let vs = omega.vertices().unwrap_or_default();
    let n = vs.len() as f64;
    let (cx, cy) = vs.iter().fold((0.0, 0.0), |(x, y), v| (x + v[0] / n, y + v[1] / n));
    let mut pts: Vec<[f64; 2]> = vs.iter().map(|v| [v[0], v[1]]).collect();
    pts.sort_by(|a, b| (a[1] - cy).atan2(a[0] - cx).total_cmp(&(b[1] - cy).atan2(b[0] - cx)));
    Ok(pts)
}

fn lines(directions: &[[f64; 2]], delta: f64) -> samptraj::Result<TrajectorySet> {
    let parts = directions.iter().map(|&v| UniformLines2D::new([0.0, 0.0], v, delta)).collect::<samptraj::Result<_>>()?;
    Ok(TrajectorySet::UnionUniform2d(UnionUniform2D::new(parts)?))
}

pub fn check_json(input: &str) -> Result<String, String> {
    let CheckIn { omega, set } = parse(input)?;
    let verdict = lib(check(&set, &omega))?;
    let q = reciprocal_and_qset(&set).map(|r| r.q).unwrap_or_default();
    emit(&CheckOut { density: lib(density(&set))?, outline: outline(&omega)?, q, verdict })
}

pub fn design_json(input: &str) -> Result<String, String> {
    let DesignIn { omega, epsilon } = parse(input)?;
    let r = lib(optimal_uniform_2d(&omega, epsilon))?;
    let (spacing, direction) = match &r.set {
        TrajectorySet::UniformLines2d(l) => (l.spacing(), l.direction()),
        other => return Err(format!("unexpected design {other:?}")),
    };
    emit(&DesignOut {
        outline: outline(&omega)?,
        density: r.density,
        critical_density: r.critical_density,
        spacing,
        direction,
        set: r.set,
    })
}

pub fn sweep_json(input: &str) -> Result<String, String> {
    let s: SweepIn = parse(input)?;
    if !(s.from > 0.0 && s.to > s.from && s.steps >= 2) {
        return Err("sweep needs 0 < from < to and steps >= 2".into());
    }
    let status_at = |delta: f64| check(&lines(&s.directions, delta)?, &s.omega).map(|v| v.status);
    let mut rows = Vec::with_capacity(s.steps);
    for k in 0..s.steps {
        let delta = s.from + (s.to - s.from) * k as f64 / (s.steps - 1) as f64;
        let set = lib(lines(&s.directions, delta))?;
        rows.push(SweepRow { delta, status: lib(status_at(delta))?, density: lib(density(&set))? });
    }
    let threshold = rows
        .windows(2)
        .find(|w| w[0].status == Status::Nyquist && w[1].status != Status::Nyquist)
        .map(|w| lib(locate_threshold(status_at, w[0].delta, w[1].delta, 1e-10)).map(|t| t.estimate()))
        .transpose()?;
    emit(&SweepOut { rows, threshold })
}

/// `{omega, set}` to `{verdict, density, outline, q}`.
#[wasm_bindgen]
pub fn check_set(input: &str) -> Result<String, JsValue> {
    check_json(input).map_err(|e| JsValue::from_str(&e))
}

/// `{omega, epsilon}` to the minimum-density single line family.
#[wasm_bindgen]
pub fn design_lines(input: &str) -> Result<String, JsValue> {
    design_json(input).map_err(|e| JsValue::from_str(&e))
}

/// `{omega, directions, from, to, steps}` to verdict rows and the threshold.
#[wasm_bindgen]
pub fn sweep_spacing(input: &str) -> Result<String, JsValue> {
    sweep_json(input).map_err(|e| JsValue::from_str(&e))
}
