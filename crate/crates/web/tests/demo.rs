use std::f64::consts::PI;

use samptraj_web::{check_json, design_json, outline, sweep_json};
use serde_json::{json, Value};

fn call(f: fn(&str) -> Result<String, String>, input: Value) -> Value {
    serde_json::from_str(&f(&input.to_string()).unwrap()).unwrap()
}

const DISC: &str = r#"{"dim": 2, "ball": {"center": [0, 0], "radius": 1}}"#;

fn disc() -> Value {
    serde_json::from_str(DISC).unwrap()
}

#[test]
fn check_reports_q_points_and_outline() {
    let out = call(
        check_json,
        json!({"omega": disc(), "set": {"kind": "union_uniform_2d", "parts": [
            {"v": [1, 0], "delta": 4.0}, {"v": [0, 1], "delta": 4.0}
        ]}}),
    );
    assert_eq!(out["verdict"]["status"], "nyquist");
    assert_eq!(out["density"].as_f64(), Some(0.5));
    let q = out["q"].as_array().unwrap();
    assert_eq!(q.len(), 4);
    for p in q {
        let (x, y) = (p[0].as_f64().unwrap(), p[1].as_f64().unwrap());
        assert!((x.abs() - PI / 4.0).abs() < 1e-12 && (y.abs() - PI / 4.0).abs() < 1e-12);
    }
    let ring = out["outline"].as_array().unwrap();
    assert!(ring.iter().all(|p| (p[0].as_f64().unwrap().hypot(p[1].as_f64().unwrap()) - 1.0).abs() < 1e-12));
}

#[test]
fn polygon_outline_is_counter_clockwise() {
    let quad: samptraj::ConvexBody =
        serde_json::from_value(json!({"dim": 2, "vertices": [[1, 0], [0, 1], [-1, 0], [0, -0.5]]})).unwrap();
    let ring = outline(&quad).unwrap();
    let area: f64 = (0..ring.len())
        .map(|i| {
            let (a, b) = (ring[i], ring[(i + 1) % ring.len()]);
            a[0] * b[1] - a[1] * b[0]
        })
        .sum::<f64>()
        / 2.0;
    assert!((area - 1.5).abs() < 1e-12);
    let ball3: samptraj::ConvexBody =
        serde_json::from_value(json!({"dim": 3, "ball": {"center": [0, 0, 0], "radius": 1}})).unwrap();
    assert!(outline(&ball3).is_err());
}

#[test]
fn design_matches_the_width_formula() {
    let eps = 0.1;
    let out = call(design_json, json!({"omega": disc(), "epsilon": eps}));
    let width = 2.0;
    assert!((out["density"].as_f64().unwrap() - 1.0 / (2.0 * PI / width - eps)).abs() < 1e-12);
    assert!((out["critical_density"].as_f64().unwrap() - width / (2.0 * PI)).abs() < 1e-12);
    assert!((out["spacing"].as_f64().unwrap() - (PI - eps)).abs() < 1e-12);
    let recheck = call(check_json, json!({"omega": disc(), "set": out["set"]}));
    assert_eq!(recheck["verdict"]["status"], "nyquist");
}

#[test]
fn sweep_finds_the_disc_pair_threshold() {
    let star = 2f64.sqrt() * PI;
    let out = call(
        sweep_json,
        json!({"omega": disc(), "directions": [[1, 0], [0, 1]], "from": 2.0, "to": 6.0, "steps": 40}),
    );
    let rows = out["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 40);
    for r in rows {
        let d = r["delta"].as_f64().unwrap();
        let want = if d < star { "nyquist" } else { "not_nyquist" };
        assert_eq!(r["status"], want, "delta {d}");
    }
    assert!((out["threshold"].as_f64().unwrap() - star).abs() < 1e-8);

    let flat = call(
        sweep_json,
        json!({"omega": disc(), "directions": [[1, 0]], "from": 1.0, "to": 2.0, "steps": 3}),
    );
    assert!(flat["threshold"].is_null());
}

#[test]
fn bad_input_is_an_error_message() {
    assert!(check_json("{").is_err());
    let err = sweep_json(&json!({"omega": disc(), "directions": [[1, 0]], "from": 2, "to": 1, "steps": 3}).to_string());
    assert!(err.unwrap_err().contains("sweep"));
}
