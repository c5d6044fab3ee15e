//! Fourier series of an atom field read along a circle, via Bessel functions.
//!
//! Along r(t) = a (cos nu t, sin nu t) an atom c exp(i<omega, r>) with
//! omega = |omega| (cos beta, sin beta) expands by Jacobi-Anger as
//! sum_k c i^k exp(-i k beta) J_k(a |omega|) exp(i k nu t). The coefficients
//! below use exactly this normalisation, so the full series reproduces f on
//! the circle and truncation is the only approximation.

use num_complex::Complex64;

use super::AtomField;
use crate::error::{Error, Result};
use crate::linalg::norm;

/// J_n(x) for integer n.
pub fn bessel_j(n: i32, x: f64) -> f64 {
    let m = n.unsigned_abs() as usize;
    let (xa, sign_x) = if x < 0.0 { (-x, if m % 2 == 1 { -1.0 } else { 1.0 }) } else { (x, 1.0) };
    let sign_n = if n < 0 && m % 2 == 1 { -1.0 } else { 1.0 };
    sign_x * sign_n * bessel_j_upto(m, xa)[m]
}

/// J_0(x), ..., J_n(x) for x >= 0.
pub fn bessel_j_upto(n: usize, x: f64) -> Vec<f64> {
    assert!(x >= 0.0 && x.is_finite(), "argument must be finite and nonnegative");
    if x == 0.0 {
        let mut out = vec![0.0; n + 1];
        out[0] = 1.0;
        return out;
    }
    if x <= 1.0 {
        return (0..=n).map(|k| series(k, x)).collect();
    }
    miller(n, x)
}

/// Power series sum_m (-1)^m (x/2)^(2m+n) / (m! (m+n)!).
fn series(n: usize, x: f64) -> f64 {
    let h = 0.5 * x;
    let mut term = 1.0;
    for k in 1..=n {
        term *= h / k as f64;
    }
    let mut sum = term;
    for m in 1..200 {
        term *= -h * h / (m as f64 * (m + n) as f64);
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

/// Backward recurrence from far above max(n, x), normalised by
/// J_0 + 2 sum J_2k = 1.
fn miller(n: usize, x: f64) -> Vec<f64> {
    let top = n.max(x as usize);
    let start = 2 * ((top + 20 + (40.0 * top as f64).sqrt() as usize) / 2);
    let mut j = vec![0.0; start + 2];
    j[start] = 1e-30;
    let mut norm_sum = 0.0;
    for k in (1..=start).rev() {
        j[k - 1] = 2.0 * k as f64 / x * j[k] - j[k + 1];
        if j[k - 1].abs() > 1e250 {
            for v in j.iter_mut() {
                *v *= 1e-250;
            }
            norm_sum *= 1e-250;
        }
        if (k - 1) % 2 == 0 && k > 1 {
            norm_sum += 2.0 * j[k - 1];
        }
    }
    norm_sum += j[0];
    j.truncate(n + 1);
    j.iter().map(|v| v / norm_sum).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct CircleSeries {
    pub radius: f64,
    pub nu: f64,
    pub k_bar: usize,
    /// s_k for k = -k_bar ..= k_bar.
    pub coeffs: Vec<Complex64>,
}

impl CircleSeries {
    pub fn coeff(&self, k: i64) -> Complex64 {
        let kb = self.k_bar as i64;
        if k.abs() > kb {
            Complex64::default()
        } else {
            self.coeffs[(k + kb) as usize]
        }
    }

    /// Truncated series at time t.
    pub fn eval(&self, t: f64) -> Complex64 {
        let kb = self.k_bar as i64;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, s)| s * Complex64::from_polar(1.0, (i as i64 - kb) as f64 * self.nu * t))
            .sum()
    }

    pub fn point(&self, t: f64) -> [f64; 2] {
        [self.radius * (self.nu * t).cos(), self.radius * (self.nu * t).sin()]
    }
}

/// Series truncated at k_bar = ceil(1 + a sup|omega|), the effective bandwidth
/// of the circle signal divided by nu. The supremum is over the attached body
/// when present, otherwise over the atoms.
pub fn circle_series(field: &AtomField, a: f64, nu: f64) -> Result<CircleSeries> {
    let sup = match &field.omega_ref {
        Some(omega) => omega.circumradius(),
        None => field.atoms().iter().map(|x| norm(&x.omega)).fold(0.0, f64::max),
    };
    let k_bar = (1.0 + a * sup).ceil() as usize;
    circle_series_with_order(field, a, nu, k_bar)
}

pub fn circle_series_with_order(field: &AtomField, a: f64, nu: f64, k_bar: usize) -> Result<CircleSeries> {
    if field.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, got: field.dim() });
    }
    if !(a > 0.0 && nu > 0.0 && a.is_finite() && nu.is_finite()) {
        return Err(Error::InvalidInput("radius and angular velocity must be positive".into()));
    }
    let kb = k_bar as i64;
    let mut coeffs = vec![Complex64::default(); 2 * k_bar + 1];
    for atom in field.atoms() {
        let r = norm(&atom.omega);
        let beta = atom.omega[1].atan2(atom.omega[0]);
        let j = bessel_j_upto(k_bar, a * r);
        for k in -kb..=kb {
            let jk = if k < 0 && k % 2 != 0 { -j[k.unsigned_abs() as usize] } else { j[k.unsigned_abs() as usize] };
            let ik = Complex64::i().powi(k.rem_euclid(4) as i32);
            coeffs[(k + kb) as usize] += atom.coeff * ik * Complex64::from_polar(jk, -(k as f64) * beta);
        }
    }
    Ok(CircleSeries { radius: a, nu, k_bar, coeffs })
}
