//! Small dense helpers on `&[f64]` vectors.

use nalgebra::{DMatrix, DVector};

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[f64], s: f64) -> Vec<f64> {
    a.iter().map(|x| x * s).collect()
}

/// `a + s * b`
pub fn axpy(a: &[f64], s: f64, b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + s * y).collect()
}

pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

pub fn normalized(a: &[f64]) -> Option<Vec<f64>> {
    let n = norm(a);
    (n > 0.0 && n.is_finite()).then(|| scale(a, 1.0 / n))
}

pub fn unit(d: usize, i: usize) -> Vec<f64> {
    let mut e = vec![0.0; d];
    e[i] = 1.0;
    e
}

pub fn solve(a: DMatrix<f64>, b: &[f64]) -> Option<Vec<f64>> {
    let rhs = DVector::from_column_slice(b);
    a.lu().solve(&rhs).map(|x| x.iter().copied().collect())
}

/// Orthonormal basis of the complement of `u` (unit), built by Gram-Schmidt
/// on the standard axes in order.
pub fn orthonormal_complement(u: &[f64]) -> Vec<Vec<f64>> {
    let d = u.len();
    let mut basis: Vec<Vec<f64>> = vec![u.to_vec()];
    for i in 0..d {
        if basis.len() == d {
            break;
        }
        let mut e = unit(d, i);
        for b in &basis {
            let c = dot(&e, b);
            e = axpy(&e, -c, b);
        }
        for b in &basis {
            let c = dot(&e, b);
            e = axpy(&e, -c, b);
        }
        if norm(&e) > 1e-8 {
            basis.push(normalized(&e).unwrap());
        }
    }
    basis.remove(0);
    basis
}

/// Orthonormal matrix whose last row is `u`, so that `U u = e_d`.
pub fn rotation_to_last_axis(u: &[f64]) -> DMatrix<f64> {
    let d = u.len();
    let mut rows = orthonormal_complement(u);
    rows.push(u.to_vec());
    DMatrix::from_fn(d, d, |i, j| rows[i][j])
}

#[cfg(test)]
pub fn mat_vec(a: &DMatrix<f64>, x: &[f64]) -> Vec<f64> {
    (0..a.nrows())
        .map(|i| (0..a.ncols()).map(|j| a[(i, j)] * x[j]).sum())
        .collect()
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
