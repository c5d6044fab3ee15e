//! Integer-lattice utilities: LLL reduction and bounded shortest-vector search.

use crate::linalg::{dot, norm};

/// LLL-reduced copy of `basis` (rows) with delta = 0.99.
pub fn lll(basis: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let mut b = basis.to_vec();
    let n = b.len();
    if n < 2 {
        return b;
    }
    let mut k = 1;
    let mut guard = 0;
    while k < n && guard < 10_000 {
        guard += 1;
        for j in (0..k).rev() {
            let (_, mu) = gram_schmidt(&b);
            let q = mu[k][j].round();
            if q != 0.0 {
                let bj = b[j].clone();
                for (x, y) in b[k].iter_mut().zip(&bj) {
                    *x -= q * y;
                }
            }
        }
        let (bstar, mu) = gram_schmidt(&b);
        let lhs = dot(&bstar[k], &bstar[k]);
        let rhs = (0.99 - mu[k][k - 1] * mu[k][k - 1]) * dot(&bstar[k - 1], &bstar[k - 1]);
        if lhs >= rhs {
            k += 1;
        } else {
            b.swap(k, k - 1);
            k = (k - 1).max(1);
        }
    }
    b
}

fn gram_schmidt(b: &[Vec<f64>]) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
    let n = b.len();
    let mut bstar: Vec<Vec<f64>> = Vec::with_capacity(n);
    let mut mu = vec![vec![0.0; n]; n];
    for i in 0..n {
        let mut v = b[i].clone();
        for j in 0..i {
            let d = dot(&bstar[j], &bstar[j]);
            mu[i][j] = if d > 0.0 { dot(&b[i], &bstar[j]) / d } else { 0.0 };
            for (x, y) in v.iter_mut().zip(&bstar[j]) {
                *x -= mu[i][j] * y;
            }
        }
        bstar.push(v);
    }
    (bstar, mu)
}

/// Shortest nonzero combination of the rows of `basis` with coefficients
/// bounded by `bound` in max-norm. Returns (coefficients, vector); ties go to
/// the first candidate in lexicographic coefficient order.
pub fn shortest_combination(basis: &[Vec<f64>], bound: i64) -> (Vec<i64>, Vec<f64>) {
    let n = basis.len();
    let d = basis[0].len();
    let mut best: Option<(f64, Vec<i64>, Vec<f64>)> = None;
    let mut m = vec![-bound; n];
    loop {
        if m.iter().any(|&x| x != 0) {
            let mut v = vec![0.0; d];
            for (c, b) in m.iter().zip(basis) {
                for (x, y) in v.iter_mut().zip(b) {
                    *x += *c as f64 * y;
                }
            }
            let len = norm(&v);
            if best.as_ref().is_none_or(|(l, _, _)| len < *l * (1.0 - 1e-12)) {
                best = Some((len, m.clone(), v));
            }
        }
        let mut i = n;
        loop {
            if i == 0 {
                let (_, c, v) = best.expect("basis is nonempty");
                return (c, v);
            }
            i -= 1;
            if m[i] < bound {
                m[i] += 1;
                break;
            }
            m[i] = -bound;
        }
    }
}

/// Shortest nonzero lattice vector: LLL, then enumeration over |m|_inf <= 8
/// in the reduced basis. Coefficients are returned in the original basis.
pub fn shortest_vector(basis: &[Vec<f64>]) -> (Vec<i64>, Vec<f64>) {
    let reduced = lll(basis);
    let (_, v) = shortest_combination(&reduced, 8);
    let m = coordinates(basis, &v);
    (m, v)
}

/// Integer coordinates of a lattice vector `v` in `basis` (rows).
pub fn coordinates(basis: &[Vec<f64>], v: &[f64]) -> Vec<i64> {
    let n = basis.len();
    let g = nalgebra::DMatrix::from_fn(n, n, |i, j| dot(&basis[i], &basis[j]));
    let rhs: Vec<f64> = basis.iter().map(|b| dot(b, v)).collect();
    crate::linalg::solve(g, &rhs)
        .map(|x| x.iter().map(|c| c.round() as i64).collect())
        .unwrap_or_else(|| vec![0; n])
}
