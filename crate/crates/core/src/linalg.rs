//! Small dense linear-algebra helpers on top of nalgebra.
//!
//! Complex problems are solved through the real embedding
//! `B + iC ↦ [[B, −C], [C, B]]`, which preserves norms and for which the
//! real SVD is used.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

/// Eigenpairs of `aᵀa`, eigenvalues ascending.
fn gram_eigen(a: &DMatrix<f64>) -> Vec<(f64, DVector<f64>)> {
    let eigen = (a.transpose() * a).symmetric_eigen();
    let mut pairs: Vec<(f64, DVector<f64>)> = eigen
        .eigenvalues
        .iter()
        .enumerate()
        .map(|(i, &l)| (l.max(0.0), eigen.eigenvectors.column(i).into_owned()))
        .collect();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
    pairs
}

/// Orthonormal basis (as columns) of the null space of `a`: eigenvectors
/// of `aᵀa` whose singular value is below `√tol · max(1, σ_max)`.
pub fn nullspace(a: &DMatrix<f64>, tol: f64) -> DMatrix<f64> {
    let cols = a.ncols();
    if cols == 0 {
        return DMatrix::zeros(0, 0);
    }
    let pairs = gram_eigen(a);
    let scale = pairs.iter().fold(1.0f64, |m, p| m.max(p.0));
    let keep: Vec<&DVector<f64>> = pairs
        .iter()
        .filter(|p| p.0 <= tol * scale)
        .map(|p| &p.1)
        .collect();
    DMatrix::from_fn(cols, keep.len(), |r, j| keep[j][r])
}

pub fn realify(a: &DMatrix<Complex64>) -> DMatrix<f64> {
    let (m, n) = a.shape();
    DMatrix::from_fn(2 * m, 2 * n, |i, j| {
        let z = a[(i % m, j % n)];
        match (i < m, j < n) {
            (true, true) | (false, false) => z.re,
            (true, false) => -z.im,
            (false, true) => z.im,
        }
    })
}

fn realify_vector(b: &DVector<Complex64>) -> DVector<f64> {
    let m = b.len();
    DVector::from_fn(2 * m, |i, _| if i < m { b[i].re } else { b[i - m].im })
}

fn complexify_vector(v: &DVector<f64>) -> DVector<Complex64> {
    let n = v.len() / 2;
    DVector::from_fn(n, |i, _| Complex64::new(v[i], v[i + n]))
}

/// Right singular vector of the smallest singular value, with that value.
pub fn smallest_singular_vector(a: &DMatrix<Complex64>) -> (DVector<Complex64>, f64) {
    let (lambda, v) = gram_eigen(&realify(a)).swap_remove(0);
    (complexify_vector(&v), lambda.sqrt())
}

/// Least-squares solution of `a x = b` (full column rank) with the residual
/// norm, by Householder QR and one step of iterative refinement.
pub fn least_squares(a: &DMatrix<Complex64>, b: &DVector<Complex64>) -> (DVector<Complex64>, f64) {
    let real = realify(a);
    let rhs = realify_vector(b);
    let qr = real.clone().qr();
    let (q, r) = (qr.q(), qr.r());
    let solve = |rhs: &DVector<f64>| r.solve_upper_triangular(&(q.transpose() * rhs));
    let Some(mut x) = solve(&rhs) else {
        return (DVector::zeros(a.ncols()), rhs.norm());
    };
    if let Some(dx) = solve(&(&rhs - &real * &x)) {
        x += dx;
    }
    let residual = (&real * &x - &rhs).norm();
    (complexify_vector(&x), residual)
}

pub fn to_complex(m: &DMatrix<f64>) -> DMatrix<Complex64> {
    m.map(|x| Complex64::new(x, 0.0))
}

/// Smallest pairwise distance between the given values, scaled by
/// `max(1, max |θ|)`.
pub fn relative_min_gap(values: &[Complex64]) -> f64 {
    let scale = values.iter().fold(1.0f64, |m, v| m.max(v.norm()));
    let mut gap = f64::INFINITY;
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            gap = gap.min((values[i] - values[j]).norm());
        }
    }
    gap / scale
}
