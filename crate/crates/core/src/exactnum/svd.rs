use nalgebra::DMatrix;
use num_complex::Complex;

use super::matrix::{canonical_rows, Matrix};
use super::scalar::FloatReal;

fn to_nalgebra<T: FloatReal>(m: &Matrix<Complex<T>>, pad_rows: usize) -> DMatrix<Complex<T>> {
    let rows = m.rows().max(pad_rows);
    DMatrix::from_fn(rows, m.cols(), |r, c| if r < m.rows() { m[(r, c)] } else { Complex::new(T::zero(), T::zero()) })
}

/// Singular values in decreasing order.
pub fn singular_values<T: FloatReal>(m: &Matrix<Complex<T>>) -> Vec<f64> {
    if m.rows() == 0 || m.cols() == 0 {
        return Vec::new();
    }
    let sv = to_nalgebra(m, 0).singular_values();
    let mut v: Vec<f64> = sv.iter().map(|x| x.to_f64_lossy()).collect();
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

/// Number of singular values above `tol` times the largest.
pub fn svd_rank<T: FloatReal>(m: &Matrix<Complex<T>>, tol: f64) -> usize {
    let sv = singular_values(m);
    let Some(&top) = sv.first() else { return 0 };
    if top == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > tol * top).count()
}

/// Right-singular vectors for negligible singular values, echelon-normalized.
pub fn svd_nullspace<T: FloatReal>(m: &Matrix<Complex<T>>, tol: f64) -> Vec<Vec<Complex<T>>> {
    let n = m.cols();
    if n == 0 {
        return Vec::new();
    }
    if m.rows() == 0 {
        return (0..n).map(|i| crate::exactnum::unit_vec(n, i)).collect();
    }
    let a = to_nalgebra(m, n);
    let svd = a.svd(false, true);
    let vt = svd.v_t.expect("requested right singular vectors");
    let top = svd.singular_values.iter().map(|x| x.to_f64_lossy()).fold(0.0, f64::max);
    let mut basis = Vec::new();
    for (k, s) in svd.singular_values.iter().enumerate() {
        if top == 0.0 || s.to_f64_lossy() <= tol * top {
            basis.push((0..n).map(|c| vt[(k, c)].conj()).collect::<Vec<_>>());
        }
    }
    canonical_rows(basis, tol)
}

/// Smallest singular value and a corresponding right singular vector.
pub fn smallest_singular_pair<T: FloatReal>(m: &Matrix<Complex<T>>) -> (f64, Vec<Complex<T>>) {
    let n = m.cols();
    let a = to_nalgebra(m, n);
    let svd = a.svd(false, true);
    let vt = svd.v_t.expect("requested right singular vectors");
    let (k, s) = svd
        .singular_values
        .iter()
        .enumerate()
        .map(|(k, s)| (k, s.to_f64_lossy()))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("nonempty matrix");
    (s, (0..n).map(|c| vt[(k, c)].conj()).collect())
}
