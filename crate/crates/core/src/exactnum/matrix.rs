use std::ops::{Index, IndexMut};

use super::scalar::{Scalar, DEFAULT_RANK_TOL};
use crate::error::Error;

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

/// Reduced row echelon form with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref<S> {
    pub matrix: Matrix<S>,
    pub pivots: Vec<usize>,
}

impl<S> Index<(usize, usize)> for Matrix<S> {
    type Output = S;
    fn index(&self, (r, c): (usize, usize)) -> &S {
        &self.data[r * self.cols + c]
    }
}

impl<S> IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut S {
        &mut self.data[r * self.cols + c]
    }
}

impl<S: Clone> Matrix<S> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<S>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        Matrix { rows, cols, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self, Error> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::Shape("ragged matrix rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(ambient: usize, cols: &[Vec<S>]) -> Self {
        Matrix::from_fn(ambient, cols.len(), |r, c| cols[c][r].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn row(&self, r: usize) -> &[S] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<S> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<S>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn block(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> Self {
        Matrix::from_fn(nr, nc, |r, c| self[(r0 + r, c0 + c)].clone())
    }

    pub fn select_columns(&self, idx: &[usize]) -> Self {
        Matrix::from_fn(self.rows, idx.len(), |r, c| self[(r, idx[c])].clone())
    }

    pub fn hstack(&self, o: &Self) -> Self {
        assert_eq!(self.rows, o.rows, "hstack row count");
        Matrix::from_fn(self.rows, self.cols + o.cols, |r, c| {
            if c < self.cols { self[(r, c)].clone() } else { o[(r, c - self.cols)].clone() }
        })
    }

    pub fn vstack(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.cols, "vstack column count");
        let mut data = self.data.clone();
        data.extend(o.data.iter().cloned());
        Matrix { rows: self.rows + o.rows, cols: self.cols, data }
    }

    pub fn map<T: Clone>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn entries(&self) -> &[S] {
        &self.data
    }
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |r, c| if r == c { S::one() } else { S::zero() })
    }

    pub fn scalar(n: usize, s: S) -> Self {
        Matrix::from_fn(n, n, |r, c| if r == c { s.clone() } else { S::zero() })
    }

    pub fn block_diag(a: &Self, b: &Self) -> Self {
        Matrix::from_fn(a.rows + b.rows, a.cols + b.cols, |r, c| {
            if r < a.rows && c < a.cols {
                a[(r, c)].clone()
            } else if r >= a.rows && c >= a.cols {
                b[(r - a.rows, c - a.cols)].clone()
            } else {
                S::zero()
            }
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn conj(&self) -> Self {
        self.map(|x| x.conj())
    }

    pub fn adjoint(&self) -> Self {
        self.transpose().conj()
    }

    pub fn scale(&self, s: &S) -> Self {
        self.map(|x| x.mul_by(s))
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.shape(), o.shape(), "matrix add shape");
        Matrix::from_fn(self.rows, self.cols, |r, c| self[(r, c)].clone() + o[(r, c)].clone())
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!(self.shape(), o.shape(), "matrix sub shape");
        Matrix::from_fn(self.rows, self.cols, |r, c| self[(r, c)].clone() - o[(r, c)].clone())
    }

    pub fn neg(&self) -> Self {
        self.map(|x| -x.clone())
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "matrix mul shape");
        let mut out = Matrix::<S>::zeros(self.rows, o.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..o.cols {
                    let b = &o[(k, c)];
                    if !b.is_zero() {
                        let cur = out[(r, c)].clone();
                        out[(r, c)] = cur + a.mul_by(b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape");
        (0..self.rows)
            .map(|r| {
                let mut acc = S::zero();
                for (c, x) in v.iter().enumerate() {
                    let a = &self[(r, c)];
                    if !a.is_zero() && !x.is_zero() {
                        acc = acc + a.mul_by(x);
                    }
                }
                acc
            })
            .collect()
    }

    /// Largest entry modulus, used to scale float tolerances.
    pub fn max_modulus(&self) -> f64 {
        self.data.iter().map(|x| x.modulus()).fold(0.0, f64::max)
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|x| x.modulus().powi(2)).sum::<f64>().sqrt()
    }

    /// Gauss-Jordan elimination. Exact scalars pivot on the earliest nonzero row;
    /// floats pivot on the largest modulus (earliest on ties).
    pub fn rref(&self, tol: f64) -> Rref<S> {
        let mut m = self.clone();
        let scale = if S::EXACT { 1.0 } else { self.max_modulus() };
        let mut pivots = Vec::new();
        let mut pr = 0;
        for c in 0..m.cols {
            if pr == m.rows {
                break;
            }
            let mut best: Option<usize> = None;
            if S::EXACT {
                best = (pr..m.rows).find(|&r| !m[(r, c)].is_zero());
            } else {
                let mut bm = 0.0;
                for r in pr..m.rows {
                    let v = m[(r, c)].modulus();
                    if v > bm {
                        bm = v;
                        best = Some(r);
                    }
                }
                if let Some(b) = best {
                    if m[(b, c)].is_negligible(tol, scale) {
                        best = None;
                    }
                }
            }
            let Some(p) = best else { continue };
            m.swap_rows(p, pr);
            let inv = S::one() / m[(pr, c)].clone();
            for j in c..m.cols {
                if !m[(pr, j)].is_zero() {
                    m[(pr, j)] = m[(pr, j)].mul_by(&inv);
                }
            }
            for r in 0..m.rows {
                if r == pr {
                    continue;
                }
                let f = m[(r, c)].clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let pv = &m.data[pr * m.cols + j];
                    if pv.is_zero() {
                        continue;
                    }
                    let nv = m.data[r * m.cols + j].sub_mul(&f, pv);
                    m.data[r * m.cols + j] = nv;
                }
                if !S::EXACT {
                    m[(r, c)] = S::zero();
                }
            }
            pivots.push(c);
            pr += 1;
        }
        if !S::EXACT {
            for x in m.data.iter_mut() {
                if x.is_negligible(tol, scale.max(1.0)) {
                    *x = S::zero();
                }
            }
        }
        Rref { matrix: m, pivots }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rank_tol(DEFAULT_RANK_TOL)
    }

    pub fn rank_tol(&self, tol: f64) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        S::rank_of(self, tol)
    }

    /// Nullspace basis, reduced-echelon-normalized (as rows) with earliest pivots.
    pub fn nullspace(&self) -> Vec<Vec<S>> {
        self.nullspace_tol(DEFAULT_RANK_TOL)
    }

    pub fn nullspace_tol(&self, tol: f64) -> Vec<Vec<S>> {
        if self.cols == 0 {
            return Vec::new();
        }
        if self.rows == 0 {
            return (0..self.cols).map(|i| unit_vec(self.cols, i)).collect();
        }
        S::nullspace_of(self, tol)
    }

    /// Elimination-based nullspace (the exact path; also usable with floats).
    pub fn rref_nullspace_exact(&self, tol: f64) -> Vec<Vec<S>> {
        let rr = self.rref(tol);
        let mut basis = Vec::new();
        let mut is_pivot = vec![false; self.cols];
        for &p in &rr.pivots {
            is_pivot[p] = true;
        }
        for f in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![S::zero(); self.cols];
            v[f] = S::one();
            for (r, &p) in rr.pivots.iter().enumerate() {
                v[p] = -rr.matrix[(r, f)].clone();
            }
            basis.push(v);
        }
        canonical_rows(basis, tol)
    }

    /// Canonical basis of the column space: reduced column echelon form, zero columns dropped.
    pub fn column_basis(&self, tol: f64) -> Matrix<S> {
        let rr = self.transpose().rref(tol);
        let k = rr.pivots.len();
        rr.matrix.block(0, 0, k, self.rows).transpose()
    }

    pub fn det(&self) -> Result<S, Error> {
        if !self.is_square() {
            return Err(Error::Shape(format!("determinant of {}x{} matrix", self.rows, self.cols)));
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = S::one();
        for c in 0..n {
            let p = if S::EXACT {
                (c..n).find(|&r| !m[(r, c)].is_zero())
            } else {
                (c..n)
                    .max_by(|&a, &b| m[(a, c)].modulus().total_cmp(&m[(b, c)].modulus()).then(b.cmp(&a)))
                    .filter(|&r| !m[(r, c)].is_zero())
            };
            let Some(p) = p else { return Ok(S::zero()) };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m[(c, c)].clone();
            det = det.mul_by(&piv);
            let inv = S::one() / piv;
            for r in c + 1..n {
                let f = m[(r, c)].mul_by(&inv);
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let pv = m[(c, j)].clone();
                    if !pv.is_zero() {
                        m[(r, j)] = m[(r, j)].sub_mul(&f, &pv);
                    }
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Self, Error> {
        if !self.is_square() {
            return Err(Error::Shape("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(n));
        let rr = aug.rref(DEFAULT_RANK_TOL);
        if rr.pivots.len() < n || rr.pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        Ok(rr.matrix.block(0, n, n, n))
    }

    /// Solves `self * x = b` for square invertible `self`.
    pub fn solve(&self, b: &Self) -> Result<Self, Error> {
        Ok(self.inverse()?.mul(b))
    }

    /// Canonical basis of the intersection of two column spaces.
    pub fn intersect_columns(&self, o: &Self, tol: f64) -> Matrix<S> {
        assert_eq!(self.rows, o.rows, "ambient dimension");
        if self.cols == 0 || o.cols == 0 {
            return Matrix::zeros(self.rows, 0);
        }
        let sys = self.hstack(&o.neg());
        let null = sys.nullspace_tol(tol);
        let vecs: Vec<Vec<S>> = null.iter().map(|v| self.mul_vec(&v[..self.cols])).collect();
        Matrix::from_columns(self.rows, &vecs).column_basis(tol)
    }

    pub fn approx_eq(&self, o: &Self, tol: f64) -> bool {
        self.shape() == o.shape()
            && self.data.iter().zip(&o.data).all(|(a, b)| (a.clone() - b.clone()).modulus() <= tol)
    }
}

pub fn unit_vec<S: Scalar>(n: usize, i: usize) -> Vec<S> {
    let mut v = vec![S::zero(); n];
    v[i] = S::one();
    v
}

/// Reduced echelon form of a list of row vectors, zero rows dropped.
pub fn canonical_rows<S: Scalar>(rows: Vec<Vec<S>>, tol: f64) -> Vec<Vec<S>> {
    if rows.is_empty() {
        return rows;
    }
    let n = rows[0].len();
    let m = Matrix::from_rows(rows).expect("uniform vector length");
    let rr = m.rref(tol);
    (0..rr.pivots.len()).map(|r| rr.matrix.row(r)[..n].to_vec()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::GaussianRational as G;

    fn m(rows: Vec<Vec<i64>>) -> Matrix<G> {
        Matrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(G::from).collect()).collect()).unwrap()
    }

    #[test]
    fn rref_nullspace_examples() {
        let id = m(vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(id.rank(), 2);
        assert!(id.nullspace().is_empty());

        let z = Matrix::<G>::zeros(3, 3);
        assert_eq!(z.rank(), 0);
        assert_eq!(z.nullspace(), vec![unit_vec(3, 0), unit_vec(3, 1), unit_vec(3, 2)]);

        let ones = m(vec![vec![1, 1], vec![1, 1]]);
        assert_eq!(ones.rank(), 1);
        assert_eq!(ones.nullspace(), vec![vec![G::from(1), G::from(-1)]]);
    }

    #[test]
    fn det_and_inverse() {
        let a = m(vec![vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]]);
        assert_eq!(a.det().unwrap(), G::from(18));
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(3));
    }

    #[test]
    fn intersection() {
        let u = m(vec![vec![1, 0], vec![0, 1], vec![0, 0]]);
        let w = m(vec![vec![0, 0], vec![1, 0], vec![0, 1]]);
        let i = u.intersect_columns(&w, 0.0);
        assert_eq!(i, m(vec![vec![0], vec![1], vec![0]]));
    }
}
