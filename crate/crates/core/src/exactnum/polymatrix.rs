use super::bipoly::BiPoly;
use super::matrix::Matrix;
use super::scalar::Scalar;
use crate::error::Error;

/// Matrix of bivariate polynomials with a declared bidegree bound per column.
#[derive(Clone, Debug)]
pub struct PolyMatrix<S> {
    rows: usize,
    cols: usize,
    entries: Vec<BiPoly<S>>,
    tags: Vec<(usize, usize)>,
}

impl<S: Scalar> PartialEq for PolyMatrix<S> {
    fn eq(&self, o: &Self) -> bool {
        self.rows == o.rows && self.cols == o.cols && self.tags == o.tags && self.entries == o.entries
    }
}

impl<S: Scalar> PolyMatrix<S> {
    pub fn new(rows: Vec<Vec<BiPoly<S>>>, tags: Vec<(usize, usize)>) -> Result<Self, Error> {
        let nr = rows.len();
        let nc = tags.len();
        let mut entries = Vec::with_capacity(nr * nc);
        for (r, row) in rows.into_iter().enumerate() {
            if row.len() != nc {
                return Err(Error::Shape(format!("row {r} has {} entries, expected {nc}", row.len())));
            }
            for (c, p) in row.into_iter().enumerate() {
                let (k1, k2) = tags[c];
                entries.push(p.with_bounds(k1, k2).map_err(|_| {
                    Error::Bidegree(format!("entry ({r},{c}) exceeds column bound ({k1},{k2})"))
                })?);
            }
        }
        Ok(PolyMatrix { rows: nr, cols: nc, entries, tags })
    }

    /// Column tags are taken as the actual maximal degrees in each column.
    pub fn from_entries(rows: Vec<Vec<BiPoly<S>>>) -> Result<Self, Error> {
        let nc = rows.first().map_or(0, Vec::len);
        let mut tags = vec![(0, 0); nc];
        for row in &rows {
            if row.len() != nc {
                return Err(Error::Shape("ragged polynomial matrix".into()));
            }
            for (c, p) in row.iter().enumerate() {
                let (a, b) = p.degrees();
                tags[c] = (tags[c].0.max(a), tags[c].1.max(b));
            }
        }
        PolyMatrix::new(rows, tags)
    }

    pub fn from_fn(rows: usize, tags: Vec<(usize, usize)>, mut f: impl FnMut(usize, usize) -> BiPoly<S>) -> Result<Self, Error> {
        let cols = tags.len();
        PolyMatrix::new((0..rows).map(|r| (0..cols).map(|c| f(r, c)).collect()).collect(), tags)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn tags(&self) -> &[(usize, usize)] {
        &self.tags
    }

    pub fn entry(&self, r: usize, c: usize) -> &BiPoly<S> {
        &self.entries[r * self.cols + c]
    }

    pub fn to_rows(&self) -> Vec<Vec<BiPoly<S>>> {
        (0..self.rows).map(|r| self.entries[r * self.cols..(r + 1) * self.cols].to_vec()).collect()
    }

    pub fn eval(&self, z: &S, w: &S) -> Matrix<S> {
        Matrix::from_fn(self.rows, self.cols, |r, c| self.entry(r, c).eval(z, w))
    }

    /// Coefficient matrix of `ζ^i η^j` for every column (entries outside a column bound are zero).
    pub fn coeff_matrix(&self, i: usize, j: usize) -> Matrix<S> {
        Matrix::from_fn(self.rows, self.cols, |r, c| self.entry(r, c).coeff(i, j))
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T + Copy) -> PolyMatrix<T> {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|p| p.map(f)).collect(),
            tags: self.tags.clone(),
        }
    }

    /// Bound on the bidegree of the determinant: column-wise sums of the tags.
    pub fn det_bound(&self) -> (usize, usize) {
        self.tags.iter().fold((0, 0), |(a, b), &(x, y)| (a + x, b + y))
    }

    /// Exact determinant by evaluation on a grid and two-variable interpolation.
    pub fn det(&self) -> Result<BiPoly<S>, Error> {
        if self.rows != self.cols {
            return Err(Error::Shape(format!("determinant of a {}x{} matrix", self.rows, self.cols)));
        }
        if self.rows == 0 {
            return Ok(BiPoly::constant(S::one()));
        }
        let (d1, d2) = self.det_bound();
        let xs = nodes::<S>(d1 + 1);
        let ys = nodes::<S>(d2 + 1);
        // values[a][b] = det M(xs[a], ys[b])
        let values: Vec<Vec<S>> = xs
            .iter()
            .map(|x| ys.iter().map(|y| self.eval(x, y).det().expect("square")).collect())
            .collect();
        // interpolate in η for each ζ node, then in ζ for each η power
        let eta_polys: Vec<Vec<S>> = values.iter().map(|row| interpolate(&ys, row)).collect();
        let mut table = vec![vec![S::zero(); d2 + 1]; d1 + 1];
        for j in 0..=d2 {
            let col: Vec<S> = eta_polys.iter().map(|p| p[j].clone()).collect();
            for (i, c) in interpolate(&xs, &col).into_iter().enumerate() {
                table[i][j] = c;
            }
        }
        if !S::EXACT {
            let scale = table.iter().flatten().map(|c| c.modulus()).fold(0.0, f64::max);
            for c in table.iter_mut().flatten() {
                if c.is_negligible(1e-13, scale) {
                    *c = S::zero();
                }
            }
        }
        BiPoly::from_table(table)
    }
}

/// Interpolation nodes: integers for exact scalars, roots of unity for floats.
fn nodes<S: Scalar>(n: usize) -> Vec<S> {
    if S::EXACT {
        (0..n as i64).map(S::from_i64).collect()
    } else {
        (0..n)
            .map(|k| {
                let t = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
                S::from_c64(num_complex::Complex64::from_polar(1.0, t)).expect("float scalar")
            })
            .collect()
    }
}

/// Monomial coefficients of the interpolating polynomial (Newton form, then expanded).
pub fn interpolate<S: Scalar>(xs: &[S], ys: &[S]) -> Vec<S> {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (dd[i].clone() - dd[i - 1].clone()) / (xs[i].clone() - xs[i - level].clone());
        }
    }
    let mut out = vec![S::zero(); n];
    for i in (0..n).rev() {
        // out = out * (x - xs[i]) + dd[i]
        let mut next = vec![S::zero(); n];
        for k in 0..n {
            if out[k].is_zero() {
                continue;
            }
            if k + 1 < n {
                next[k + 1] = next[k + 1].clone() + out[k].clone();
            }
            next[k] = next[k].sub_mul(&out[k], &xs[i]);
        }
        next[0] = next[0].clone() + dd[i].clone();
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::GaussianRational as G;

    fn z() -> BiPoly<G> {
        BiPoly::zeta()
    }
    fn e() -> BiPoly<G> {
        BiPoly::eta()
    }
    fn c(v: i64) -> BiPoly<G> {
        BiPoly::constant(G::from(v))
    }

    #[test]
    fn spec_examples() {
        let d = PolyMatrix::from_entries(vec![vec![z(), c(0)], vec![c(0), e()]]).unwrap();
        assert_eq!(d.det().unwrap(), z().mul(&e()));
        let m = PolyMatrix::from_entries(vec![vec![z(), c(-1)], vec![c(1), e()]]).unwrap();
        assert_eq!(m.det().unwrap(), z().mul(&e()).add(&c(1)));
        let s = PolyMatrix::from_entries(vec![vec![c(7)]]).unwrap();
        assert_eq!(s.det().unwrap(), c(7));
        let r = PolyMatrix::from_entries(vec![vec![z(), e()]]).unwrap();
        assert!(r.det().is_err());
    }

    #[test]
    fn column_bounds_enforced() {
        let bad = PolyMatrix::new(vec![vec![z().mul(&z())]], vec![(1, 0)]);
        assert!(matches!(bad, Err(Error::Bidegree(_))));
    }
}
