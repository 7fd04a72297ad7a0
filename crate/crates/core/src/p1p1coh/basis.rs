use crate::error::Error;
use crate::exactnum::window::{h0_dim, h1_dim, window_range};
use crate::exactnum::{BiPoly, Matrix, PolyMatrix, Scalar};

/// Line-bundle summands `O(a, b)` of a split bundle.
pub type TwistList = Vec<(i64, i64)>;

/// `(h⁰, h¹, h²)` of `O(a, b)` on `P¹×P¹` by the Künneth formula.
pub fn h_line(a: i64, b: i64) -> (usize, usize, usize) {
    let (h0a, h1a, h0b, h1b) = (h0_dim(a), h1_dim(a), h0_dim(b), h1_dim(b));
    (h0a * h0b, h0a * h1b + h1a * h0b, h1a * h1b)
}

fn nonneg(a: i64) -> std::ops::RangeInclusive<i64> {
    0..=a
}

/// Monomial basis `ζ^i η^j` of `H^deg(O(a, b))`: `H⁰` monomials; for `H¹` the block
/// `H⁰(O(a)) ⊗ H¹(O(b))` (η in its Laurent window) followed by `H¹(O(a)) ⊗ H⁰(O(b))`;
/// for `H²` both exponents in their windows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohBasis {
    pub twist: (i64, i64),
    pub degree: usize,
    pub monomials: Vec<(i64, i64)>,
}

impl CohBasis {
    pub fn new(a: i64, b: i64, degree: usize) -> Self {
        let mut monomials = Vec::new();
        let mut push = |ri: std::ops::RangeInclusive<i64>, rj: std::ops::RangeInclusive<i64>| {
            for i in ri {
                for j in rj.clone() {
                    monomials.push((i, j));
                }
            }
        };
        match degree {
            0 => push(nonneg(a), nonneg(b)),
            1 => {
                push(nonneg(a), window_range(b));
                push(window_range(a), nonneg(b));
            }
            2 => push(window_range(a), window_range(b)),
            _ => {}
        }
        CohBasis { twist: (a, b), degree, monomials }
    }

    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn index_of(&self, m: (i64, i64)) -> Option<usize> {
        // monomials are sorted within each block; blocks have disjoint exponent signs
        self.monomials.iter().position(|&x| x == m)
    }
}

/// Basis of `H^deg` of a direct sum, summand by summand.
pub fn sum_basis(twists: &[(i64, i64)], degree: usize) -> Vec<CohBasis> {
    twists.iter().map(|&(a, b)| CohBasis::new(a, b, degree)).collect()
}

/// Matrix of multiplication by `f` from `H^deg(O(a, b))` to `H^deg(O(a + p, b + q))`:
/// product then truncation to the target windows.
pub fn mult_poly<S: Scalar>(f: &BiPoly<S>, src: &CohBasis, dst: &CohBasis) -> Matrix<S> {
    let mut m = Matrix::zeros(dst.dim(), src.dim());
    let terms = f.terms();
    if terms.is_empty() || dst.dim() == 0 {
        return m;
    }
    // target lookup by exponent
    let lookup: std::collections::HashMap<(i64, i64), usize> =
        dst.monomials.iter().enumerate().map(|(k, &e)| (e, k)).collect();
    for (c, &(i, j)) in src.monomials.iter().enumerate() {
        for (s, t, v) in &terms {
            if let Some(&r) = lookup.get(&(i + *s as i64, j + *t as i64)) {
                m[(r, c)] = m[(r, c)].clone() + v.clone();
            }
        }
    }
    m
}

/// Induced map on `H^deg` of a matrix of polynomials `R: ⊕ O(src) → ⊕ O(dst)`; entry `(r, c)`
/// maps summand `c` to summand `r` and `dst[r] = src[c] + tag[c]`.
pub fn mult_map<S: Scalar>(r: &PolyMatrix<S>, src: &[(i64, i64)], dst: &[(i64, i64)], degree: usize) -> Result<Matrix<S>, Error> {
    if r.cols() != src.len() || r.rows() != dst.len() {
        return Err(Error::TwistMismatch(format!(
            "{}x{} matrix against {} source and {} target summands",
            r.rows(),
            r.cols(),
            src.len(),
            dst.len()
        )));
    }
    for (c, &(p, q)) in r.tags().iter().enumerate() {
        for (rr, d) in dst.iter().enumerate() {
            if *d != (src[c].0 + p as i64, src[c].1 + q as i64) {
                return Err(Error::TwistMismatch(format!(
                    "entry ({rr},{c}): O{:?} + ({p},{q}) is not O{:?}",
                    src[c], d
                )));
            }
        }
    }
    let sb = sum_basis(src, degree);
    let db = sum_basis(dst, degree);
    let rows: usize = db.iter().map(CohBasis::dim).sum();
    let cols: usize = sb.iter().map(CohBasis::dim).sum();
    let mut out = Matrix::zeros(rows, cols);
    let mut r0 = 0;
    for (ri, d) in db.iter().enumerate() {
        let mut c0 = 0;
        for (ci, s) in sb.iter().enumerate() {
            let blk = mult_poly(r.entry(ri, ci), s, d);
            for a in 0..blk.rows() {
                for b in 0..blk.cols() {
                    if !blk[(a, b)].is_zero() {
                        out[(r0 + a, c0 + b)] = blk[(a, b)].clone();
                    }
                }
            }
            c0 += s.dim();
        }
        r0 += d.dim();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::GaussianRational as G;

    #[test]
    fn kunneth_examples() {
        assert_eq!(h_line(1, 1), (4, 0, 0));
        for b in -5..5 {
            assert_eq!(h_line(-1, b), (0, 0, 0));
        }
        for m in 1..6 {
            assert_eq!(h_line(m - 1, -m - 1), (0, (m * m) as usize, 0));
        }
    }

    #[test]
    fn identity_and_shift() {
        let one = PolyMatrix::from_entries(vec![vec![BiPoly::constant(G::from(1))]]).unwrap();
        let m = mult_map(&one, &[(2, -3)], &[(2, -3)], 1).unwrap();
        assert_eq!(m, Matrix::identity(6));
        // ζ on H¹(P¹, O(−3)) → H¹(P¹, O(−2)), seen on O(−3, 0) → O(−2, 0)
        let z = PolyMatrix::new(vec![vec![BiPoly::zeta()]], vec![(1, 0)]).unwrap();
        let m = mult_map(&z, &[(-3, 0)], &[(-2, 0)], 1).unwrap();
        assert_eq!(m, Matrix::from_rows(vec![vec![G::from(1), G::from(0)]]).unwrap());
    }

    #[test]
    fn degree_one_in_eta_window() {
        // R = R₀ + ηR₁ (scalars) on H¹(O(−3)) → H¹(O(−2)) in η: (v₀ ↔ η⁻¹, v₁ ↔ η⁻²) ↦ R₀v₀ + R₁v₁
        let (r0, r1) = (G::from(5), G::from(7));
        let r = PolyMatrix::new(vec![vec![BiPoly::linear_eta(r0.clone(), r1.clone())]], vec![(0, 1)]).unwrap();
        let m = mult_map(&r, &[(0, -3)], &[(0, -2)], 1).unwrap();
        // source order: η⁻², η⁻¹
        assert_eq!(m, Matrix::from_rows(vec![vec![r1, r0]]).unwrap());
    }

    #[test]
    fn twist_mismatch_rejected() {
        let z = PolyMatrix::new(vec![vec![BiPoly::<G>::zeta()]], vec![(1, 0)]).unwrap();
        assert!(matches!(mult_map(&z, &[(0, 0)], &[(0, 1)], 0), Err(Error::TwistMismatch(_))));
    }
}
