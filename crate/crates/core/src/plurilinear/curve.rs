use num_complex::Complex64;

use super::pair::PluriPair;
use super::structures::{hypercomplex_residual, reparameterize};
use super::validate::quad_pencil;
use crate::error::Error;
use crate::exactnum::poly1::roots;
use crate::exactnum::{mobius_hermitian_factor, BiPoly, GaussianRational, Matrix, Mobius, Scalar};
use crate::p1p1coh::{resolution_matrix, stalk_rank};

/// `det((ηX̄ − Ȳ)(X + ζY) + ζI)`, bidegree `≤ (n, n)`.
pub fn char_poly<S: Scalar>(pair: &PluriPair<S>) -> BiPoly<S> {
    let (x, y) = (pair.x(), pair.y());
    let (xb, yb) = (x.conj(), y.conj());
    let n = pair.n();
    let c00 = yb.mul(x).neg();
    let c10 = Matrix::identity(n).sub(&yb.mul(y));
    let c01 = xb.mul(x);
    let c11 = xb.mul(y);
    quad_pencil(&c00, &c10, &c01, &c11).det().expect("square").with_bounds(n, n).expect("bidegree (n, n)")
}

/// Ratio `u` with `P^σ = u·P`, if any.
pub fn sigma_ratio<S: Scalar>(p: &BiPoly<S>, k: usize, tol: f64) -> Option<S> {
    let s = p.sigma_transform(k).ok()?;
    if S::EXACT { s.ratio_to(p) } else { s.ratio_to_tol(p, tol) }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StalkSample {
    pub zeta: Complex64,
    pub eta: Complex64,
    pub rank: usize,
    pub exact: bool,
}

#[derive(Clone, Debug)]
pub struct SupportCurve<S> {
    pub poly: BiPoly<S>,
    pub squarefree: BiPoly<S>,
    pub k: usize,
    pub stalks: Vec<StalkSample>,
}

impl<S> SupportCurve<S> {
    /// Common stalk rank, when all samples agree.
    pub fn constant_rank(&self) -> Option<usize> {
        let r = self.stalks.first()?.rank;
        self.stalks.iter().all(|s| s.rank == r).then_some(r)
    }
}

/// Sample points of `{P = 0}` over a few Gaussian-rational `ζ₀`, exact where the `η`-root is.
pub fn curve_points<S: Scalar>(p: &BiPoly<S>, zetas: &[GaussianRational]) -> Vec<(S, S, bool)> {
    let mut out = Vec::new();
    for z0 in zetas {
        let z = S::from_gaussian(z0);
        let py = p.eval_zeta(&z);
        let fp = py.map(|c| c.to_c64());
        if fp.degree().unwrap_or(0) == 0 {
            continue;
        }
        for r in roots(&fp) {
            let mut found = None;
            if S::EXACT {
                let base = z0.denominator_lcm().try_into().unwrap_or(1i64);
                let dens = [1, 2, 3, 4, 5, 6, 8, 9, 10, 12, 16, 20, 24, 25, 27, 32, 36, 64]
                    .into_iter()
                    .chain([1, 2, 3, 4, 6, 12].map(|m| m * base));
                for den in dens {
                    let g = S::from_gaussian(&GaussianRational::approximate(r, den));
                    if (g.to_c64() - r).norm() < 1e-8 * (1.0 + r.norm()) && py.eval(&g).is_zero() {
                        found = Some(g);
                        break;
                    }
                }
            }
            match found {
                Some(g) => out.push((z.clone(), g, true)),
                None => out.push((z.clone(), S::from_c64(r).expect("representable"), false)),
            }
        }
    }
    out
}

pub fn default_sample_zetas() -> Vec<GaussianRational> {
    vec![
        GaussianRational::from_fracs((1, 2), (1, 3)),
        GaussianRational::from_fracs((-2, 3), (1, 5)),
        GaussianRational::from_fracs((3, 4), (-2, 7)),
    ]
}

/// Characteristic polynomial, its reduced form of bidegree `(k, k)`, and stalk ranks of the
/// characteristic sheaf at sample points of the curve.
pub fn support_curve<S: Scalar>(pair: &PluriPair<S>, tol: f64) -> Result<SupportCurve<S>, Error> {
    let poly = char_poly(pair);
    let squarefree = if S::EXACT { poly.squarefree_part()? } else { float_squarefree(&poly, tol)? };
    let (a, b) = squarefree.degrees();
    if a != b {
        return Err(Error::DegreeMismatch(format!("reduced characteristic curve has bidegree ({a},{b})")));
    }
    let res = resolution_matrix(pair);
    let mut stalks = Vec::new();
    for (z, w, exact) in curve_points(&squarefree, &default_sample_zetas()) {
        let rank = if exact {
            stalk_rank(&res, &z, &w, tol)
        } else {
            stalk_rank(&res.map(|c| c.to_c64()), &z.to_c64(), &w.to_c64(), 1e-7)
        };
        stalks.push(StalkSample { zeta: z.to_c64(), eta: w.to_c64(), rank, exact });
    }
    Ok(SupportCurve { poly, squarefree, k: a, stalks })
}

/// Float reduced form: for the largest `r` with `P = c·Q^r`, the polynomial `Q` spanning the
/// kernel of `Q ↦ Q·∂P − r·P·∂Q` (both partials); `P` itself when no `r > 1` fits.
fn float_squarefree<S: Scalar>(p: &BiPoly<S>, tol: f64) -> Result<BiPoly<S>, Error> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let p = p.trimmed();
    let (d1, d2) = p.degrees();
    let g = gcd_usize(d1, d2);
    let (pz, pw) = (p.partial_zeta(), p.partial_eta());
    for r in (2..=g).rev().filter(|r| g.is_multiple_of(*r)) {
        let (k1, k2) = (d1 / r, d2 / r);
        let rr = S::from_i64(r as i64);
        let (b1, b2) = (d1 + k1, d2 + k2);
        let mut cols = Vec::new();
        for a in 0..=k1 {
            for b in 0..=k2 {
                let e = BiPoly::monomial(S::one(), a, b);
                let ez = e.mul(&pz).sub(&p.mul(&e.partial_zeta()).scale(&rr));
                let ew = e.mul(&pw).sub(&p.mul(&e.partial_eta()).scale(&rr));
                let mut col = Vec::new();
                for f in [ez, ew] {
                    let f = f.with_bounds(b1, b2).expect("product bidegree");
                    for i in 0..=b1 {
                        for j in 0..=b2 {
                            col.push(f.coeff(i, j));
                        }
                    }
                }
                cols.push(col);
            }
        }
        let sys = Matrix::from_columns(cols[0].len(), &cols);
        let null = S::nullspace_of(&sys, tol.max(1e-10));
        if null.len() == 1 {
            let q = BiPoly::from_fn(k1, k2, |a, b| null[0][a * (k2 + 1) + b].clone());
            return Ok(q.trimmed().normalized());
        }
    }
    Ok(p.normalized())
}

fn gcd_usize(a: usize, b: usize) -> usize {
    if b == 0 { a } else { gcd_usize(b, a % b) }
}

/// Hermitian matrix `[[γ, δ], [−α, −β]]` of a `(1,1)` curve `αζη + βζ + γη + δ`, phase-normalized.
pub fn degree_one_hermitian<S: Scalar>(curve: &BiPoly<S>) -> Matrix<Complex64> {
    let c = |i, j| curve.coeff(i, j).to_c64();
    let (alpha, beta, gamma, delta) = (c(1, 1), c(1, 0), c(0, 1), c(0, 0));
    Matrix::from_vec(2, 2, vec![gamma, delta, -alpha, -beta])
}

#[derive(Clone, Debug)]
pub struct Normalization {
    pub g: Mobius<Complex64>,
    pub normalized: PluriPair<Complex64>,
    pub residual: f64,
}

/// Möbius `g` moving a degree-one structure to a hypercomplex one, and the moved pair.
pub fn normalize_degree_one<S: Scalar>(pair: &PluriPair<S>, tol: f64) -> Result<Normalization, Error> {
    let sc = support_curve(pair, tol)?;
    if sc.k != 1 {
        return Err(Error::DegreeMismatch(format!("normalization needs degree 1, found {}", sc.k)));
    }
    let h = degree_one_hermitian(&sc.squarefree);
    let r = mobius_hermitian_factor(&h, tol.max(1e-12))?;
    let g = r.adjoint();
    let fp = pair.map(|c| c.to_c64());
    let normalized = reparameterize(&fp, &g)?;
    let residual = hypercomplex_residual(&normalized);
    Ok(Normalization { g, normalized, residual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::GaussianRational as G;
    use crate::plurilinear::{is_hypercomplex, random_pair};

    #[test]
    fn hypercomplex_diagonal() {
        let p = PluriPair::<G>::standard_hypercomplex(2).unwrap();
        let diag = BiPoly::linear_zeta(G::from(0), G::from(1)).sub(&BiPoly::eta());
        assert!(char_poly(&p).ratio_to(&diag.mul(&diag).with_bounds(2, 2).unwrap()).is_some());
        let sc = support_curve(&p, 0.0).unwrap();
        assert_eq!(sc.k, 1);
        assert!(sc.squarefree.ratio_to(&diag.with_bounds(1, 1).unwrap()).is_some());
        assert_eq!(sc.constant_rank(), Some(2));
        assert!(sc.stalks.iter().all(|s| s.exact));
    }

    #[test]
    fn one_dimensional_model() {
        let p = PluriPair::new(Matrix::from_rows(vec![vec![G::from(2)]]).unwrap(), Matrix::from_rows(vec![vec![G::i()]]).unwrap()).unwrap();
        // (2η + i)... expanded: −ī·2 + (1 − |i|²)ζ + 4η + 2iζη
        let c = char_poly(&p);
        assert_eq!(c.coeff(0, 0), G::from_ints(0, 2));
        assert_eq!(c.coeff(1, 0), G::from(0));
        assert_eq!(c.coeff(0, 1), G::from(4));
        assert_eq!(c.coeff(1, 1), G::from_ints(0, 2));
    }

    #[test]
    fn generic_pair_degree_two() {
        for seed in [1, 2, 3] {
            let p = random_pair(2, seed, 0.3).unwrap();
            let c = char_poly(&p);
            assert!(sigma_ratio(&c, 2, 0.0).is_some());
            let sc = support_curve(&p, 0.0).unwrap();
            assert_eq!(sc.k, 2);
            assert_eq!(sc.constant_rank(), Some(1));
            assert!(!is_hypercomplex(&p));
        }
    }
}
