//! Massless monopoles from coprime pairs `(p, q)`: the curve `{f(ζ) = g(η)}`, its trivializing
//! section, and the O(−1)-structure on the tangent space of rational maps.

use serde_json::{json, Value};

use crate::curvecoh::{
    cocycle_class, curve_from_poly_with, h_curve, triviality_check, CurveOptions, Laurent2, LocalSection, PlaneCurve,
};
use crate::error::Error;
use crate::exactnum::json::{poly1_from_json, poly1_to_json};
use crate::exactnum::{BiPoly, GaussianRational, Matrix, Poly1, Scalar};
use crate::p1p1coh::h_line;
use crate::plurilinear::{splitting_profile, SplittingProfile, SubspaceFamily};

#[derive(Clone, Debug, PartialEq)]
pub struct MasslessPair<S> {
    pub k: usize,
    pub p: Poly1<S>,
    pub q: Poly1<S>,
}

/// Sylvester matrix of `p, q` read as binary forms of degree `k`.
pub fn sylvester<S: Scalar>(p: &Poly1<S>, q: &Poly1<S>, k: usize) -> Matrix<S> {
    let n = 2 * k;
    Matrix::from_fn(n, n, |r, c| {
        let (poly, shift) = if r < k { (p, r) } else { (q, r - k) };
        if c >= shift { poly.coeff(c - shift) } else { S::zero() }
    })
}

impl<S: Scalar> MasslessPair<S> {
    /// Degrees at most `k`, one of them exactly `k`, and no common root on `P¹`.
    pub fn new(k: usize, p: Poly1<S>, q: Poly1<S>, tol: f64) -> Result<Self, Error> {
        if k == 0 {
            return Err(Error::InvalidInput("charge must be at least 1".into()));
        }
        let dp = p.degree().ok_or(Error::ZeroPolynomial)?;
        let dq = q.degree().ok_or(Error::ZeroPolynomial)?;
        if dp > k || dq > k {
            return Err(Error::DegreeMismatch(format!("degrees ({dp}, {dq}) exceed k = {k}")));
        }
        if dp < k && dq < k {
            return Err(Error::InvalidInput("common root at infinity: neither polynomial has degree k".into()));
        }
        if S::rank_of(&sylvester(&p, &q, k), tol) < 2 * k {
            return Err(Error::InvalidInput("p and q have a common root".into()));
        }
        Ok(MasslessPair { k, p, q })
    }

    pub fn to_json(&self) -> Value {
        json!({"k": self.k, "p": poly1_to_json(&self.p), "q": poly1_to_json(&self.q)})
    }

    pub fn from_json(v: &Value, tol: f64) -> Result<Self, Error> {
        let k = v.get("k").and_then(Value::as_u64).ok_or_else(|| Error::Parse("massless input needs integer \"k\"".into()))?;
        let p = poly1_from_json(v.get("p").ok_or_else(|| Error::Parse("massless input needs \"p\"".into()))?)?;
        let q = poly1_from_json(v.get("q").ok_or_else(|| Error::Parse("massless input needs \"q\"".into()))?)?;
        MasslessPair::new(k as usize, p, q, tol)
    }
}

/// Entries of `A = [[p₁(ζ), p₂(η)], [q₁(ζ), q₂(η)]]`.
#[derive(Clone, Debug, PartialEq)]
pub struct MasslessData<S> {
    pub k: usize,
    pub p1: Poly1<S>,
    pub q1: Poly1<S>,
    pub p2: Poly1<S>,
    pub q2: Poly1<S>,
}

impl<S: Scalar> MasslessData<S> {
    /// `p₁(ζ)q₂(η) − p₂(η)q₁(ζ)`.
    pub fn curve_poly(&self) -> BiPoly<S> {
        let z = |p: &Poly1<S>| BiPoly::from_zeta_poly(p);
        let e = |p: &Poly1<S>| BiPoly::from_eta_poly(p);
        z(&self.p1).mul(&e(&self.q2)).sub(&e(&self.p2).mul(&z(&self.q1))).with_bounds(self.k, self.k).expect("bidegree (k, k)")
    }

    pub fn to_json(&self) -> Value {
        json!({
            "p1": poly1_to_json(&self.p1),
            "q1": poly1_to_json(&self.q1),
            "p2": poly1_to_json(&self.p2),
            "q2": poly1_to_json(&self.q2),
        })
    }
}

/// `p₂ = −q♯`, `q₂ = p♯`, and the curve.
pub fn massless_build<S: Scalar>(pair: &MasslessPair<S>, opts: &CurveOptions) -> Result<(MasslessData<S>, PlaneCurve<S>), Error> {
    let k = pair.k;
    let data = MasslessData { k, p1: pair.p.clone(), q1: pair.q.clone(), p2: pair.q.sharp(k).neg(), q2: pair.p.sharp(k) };
    let curve = curve_from_poly_with(&data.curve_poly(), k, &[], opts)?;
    Ok((data, curve))
}

/// `(s, t)` with `s·a + t·b = 1` for coprime `a, b`.
pub fn bezout<S: Scalar>(a: &Poly1<S>, b: &Poly1<S>, tol: f64) -> Result<(Poly1<S>, Poly1<S>), Error> {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (Poly1::constant(S::one()), Poly1::zero());
    let (mut t0, mut t1) = (Poly1::zero(), Poly1::constant(S::one()));
    let scale = a.coeffs().iter().chain(b.coeffs()).map(|c| c.modulus()).fold(0.0, f64::max);
    let trim = |p: Poly1<S>| -> Poly1<S> {
        if S::EXACT {
            return p;
        }
        let mut c = p.coeffs().to_vec();
        while c.last().is_some_and(|x| x.is_negligible(tol, scale)) {
            c.pop();
        }
        Poly1::new(c)
    };
    while !r1.is_zero() {
        let (qt, r) = r0.divrem(&r1);
        let r = trim(r);
        (r0, r1) = (r1, r);
        let s2 = s0.sub(&qt.mul(&s1));
        (s0, s1) = (s1, s2);
        let t2 = t0.sub(&qt.mul(&t1));
        (t0, t1) = (t1, t2);
    }
    if r0.degree() != Some(0) {
        return Err(Error::InvalidInput("polynomials are not coprime".into()));
    }
    let inv = S::one() / r0.coeff(0);
    Ok((s0.scale(&inv), t0.scale(&inv)))
}

/// Two-chart lift of the section `p₁(ζ)/p₂(η)` of `O_S(k, −k)`.
pub fn trivializing_section<S: Scalar>(data: &MasslessData<S>, tol: f64) -> Result<LocalSection<S>, Error> {
    let k = data.k as i64;
    let (al, be) = bezout(&data.p2, &data.q2, tol)?;
    let (alr, ber) = bezout(&data.p2.reversed(data.k), &data.q2.reversed(data.k), tol)?;
    let mut s0 = Laurent2::zero();
    let mut s1 = Laurent2::zero();
    for (f, g) in [(&al, &data.p1), (&be, &data.q1)] {
        for (j, a) in f.coeffs().iter().enumerate() {
            for (i, b) in g.coeffs().iter().enumerate() {
                s0 = s0.add(&Laurent2::monomial(a.mul_by(b), i as i64, j as i64));
            }
        }
    }
    for (f, g) in [(&alr, &data.p1), (&ber, &data.q1)] {
        for (j, a) in f.coeffs().iter().enumerate() {
            for (i, b) in g.coeffs().iter().enumerate() {
                s1 = s1.add(&Laurent2::monomial(a.mul_by(b), i as i64, -k - j as i64));
            }
        }
    }
    Ok(LocalSection { twist: (k, -k), s0, s1 })
}

#[derive(Clone, Debug)]
pub struct SectionMatch<S> {
    pub h0: usize,
    /// Class of `δ(p₁/p₂)` in `H¹(O(0, −2k))`.
    pub class: Vec<S>,
    /// The class is nonzero and lies in the computed kernel.
    pub matches: bool,
}

impl<S: Scalar> SectionMatch<S> {
    pub fn to_json(&self) -> Value {
        json!({"h0": self.h0, "class": self.class.iter().map(S::to_json).collect::<Vec<_>>(), "matches": self.matches})
    }
}

/// Compares the kernel found by `triviality_check(S, k)` with the class of `p₁(ζ)/p₂(η)`.
pub fn trivializing_match<S: Scalar>(data: &MasslessData<S>, curve: &PlaneCurve<S>) -> Result<SectionMatch<S>, Error> {
    let k = data.k as i64;
    let t = triviality_check(curve, k)?;
    let s = trivializing_section(data, curve.tol)?;
    let class = cocycle_class(&s.delta(curve)?, (0, -2 * k))?;
    let scale = class.iter().map(|c| c.modulus()).fold(0.0, f64::max);
    let nonzero = class.iter().any(|c| !c.is_negligible(curve.tol, 1.0)) && scale > 0.0;
    let kernel_cols: Vec<Vec<S>> = t.kernel.iter().map(|v| v.iter().map(|(_, c)| c.clone()).collect()).collect();
    let in_span = if kernel_cols.is_empty() {
        false
    } else {
        let km = Matrix::from_columns(class.len(), &kernel_cols);
        let aug = km.hstack(&Matrix::from_columns(class.len(), std::slice::from_ref(&class)));
        S::rank_of(&aug, curve.tol) == S::rank_of(&km, curve.tol)
    };
    Ok(SectionMatch { h0: t.h0, class, matches: nonzero && in_span })
}

/// Tangent spaces of the leaves through `A`, in coordinates `(Ṗ₁, Q̇₁, Ṗ₂, Q̇₂)` modulo `gl₂·A`.
#[derive(Clone, Debug)]
pub struct MasslessFrames<S> {
    pub data: MasslessData<S>,
    /// Rows span the annihilator of `gl₂·A`: coordinates on the quotient.
    pub quotient: Matrix<S>,
    pub tol: f64,
}

impl<S: Scalar> MasslessFrames<S> {
    pub fn new(data: &MasslessData<S>, tol: f64) -> Result<Self, Error> {
        let n = data.k + 1;
        let orbit = gl2_orbit(data);
        if S::rank_of(&orbit, tol) != 4 {
            return Err(Error::InvalidInput("gl(2) orbit is degenerate".into()));
        }
        let ann = S::nullspace_of(&orbit.transpose(), tol);
        let quotient = Matrix::from_fn(ann.len(), 4 * n, |r, c| ann[r][c].clone());
        Ok(MasslessFrames { data: data.clone(), quotient, tol })
    }

    /// Leaf tangent at `ζ₀` in `ℂ^{4(k+1)}`: `Ṗ₂·p₁(ζ₀) − Ṗ₁(ζ₀)·p₂` and `Q̇₂·q₁(ζ₀) − Q̇₁(ζ₀)·q₂`
    /// are multiples of `h = p₂·q₁(ζ₀) − q₂·p₁(ζ₀)`, whose roots are the `η` over `ζ₀`.
    pub fn leaf(&self, z0: &S) -> Result<Matrix<S>, Error> {
        let d = &self.data;
        let n = d.k + 1;
        let (p10, q10) = (d.p1.eval(z0), d.q1.eval(z0));
        let scale = 1.0 + d.p1.coeffs().iter().chain(d.q1.coeffs()).map(|c| c.modulus()).fold(0.0, f64::max);
        if p10.is_negligible(self.tol, scale) || q10.is_negligible(self.tol, scale) {
            return Err(Error::InvalidInput(format!("sample {z0} is a root of p1 or q1")));
        }
        let h = d.p2.scale(&q10).sub(&d.q2.scale(&p10));
        let pows: Vec<S> = (0..n).scan(S::one(), |acc, _| {
            let cur = acc.clone();
            *acc = acc.mul_by(z0);
            Some(cur)
        }).collect();
        let cols = 4 * n + 2;
        let mut m = Matrix::zeros(2 * n, cols);
        for t in 0..n {
            // P block: unknowns Ṗ₁ at 0..n, Ṗ₂ at 2n..3n, μ at 4n
            m[(t, 2 * n + t)] = p10.clone();
            for i in 0..n {
                m[(t, i)] = -(pows[i].mul_by(&d.p2.coeff(t)));
            }
            m[(t, 4 * n)] = -h.coeff(t);
            // Q block: Q̇₁ at n..2n, Q̇₂ at 3n..4n, ν at 4n+1
            m[(n + t, 3 * n + t)] = q10.clone();
            for i in 0..n {
                m[(n + t, n + i)] = -(pows[i].mul_by(&d.q2.coeff(t)));
            }
            m[(n + t, 4 * n + 1)] = -h.coeff(t);
        }
        let null = S::nullspace_of(&m, self.tol);
        let vecs: Vec<Vec<S>> = null.into_iter().map(|v| v[..4 * n].to_vec()).collect();
        Ok(Matrix::from_columns(4 * n, &vecs))
    }

    /// `V_{ζ₀}` inside the `4k`-dimensional quotient.
    pub fn frame(&self, z0: &S) -> Result<Matrix<S>, Error> {
        Ok(self.quotient.mul(&self.leaf(z0)?).column_basis(self.tol))
    }
}

impl<S: Scalar> SubspaceFamily<S> for MasslessFrames<S> {
    fn ambient(&self) -> usize {
        self.quotient.rows()
    }

    fn at(&self, z: &S) -> Matrix<S> {
        self.frame(z).unwrap_or_else(|_| Matrix::zeros(self.ambient(), 0))
    }
}

/// Columns `(αp₁+βq₁, γp₁+δq₁, αp₂+βq₂, γp₂+δq₂)` for the four generators.
fn gl2_orbit<S: Scalar>(d: &MasslessData<S>) -> Matrix<S> {
    let n = d.k + 1;
    let mut m = Matrix::zeros(4 * n, 4);
    for t in 0..n {
        m[(t, 0)] = d.p1.coeff(t);
        m[(2 * n + t, 0)] = d.p2.coeff(t);
        m[(t, 1)] = d.q1.coeff(t);
        m[(2 * n + t, 1)] = d.q2.coeff(t);
        m[(n + t, 2)] = d.p1.coeff(t);
        m[(3 * n + t, 2)] = d.p2.coeff(t);
        m[(n + t, 3)] = d.q1.coeff(t);
        m[(3 * n + t, 3)] = d.q2.coeff(t);
    }
    m
}

pub fn massless_tangent_frames<S: Scalar>(data: &MasslessData<S>, samples: &[S], tol: f64) -> Result<Vec<Matrix<S>>, Error> {
    let f = MasslessFrames::new(data, tol)?;
    samples.iter().map(|z| f.frame(z)).collect()
}

/// `dim V_{ζ₀} ∩ V_{ζ₁}`.
pub fn massless_intersection<S: Scalar>(data: &MasslessData<S>, z0: &S, z1: &S, tol: f64) -> Result<usize, Error> {
    if (z0.clone() - z1.clone()).is_negligible(tol, 1.0 + z0.modulus()) {
        return Err(Error::InvalidInput("samples coincide".into()));
    }
    let f = MasslessFrames::new(data, tol)?;
    Ok(f.frame(z0)?.intersect_columns(&f.frame(z1)?, tol).cols())
}

pub fn massless_splitting<S: Scalar>(data: &MasslessData<S>, sets: usize, seed: u64, tol: f64) -> Result<SplittingProfile, Error> {
    let f = MasslessFrames::new(data, tol)?;
    splitting_profile(&f, sets, seed, tol)
}

/// `{k, k, 0^{2k−2}}`, descending.
pub fn expected_splitting(k: usize) -> Vec<i64> {
    let mut v = vec![k as i64, k as i64];
    v.extend(std::iter::repeat_n(0, 2 * k - 2));
    v
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaCohomologyReport {
    pub k: usize,
    /// `(twist, (h⁰, h¹, h²))` for `Λ(k−1,k−1)`, `Λ(−k−1,−k−1)` and the same twists of `Λ*`.
    pub twists: Vec<((i64, i64), (usize, usize, usize))>,
    /// `h¹(Q, Λ(−1,−1))`.
    pub h1_lambda: usize,
    /// `h⁰(Λ|_S(k−1,k−1))` on a sample massless curve.
    pub h0_restricted: usize,
}

impl LambdaCohomologyReport {
    pub fn acyclic(&self) -> bool {
        self.twists.iter().all(|(_, h)| *h == (0, 0, 0))
    }

    pub fn forced_dimension_ok(&self) -> bool {
        self.h1_lambda == self.k * self.k && self.h0_restricted == self.h1_lambda
    }

    pub fn to_json(&self) -> Value {
        json!({
            "k": self.k,
            "twists": self.twists.iter().map(|(t, h)| json!({"twist": [t.0, t.1], "h": [h.0, h.1, h.2]})).collect::<Vec<_>>(),
            "acyclic": self.acyclic(),
            "h1_Lambda(-1,-1)": self.h1_lambda,
            "h0_Lambda_S(k-1,k-1)": self.h0_restricted,
            "forced_dimension": self.k * self.k,
        })
    }
}

/// Sample pair `p = ζ^k + 2`, `q = ζ − i`.
pub fn sample_pair(k: usize) -> MasslessPair<GaussianRational> {
    let mut pc = vec![GaussianRational::from(0); k + 1];
    pc[0] = GaussianRational::from(2);
    pc[k] = pc[k].clone() + GaussianRational::from(1);
    let q = Poly1::new(vec![-GaussianRational::i(), GaussianRational::from(1)]);
    MasslessPair::new(k, Poly1::new(pc), q, 0.0).expect("coprime sample pair")
}

pub fn lambda_cohomology(k: usize) -> Result<LambdaCohomologyReport, Error> {
    if k == 0 {
        return Err(Error::InvalidInput("k must be at least 1".into()));
    }
    let ki = k as i64;
    let twists = [(2 * ki - 1, -1), (-1, -2 * ki - 1), (-1, 2 * ki - 1), (-2 * ki - 1, -1)]
        .into_iter()
        .map(|(a, b)| ((a, b), h_line(a, b)))
        .collect();
    let opts = CurveOptions { certify: false, ..Default::default() };
    let (_, curve) = massless_build(&sample_pair(k), &opts)?;
    Ok(LambdaCohomologyReport {
        k,
        twists,
        h1_lambda: h_line(ki - 1, -ki - 1).1,
        h0_restricted: h_curve(&curve, 2 * ki - 1, -1).0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::GaussianRational as G;
    use crate::plurilinear::Status;

    fn poly(c: &[(i64, i64)]) -> Poly1<G> {
        Poly1::new(c.iter().map(|&(a, b)| G::from_ints(a, b)).collect())
    }

    #[test]
    fn degree_one_is_diagonal() {
        let pair = MasslessPair::new(1, poly(&[(0, 0), (1, 0)]), poly(&[(1, 0)]), 0.0).unwrap();
        let (_, curve) = massless_build(&pair, &CurveOptions::default()).unwrap();
        let diag = BiPoly::from_table(vec![vec![G::from(0), G::from(1)], vec![G::from(-1), G::from(0)]]).unwrap();
        assert!(curve.poly.ratio_to(&diag).is_some());
        assert!(curve.sigma_invariant());
    }

    #[test]
    fn rejects_common_roots() {
        let p = poly(&[(-1, 0), (0, 0), (1, 0)]);
        let q = poly(&[(1, 0), (1, 0)]);
        assert!(MasslessPair::new(2, p, q, 0.0).is_err());
        assert!(MasslessPair::new(2, poly(&[(1, 0), (1, 0)]), poly(&[(2, 0)]), 0.0).is_err());
    }

    #[test]
    fn curve_and_section() {
        let pair = MasslessPair::new(2, poly(&[(1, 1), (0, 2), (1, 0)]), poly(&[(3, 0), (-1, 1)]), 0.0).unwrap();
        let (data, curve) = massless_build(&pair, &CurveOptions::default()).unwrap();
        assert!(curve.sigma_invariant());
        assert_eq!(curve.antidiagonal.status, Status::Certified);
        let m = trivializing_match(&data, &curve).unwrap();
        assert_eq!(m.h0, 1);
        assert!(m.matches);
    }

    #[test]
    fn frames_and_intersections() {
        for k in 1..=3 {
            let pair = sample_pair(k);
            let (data, _) = massless_build(&pair, &CurveOptions { certify: false, ..Default::default() }).unwrap();
            let zs = [G::from_fracs((1, 3), (2, 7)), G::from_fracs((-5, 4), (1, 9)), G::from_fracs((1, 3), (2, 7))];
            let frames = massless_tangent_frames(&data, &zs, 0.0).unwrap();
            assert!(frames.iter().all(|f| f.rows() == 4 * k && f.cols() == 2 * k));
            assert_eq!(frames[0], frames[2]);
            assert_eq!(massless_intersection(&data, &zs[0], &zs[1], 0.0).unwrap(), 2 * k - 2);
            let prof = massless_splitting(&data, 3, 11, 0.0).unwrap();
            assert_eq!(prof.degrees, expected_splitting(k));
            assert_eq!(prof.d[1], 2 * k);
        }
    }

    #[test]
    fn lambda_cohomology_dimensions() {
        for k in 1..=3 {
            let r = lambda_cohomology(k).unwrap();
            assert!(r.acyclic());
            assert!(r.forced_dimension_ok(), "{r:?}");
        }
    }
}
