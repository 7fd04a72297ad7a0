use serde_json::{json, Value};

use super::basis::{h_line, mult_map, TwistList};
use crate::error::Error;
use crate::exactnum::json::{bipoly_from_json, bipoly_to_json};
use crate::exactnum::{BiPoly, Matrix, PolyMatrix, Scalar};
use crate::plurilinear::{Frame, PluriPair};

/// `0 → O(−1,0)ⁿ ⊕ O(0,−1)ⁿ →^M O^{2n} → F → 0`.
#[derive(Clone, Debug)]
pub struct Resolution<S> {
    n: usize,
    m: PolyMatrix<S>,
}

impl<S: Scalar> PartialEq for Resolution<S> {
    fn eq(&self, o: &Self) -> bool {
        self.n == o.n && self.m == o.m
    }
}

/// Column tags `(1,0)ⁿ, (0,1)ⁿ`.
pub fn resolution_tags(n: usize) -> Vec<(usize, usize)> {
    let mut t = vec![(1, 0); n];
    t.extend(vec![(0, 1); n]);
    t
}

/// `M(ζ, η) = [[X + ζY, −I], [ζI, ηX̄ − Ȳ]]`.
pub fn resolution_matrix<S: Scalar>(pair: &PluriPair<S>) -> PolyMatrix<S> {
    let n = pair.n();
    let (x, y) = (pair.x(), pair.y());
    let (xb, yb) = (x.conj(), y.conj());
    PolyMatrix::from_fn(2 * n, resolution_tags(n), |r, c| match (r < n, c < n) {
        (true, true) => BiPoly::linear_zeta(x[(r, c)].clone(), y[(r, c)].clone()),
        (true, false) => {
            if r == c - n { BiPoly::constant(-S::one()) } else { BiPoly::zero() }
        }
        (false, true) => {
            if r - n == c { BiPoly::zeta() } else { BiPoly::zero() }
        }
        (false, false) => BiPoly::linear_eta(-yb[(r - n, c - n)].clone(), xb[(r - n, c - n)].clone()),
    })
    .expect("entries respect their tags")
}

/// `2n − rank M(ζ₀, η₀)`.
pub fn stalk_rank<S: Scalar>(m: &PolyMatrix<S>, z: &S, w: &S, tol: f64) -> usize {
    m.rows() - S::rank_of(&m.eval(z, w), tol)
}

impl<S: Scalar> Resolution<S> {
    pub fn new(m: PolyMatrix<S>) -> Result<Self, Error> {
        if m.rows() != m.cols() || m.rows() % 2 == 1 {
            return Err(Error::Shape(format!("resolution matrix must be 2n x 2n, got {}x{}", m.rows(), m.cols())));
        }
        let n = m.rows() / 2;
        if m.tags() != resolution_tags(n).as_slice() {
            return Err(Error::Bidegree("columns must have bidegrees (1,0)^n, (0,1)^n".into()));
        }
        if n > 0 && m.det()?.is_zero() {
            return Err(Error::InvalidInput("det M vanishes identically: not injective".into()));
        }
        Ok(Resolution { n, m })
    }

    pub fn from_pair(pair: &PluriPair<S>) -> Result<Self, Error> {
        Resolution::new(resolution_matrix(pair))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &PolyMatrix<S> {
        &self.m
    }

    /// Block sum, with columns reordered into the `(1,0)ⁿ, (0,1)ⁿ` layout.
    pub fn direct_sum(&self, o: &Self) -> Result<Self, Error> {
        let (n1, n2) = (self.n, o.n);
        let n = n1 + n2;
        // column c of the sum comes from column src(c) of one summand
        let src = |c: usize| -> (bool, usize) {
            if c < n1 {
                (true, c)
            } else if c < n {
                (false, c - n1)
            } else if c < n + n1 {
                (true, c - n + n1)
            } else {
                (false, c - n - n1 + n2)
            }
        };
        let m = PolyMatrix::from_fn(2 * n, resolution_tags(n), |r, c| {
            let (first, k) = src(c);
            match (first, r < 2 * n1) {
                (true, true) => self.m.entry(r, k).clone(),
                (false, false) => o.m.entry(r - 2 * n1, k).clone(),
                _ => BiPoly::zero(),
            }
        })?;
        Resolution::new(m)
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self.m.to_rows().iter().map(|r| Value::Array(r.iter().map(bipoly_to_json).collect())).collect();
        json!({"n": self.n, "M": rows})
    }

    pub fn from_json(v: &Value) -> Result<Self, Error> {
        let rows = v
            .get("M")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("resolution needs an \"M\" array".into()))?;
        let rows = rows
            .iter()
            .map(|r| {
                r.as_array()
                    .ok_or_else(|| Error::Parse("rows of \"M\" must be arrays".into()))?
                    .iter()
                    .map(bipoly_from_json)
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let n = rows.len() / 2;
        if let Some(nv) = v.get("n") {
            if nv.as_u64() != Some(n as u64) {
                return Err(Error::Parse(format!("\"n\" = {nv} does not match {} rows", rows.len())));
            }
        }
        Resolution::new(PolyMatrix::new(rows, resolution_tags(n))?)
    }
}

/// Source and target summands of `W(p,q) → O(p,q)^{2n}`.
pub fn twist_lists(n: usize, p: i64, q: i64) -> (TwistList, TwistList) {
    let mut src = vec![(p - 1, q); n];
    src.extend(vec![(p, q - 1); n]);
    (src, vec![(p, q); 2 * n])
}

/// Induced maps on `H⁰, H¹, H²` of `W(p,q) → O(p,q)^{2n}`.
pub fn induced_maps<S: Scalar>(m: &PolyMatrix<S>, p: i64, q: i64) -> Result<[Matrix<S>; 3], Error> {
    let n = m.cols() / 2;
    let (src, dst) = twist_lists(n, p, q);
    Ok([mult_map(m, &src, &dst, 0)?, mult_map(m, &src, &dst, 1)?, mult_map(m, &src, &dst, 2)?])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CohReport {
    pub twist: (i64, i64),
    pub h0: usize,
    pub h1: usize,
}

impl CohReport {
    pub fn to_json(&self) -> Value {
        json!({"twist": [self.twist.0, self.twist.1], "h0": self.h0, "h1": self.h1})
    }
}

/// `(h⁰, h¹)` of `F(p, q)` from the long exact sequence of the resolution.
pub fn sheaf_cohomology<S: Scalar>(res: &Resolution<S>, p: i64, q: i64, tol: f64) -> CohReport {
    let [m0, m1, m2] = induced_maps(&res.m, p, q).expect("tags fixed by construction");
    let r0 = S::rank_of(&m0, tol);
    let r1 = S::rank_of(&m1, tol);
    let r2 = S::rank_of(&m2, tol);
    let h0 = (m0.rows() - r0) + (m1.cols() - r1);
    let h1 = (m1.rows() - r1) + (m2.cols() - r2);
    CohReport { twist: (p, q), h0, h1 }
}

/// Euler characteristic of `F(p,q)` from the resolution terms alone.
pub fn euler_from_terms(n: usize, p: i64, q: i64) -> i64 {
    let chi = |(a, b): (i64, i64)| {
        let (h0, h1, h2) = h_line(a, b);
        h0 as i64 - h1 as i64 + h2 as i64
    };
    let (src, dst) = twist_lists(n, p, q);
    dst.into_iter().map(chi).sum::<i64>() - src.into_iter().map(chi).sum::<i64>()
}

#[derive(Clone, Debug, PartialEq)]
pub struct RegularityEntry<S> {
    pub twist: (i64, i64),
    pub h0: usize,
    pub h1: usize,
    /// `dim H¹(W(p,q))` and `dim H¹(O(p,q)^{2n})`.
    pub balance: (usize, usize),
    pub kernel: Option<Vec<S>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RegularityReport<S> {
    pub entries: Vec<RegularityEntry<S>>,
}

impl<S: Scalar> RegularityReport<S> {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.h0 == 0 && e.h1 == 0 && e.balance.0 == e.balance.1)
    }

    pub fn failures(&self) -> Vec<(i64, i64)> {
        self.entries.iter().filter(|e| e.h0 != 0 || e.h1 != 0 || e.balance.0 != e.balance.1).map(|e| e.twist).collect()
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .entries
            .iter()
            .map(|e| {
                let mut v = json!({
                    "twist": [e.twist.0, e.twist.1],
                    "h0": e.h0,
                    "h1": e.h1,
                    "balance": [e.balance.0, e.balance.1],
                });
                if let Some(k) = &e.kernel {
                    v["kernel"] = Value::Array(k.iter().map(S::to_json).collect());
                }
                v
            })
            .collect();
        json!({"passed": self.passed(), "entries": entries})
    }
}

/// Checks `h*(F(m−1, −m−1)) = h*(F(−m−1, m−1)) = 0` for `0 ≤ m ≤ m_max`.
pub fn verify_regularity<S: Scalar>(res: &Resolution<S>, m_max: usize, tol: f64) -> RegularityReport<S> {
    let mut entries = Vec::new();
    for m in 0..=m_max as i64 {
        let mut twists = vec![(m - 1, -m - 1)];
        if m != 0 {
            twists.push((-m - 1, m - 1));
        }
        for (p, q) in twists {
            let [_, m1, _] = induced_maps(&res.m, p, q).expect("tags fixed by construction");
            let (src, dst) = twist_lists(res.n, p, q);
            let w: usize = src.iter().map(|&(a, b)| h_line(a, b).1).sum();
            let o: usize = dst.iter().map(|&(a, b)| h_line(a, b).1).sum();
            let rep = sheaf_cohomology(res, p, q, tol);
            let kernel = if rep.h0 > 0 { S::nullspace_of(&m1, tol).into_iter().next() } else { None };
            entries.push(RegularityEntry { twist: (p, q), h0: rep.h0, h1: rep.h1, balance: (w, o), kernel });
        }
    }
    RegularityReport { entries }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RecursionReport {
    pub m: usize,
    pub rank: usize,
    pub expected_rank: usize,
    pub det_yy_nonzero: bool,
}

impl RecursionReport {
    pub fn injective(&self) -> bool {
        self.rank == self.expected_rank
    }

    pub fn to_json(&self) -> Value {
        json!({
            "m": self.m,
            "rank": self.rank,
            "expected_rank": self.expected_rank,
            "injective": self.injective(),
            "det_yy_nonzero": self.det_yy_nonzero,
        })
    }
}

/// Propagates `v₀ ∈ ℂⁿ ⊗ ℂ[ζ]_{<m}` through `v ↦ X̄⁻¹((X + ζY)Ȳ − ζ)v` `m` times and
/// ranks the map onto the coefficients of degree `≥ m`, which must vanish for a kernel element.
pub fn kernel_recursion_witness<S: Scalar>(pair: &PluriPair<S>, m: usize, tol: f64) -> Result<RecursionReport, Error> {
    let n = pair.n();
    let (x, y) = (pair.x(), pair.y());
    let yb = y.conj();
    let xbi = x.conj().inverse()?;
    let t0 = xbi.mul(&x.mul(&yb));
    let t1 = xbi.mul(&y.mul(&yb).sub(&Matrix::identity(n)));
    let det_yy_nonzero = {
        let d = y.mul(&yb).sub(&Matrix::identity(n));
        S::rank_of(&d, tol) == n
    };
    if m == 0 {
        return Ok(RecursionReport { m, rank: 0, expected_rank: 0, det_yy_nonzero });
    }
    let mut cols = Vec::with_capacity(n * m);
    for d in 0..m {
        for k in 0..n {
            let mut v: Vec<Vec<S>> = vec![vec![S::zero(); n]; m];
            v[d][k] = S::one();
            for _ in 0..m {
                let mut w = vec![vec![S::zero(); n]; v.len() + 1];
                for (e, ve) in v.iter().enumerate() {
                    let a = t0.mul_vec(ve);
                    let b = t1.mul_vec(ve);
                    for i in 0..n {
                        w[e][i] = w[e][i].clone() + a[i].clone();
                        w[e + 1][i] = w[e + 1][i].clone() + b[i].clone();
                    }
                }
                v = w;
            }
            cols.push(v[m..].concat());
        }
    }
    let mat = Matrix::from_columns(cols[0].len(), &cols);
    Ok(RecursionReport { m, rank: S::rank_of(&mat, tol), expected_rank: n * m, det_yy_nonzero })
}

/// The σ-transformed matrix with its two column blocks exchanged, so that tags line up with `M`.
pub fn sigma_matrix<S: Scalar>(m: &PolyMatrix<S>) -> Result<PolyMatrix<S>, Error> {
    let n = m.cols() / 2;
    let tags = m.tags();
    PolyMatrix::from_fn(m.rows(), tags.to_vec(), |r, c| {
        let src = if c < n { c + n } else { c - n };
        let (k1, k2) = tags[src];
        m.entry(r, src).sigma_bideg(k1, k2).expect("entry respects tag")
    })
}

/// Existence of constant invertible `G`, `H = diag(H₁, H₂)` with `G·M^σ = M·H`.
pub fn sigma_compat_check<S: Scalar>(m: &PolyMatrix<S>, tol: f64) -> bool {
    let dim = m.rows();
    if dim == 0 {
        return true;
    }
    if m.cols() != dim || dim % 2 == 1 || m.tags() != resolution_tags(dim / 2).as_slice() {
        return false;
    }
    let n = dim / 2;
    let Ok(ms) = sigma_matrix(m) else { return false };
    // unknowns: G (dim²) then H₁, H₂ (n² each)
    let ng = dim * dim;
    let nu = ng + 2 * n * n;
    let h_index = |l: usize, c: usize| -> Option<usize> {
        match (l < n, c < n) {
            (true, true) => Some(ng + l * n + c),
            (false, false) => Some(ng + n * n + (l - n) * n + (c - n)),
            _ => None,
        }
    };
    let mut eqs: Vec<Vec<S>> = Vec::new();
    for r in 0..dim {
        for c in 0..dim {
            let (k1, k2) = m.tags()[c];
            for i in 0..=k1 {
                for j in 0..=k2 {
                    let mut row = vec![S::zero(); nu];
                    for k in 0..dim {
                        row[r * dim + k] = ms.entry(k, c).coeff(i, j);
                    }
                    for l in 0..dim {
                        if let Some(h) = h_index(l, c) {
                            row[h] = row[h].clone() - m.entry(r, l).coeff(i, j);
                        }
                    }
                    if row.iter().any(|x| !x.is_zero()) {
                        eqs.push(row);
                    }
                }
            }
        }
    }
    let sys = Matrix::from_rows(eqs).expect("rectangular");
    let basis = S::nullspace_of(&sys, tol);
    if basis.is_empty() {
        return false;
    }
    // two fixed generic combinations of the solution space
    for salt in [0u64, 1] {
        let mut sol = vec![S::zero(); nu];
        for (b, v) in basis.iter().enumerate() {
            let w = S::from_i64((((b as u64 + 3) * 2654435761 + salt * 40503) % 97) as i64 + 1);
            for (s, x) in sol.iter_mut().zip(v) {
                *s = s.clone() + w.mul_by(x);
            }
        }
        let g = Matrix::from_vec(dim, dim, sol[..ng].to_vec());
        let h1 = Matrix::from_vec(n, n, sol[ng..ng + n * n].to_vec());
        let h2 = Matrix::from_vec(n, n, sol[ng + n * n..].to_vec());
        if S::rank_of(&g, tol) == dim && S::rank_of(&h1, tol) == n && S::rank_of(&h2, tol) == n {
            return true;
        }
    }
    false
}

/// The map Ψ: `V^{1,0}_ζ` is the column span of the left block of `M` at `ζ`.
pub fn sphere_from_resolution<S: Scalar>(m: &PolyMatrix<S>, tol: f64) -> Result<Frame<S>, Error> {
    let res = Resolution::new(m.clone())?;
    let rep = sheaf_cohomology(&res, -1, -1, tol);
    if rep.h0 != 0 || rep.h1 != 0 {
        return Err(Error::InvalidInput(format!(
            "H*(F(-1,-1)) = ({}, {}) is not zero: no O(-1)-structure",
            rep.h0, rep.h1
        )));
    }
    let n = res.n;
    let a = m.coeff_matrix(0, 0).block(0, 0, 2 * n, n);
    let b = m.coeff_matrix(1, 0).block(0, 0, 2 * n, n);
    Ok(Frame { a, b })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::GaussianRational as G;

    fn hyper() -> PluriPair<G> {
        PluriPair::standard_hypercomplex(2).unwrap()
    }

    fn generic() -> PluriPair<G> {
        let x = Matrix::from_rows(vec![vec![G::from(0), G::from(1)], vec![G::from(-1), G::from(0)]]).unwrap();
        let y = Matrix::from_rows(vec![
            vec![G::from_fracs((1, 5), (0, 1)), G::from_fracs((0, 1), (1, 7))],
            vec![G::from_fracs((1, 9), (0, 1)), G::from_fracs((-1, 6), (1, 8))],
        ])
        .unwrap();
        PluriPair::new(x, y).unwrap()
    }

    #[test]
    fn cohomology_of_pairs() {
        for pair in [hyper(), generic()] {
            let res = Resolution::from_pair(&pair).unwrap();
            assert_eq!(sheaf_cohomology(&res, 0, 0, 0.0), CohReport { twist: (0, 0), h0: 4, h1: 0 });
            for (p, q) in [(-1, -1), (-2, 0), (0, -2)] {
                let r = sheaf_cohomology(&res, p, q, 0.0);
                assert_eq!((r.h0, r.h1), (0, 0), "twist ({p},{q})");
            }
            assert!(verify_regularity(&res, 3, 0.0).passed());
        }
    }

    #[test]
    fn euler_characteristic_additivity() {
        let res = Resolution::from_pair(&generic()).unwrap();
        for p in -3..3 {
            for q in -3..3 {
                let r = sheaf_cohomology(&res, p, q, 0.0);
                assert_eq!(r.h0 as i64 - r.h1 as i64, euler_from_terms(2, p, q), "({p},{q})");
            }
        }
    }

    #[test]
    fn stalks() {
        let m = resolution_matrix(&hyper());
        let t = G::from_fracs((1, 3), (2, 5));
        assert_eq!(stalk_rank(&m, &t, &t, 0.0), 2);
        assert_eq!(stalk_rank(&m, &t, &G::from(2), 0.0), 0);
    }

    #[test]
    fn recursion() {
        for pair in [hyper(), generic()] {
            for m in 0..4 {
                let r = kernel_recursion_witness(&pair, m, 0.0).unwrap();
                assert!(r.injective() && r.det_yy_nonzero);
            }
        }
    }

    #[test]
    fn sigma_compatibility() {
        assert!(sigma_compat_check(&PolyMatrix::<G>::new(vec![], vec![]).unwrap(), 0.0));
        let m = resolution_matrix(&generic());
        assert!(sigma_compat_check(&m, 0.0));
        let mut rows = m.to_rows();
        rows[0][0] = rows[0][0].add(&BiPoly::constant(G::from_fracs((1, 3), (0, 1))));
        let bad = PolyMatrix::new(rows, m.tags().to_vec()).unwrap();
        assert!(!sigma_compat_check(&bad, 0.0));
    }

    #[test]
    fn psi_round_trip() {
        let pair = generic();
        let f = sphere_from_resolution(&resolution_matrix(&pair), 0.0).unwrap();
        assert_eq!(f, pair.pencil());
        let zero = PolyMatrix::<G>::from_fn(2, resolution_tags(1), |_, _| BiPoly::zero()).unwrap();
        assert!(sphere_from_resolution(&zero, 0.0).is_err());
    }

    #[test]
    fn direct_sum_frames() {
        let (p1, p2) = (hyper(), generic());
        let r = Resolution::from_pair(&p1).unwrap().direct_sum(&Resolution::from_pair(&p2).unwrap()).unwrap();
        let f = sphere_from_resolution(r.matrix(), 0.0).unwrap();
        let (f1, f2) = (p1.pencil(), p2.pencil());
        let z = G::from_fracs((2, 3), (-1, 4));
        let zp = crate::exactnum::ProjPoint::Finite(z);
        let expect = Matrix::block_diag(&f1.at(&zp), &f2.at(&zp));
        assert_eq!(f.at(&zp), expect);
    }

    #[test]
    fn json_round_trip() {
        let res = Resolution::from_pair(&generic()).unwrap();
        assert_eq!(Resolution::from_json(&res.to_json()).unwrap(), res);
    }
}
