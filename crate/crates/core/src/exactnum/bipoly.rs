use std::fmt;

use super::mobius::Mobius;
use super::poly1::Poly1;
use super::scalar::Scalar;
use crate::error::Error;

/// Polynomial in (ζ, η) with stored bidegree bounds; `coeff(i, j)` multiplies `ζ^i η^j`.
#[derive(Clone, Debug)]
pub struct BiPoly<S> {
    k1: usize,
    k2: usize,
    coeffs: Vec<S>,
}

impl<S: Scalar> PartialEq for BiPoly<S> {
    /// Polynomial equality; the stored bounds do not matter.
    fn eq(&self, o: &Self) -> bool {
        let a = self.k1.max(o.k1);
        let b = self.k2.max(o.k2);
        (0..=a).all(|i| (0..=b).all(|j| self.coeff(i, j) == o.coeff(i, j)))
    }
}

impl<S: Scalar> BiPoly<S> {
    pub fn from_fn(k1: usize, k2: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut coeffs = Vec::with_capacity((k1 + 1) * (k2 + 1));
        for i in 0..=k1 {
            for j in 0..=k2 {
                coeffs.push(f(i, j));
            }
        }
        BiPoly { k1, k2, coeffs }
    }

    /// From a table `rows[i][j]`; the bidegree is read from the table shape.
    pub fn from_table(rows: Vec<Vec<S>>) -> Result<Self, Error> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(Error::Shape("empty coefficient table".into()));
        }
        let k2 = rows[0].len() - 1;
        if rows.iter().any(|r| r.len() != k2 + 1) {
            return Err(Error::Shape("ragged coefficient table".into()));
        }
        let k1 = rows.len() - 1;
        Ok(BiPoly { k1, k2, coeffs: rows.into_iter().flatten().collect() })
    }

    pub fn zero() -> Self {
        BiPoly::constant(S::zero())
    }

    pub fn constant(c: S) -> Self {
        BiPoly { k1: 0, k2: 0, coeffs: vec![c] }
    }

    pub fn monomial(c: S, i: usize, j: usize) -> Self {
        BiPoly::from_fn(i, j, |a, b| if a == i && b == j { c.clone() } else { S::zero() })
    }

    pub fn zeta() -> Self {
        BiPoly::monomial(S::one(), 1, 0)
    }

    pub fn eta() -> Self {
        BiPoly::monomial(S::one(), 0, 1)
    }

    /// `c0 + c1·ζ`.
    pub fn linear_zeta(c0: S, c1: S) -> Self {
        BiPoly { k1: 1, k2: 0, coeffs: vec![c0, c1] }
    }

    /// `c0 + c1·η`.
    pub fn linear_eta(c0: S, c1: S) -> Self {
        BiPoly { k1: 0, k2: 1, coeffs: vec![c0, c1] }
    }

    pub fn from_zeta_poly(p: &Poly1<S>) -> Self {
        let d = p.degree().unwrap_or(0);
        BiPoly::from_fn(d, 0, |i, _| p.coeff(i))
    }

    pub fn from_eta_poly(p: &Poly1<S>) -> Self {
        let d = p.degree().unwrap_or(0);
        BiPoly::from_fn(0, d, |_, j| p.coeff(j))
    }

    pub fn bidegree(&self) -> (usize, usize) {
        (self.k1, self.k2)
    }

    pub fn coeff(&self, i: usize, j: usize) -> S {
        if i <= self.k1 && j <= self.k2 {
            self.coeffs[i * (self.k2 + 1) + j].clone()
        } else {
            S::zero()
        }
    }

    pub fn coeff_ref(&self, i: usize, j: usize) -> &S {
        &self.coeffs[i * (self.k2 + 1) + j]
    }

    pub fn table(&self) -> Vec<Vec<S>> {
        (0..=self.k1).map(|i| (0..=self.k2).map(|j| self.coeff(i, j)).collect()).collect()
    }

    /// Nonzero terms as `(i, j, c)`.
    pub fn terms(&self) -> Vec<(usize, usize, S)> {
        let mut out = Vec::new();
        for i in 0..=self.k1 {
            for j in 0..=self.k2 {
                let c = self.coeff_ref(i, j);
                if !c.is_zero() {
                    out.push((i, j, c.clone()));
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Actual degrees in ζ and η (zero polynomial gives (0, 0)).
    pub fn degrees(&self) -> (usize, usize) {
        let mut d = (0, 0);
        for (i, j, _) in self.terms() {
            d.0 = d.0.max(i);
            d.1 = d.1.max(j);
        }
        d
    }

    pub fn trimmed(&self) -> Self {
        let (a, b) = self.degrees();
        BiPoly::from_fn(a, b, |i, j| self.coeff(i, j))
    }

    pub fn with_bounds(&self, k1: usize, k2: usize) -> Result<Self, Error> {
        let (a, b) = self.degrees();
        if a > k1 || b > k2 {
            return Err(Error::Bidegree(format!("polynomial of degree ({a},{b}) exceeds bound ({k1},{k2})")));
        }
        Ok(BiPoly::from_fn(k1, k2, |i, j| self.coeff(i, j)))
    }

    pub fn add(&self, o: &Self) -> Self {
        BiPoly::from_fn(self.k1.max(o.k1), self.k2.max(o.k2), |i, j| self.coeff(i, j) + o.coeff(i, j))
    }

    pub fn sub(&self, o: &Self) -> Self {
        BiPoly::from_fn(self.k1.max(o.k1), self.k2.max(o.k2), |i, j| self.coeff(i, j) - o.coeff(i, j))
    }

    pub fn neg(&self) -> Self {
        BiPoly { k1: self.k1, k2: self.k2, coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }

    pub fn scale(&self, s: &S) -> Self {
        BiPoly { k1: self.k1, k2: self.k2, coeffs: self.coeffs.iter().map(|c| c.mul_by(s)).collect() }
    }

    pub fn conj(&self) -> Self {
        BiPoly { k1: self.k1, k2: self.k2, coeffs: self.coeffs.iter().map(|c| c.conj()).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = BiPoly::from_fn(self.k1 + o.k1, self.k2 + o.k2, |_, _| S::zero());
        let w = out.k2 + 1;
        for (i, j, a) in self.terms() {
            for (p, q, b) in o.terms() {
                let idx = (i + p) * w + j + q;
                out.coeffs[idx] = out.coeffs[idx].clone() + a.mul_by(&b);
            }
        }
        out
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = BiPoly::constant(S::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, z: &S, w: &S) -> S {
        let mut acc = S::zero();
        for i in (0..=self.k1).rev() {
            let mut row = S::zero();
            for j in (0..=self.k2).rev() {
                row = row.mul_by(w) + self.coeff_ref(i, j).clone();
            }
            acc = acc.mul_by(z) + row;
        }
        acc
    }

    /// Polynomial in η obtained by fixing ζ.
    pub fn eval_zeta(&self, z: &S) -> Poly1<S> {
        Poly1::new(
            (0..=self.k2)
                .map(|j| (0..=self.k1).rev().fold(S::zero(), |acc, i| acc.mul_by(z) + self.coeff(i, j)))
                .collect(),
        )
    }

    /// Polynomial in ζ obtained by fixing η.
    pub fn eval_eta(&self, w: &S) -> Poly1<S> {
        Poly1::new(
            (0..=self.k1)
                .map(|i| (0..=self.k2).rev().fold(S::zero(), |acc, j| acc.mul_by(w) + self.coeff(i, j)))
                .collect(),
        )
    }

    pub fn partial_zeta(&self) -> Self {
        if self.k1 == 0 {
            return BiPoly::zero();
        }
        BiPoly::from_fn(self.k1 - 1, self.k2, |i, j| self.coeff(i + 1, j).mul_by(&S::from_i64(i as i64 + 1)))
    }

    pub fn partial_eta(&self) -> Self {
        if self.k2 == 0 {
            return BiPoly::zero();
        }
        BiPoly::from_fn(self.k1, self.k2 - 1, |i, j| self.coeff(i, j + 1).mul_by(&S::from_i64(j as i64 + 1)))
    }

    /// σ-transform for bidegree bounds (k1, k2): `ζ^{k2} η^{k1} · conj(P(−1/η̄, −1/ζ̄))`,
    /// a polynomial of bidegree (k2, k1).
    pub fn sigma_bideg(&self, k1: usize, k2: usize) -> Result<Self, Error> {
        let p = self.with_bounds(k1, k2)?;
        Ok(BiPoly::from_fn(k2, k1, |a, b| {
            let (i, j) = (k1 - b, k2 - a);
            let c = p.coeff(i, j).conj();
            if (i + j) % 2 == 0 { c } else { -c }
        }))
    }

    /// `c'[k−j][k−i] = (−1)^{i+j} conj(c[i][j])`.
    pub fn sigma_transform(&self, k: usize) -> Result<Self, Error> {
        self.sigma_bideg(k, k)
    }

    /// Coefficients of powers of η, each a polynomial in ζ.
    pub fn eta_coeffs(&self) -> Vec<Poly1<S>> {
        let (_, b) = self.degrees();
        (0..=b).map(|j| Poly1::new((0..=self.k1).map(|i| self.coeff(i, j)).collect())).collect()
    }

    pub fn from_eta_coeffs(cs: &[Poly1<S>]) -> Self {
        let k1 = cs.iter().filter_map(|p| p.degree()).max().unwrap_or(0);
        let k2 = cs.len().saturating_sub(1);
        BiPoly::from_fn(k1, k2, |i, j| cs.get(j).map_or_else(S::zero, |p| p.coeff(i)))
    }

    /// Leading coefficient in the order (ζ-degree desc, η-degree desc).
    pub fn leading_coeff(&self) -> S {
        for i in (0..=self.k1).rev() {
            for j in (0..=self.k2).rev() {
                let c = self.coeff_ref(i, j);
                if !c.is_zero() {
                    return c.clone();
                }
            }
        }
        S::zero()
    }

    /// Scaled so the leading coefficient is 1.
    pub fn normalized(&self) -> Self {
        let lc = self.leading_coeff();
        if lc.is_zero() {
            return self.clone();
        }
        self.scale(&(S::one() / lc))
    }

    /// The scalar `u` with `self = u·o`, if one exists.
    pub fn ratio_to(&self, o: &Self) -> Option<S> {
        let a = self.leading_coeff();
        let b = o.leading_coeff();
        if a.is_zero() || b.is_zero() {
            return if self.is_zero() && o.is_zero() { Some(S::one()) } else { None };
        }
        let u = a / b;
        if *self == o.scale(&u) { Some(u) } else { None }
    }

    /// Like `ratio_to` with a float tolerance relative to the coefficient scale.
    pub fn ratio_to_tol(&self, o: &Self, tol: f64) -> Option<S> {
        if S::EXACT {
            return self.ratio_to(o);
        }
        let (ta, tb) = (self.terms(), o.terms());
        let best = tb.iter().max_by(|x, y| x.2.modulus().total_cmp(&y.2.modulus()))?;
        let u = self.coeff(best.0, best.1) / best.2.clone();
        let diff = self.sub(&o.scale(&u));
        let scale = ta.iter().map(|t| t.2.modulus()).fold(0.0, f64::max).max(1e-300);
        if diff.coeffs.iter().all(|c| c.modulus() <= tol * scale) { Some(u) } else { None }
    }

    pub fn max_modulus(&self) -> f64 {
        self.coeffs.iter().map(|c| c.modulus()).fold(0.0, f64::max)
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let d = d.trimmed();
        let (di, dj) = lead_lex(&d)?;
        let dl = d.coeff(di, dj);
        let t = self.trimmed();
        let (ra, rb) = t.bidegree();
        if t.is_zero() {
            return Some(BiPoly::zero());
        }
        if ra < di || rb < dj {
            return None;
        }
        // room for intermediate terms of higher ζ-degree
        let mut r = t.with_bounds(ra + d.k1, rb).expect("padding only grows bounds");
        let mut q = BiPoly::from_fn(ra.saturating_sub(di), rb.saturating_sub(dj), |_, _| S::zero());
        while let Some((i, j)) = lead_lex(&r) {
            if i < di || j < dj || i - di > q.k1 {
                return None;
            }
            let c = r.coeff(i, j) / dl.clone();
            let qi = (i - di) * (q.k2 + 1) + (j - dj);
            q.coeffs[qi] = q.coeffs[qi].clone() + c.clone();
            for (p, s, dc) in d.terms() {
                let idx = (i - di + p) * (r.k2 + 1) + (j - dj + s);
                r.coeffs[idx] = r.coeffs[idx].sub_mul(&c, &dc);
            }
            r.coeffs[i * (r.k2 + 1) + j] = S::zero();
        }
        Some(q)
    }

    /// Greatest common divisor over the field, via content and primitive remainder
    /// sequences in η over the polynomial ring in ζ; normalized.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        if a.is_zero() {
            return b.normalized();
        }
        if b.is_zero() {
            return a.normalized();
        }
        let (ca, pa) = content_split(a);
        let (cb, pb) = content_split(b);
        let c = Poly1::gcd(&ca, &cb);
        let (mut x, mut y) = if degree_eta(&pa) >= degree_eta(&pb) { (pa, pb) } else { (pb, pa) };
        while !y.is_zero() {
            let r = pseudo_rem(&x, &y);
            x = y;
            y = if r.is_zero() { r } else { content_split(&r).1 };
        }
        let g = content_split(&x).1;
        g.mul(&BiPoly::from_zeta_poly(&c)).trimmed().normalized()
    }

    /// Product of the distinct irreducible factors: `P / gcd(P, ∂P/∂ζ, ∂P/∂η)`, normalized.
    pub fn squarefree_part(&self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let g = BiPoly::gcd(&BiPoly::gcd(self, &self.partial_zeta()), &self.partial_eta());
        let q = self.div_exact(&g).expect("gcd divides");
        Ok(q.trimmed().normalized())
    }

    /// `(cζ+d)^{k1} (c'η+d')^{k2} · P(gζ, hη)` for g = [[a,b],[c,d]] and h likewise.
    pub fn mobius_substitute(&self, g: &Mobius<S>, h: &Mobius<S>, k1: usize, k2: usize) -> Result<Self, Error> {
        let p = self.with_bounds(k1, k2)?;
        let [a, b, c, d] = g.entries();
        let [a2, b2, c2, d2] = h.entries();
        let num_z = Poly1::new(vec![b, a]);
        let den_z = Poly1::new(vec![d, c]);
        let num_w = Poly1::new(vec![b2, a2]);
        let den_w = Poly1::new(vec![d2, c2]);
        let zp: Vec<Poly1<S>> = (0..=k1).map(|i| num_z.pow(i).mul(&den_z.pow(k1 - i))).collect();
        let wp: Vec<Poly1<S>> = (0..=k2).map(|j| num_w.pow(j).mul(&den_w.pow(k2 - j))).collect();
        let mut out = BiPoly::from_fn(k1, k2, |_, _| S::zero());
        for (i, j, cij) in p.terms() {
            let term = BiPoly::from_zeta_poly(&zp[i]).mul(&BiPoly::from_eta_poly(&wp[j])).scale(&cij);
            out = out.add(&term);
        }
        out.with_bounds(k1, k2)
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> BiPoly<T> {
        BiPoly { k1: self.k1, k2: self.k2, coeffs: self.coeffs.iter().map(f).collect() }
    }
}

fn lead_lex<S: Scalar>(p: &BiPoly<S>) -> Option<(usize, usize)> {
    for j in (0..=p.k2).rev() {
        for i in (0..=p.k1).rev() {
            if !p.coeff_ref(i, j).is_zero() {
                return Some((i, j));
            }
        }
    }
    None
}

fn degree_eta<S: Scalar>(p: &BiPoly<S>) -> usize {
    p.degrees().1
}

/// Splits into (content in ζ, primitive part).
fn content_split<S: Scalar>(p: &BiPoly<S>) -> (Poly1<S>, BiPoly<S>) {
    let cs = p.eta_coeffs();
    let mut c = Poly1::zero();
    for q in &cs {
        c = Poly1::gcd(&c, q);
    }
    if c.is_zero() {
        return (Poly1::constant(S::one()), p.clone());
    }
    let prim: Vec<Poly1<S>> = cs.iter().map(|q| q.divrem(&c).0).collect();
    (c, BiPoly::from_eta_coeffs(&prim))
}

/// Pseudo-remainder of `a` by `b` as polynomials in η over the ring of polynomials in ζ.
fn pseudo_rem<S: Scalar>(a: &BiPoly<S>, b: &BiPoly<S>) -> BiPoly<S> {
    let mut r = a.eta_coeffs();
    let bc = b.eta_coeffs();
    let db = bc.len() - 1;
    let lb = bc[db].clone();
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        let mut next: Vec<Poly1<S>> = r.iter().map(|c| c.mul(&lb)).collect();
        for (k, c) in bc.iter().enumerate() {
            next[k + shift] = next[k + shift].sub(&c.mul(&lr));
        }
        next.pop();
        while next.last().is_some_and(|c| c.is_zero()) {
            next.pop();
        }
        r = next;
    }
    BiPoly::from_eta_coeffs(&r)
}

impl<S: Scalar> fmt::Display for BiPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = terms
            .iter()
            .map(|(i, j, c)| {
                let mono = match (i, j) {
                    (0, 0) => String::new(),
                    _ => {
                        let z = match i { 0 => String::new(), 1 => "ζ".into(), _ => format!("ζ^{i}") };
                        let w = match j { 0 => String::new(), 1 => "η".into(), _ => format!("η^{j}") };
                        format!("{z}{w}")
                    }
                };
                if mono.is_empty() { format!("({c})") } else { format!("({c}){mono}") }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::GaussianRational as G;
    use num_traits::One;

    fn zeta_minus_eta() -> BiPoly<G> {
        BiPoly::zeta().sub(&BiPoly::eta())
    }

    #[test]
    fn squarefree_examples() {
        let d = zeta_minus_eta();
        assert_eq!(d.mul(&d).squarefree_part().unwrap(), d);
        let e = BiPoly::zeta().mul(&BiPoly::eta()).add(&BiPoly::constant(G::one()));
        assert_eq!(e.squarefree_part().unwrap(), e);
        let p = d.mul(&d).mul(&e);
        assert_eq!(p.squarefree_part().unwrap(), d.mul(&e));
    }

    #[test]
    fn sigma_examples() {
        let d = zeta_minus_eta();
        assert_eq!(d.sigma_transform(1).unwrap(), d.neg());
        let a = G::from_ints(2, 3);
        let p = BiPoly::eta().sub(&BiPoly::zeta().scale(&a));
        let expect = BiPoly::eta().sub(&BiPoly::zeta().scale(&a.conj())).neg();
        assert_eq!(p.sigma_transform(1).unwrap(), expect);
        assert_eq!(BiPoly::constant(G::one()).sigma_transform(0).unwrap(), BiPoly::constant(G::one()));
        assert!(p.sigma_transform(0).is_err());
    }

    #[test]
    fn division() {
        let d = zeta_minus_eta();
        let e = BiPoly::zeta().mul(&BiPoly::eta()).add(&BiPoly::constant(G::from(3)));
        let p = d.mul(&e);
        assert_eq!(p.div_exact(&d).unwrap(), e);
        assert!(e.div_exact(&d).is_none());
    }

    #[test]
    fn gcd_with_zeta_content() {
        let z1 = BiPoly::linear_zeta(G::from(1), G::from(1));
        let d = zeta_minus_eta();
        let a = z1.mul(&d);
        let b = z1.mul(&BiPoly::eta().add(&BiPoly::constant(G::from(2))));
        assert_eq!(BiPoly::gcd(&a, &b), z1.normalized());
    }
}
