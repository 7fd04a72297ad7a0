//! Laurent polynomials in `(ζ, η)` and in `ζ` alone, used for Čech cochains on two-set covers.

use std::collections::BTreeMap;

use crate::exactnum::{BiPoly, Scalar};

/// Laurent polynomial in `ζ` (one component of a curve).
pub type Laurent1<S> = BTreeMap<i64, S>;

/// Sparse Laurent polynomial `Σ c ζ^i η^j`.
#[derive(Clone, Debug, PartialEq)]
pub struct Laurent2<S> {
    terms: BTreeMap<(i64, i64), S>,
}

impl<S: Scalar> Default for Laurent2<S> {
    fn default() -> Self {
        Laurent2 { terms: BTreeMap::new() }
    }
}

impl<S: Scalar> Laurent2<S> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms(it: impl IntoIterator<Item = ((i64, i64), S)>) -> Self {
        let mut out = Self::zero();
        for (e, c) in it {
            out.add_term(e, c);
        }
        out
    }

    pub fn from_bipoly(p: &BiPoly<S>) -> Self {
        Self::from_terms(p.terms().into_iter().map(|(i, j, c)| ((i as i64, j as i64), c)))
    }

    pub fn monomial(c: S, i: i64, j: i64) -> Self {
        Self::from_terms([((i, j), c)])
    }

    fn add_term(&mut self, e: (i64, i64), c: S) {
        if c.is_zero() {
            return;
        }
        let v = match self.terms.remove(&e) {
            Some(old) => old + c,
            None => c,
        };
        if !v.is_zero() {
            self.terms.insert(e, v);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64), &S)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: i64, j: i64) -> S {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_modulus(&self) -> f64 {
        self.terms.values().map(|c| c.modulus()).fold(0.0, f64::max)
    }

    /// Zero up to `tol` relative to `scale` (exact zero for exact scalars).
    pub fn is_negligible(&self, tol: f64, scale: f64) -> bool {
        self.terms.values().all(|c| c.is_negligible(tol, scale))
    }

    /// `(min, max)` exponent of η, if nonzero.
    pub fn eta_range(&self) -> Option<(i64, i64)> {
        let lo = self.terms.keys().map(|e| e.1).min()?;
        let hi = self.terms.keys().map(|e| e.1).max()?;
        Some((lo, hi))
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-S::one()))
    }

    pub fn scale(&self, s: &S) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| (*e, c.mul_by(s))))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (&(i, j), a) in &self.terms {
            for (&(p, q), b) in &o.terms {
                out.add_term((i + p, j + q), a.mul_by(b));
            }
        }
        out
    }

    pub fn mul_bipoly(&self, p: &BiPoly<S>) -> Self {
        self.mul(&Self::from_bipoly(p))
    }

    /// Terms whose exponents satisfy `keep`.
    pub fn filter(&self, keep: impl Fn(i64, i64) -> bool) -> Self {
        Laurent2 { terms: self.terms.iter().filter(|(e, _)| keep(e.0, e.1)).map(|(e, c)| (*e, c.clone())).collect() }
    }

    /// Quotient by `p` when `p` divides (ζ-exponents of the quotient stay ≥ 0);
    /// remainders below `tol` relative to the dividend's scale count as zero.
    pub fn div_bipoly(&self, p: &BiPoly<S>, tol: f64) -> Option<Self> {
        let scale = self.max_modulus();
        let mut r = self.clone();
        if r.is_zero() {
            return Some(r);
        }
        let d = Self::from_bipoly(p);
        let lead = |l: &Self| -> Option<((i64, i64), S)> {
            l.terms
                .iter()
                .filter(|(_, c)| !c.is_negligible(tol, scale))
                .max_by(|a, b| (a.0 .1, a.0 .0).cmp(&(b.0 .1, b.0 .0)))
                .map(|(e, c)| (*e, c.clone()))
        };
        let ((di, dj), dc) = lead(&d)?;
        let d_low = d.eta_range()?.0;
        let q_low = r.eta_range()?.0 - d_low;
        let mut q = Self::zero();
        while let Some(((i, j), c)) = lead(&r) {
            if i < di || j - dj < q_low {
                return None;
            }
            let t = Self::monomial(c / dc.clone(), i - di, j - dj);
            r = r.sub(&t.mul(&d));
            r.terms.remove(&(i, j));
            q = q.add(&t);
        }
        Some(q)
    }

    /// Restriction to the graph `η = aζ`: a Laurent polynomial in ζ.
    pub fn restrict_graph(&self, a: &S) -> Laurent1<S> {
        let mut out: Laurent1<S> = BTreeMap::new();
        for (&(i, j), c) in &self.terms {
            let pw = pow_signed(a, j);
            let v = c.mul_by(&pw);
            let slot = out.entry(i + j).or_insert_with(S::zero);
            *slot = slot.clone() + v;
        }
        out.retain(|_, v| !v.is_zero());
        out
    }
}

/// `a^e` for any integer `e` (`a ≠ 0` when `e < 0`).
pub fn pow_signed<S: Scalar>(a: &S, e: i64) -> S {
    let mut acc = S::one();
    for _ in 0..e.unsigned_abs() {
        acc = acc.mul_by(a);
    }
    if e < 0 { S::one() / acc } else { acc }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::GaussianRational as G;

    #[test]
    fn division_round_trip() {
        let p = BiPoly::from_table(vec![vec![G::from(1), G::from(2)], vec![G::from(-3), G::from(1)]]).unwrap();
        let q = Laurent2::from_terms([((0, -3), G::from(2)), ((1, 0), G::i()), ((2, 1), G::from(5))]);
        let prod = q.mul_bipoly(&p);
        assert_eq!(prod.div_bipoly(&p, 0.0), Some(q));
        let bad = prod.add(&Laurent2::monomial(G::from(1), 0, -7));
        assert_eq!(bad.div_bipoly(&p, 0.0), None);
    }

    #[test]
    fn graph_restriction() {
        let l = Laurent2::from_terms([((0, 2), G::from(1)), ((1, -1), G::from(3))]);
        let r = l.restrict_graph(&G::from(2));
        assert_eq!(r.get(&2), Some(&G::from(4)));
        assert_eq!(r.get(&0), Some(&G::from_fracs((3, 2), (0, 1))));
    }
}
