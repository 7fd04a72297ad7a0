use super::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    Zeta,
    Eta,
}

/// Element of `H¹(P¹, O(b))` in the Laurent model: `Σ coeffs[t] x^{low+t}` over the
/// window `b+1 ≤ j ≤ −1`.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentWindow<S> {
    pub var: Var,
    pub low: i64,
    pub coeffs: Vec<S>,
}

/// Window exponents for `H¹(P¹, O(b))`; empty for `b ≥ −1`.
pub fn window_range(b: i64) -> std::ops::RangeInclusive<i64> {
    (b + 1).min(0)..=-1
}

pub fn h1_dim(b: i64) -> usize {
    if b <= -2 { (-b - 1) as usize } else { 0 }
}

pub fn h0_dim(a: i64) -> usize {
    if a >= 0 { (a + 1) as usize } else { 0 }
}

impl<S: Scalar> LaurentWindow<S> {
    pub fn zero(var: Var, b: i64) -> Self {
        LaurentWindow { var, low: b + 1, coeffs: vec![S::zero(); h1_dim(b)] }
    }

    /// Projects Laurent terms `(exponent, coefficient)` onto the window of `O(b)`.
    pub fn from_terms(var: Var, b: i64, terms: impl IntoIterator<Item = (i64, S)>) -> Self {
        let mut w = LaurentWindow::<S>::zero(var, b);
        for (e, c) in terms {
            if window_range(b).contains(&e) {
                let t = (e - w.low) as usize;
                w.coeffs[t] = w.coeffs[t].clone() + c;
            }
        }
        w
    }

    pub fn twist(&self) -> i64 {
        self.low - 1
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, exp: i64) -> S {
        if exp < self.low {
            return S::zero();
        }
        self.coeffs.get((exp - self.low) as usize).cloned().unwrap_or_else(S::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &S)> {
        self.coeffs.iter().enumerate().map(move |(t, c)| (self.low + t as i64, c))
    }

    /// Multiplies by `Σ p[d] x^d` and truncates to the window of `O(b + deg)`.
    pub fn mul_poly(&self, p: &[S], target_b: i64) -> Self {
        let mut terms = Vec::new();
        for (e, c) in self.terms() {
            for (d, pc) in p.iter().enumerate() {
                if !pc.is_zero() {
                    terms.push((e + d as i64, c.mul_by(pc)));
                }
            }
        }
        LaurentWindow::from_terms(self.var, target_b, terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::GaussianRational as G;

    #[test]
    fn zeta_shift_on_window() {
        // ζ: H¹(O(−3)) → H¹(O(−2)); ζ^{−2} ↦ ζ^{−1}, ζ^{−1} ↦ 0
        let x = [G::from(0), G::from(1)];
        let a = LaurentWindow::from_terms(Var::Zeta, -3, [(-2, G::from(1))]);
        assert_eq!(a.mul_poly(&x, -2).coeffs, vec![G::from(1)]);
        let b = LaurentWindow::from_terms(Var::Zeta, -3, [(-1, G::from(1))]);
        assert_eq!(b.mul_poly(&x, -2).coeffs, vec![G::from(0)]);
        assert_eq!(LaurentWindow::<G>::zero(Var::Eta, -1).dim(), 0);
    }
}
