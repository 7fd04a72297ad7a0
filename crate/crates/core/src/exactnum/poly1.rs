use num_complex::Complex64;

use super::scalar::Scalar;

/// Univariate polynomial, `coeffs[i]` is the coefficient of `x^i`; trailing zeros trimmed.
#[derive(Clone, PartialEq, Debug)]
pub struct Poly1<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> Poly1<S> {
    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly1 { coeffs }
    }

    pub fn zero() -> Self {
        Poly1 { coeffs: Vec::new() }
    }

    pub fn constant(c: S) -> Self {
        Poly1::new(vec![c])
    }

    pub fn monomial(c: S, deg: usize) -> Self {
        let mut v = vec![S::zero(); deg + 1];
        v[deg] = c;
        Poly1::new(v)
    }

    /// `x - root`.
    pub fn linear_root(root: S) -> Self {
        Poly1::new(vec![-root, S::one()])
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> S {
        self.coeffs.get(i).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> S {
        self.coeffs.last().cloned().unwrap_or_else(S::zero)
    }

    pub fn eval(&self, x: &S) -> S {
        let mut acc = S::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul_by(x) + c.clone();
        }
        acc
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly1::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly1::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn neg(&self) -> Self {
        Poly1 { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }

    pub fn scale(&self, s: &S) -> Self {
        Poly1::new(self.coeffs.iter().map(|c| c.mul_by(s)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Poly1::zero();
        }
        let mut out = vec![S::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.mul_by(b);
            }
        }
        Poly1::new(out)
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Poly1::constant(S::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Poly1::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c.mul_by(&S::from_i64(i as i64))).collect())
    }

    pub fn conj(&self) -> Self {
        Poly1 { coeffs: self.coeffs.iter().map(|c| c.conj()).collect() }
    }

    /// Division with remainder over the field.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.coeffs.len() - 1;
        let lead_inv = S::one() / d.leading();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Poly1::zero(), self.clone());
        }
        let mut q = vec![S::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = r[k + dd].mul_by(&lead_inv);
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[k + j] = r[k + j].sub_mul(&c, dc);
                }
            }
            r[k + dd] = S::zero();
            q[k] = c;
        }
        (Poly1::new(q), Poly1::new(r))
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = S::one() / self.leading();
        self.scale(&inv)
    }

    /// Monic greatest common divisor (zero when both are zero).
    pub fn gcd(a: &Self, b: &Self) -> Self {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let (_, r) = x.divrem(&y);
            x = y;
            y = r;
        }
        x.monic()
    }

    /// `r♯(x) = Σ conj(c_j) (−1)^j x^{k−j}`: the conjugate-reversal attached to the real structure.
    pub fn sharp(&self, k: usize) -> Self {
        let mut out = vec![S::zero(); k + 1];
        for (j, c) in self.coeffs.iter().enumerate() {
            assert!(j <= k, "degree exceeds k in sharp");
            let v = c.conj();
            out[k - j] = if j % 2 == 0 { v } else { -v };
        }
        Poly1::new(out)
    }

    /// `x^k p(1/x)`.
    pub fn reversed(&self, k: usize) -> Self {
        let mut out = vec![S::zero(); k + 1];
        for (j, c) in self.coeffs.iter().enumerate() {
            assert!(j <= k, "degree exceeds k in reversal");
            out[k - j] = c.clone();
        }
        Poly1::new(out)
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Poly1<T> {
        Poly1::new(self.coeffs.iter().map(f).collect())
    }
}

/// All complex roots (with multiplicity) by Aberth iteration followed by Newton polishing.
pub fn roots(p: &Poly1<Complex64>) -> Vec<Complex64> {
    let Some(n) = p.degree() else { return Vec::new() };
    if n == 0 {
        return Vec::new();
    }
    let p = p.monic();
    let dp = p.derivative();
    let radius = 1.0 + p.coeffs().iter().take(n).map(|c| c.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius * 0.5, 0.4 + 2.0 * std::f64::consts::PI * k as f64 / n as f64))
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let pv = p.eval(&z[i]);
            let dv = dp.eval(&z[i]);
            if pv.norm() == 0.0 {
                continue;
            }
            let ratio = pv / dv;
            let s: Complex64 = (0..n).filter(|&j| j != i).map(|j| Complex64::new(1.0, 0.0) / (z[i] - z[j])).sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if w.is_finite() {
                z[i] -= w;
                moved = moved.max(w.norm());
            }
        }
        if moved < 1e-15 * radius {
            break;
        }
    }
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let d = dp.eval(zi);
            if d.norm() > 0.0 {
                let step = p.eval(zi) / d;
                if step.is_finite() {
                    *zi -= step;
                }
            }
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::GaussianRational as G;
    use num_traits::{One, Zero};

    #[test]
    fn gcd_and_division() {
        let x1 = Poly1::linear_root(G::from(1));
        let x2 = Poly1::linear_root(G::from(2));
        let x3 = Poly1::linear_root(G::i());
        let a = x1.mul(&x2);
        let b = x1.mul(&x3);
        assert_eq!(Poly1::gcd(&a, &b), x1);
        let (q, r) = a.divrem(&x2);
        assert!(r.is_zero());
        assert_eq!(q, x1);
    }

    #[test]
    fn sharp_of_monomials() {
        let p = Poly1::new(vec![G::zero(), G::one()]);
        assert_eq!(p.sharp(1), Poly1::constant(G::from(-1)));
        let q = Poly1::constant(G::one());
        assert_eq!(q.sharp(1), Poly1::new(vec![G::zero(), G::one()]));
    }

    #[test]
    fn aberth_roots() {
        let p = Poly1::new(vec![Complex64::new(2.0, 0.0), Complex64::new(-3.0, 0.0), Complex64::new(1.0, 0.0)]);
        let mut r = roots(&p);
        r.sort_by(|a, b| a.re.total_cmp(&b.re));
        assert!((r[0] - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        assert!((r[1] - Complex64::new(2.0, 0.0)).norm() < 1e-12);
    }
}
