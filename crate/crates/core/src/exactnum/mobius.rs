use num_complex::Complex64;

use super::matrix::Matrix;
use super::scalar::Scalar;
use crate::error::Error;

/// Point of the projective line.
#[derive(Clone, Debug, PartialEq)]
pub enum ProjPoint<S> {
    Finite(S),
    Infinity,
}

impl<S: Scalar> ProjPoint<S> {
    /// The antipode `−1/z̄`.
    pub fn antipode(&self) -> Self {
        match self {
            ProjPoint::Infinity => ProjPoint::Finite(S::zero()),
            ProjPoint::Finite(z) if z.is_zero() => ProjPoint::Infinity,
            ProjPoint::Finite(z) => ProjPoint::Finite(-(S::one() / z.conj())),
        }
    }

    pub fn finite(&self) -> Option<&S> {
        match self {
            ProjPoint::Finite(z) => Some(z),
            ProjPoint::Infinity => None,
        }
    }
}

/// Projective class of an invertible 2×2 matrix `[[a, b], [c, d]]`, acting by `(az+b)/(cz+d)`.
/// Stored with its first nonzero entry scaled to 1.
#[derive(Clone, Debug, PartialEq)]
pub struct Mobius<S> {
    e: [S; 4],
}

impl<S: Scalar> Mobius<S> {
    pub fn new(a: S, b: S, c: S, d: S) -> Result<Self, Error> {
        let det = a.mul_by(&d) - b.mul_by(&c);
        let scale = [&a, &b, &c, &d].iter().map(|x| x.modulus()).fold(0.0, f64::max);
        if det.is_zero() || det.is_negligible(1e-14, scale * scale) {
            return Err(Error::Singular);
        }
        let e = [a, b, c, d];
        let lead = if S::EXACT {
            e.iter().find(|x| !x.is_zero()).cloned()
        } else {
            e.iter().find(|x| x.modulus() > 1e-12 * scale).cloned()
        }
        .expect("nonzero determinant");
        let inv = S::one() / lead;
        Ok(Mobius { e: e.map(|x| x.mul_by(&inv)) })
    }

    pub fn identity() -> Self {
        Mobius { e: [S::one(), S::zero(), S::zero(), S::one()] }
    }

    pub fn from_matrix(m: &Matrix<S>) -> Result<Self, Error> {
        if m.shape() != (2, 2) {
            return Err(Error::Shape("Möbius map needs a 2x2 matrix".into()));
        }
        Mobius::new(m[(0, 0)].clone(), m[(0, 1)].clone(), m[(1, 0)].clone(), m[(1, 1)].clone())
    }

    pub fn entries(&self) -> [S; 4] {
        self.e.clone()
    }

    pub fn matrix(&self) -> Matrix<S> {
        Matrix::from_vec(2, 2, self.e.to_vec())
    }

    pub fn det(&self) -> S {
        self.e[0].mul_by(&self.e[3]) - self.e[1].mul_by(&self.e[2])
    }

    pub fn apply(&self, p: &ProjPoint<S>) -> ProjPoint<S> {
        let [a, b, c, d] = &self.e;
        match p {
            ProjPoint::Infinity => {
                if c.is_zero() { ProjPoint::Infinity } else { ProjPoint::Finite(a.clone() / c.clone()) }
            }
            ProjPoint::Finite(z) => {
                let den = c.mul_by(z) + d.clone();
                if den.is_zero() {
                    ProjPoint::Infinity
                } else {
                    ProjPoint::Finite((a.mul_by(z) + b.clone()) / den)
                }
            }
        }
    }

    /// `self ∘ o`.
    pub fn compose(&self, o: &Self) -> Self {
        Mobius::from_matrix(&self.matrix().mul(&o.matrix())).expect("product of invertible maps")
    }

    pub fn inverse(&self) -> Self {
        let [a, b, c, d] = self.e.clone();
        Mobius::new(d, -b, -c, a).expect("invertible")
    }

    /// `g*`, the conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let [a, b, c, d] = self.e.clone();
        Mobius::new(a.conj(), c.conj(), b.conj(), d.conj()).expect("invertible")
    }

    /// `(g*)^{-1}`, which equals σ∘g∘σ on the projective line.
    pub fn star_inverse(&self) -> Self {
        self.adjoint().inverse()
    }

    /// Projective equality up to a float tolerance (exact comparison for exact scalars).
    pub fn proj_eq(&self, o: &Self, tol: f64) -> bool {
        if S::EXACT {
            return self == o;
        }
        let m = self.matrix();
        let n = o.matrix();
        // compare after scaling o onto self at the largest entry of self
        let (k, _) = self.e.iter().enumerate().fold((0, 0.0), |acc, (i, x)| if x.modulus() > acc.1 { (i, x.modulus()) } else { acc });
        if o.e[k].is_zero() {
            return false;
        }
        let s = self.e[k].clone() / o.e[k].clone();
        m.approx_eq(&n.scale(&s), tol * self.e[k].modulus().max(1.0))
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Mobius<T> {
        let [a, b, c, d] = &self.e;
        Mobius::new(f(a), f(b), f(c), f(d)).expect("conversion keeps invertibility")
    }
}

/// Factor `g` with `g*·g ∝ H` for `H` a scalar multiple of a positive-definite Hermitian matrix.
/// Upper-triangular Cholesky factor; float arithmetic.
pub fn mobius_hermitian_factor(h: &Matrix<Complex64>, tol: f64) -> Result<Mobius<Complex64>, Error> {
    if h.shape() != (2, 2) {
        return Err(Error::Shape("hermitian factor needs a 2x2 matrix".into()));
    }
    let scale = h.max_modulus();
    if scale == 0.0 {
        return Err(Error::NotPositiveDefinite("zero matrix".into()));
    }
    // the phase that makes the diagonal real positive
    let d = if h[(0, 0)].norm() >= h[(1, 1)].norm() { h[(0, 0)] } else { h[(1, 1)] };
    if d.norm() <= tol * scale {
        return Err(Error::NotPositiveDefinite("vanishing diagonal".into()));
    }
    let phase = d.conj() / d.norm();
    let hn = h.scale(&(phase / scale));
    let herm = hn.sub(&hn.adjoint()).max_modulus();
    if herm > tol.max(1e-12) * 10.0 {
        return Err(Error::NotPositiveDefinite(format!("not Hermitian up to scalar (defect {herm:.3e})")));
    }
    let h11 = hn[(0, 0)].re;
    let h22 = hn[(1, 1)].re;
    let h12 = (hn[(0, 1)] + hn[(1, 0)].conj()) * 0.5;
    let det = h11 * h22 - h12.norm_sqr();
    if h11 <= 0.0 || det <= tol {
        return Err(Error::NotPositiveDefinite(format!("leading minors ({h11:.3e}, {det:.3e})")));
    }
    let r11 = h11.sqrt();
    let r12 = h12 / r11;
    let r22 = (h22 - r12.norm_sqr()).sqrt();
    let z = Complex64::new(0.0, 0.0);
    Mobius::new(Complex64::new(r11, 0.0), r12, z, Complex64::new(r22, 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn residual(g: &Mobius<Complex64>, h: &Matrix<Complex64>) -> f64 {
        let gm = g.matrix();
        let p = gm.adjoint().mul(&gm);
        let s = h[(0, 0)] / p[(0, 0)];
        p.scale(&s).sub(h).max_modulus()
    }

    #[test]
    fn hermitian_factor_examples() {
        let id = Matrix::<Complex64>::identity(2);
        assert!(mobius_hermitian_factor(&id, 1e-9).unwrap().proj_eq(&Mobius::identity(), 1e-12));

        let h = Matrix::from_vec(2, 2, vec![c(4.0), c(0.0), c(0.0), c(1.0)]);
        let g = mobius_hermitian_factor(&h, 1e-9).unwrap();
        let expect = Mobius::new(c(2.0), c(0.0), c(0.0), c(1.0)).unwrap();
        assert!(g.proj_eq(&expect, 1e-12));

        let h = Matrix::from_vec(2, 2, vec![c(2.0), c(1.0), c(1.0), c(1.0)]);
        let g = mobius_hermitian_factor(&h, 1e-9).unwrap();
        assert!(residual(&g, &h) < 1e-12);
    }

    #[test]
    fn rejects_indefinite() {
        let h = Matrix::from_vec(2, 2, vec![c(1.0), c(0.0), c(0.0), c(-1.0)]);
        assert!(mobius_hermitian_factor(&h, 1e-9).is_err());
    }
}
