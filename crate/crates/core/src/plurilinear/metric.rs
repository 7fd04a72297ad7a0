use serde_json::{json, Value};

use super::pair::PluriPair;
use super::structures::extension_j;
use crate::error::Error;
use crate::exactnum::{Matrix, ProjPoint, Scalar};

/// Standard symplectic form: `n/2` blocks `[[0, −1], [1, 0]]`.
pub fn standard_symplectic<S: Scalar>(n: usize) -> Matrix<S> {
    Matrix::from_fn(n, n, |r, c| {
        if r % 2 == 0 && c == r + 1 {
            -S::one()
        } else if r % 2 == 1 && c + 1 == r {
            S::one()
        } else {
            S::zero()
        }
    })
}

#[derive(Clone, Debug)]
pub struct MetricReport<S> {
    /// Symmetric bilinear `g^ℂ` on `ℂ²ⁿ`.
    pub g: Matrix<S>,
    /// `Re g^ℂ` on the real form `V`, in the basis `(e_k, e_k)`, `(ie_k, −ie_k)`.
    pub g_real: Matrix<S>,
    /// Points where `g^ℂ(J̃v, J̃w) = g^ℂ(v, w)` was checked, with the outcome.
    pub hyperhermitian: Vec<(ProjPoint<S>, bool)>,
    pub i_anti_invariant: bool,
    pub signature: (usize, usize, usize),
    pub positive_definite: bool,
}

impl<S: Scalar> MetricReport<S> {
    pub fn to_json(&self) -> Value {
        let pts: Vec<Value> = self
            .hyperhermitian
            .iter()
            .map(|(z, ok)| {
                let zj = match z {
                    ProjPoint::Finite(z) => z.to_json(),
                    ProjPoint::Infinity => json!("inf"),
                };
                json!({"zeta": zj, "ok": ok})
            })
            .collect();
        json!({
            "hyperhermitian": pts,
            "i_anti_invariant": self.i_anti_invariant,
            "signature": [self.signature.0, self.signature.1, self.signature.2],
            "positive_definite": self.positive_definite,
        })
    }
}

fn close<S: Scalar>(a: &Matrix<S>, b: &Matrix<S>, tol: f64) -> bool {
    if S::EXACT { a == b } else { a.approx_eq(b, tol * (1.0 + a.max_modulus())) }
}

/// Real basis of `V = {(v, v̄)}`.
pub fn real_basis<S: Scalar>(n: usize) -> Matrix<S> {
    let i = S::imag_unit();
    Matrix::from_fn(2 * n, 2 * n, |r, c| {
        let k = c % n;
        if r % n != k {
            return S::zero();
        }
        match (c < n, r < n) {
            (true, _) => S::one(),
            (false, true) => i.clone(),
            (false, false) => -i.clone(),
        }
    })
}

/// `g^ℂ` polarizing `g^ℂ(a + bζ, a + bζ) = ω(a, b)` through the identification
/// `v = Aa + Bb` given by the pencil, and its checks.
pub fn metric_from_form<S: Scalar>(pair: &PluriPair<S>, omega: &Matrix<S>, zetas: &[ProjPoint<S>], tol: f64) -> Result<MetricReport<S>, Error> {
    let n = pair.n();
    if omega.shape() != (n, n) {
        return Err(Error::Shape(format!("form must be {n}x{n}")));
    }
    if !close(&omega.transpose(), &omega.neg(), tol) {
        return Err(Error::InvalidInput("form is not antisymmetric".into()));
    }
    if S::rank_of(omega, tol) < n {
        return Err(Error::InvalidInput("form is degenerate".into()));
    }
    let f = pair.pencil();
    let c = f.a.hstack(&f.b).inverse()?;
    let half = S::one() / S::from_i64(2);
    let z = Matrix::<S>::zeros(n, n);
    // K = ½[[0, ω], [−ω, 0]] in (a, b) coordinates
    let k = z.hstack(omega).vstack(&omega.neg().hstack(&z)).scale(&half);
    let g = c.transpose().mul(&k).mul(&c);
    let mut hyperhermitian = Vec::new();
    for zeta in zetas {
        let ok = match extension_j(pair, zeta) {
            Ok(j) => close(&j.transpose().mul(&g).mul(&j), &g, tol),
            Err(_) => false,
        };
        hyperhermitian.push((zeta.clone(), ok));
    }
    let i = Matrix::scalar(2 * n, S::imag_unit());
    let i_anti_invariant = close(&i.transpose().mul(&g).mul(&i), &g.neg(), tol);
    let r = real_basis::<S>(n);
    let gv = r.transpose().mul(&g).mul(&r);
    let g_real = gv.map(|x| (x.clone() + x.conj()) * half.clone());
    let signature = signature_of(&g_real, tol);
    let positive_definite = if S::EXACT { leading_minors_positive(&g_real) } else { signature.0 == 2 * n };
    Ok(MetricReport { g, g_real, hyperhermitian, i_anti_invariant, signature, positive_definite })
}

/// `(positive, negative, zero)` eigenvalue counts of a real symmetric matrix.
pub fn signature_of<S: Scalar>(m: &Matrix<S>, tol: f64) -> (usize, usize, usize) {
    let k = m.rows();
    let a = nalgebra::DMatrix::from_fn(k, k, |r, c| m[(r, c)].to_c64().re);
    let ev = a.symmetric_eigen().eigenvalues;
    let scale = ev.iter().fold(0.0f64, |s, x| s.max(x.abs())).max(1e-300);
    let eps = tol.max(1e-12) * scale;
    let pos = ev.iter().filter(|&&x| x > eps).count();
    let neg = ev.iter().filter(|&&x| x < -eps).count();
    (pos, neg, k - pos - neg)
}

/// Sylvester's criterion with exact leading minors.
fn leading_minors_positive<S: Scalar>(m: &Matrix<S>) -> bool {
    (1..=m.rows()).all(|k| {
        let d = m.block(0, 0, k, k).det().expect("square");
        d.to_c64().im == 0.0 && d.to_c64().re > 0.0 && !d.is_zero()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::GaussianRational as G;

    #[test]
    fn flat_model_is_positive() {
        let p = PluriPair::<G>::standard_hypercomplex(2).unwrap();
        let pts = vec![
            ProjPoint::Finite(G::from(0)),
            ProjPoint::Finite(G::from(1)),
            ProjPoint::Finite(G::from_fracs((1, 2), (-2, 3))),
            ProjPoint::Infinity,
        ];
        let rep = metric_from_form(&p, &standard_symplectic(2), &pts, 0.0).unwrap();
        assert!(rep.i_anti_invariant);
        assert!(rep.hyperhermitian.iter().all(|x| x.1));
        assert!(rep.positive_definite, "{:?}", rep.g_real);
        assert_eq!(rep.signature, (4, 0, 0));
    }

    #[test]
    fn degenerate_form_rejected() {
        let p = PluriPair::<G>::standard_hypercomplex(2).unwrap();
        assert!(metric_from_form(&p, &Matrix::zeros(2, 2), &[], 0.0).is_err());
    }
}
