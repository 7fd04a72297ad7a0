use super::pair::{block_swap, tau_columns, Frame, PluriPair};
use crate::error::Error;
use crate::exactnum::{Matrix, Mobius, ProjPoint, Scalar};

/// Complex structure on `ℂ²ⁿ` that preserves the real form `V`.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexStructure<S> {
    pub j: Matrix<S>,
}

impl<S: Scalar> ComplexStructure<S> {
    /// `J² + I`, zero for a complex structure.
    pub fn square_defect(&self) -> Matrix<S> {
        let n = self.j.rows();
        self.j.mul(&self.j).add(&Matrix::identity(n))
    }

    /// `conj(J) − T J T`, zero when `J` commutes with `τ`.
    pub fn reality_defect(&self) -> Matrix<S> {
        let t = block_swap::<S>(self.j.rows() / 2);
        self.j.conj().sub(&t.mul(&self.j).mul(&t))
    }
}

fn point_label<S: Scalar>(z: &ProjPoint<S>) -> String {
    match z {
        ProjPoint::Finite(z) => format!("zeta = {z}"),
        ProjPoint::Infinity => "zeta = inf".into(),
    }
}

fn eigen_structure<S: Scalar>(b: &Matrix<S>, n: usize, label: String) -> Result<Matrix<S>, Error> {
    let inv = b.inverse().map_err(|_| Error::Transversality(label))?;
    let i = S::imag_unit();
    let d = Matrix::from_fn(2 * n, 2 * n, |r, c| {
        if r != c {
            S::zero()
        } else if r < n {
            i.clone()
        } else {
            -i.clone()
        }
    });
    Ok(b.mul(&d).mul(&inv))
}

/// `J_ζ`: `+i` on `V^{1,0}_ζ`, `−i` on its `τ`-image.
pub fn j_at<S: Scalar>(pair: &PluriPair<S>, z: &ProjPoint<S>) -> Result<ComplexStructure<S>, Error> {
    let f = pair.frame(z);
    let b = f.hstack(&tau_columns(&f));
    Ok(ComplexStructure { j: eigen_structure(&b, pair.n(), point_label(z))? })
}

/// Graph map `U L⁻¹` of the column span of `[[U], [L]]` over the second factor.
pub fn graph_map<S: Scalar>(w: &Matrix<S>) -> Result<Matrix<S>, Error> {
    let n = w.rows() / 2;
    if w.rows() != 2 * n || w.cols() != n {
        return Err(Error::Shape(format!("expected a {}x{} basis, got {:?}", 2 * n, n, w.shape())));
    }
    let l = w.block(n, 0, n, n);
    let li = l.inverse().map_err(|_| Error::NonGraph("lower block is singular".into()))?;
    Ok(w.block(0, 0, n, n).mul(&li))
}

/// Pair whose structures at `1` and `∞` are the given subspaces, in a basis adapted to `J₀`.
pub fn from_three_structures<S: Scalar>(w1: &Matrix<S>, w_inf: &Matrix<S>) -> Result<PluriPair<S>, Error> {
    let y = graph_map(w_inf)?;
    let x = graph_map(w1)?.sub(&y);
    PluriPair::new(x, y)
}

/// Sphere `ζ ↦ V^{1,0}_{g(ζ)}`, re-expressed in the basis `[F₀ | τF₀]` adapted to `J_{g(0)}`.
pub fn reparameterize<S: Scalar>(pair: &PluriPair<S>, g: &Mobius<S>) -> Result<PluriPair<S>, Error> {
    let pts = [ProjPoint::Finite(S::zero()), ProjPoint::Finite(S::one()), ProjPoint::Infinity].map(|p| g.apply(&p));
    let f0 = pair.frame(&pts[0]);
    let basis = f0.hstack(&tau_columns(&f0));
    let inv = basis.inverse().map_err(|_| Error::Transversality(point_label(&pts[0])))?;
    let w1 = inv.mul(&pair.frame(&pts[1]));
    let winf = inv.mul(&pair.frame(&pts[2]));
    from_three_structures(&w1, &winf)
        .map_err(|e| Error::InvalidInput(format!("degenerate adaptation after reparameterization: {e}")))
}

/// Pencil of the reparameterized sphere in the original coordinates:
/// `(A + g(ζ)B)(cζ + d) = (dA + bB) + ζ(cA + aB)`.
pub fn reparameterized_pencil<S: Scalar>(pair: &PluriPair<S>, g: &Mobius<S>) -> Frame<S> {
    let Frame { a, b } = pair.pencil();
    let [ga, gb, gc, gd] = g.entries();
    Frame { a: a.scale(&gd).add(&b.scale(&gb)), b: a.scale(&gc).add(&b.scale(&ga)) }
}

/// Antipode `−1/z̄`.
pub fn antipode<S: Scalar>(z: &ProjPoint<S>) -> ProjPoint<S> {
    z.antipode()
}

/// `J̃_ζ`: `+i` on `V^{1,0}_ζ`, `−i` on `V^{1,0}_{−1/ζ̄}`.
pub fn extension_j<S: Scalar>(pair: &PluriPair<S>, z: &ProjPoint<S>) -> Result<Matrix<S>, Error> {
    let b = pair.frame(z).hstack(&pair.frame(&z.antipode()));
    eigen_structure(&b, pair.n(), point_label(z))
}

/// Real-linear kernel dimension of `V ∩ {x − iJ̃x}`; zero when no real vector lies in the
/// `+i`-eigenspace image.
pub fn real_eigen_kernel_dim<S: Scalar>(jt: &Matrix<S>, tol: f64) -> usize {
    let m = jt.rows();
    // image of I − iJ̃
    let p = Matrix::identity(m).sub(&jt.scale(&S::imag_unit()));
    let img = p.column_basis(tol);
    let k = img.cols();
    if k == 0 {
        return 0;
    }
    // real vectors x = img·c with τx = x, i.e. img·c − T·conj(img)·c̄ = 0
    let sys = super::validate::real_linear_matrix_general(&img, &tau_columns(&img));
    sys.nullspace_tol(tol).len()
}

/// `Y = 0` and `X̄X = −I`.
pub fn is_hypercomplex<S: Scalar>(pair: &PluriPair<S>) -> bool {
    let n = pair.n();
    pair.y().is_zero() && pair.x().conj().mul(pair.x()).add(&Matrix::identity(n)).is_zero()
}

/// `‖X̄X + I‖ + ‖Y‖` (max-entry norms).
pub fn hypercomplex_residual<S: Scalar>(pair: &PluriPair<S>) -> f64 {
    let n = pair.n();
    pair.x().conj().mul(pair.x()).add(&Matrix::identity(n)).max_modulus() + pair.y().max_modulus()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::GaussianRational as G;
    use crate::plurilinear::curve::{char_poly, normalize_degree_one};
    use crate::plurilinear::random_pair;
    use num_complex::Complex64 as C;

    fn hyper() -> PluriPair<G> {
        PluriPair::standard_hypercomplex(2).unwrap()
    }

    fn fin(re: (i64, i64), im: (i64, i64)) -> ProjPoint<G> {
        ProjPoint::Finite(G::from_fracs(re, im))
    }

    #[test]
    fn structures_of_hypercomplex_pair() {
        let i = G::i();
        let j0 = j_at(&hyper(), &ProjPoint::Finite(G::from(0))).unwrap();
        let expect = Matrix::from_fn(4, 4, |r, c| if r != c { G::from(0) } else if r < 2 { i.clone() } else { -i.clone() });
        assert_eq!(j0.j, expect);
        let jinf = j_at(&hyper(), &ProjPoint::Infinity).unwrap();
        assert_eq!(jinf.j, expect.neg());
    }

    #[test]
    fn structures_of_random_pair() {
        let p = random_pair(2, 3, 0.3).unwrap();
        for z in [fin((1, 2), (1, 3)), fin((-3, 1), (2, 7)), ProjPoint::Infinity] {
            let j = j_at(&p, &z).unwrap();
            assert!(j.square_defect().is_zero());
            assert!(j.reality_defect().is_zero());
            let jt = extension_j(&p, &z).unwrap();
            assert!(jt.mul(&jt).add(&Matrix::identity(4)).is_zero());
            assert_eq!(extension_j(&p, &z.antipode()).unwrap(), jt.neg());
            assert_eq!(real_eigen_kernel_dim(&jt, 0.0), 0);
        }
    }

    #[test]
    fn three_structures_round_trip() {
        let p = random_pair(2, 4, 0.3).unwrap();
        let q = from_three_structures(&p.frame(&ProjPoint::Finite(G::from(1))), &p.frame(&ProjPoint::Infinity)).unwrap();
        assert_eq!(q, p);
        let bad = Matrix::<G>::zeros(4, 2);
        assert!(matches!(from_three_structures(&bad, &bad), Err(Error::NonGraph(_))));
    }

    #[test]
    fn curve_transformation_law() {
        let p = random_pair(2, 5, 0.3).unwrap();
        let g = Mobius::new(G::from(1), G::from_fracs((1, 2), (0, 1)), G::from_fracs((0, 1), (1, 3)), G::from(1)).unwrap();
        let q = reparameterize(&p, &g).unwrap();
        let moved = char_poly(&p).mobius_substitute(&g, &g.star_inverse(), 2, 2).unwrap();
        assert!(char_poly(&q).ratio_to(&moved).is_some());
        let back = reparameterize(&q, &g.inverse()).unwrap();
        assert!(char_poly(&back).ratio_to(&char_poly(&p)).is_some());
        let same = reparameterize(&p, &Mobius::identity()).unwrap();
        assert!(char_poly(&same).ratio_to(&char_poly(&p)).is_some());
    }

    #[test]
    fn hypercomplex_criteria() {
        assert!(is_hypercomplex(&hyper()));
        let ix = PluriPair::new(Matrix::scalar(2, G::i()), Matrix::zeros(2, 2)).unwrap();
        assert!(!is_hypercomplex(&ix));
        assert!(!is_hypercomplex(&random_pair(2, 6, 0.3).unwrap()));
    }

    #[test]
    fn normalization_recovers_mobius() {
        let hyp = PluriPair::<C>::standard_hypercomplex(2).unwrap();
        let nz = normalize_degree_one(&hyp, 1e-9).unwrap();
        assert!(nz.g.proj_eq(&Mobius::identity(), 1e-12));
        let g0 = Mobius::new(C::new(1.0, 0.3), C::new(0.5, -0.2), C::new(-0.4, 0.1), C::new(0.8, 0.6)).unwrap();
        let moved = reparameterize(&hyp, &g0).unwrap();
        let nz = normalize_degree_one(&moved, 1e-9).unwrap();
        assert!(nz.residual < 1e-9);
        // g₀∘g is unitary up to scale
        let m = g0.compose(&nz.g).matrix();
        let u = m.adjoint().mul(&m);
        let s = u[(0, 0)];
        assert!(u.sub(&Matrix::scalar(2, s)).max_modulus() < 1e-9 * s.norm());
    }

    #[test]
    fn normalization_rejects_degree_two() {
        let p = random_pair(2, 7, 0.3).unwrap();
        assert!(matches!(normalize_degree_one(&p, 1e-9), Err(Error::DegreeMismatch(_))));
    }
}
