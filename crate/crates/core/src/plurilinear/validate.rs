use num_complex::Complex64;
use serde_json::{json, Value};

use super::pair::PluriPair;
use crate::certify::{certify_sphere, CertMode, CertOutcome, ChartPoly};
use crate::exactnum::svd::smallest_singular_pair;
use crate::exactnum::{BiPoly, GaussianRational, Matrix, PolyMatrix, ProjPoint, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Certified,
    Invalid,
    Unknown,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Certified => "certified",
            Status::Invalid => "invalid",
            Status::Unknown => "unknown",
        }
    }
}

/// `(X + ζY)v = ζ̄v̄` (finite ζ) or `Yv = v̄` (ζ = ∞).
#[derive(Clone, Debug, PartialEq)]
pub struct Witness<S> {
    pub zeta: ProjPoint<S>,
    pub v: Vec<S>,
    pub exact: bool,
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ValidationVerdict<S> {
    pub status: Status,
    pub witness: Option<Witness<S>>,
    pub min_modulus: Option<f64>,
}

#[derive(Clone, Copy, Debug)]
pub struct ValidateOptions {
    pub samples: usize,
    pub max_depth: usize,
    pub tol: f64,
}

impl Default for ValidateOptions {
    fn default() -> Self {
        ValidateOptions { samples: 4096, max_depth: 8, tol: crate::exactnum::DEFAULT_TOL }
    }
}

fn point_json<S: Scalar>(p: &ProjPoint<S>) -> Value {
    match p {
        ProjPoint::Finite(z) => z.to_json(),
        ProjPoint::Infinity => Value::String("inf".into()),
    }
}

impl<S: Scalar> ValidationVerdict<S> {
    pub fn to_json(&self) -> Value {
        let mut out = json!({"status": self.status.as_str()});
        if let Some(w) = &self.witness {
            out["witness"] = json!({
                "zeta": point_json(&w.zeta),
                "v": w.v.iter().map(S::to_json).collect::<Vec<_>>(),
                "exact": w.exact,
                "residual": w.residual,
            });
        }
        if let Some(m) = self.min_modulus {
            out["min_modulus"] = json!(m);
        }
        out
    }
}

/// Entry-wise `(1,1)` pencil `C00 + u C10 + v C01 + uv C11` as a polynomial matrix.
pub(crate) fn quad_pencil<S: Scalar>(c00: &Matrix<S>, c10: &Matrix<S>, c01: &Matrix<S>, c11: &Matrix<S>) -> PolyMatrix<S> {
    let n = c00.rows();
    PolyMatrix::from_fn(n, vec![(1, 1); n], |r, c| {
        BiPoly::from_table(vec![
            vec![c00[(r, c)].clone(), c01[(r, c)].clone()],
            vec![c10[(r, c)].clone(), c11[(r, c)].clone()],
        ])
        .expect("2x2 table")
    })
    .expect("consistent shape")
}

/// `q(u, v) = det((X + uY)(X̄ + vȲ) − uv I)` and its chart at ∞ `det((sX + Y)(s̄X̄ + Ȳ) − I)`;
/// on `v = ū` both are real.
pub fn q_charts<S: Scalar>(pair: &PluriPair<S>) -> [BiPoly<S>; 2] {
    let (x, y) = (pair.x(), pair.y());
    let (xb, yb) = (x.conj(), y.conj());
    let n = pair.n();
    let xx = x.mul(&xb);
    let yx = y.mul(&xb);
    let xy = x.mul(&yb);
    let yy = y.mul(&yb).sub(&Matrix::identity(n));
    let q1 = quad_pencil(&xx, &yx, &xy, &yy).det().expect("square");
    let q2 = quad_pencil(&yy, &xy, &yx, &xx).det().expect("square");
    [q1, q2]
}

fn real_part<S: Scalar>(z: &S) -> S {
    (z.clone() + z.conj()) / S::from_i64(2)
}

fn imag_part<S: Scalar>(z: &S) -> S {
    (z.clone() - z.conj()) / (S::from_i64(2) * S::imag_unit())
}

/// Real matrix of the real-linear map `v ↦ Mv − N v̄` on `v = a + ib`, acting on `(a, b)`.
pub fn real_linear_matrix_general<S: Scalar>(m: &Matrix<S>, nm: &Matrix<S>) -> Matrix<S> {
    let (r0, c0) = m.shape();
    Matrix::from_fn(2 * r0, 2 * c0, |r, col| {
        let (ri, rj) = (r / r0, r % r0);
        let (ci, cj) = (col / c0, col % c0);
        let (p, q) = (real_part(&m[(rj, cj)]), imag_part(&m[(rj, cj)]));
        let (rr, u) = (real_part(&nm[(rj, cj)]), imag_part(&nm[(rj, cj)]));
        match (ri, ci) {
            (0, 0) => p - rr,
            (0, 1) => -q - u,
            (1, 0) => q - u,
            _ => p + rr,
        }
    })
}

/// Real matrix of `v ↦ Mv − c v̄` for square `M`.
pub fn real_linear_matrix<S: Scalar>(m: &Matrix<S>, c: &S) -> Matrix<S> {
    real_linear_matrix_general(m, &Matrix::scalar(m.rows(), c.clone()))
}

/// Real-linear kernel of `v ↦ Mv − c v̄`, as complex vectors.
pub fn real_linear_kernel<S: Scalar>(m: &Matrix<S>, c: &S, tol: f64) -> Vec<Vec<S>> {
    let n = m.cols();
    real_linear_matrix(m, c)
        .nullspace_tol(tol)
        .into_iter()
        .map(|ab| (0..n).map(|k| ab[k].clone() + S::imag_unit() * ab[n + k].clone()).collect())
        .collect()
}

/// Operator and conjugate coefficient for the witness relation at `ζ`.
fn witness_system<S: Scalar>(pair: &PluriPair<S>, z: &ProjPoint<S>) -> (Matrix<S>, S) {
    match z {
        ProjPoint::Finite(z) => (pair.x().add(&pair.y().scale(z)), z.conj()),
        ProjPoint::Infinity => (pair.y().clone(), S::one()),
    }
}

pub fn witness_residual<S: Scalar>(pair: &PluriPair<S>, w: &Witness<S>) -> f64 {
    let (m, c) = witness_system(pair, &w.zeta);
    let lhs = m.mul_vec(&w.v);
    let vn = w.v.iter().map(|x| x.modulus()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    lhs.iter().zip(&w.v).map(|(l, v)| (l.clone() - c.mul_by(&v.conj())).modulus()).fold(0.0, f64::max) / vn
}

fn kernel_witness<S: Scalar>(pair: &PluriPair<S>, z: ProjPoint<S>, tol: f64) -> Option<Witness<S>> {
    let (m, c) = witness_system(pair, &z);
    let v = real_linear_kernel(&m, &c, tol).into_iter().next()?;
    let mut w = Witness { zeta: z, v, exact: S::EXACT, residual: 0.0 };
    w.residual = witness_residual(pair, &w);
    Some(w)
}

fn q_at<S: Scalar>(q: &[BiPoly<S>; 2], z: &ProjPoint<S>) -> S {
    match z {
        ProjPoint::Finite(z) => q[0].eval(z, &z.conj()),
        ProjPoint::Infinity => q[1].eval(&S::zero(), &S::zero()),
    }
}

fn q_float(q: &[ChartPoly; 2], z: Complex64) -> f64 {
    if z.norm() <= 1.0 {
        q[0].eval(z).re
    } else {
        q[1].eval(Complex64::new(1.0, 0.0) / z).re
    }
}

/// Sign change along the ray through `dir`, parametrized by `tan(πt/2)`; returns a point where
/// `q` vanishes to working precision.
fn bisect_ray(q: &[ChartPoly; 2], dir: Complex64, t_neg: f64) -> Complex64 {
    let at = |t: f64| -> Complex64 {
        if t >= 1.0 { dir * 1e300 } else { dir * (std::f64::consts::FRAC_PI_2 * t).tan() }
    };
    let (mut lo, mut hi) = (0.0, t_neg);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if q_float(q, at(mid)) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    at(0.5 * (lo + hi))
}

/// Certifies the nonvanishing of `q(ζ) = det((X+ζY)(X̄+ζ̄Ȳ) − |ζ|²I)` on the sphere.
pub fn validate<S: Scalar>(pair: &PluriPair<S>, opts: &ValidateOptions) -> ValidationVerdict<S> {
    let q = q_charts(pair);
    let scale = q[0].max_modulus().max(q[1].max_modulus());
    // exact probes
    let probes: Vec<ProjPoint<S>> = vec![
        ProjPoint::Finite(S::zero()),
        ProjPoint::Infinity,
        ProjPoint::Finite(S::one()),
        ProjPoint::Finite(-S::one()),
        ProjPoint::Finite(S::imag_unit()),
        ProjPoint::Finite(-S::imag_unit()),
    ];
    for z in probes {
        if q_at(&q, &z).is_negligible(opts.tol, scale) {
            if let Some(w) = kernel_witness(pair, z, opts.tol) {
                return ValidationVerdict { status: Status::Invalid, witness: Some(w), min_modulus: Some(0.0) };
            }
        }
    }
    let charts = [ChartPoly::new(&q[0]), ChartPoly::new(&q[1])];
    let grid = (opts.samples as f64).sqrt().round().max(1.0) as usize;
    match certify_sphere([&charts[0], &charts[1]], CertMode::Positive, grid, opts.max_depth) {
        CertOutcome::Certified { min_sample } => {
            ValidationVerdict { status: Status::Certified, witness: None, min_modulus: Some(min_sample) }
        }
        CertOutcome::Violated { zeta, min_sample, .. } => {
            let (dir, t_neg) = match zeta {
                Some(z) => (z / z.norm(), z.norm().atan() / std::f64::consts::FRAC_PI_2),
                None => (Complex64::new(1.0, 0.0), 1.0),
            };
            let root = bisect_ray(&charts, dir, t_neg);
            let witness = exact_root_witness(pair, &q, root, opts.tol).or_else(|| float_witness(pair, root));
            match witness {
                Some(w) => ValidationVerdict { status: Status::Invalid, witness: Some(w), min_modulus: Some(min_sample) },
                None => ValidationVerdict { status: Status::Unknown, witness: None, min_modulus: Some(min_sample) },
            }
        }
        CertOutcome::Undecided { min_sample, .. } => {
            ValidationVerdict { status: Status::Unknown, witness: None, min_modulus: Some(min_sample) }
        }
    }
}

/// Tries small-denominator Gaussian rationals near a numerical root of `q`.
fn exact_root_witness<S: Scalar>(pair: &PluriPair<S>, q: &[BiPoly<S>; 2], root: Complex64, tol: f64) -> Option<Witness<S>> {
    if !S::EXACT || !root.is_finite() || root.norm() > 1e6 {
        return None;
    }
    for den in [1, 2, 3, 4, 5, 6, 8, 10, 12, 16, 20, 25, 32, 50, 64, 100] {
        let g = GaussianRational::approximate(root, den);
        if (g.to_c64() - root).norm() > 1e-6 * (1.0 + root.norm()) {
            continue;
        }
        let z = ProjPoint::Finite(S::from_gaussian(&g));
        if q_at(q, &z).is_zero() {
            if let Some(w) = kernel_witness(pair, z, tol) {
                return Some(w);
            }
        }
    }
    None
}

fn float_witness<S: Scalar>(pair: &PluriPair<S>, root: Complex64) -> Option<Witness<S>> {
    let fp = pair.map(|s| s.to_c64());
    let z = if root.norm() > 1e12 { ProjPoint::Infinity } else { ProjPoint::Finite(root) };
    let (m, c) = witness_system(&fp, &z);
    let (_, ab) = smallest_singular_pair(&real_linear_matrix(&m, &c));
    let n = fp.n();
    let v: Vec<Complex64> = (0..n).map(|k| ab[k] + Complex64::i() * ab[n + k]).collect();
    let residual = witness_residual(&fp, &Witness { zeta: z.clone(), v: v.clone(), exact: false, residual: 0.0 });
    let scale = 1.0 + m.max_modulus();
    if residual > 1e-7 * scale {
        return None;
    }
    let zeta = match z {
        ProjPoint::Finite(z) => ProjPoint::Finite(S::from_c64(z)?),
        ProjPoint::Infinity => ProjPoint::Infinity,
    };
    let v = v.into_iter().map(S::from_c64).collect::<Option<Vec<_>>>()?;
    Some(Witness { zeta, v, exact: false, residual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::GaussianRational as G;

    #[test]
    fn hypercomplex_certified() {
        let p = PluriPair::<G>::standard_hypercomplex(2).unwrap();
        let v = validate(&p, &ValidateOptions::default());
        assert_eq!(v.status, Status::Certified);
        // q = (1 + |ζ|²)²
        let q = &q_charts(&p)[0];
        let one = G::from(1);
        assert_eq!(q.coeff(0, 0), one);
        assert_eq!(q.coeff(1, 1), G::from(2));
        assert_eq!(q.coeff(2, 2), one);
    }

    #[test]
    fn identity_one_dim_invalid() {
        let p = PluriPair::new(Matrix::identity(1), Matrix::zeros(1, 1)).unwrap();
        let v = validate(&p, &ValidateOptions::default());
        assert_eq!(v.status, Status::Invalid);
        let w = v.witness.unwrap();
        assert!(w.exact);
        assert_eq!(w.zeta, ProjPoint::Finite(G::from(1)));
        assert_eq!(w.v, vec![G::from(1)]);
    }
}
