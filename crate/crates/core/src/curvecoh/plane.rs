//! Bidegree-(k,k) curves in `P¹×P¹`: σ-invariance, antidiagonal clearance, graph components.

use num_complex::Complex64;
use serde_json::{json, Value};

use super::laurent::Laurent2;
use crate::certify::{certify_sphere, CertMode, CertOutcome, ChartPoly};
use crate::error::Error;
use crate::exactnum::json::{bipoly_from_json, bipoly_to_json};
use crate::exactnum::{BiPoly, GaussianRational, ProjPoint, Scalar, DEFAULT_TOL};
use crate::plurilinear::{sigma_ratio, Status};

/// A point `(ζ, −1/ζ̄)` of the curve.
#[derive(Clone, Debug, PartialEq)]
pub struct AntidiagonalWitness<S> {
    pub zeta: ProjPoint<S>,
    pub exact: bool,
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AntidiagonalVerdict<S> {
    pub status: Status,
    pub witness: Option<AntidiagonalWitness<S>>,
    pub min_modulus: Option<f64>,
}

impl<S: Scalar> AntidiagonalVerdict<S> {
    pub fn to_json(&self) -> Value {
        let mut out = json!({"status": self.status.as_str()});
        if let Some(w) = &self.witness {
            let z = match &w.zeta {
                ProjPoint::Finite(z) => z.to_json(),
                ProjPoint::Infinity => Value::String("inf".into()),
            };
            out["witness"] = json!({"zeta": z, "exact": w.exact, "residual": w.residual});
        }
        if let Some(m) = self.min_modulus {
            out["min_modulus"] = json!(m);
        }
        out
    }
}

#[derive(Clone, Copy, Debug)]
pub struct CurveOptions {
    pub samples: usize,
    pub max_depth: usize,
    pub tol: f64,
    /// Skip the antidiagonal certification (status stays Unknown).
    pub certify: bool,
}

impl Default for CurveOptions {
    fn default() -> Self {
        CurveOptions { samples: 1024, max_depth: 8, tol: DEFAULT_TOL, certify: true }
    }
}

/// Curve `{P = 0}` of bidegree `(k, k)`.
#[derive(Clone, Debug)]
pub struct PlaneCurve<S> {
    pub poly: BiPoly<S>,
    pub k: usize,
    /// `u` with `P^σ = u·P`.
    pub sigma_ratio: Option<S>,
    pub antidiagonal: AntidiagonalVerdict<S>,
    /// `(1,1)` factors whose product is `P` up to a scalar.
    pub components: Option<Vec<BiPoly<S>>>,
    pub tol: f64,
}

impl<S: Scalar> PlaneCurve<S> {
    pub fn sigma_invariant(&self) -> bool {
        self.sigma_ratio.is_some()
    }

    pub fn to_json(&self) -> Value {
        let mut out = json!({
            "k": self.k,
            "P": bipoly_to_json(&self.poly),
            "sigma_invariant": self.sigma_invariant(),
            "antidiagonal": self.antidiagonal.to_json(),
        });
        if let Some(c) = &self.components {
            out["components"] = Value::Array(c.iter().map(bipoly_to_json).collect());
        }
        out
    }

    /// Reads `{"k", "P", "components"?}`; the components are checked by division.
    pub fn from_json(v: &Value, opts: &CurveOptions) -> Result<Self, Error> {
        let k = v.get("k").and_then(Value::as_u64).ok_or_else(|| Error::Parse("curve needs integer \"k\"".into()))? as usize;
        let p = bipoly_from_json(v.get("P").ok_or_else(|| Error::Parse("curve needs \"P\"".into()))?)?;
        let cands = match v.get("components") {
            Some(Value::Array(a)) => a.iter().map(bipoly_from_json).collect::<Result<Vec<_>, _>>()?,
            Some(_) => return Err(Error::Parse("\"components\" must be an array".into())),
            None => Vec::new(),
        };
        curve_from_poly_with(&p, k, &cands, opts)
    }
}

pub fn curve_from_poly<S: Scalar>(p: &BiPoly<S>, k: usize) -> Result<PlaneCurve<S>, Error> {
    curve_from_poly_with(p, k, &[], &CurveOptions::default())
}

/// Flags the curve; `candidates` are `(1,1)` factors tried by exact division.
pub fn curve_from_poly_with<S: Scalar>(
    p: &BiPoly<S>,
    k: usize,
    candidates: &[BiPoly<S>],
    opts: &CurveOptions,
) -> Result<PlaneCurve<S>, Error> {
    if p.is_zero() || p.max_modulus() == 0.0 {
        return Err(Error::ZeroPolynomial);
    }
    let poly = p.with_bounds(k, k)?;
    let sigma = sigma_ratio(&poly, k, opts.tol);
    let components = split_components(&poly, k, candidates, opts.tol);
    let antidiagonal = if opts.certify {
        antidiagonal_check(&poly, k, opts)
    } else {
        AntidiagonalVerdict { status: Status::Unknown, witness: None, min_modulus: None }
    };
    Ok(PlaneCurve { poly, k, sigma_ratio: sigma, antidiagonal, components, tol: opts.tol })
}

fn split_components<S: Scalar>(p: &BiPoly<S>, k: usize, cands: &[BiPoly<S>], tol: f64) -> Option<Vec<BiPoly<S>>> {
    if cands.is_empty() {
        return None;
    }
    let mut rest = Laurent2::from_bipoly(p);
    let mut found = Vec::new();
    for c in cands {
        let (a, b) = c.degrees();
        if a > 1 || b > 1 || c.is_zero() {
            return None;
        }
        let q = rest.div_bipoly(c, tol)?;
        rest = q;
        found.push(c.with_bounds(1, 1).ok()?);
    }
    // the remaining factor must be a nonzero constant
    let nonconst = rest.terms().any(|(e, c)| *e != (0, 0) && !c.is_negligible(tol, rest.max_modulus()));
    if found.len() != k || nonconst || rest.is_zero() {
        return None;
    }
    Some(found)
}

/// Charts of `P(ζ, −1/ζ̄)`: `v^k P(u, −1/v)` and `s^k P(1/s, −v)` at `v = ū`, `v = s̄`.
pub fn antidiagonal_charts<S: Scalar>(p: &BiPoly<S>, k: usize) -> [BiPoly<S>; 2] {
    let sign = |j: usize| if j.is_multiple_of(2) { S::one() } else { -S::one() };
    let c1 = BiPoly::from_fn(k, k, |i, v| {
        let j = k - v;
        p.coeff(i, j).mul_by(&sign(j))
    });
    let c2 = BiPoly::from_fn(k, k, |s, j| {
        let i = k - s;
        p.coeff(i, j).mul_by(&sign(j))
    });
    [c1, c2]
}

/// `P(ζ, −1/ζ̄)` scaled to the chart that contains `ζ`.
pub fn antidiagonal_value<S: Scalar>(p: &BiPoly<S>, k: usize, z: &ProjPoint<S>) -> S {
    let [c1, c2] = antidiagonal_charts(p, k);
    match z {
        ProjPoint::Infinity => c2.coeff(0, 0),
        ProjPoint::Finite(z) if z.modulus() <= 1.0 => c1.eval(z, &z.conj()),
        ProjPoint::Finite(z) => {
            let s = S::one() / z.clone();
            c2.eval(&s, &s.conj())
        }
    }
}

fn eval_c64(p: &BiPoly<Complex64>, k: usize, z: Complex64) -> Complex64 {
    antidiagonal_value(p, k, &ProjPoint::Finite(z))
}

/// Levenberg–Marquardt on `|P(ζ, −1/ζ̄)|²` in the real coordinates of ζ.
fn refine_zero(p: &BiPoly<Complex64>, k: usize, start: Complex64) -> Complex64 {
    let mut z = start;
    let mut mu = 1e-6;
    for _ in 0..200 {
        let f = eval_c64(p, k, z);
        let h = 1e-7 * (1.0 + z.norm());
        let fx = (eval_c64(p, k, z + Complex64::new(h, 0.0)) - f) / h;
        let fy = (eval_c64(p, k, z + Complex64::new(0.0, h)) - f) / h;
        // J = [[fx.re, fy.re], [fx.im, fy.im]]
        let (a, b, c, d) = (fx.re, fy.re, fx.im, fy.im);
        let jtj = [a * a + c * c + mu, a * b + c * d, b * b + d * d + mu];
        let jtf = [a * f.re + c * f.im, b * f.re + d * f.im];
        let det = jtj[0] * jtj[2] - jtj[1] * jtj[1];
        if det == 0.0 || !det.is_finite() {
            break;
        }
        let dx = (jtj[2] * jtf[0] - jtj[1] * jtf[1]) / det;
        let dy = (jtj[0] * jtf[1] - jtj[1] * jtf[0]) / det;
        let cand = z - Complex64::new(dx, dy);
        if eval_c64(p, k, cand).norm() < f.norm() {
            z = cand;
            mu = (mu * 0.3).max(1e-15);
        } else {
            mu *= 10.0;
        }
        if Complex64::new(dx, dy).norm() < 1e-15 * (1.0 + z.norm()) {
            break;
        }
    }
    z
}

fn snap_witness<S: Scalar>(p: &BiPoly<S>, k: usize, root: Complex64) -> Option<AntidiagonalWitness<S>> {
    if !S::EXACT || !root.is_finite() || root.norm() < 1e-9 || root.norm() > 1e9 {
        return None;
    }
    let r = root.norm();
    let probes = [root, Complex64::new(r, 0.0), Complex64::new(-r, 0.0), Complex64::new(0.0, r), Complex64::new(0.0, -r)];
    for z in probes {
        for den in [1, 2, 3, 4, 5, 6, 8, 10, 12, 16, 20, 25, 32, 50, 64, 100] {
            let g = GaussianRational::approximate(z, den);
            if g.to_c64().norm() == 0.0 {
                continue;
            }
            let zs = ProjPoint::Finite(S::from_gaussian(&g));
            if antidiagonal_value(p, k, &zs).is_zero() {
                return Some(AntidiagonalWitness { zeta: zs, exact: true, residual: 0.0 });
            }
        }
    }
    None
}

/// Tri-state certification that `{P = 0}` misses `{(ζ, −1/ζ̄)}`.
pub fn antidiagonal_check<S: Scalar>(p: &BiPoly<S>, k: usize, opts: &CurveOptions) -> AntidiagonalVerdict<S> {
    let charts = antidiagonal_charts(p, k);
    let scale = charts[0].max_modulus().max(charts[1].max_modulus());
    for z in [ProjPoint::Finite(S::zero()), ProjPoint::Infinity, ProjPoint::Finite(S::one()), ProjPoint::Finite(-S::one())] {
        let v = antidiagonal_value(p, k, &z);
        if v.is_negligible(opts.tol, scale) {
            let w = AntidiagonalWitness { zeta: z, exact: S::EXACT, residual: v.modulus() };
            return AntidiagonalVerdict { status: Status::Invalid, witness: Some(w), min_modulus: Some(0.0) };
        }
    }
    let cp = [ChartPoly::new(&charts[0]), ChartPoly::new(&charts[1])];
    let grid = ((opts.samples / 2).max(1) as f64).sqrt().round().max(1.0) as usize;
    match certify_sphere([&cp[0], &cp[1]], CertMode::Nonvanishing, grid, opts.max_depth) {
        CertOutcome::Certified { min_sample } => {
            AntidiagonalVerdict { status: Status::Certified, witness: None, min_modulus: Some(min_sample) }
        }
        CertOutcome::Undecided { zeta, min_sample } | CertOutcome::Violated { zeta, min_sample, .. } => {
            let fp = p.map(|c| c.to_c64());
            let start = zeta.unwrap_or(Complex64::new(1e6, 0.0));
            let root = refine_zero(&fp, k, start);
            if let Some(w) = snap_witness(p, k, root) {
                return AntidiagonalVerdict { status: Status::Invalid, witness: Some(w), min_modulus: Some(min_sample) };
            }
            let res = eval_c64(&fp, k, root).norm();
            let fscale = fp.max_modulus().max(f64::MIN_POSITIVE);
            if res <= 1e-10 * fscale {
                if let Some(z) = S::from_c64(root) {
                    let w = AntidiagonalWitness { zeta: ProjPoint::Finite(z), exact: false, residual: res };
                    return AntidiagonalVerdict { status: Status::Invalid, witness: Some(w), min_modulus: Some(min_sample) };
                }
            }
            AntidiagonalVerdict { status: Status::Unknown, witness: None, min_modulus: Some(min_sample) }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::GaussianRational as G;

    fn graph(a: G) -> BiPoly<G> {
        // η − aζ
        BiPoly::from_table(vec![vec![G::from(0), G::from(1)], vec![-a, G::from(0)]]).unwrap()
    }

    #[test]
    fn diagonal_curve() {
        let p = BiPoly::from_table(vec![vec![G::from(0), G::from(-1)], vec![G::from(1), G::from(0)]]).unwrap();
        let c = curve_from_poly(&p, 1).unwrap();
        assert_eq!(c.sigma_ratio, Some(G::from(-1)));
        assert_eq!(c.antidiagonal.status, Status::Certified);
    }

    #[test]
    fn product_of_graphs() {
        let (a1, a2) = (G::from_ints(1, 2), G::from_ints(1, -2));
        let p = graph(a1.clone()).mul(&graph(a2.clone())).mul(&graph(G::from(3)));
        let c = curve_from_poly_with(&p, 3, &[graph(a1), graph(a2), graph(G::from(3))], &CurveOptions::default()).unwrap();
        assert!(c.sigma_invariant());
        assert_eq!(c.antidiagonal.status, Status::Certified);
        assert_eq!(c.components.as_ref().map(Vec::len), Some(3));
        let wrong = curve_from_poly_with(&p, 3, &[graph(G::from(5))], &CurveOptions::default()).unwrap();
        assert!(wrong.components.is_none());
    }

    #[test]
    fn negative_slope_meets_antidiagonal() {
        let c = curve_from_poly(&graph(G::from(-4)), 1).unwrap();
        assert_eq!(c.antidiagonal.status, Status::Invalid);
        let w = c.antidiagonal.witness.unwrap();
        assert!(w.exact);
        let z = w.zeta.finite().unwrap().clone();
        assert_eq!(z.norm_sq(), crate::exactnum::rat(1, 4));
    }
}
