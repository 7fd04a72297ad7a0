//! Axially symmetric spectral curves `∏(η − a_iζ)` and the vanishing argument on them.

use num_rational::BigRational;
use serde_json::{json, Value};

use crate::curvecoh::{
    component_cech, curve_from_poly_with, h_curve, triviality_check, CurveOptions, Laurent1, PlaneCurve, TrivialityReport,
};
use crate::error::Error;
use crate::exactnum::{parse_rational, BiPoly, Matrix, Scalar};
use crate::p1p1coh::h_line;

/// Charge `k`, mass `m = two_m/2`, roots `a_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct AxisymMonopole<S> {
    pub k: usize,
    pub two_m: u32,
    pub roots: Vec<S>,
}

impl<S: Scalar> AxisymMonopole<S> {
    /// `2m + k`.
    pub fn exponent(&self) -> i64 {
        self.two_m as i64 + self.k as i64
    }

    pub fn to_json(&self) -> Value {
        let mass = if self.two_m.is_multiple_of(2) { format!("{}", self.two_m / 2) } else { format!("{}/2", self.two_m) };
        json!({"k": self.k, "mass": mass, "roots": self.roots.iter().map(S::to_json).collect::<Vec<_>>()})
    }

    /// Reads `{"k", "mass", "roots"}`.
    pub fn from_json(v: &Value) -> Result<Self, Error> {
        let k = v.get("k").and_then(Value::as_u64).ok_or_else(|| Error::Parse("axisym input needs integer \"k\"".into()))? as usize;
        let mass = match v.get("mass") {
            Some(Value::String(s)) => parse_rational(s)?,
            Some(Value::Number(n)) => BigRational::from_float(n.as_f64().unwrap_or(f64::NAN))
                .ok_or_else(|| Error::Parse("mass is not finite".into()))?,
            _ => return Err(Error::Parse("axisym input needs \"mass\"".into())),
        };
        let roots = v
            .get("roots")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("axisym input needs \"roots\"".into()))?
            .iter()
            .map(S::from_json)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(AxisymMonopole { k, two_m: two_m_of(&mass)?, roots })
    }
}

/// `2m` for a non-negative half-integer mass.
pub fn two_m_of(mass: &BigRational) -> Result<u32, Error> {
    let twice = mass * BigRational::from_integer(2.into());
    if !twice.is_integer() || twice < BigRational::from_integer(0.into()) {
        return Err(Error::InvalidInput(format!("mass {mass} is not a non-negative half-integer")));
    }
    u32::try_from(twice.to_integer()).map_err(|_| Error::InvalidInput("mass too large".into()))
}

/// `η − aζ`.
pub fn graph_factor<S: Scalar>(a: &S) -> BiPoly<S> {
    BiPoly::from_fn(1, 1, |i, j| match (i, j) {
        (0, 1) => S::one(),
        (1, 0) => -a.clone(),
        _ => S::zero(),
    })
}

fn close<S: Scalar>(x: &S, y: &S, tol: f64) -> bool {
    let scale = x.modulus().max(y.modulus()).max(1.0);
    (x.clone() - y.clone()).is_negligible(tol, scale)
}

/// Checks the root conditions and builds the curve with its component list.
pub fn axisym_build<S: Scalar>(k: usize, two_m: u32, roots: &[S], tol: f64) -> Result<(AxisymMonopole<S>, PlaneCurve<S>), Error> {
    if k == 0 || roots.len() != k {
        return Err(Error::InvalidInput(format!("charge {k} needs {k} roots, got {}", roots.len())));
    }
    for (i, a) in roots.iter().enumerate() {
        if a.is_negligible(tol, 1.0) {
            return Err(Error::InvalidInput(format!("root {i} is zero")));
        }
        if roots[..i].iter().any(|b| close(a, b, tol)) {
            return Err(Error::InvalidInput(format!("root {i} is repeated")));
        }
    }
    let mono = AxisymMonopole { k, two_m, roots: roots.to_vec() };
    let e = mono.exponent();
    let powers: Vec<S> = roots.iter().map(|a| crate::curvecoh::pow_signed(a, e)).collect();
    if let Some(i) = powers.iter().position(|p| !close(p, &powers[0], tol)) {
        return Err(Error::InvalidInput(format!("root {i} has a different {e}-th power")));
    }
    let comps: Vec<BiPoly<S>> = roots.iter().map(graph_factor).collect();
    let p = comps.iter().skip(1).fold(comps[0].clone(), |acc, c| acc.mul(c));
    let opts = CurveOptions { tol, ..Default::default() };
    let curve = curve_from_poly_with(&p, k, &comps, &opts)?;
    Ok((mono, curve))
}

/// `c_i = (2m+k)/(a_i ∏_{j≠i}(a_i − a_j))`; the class on `S_i` is `c_i/ζ^k`.
pub fn delta_classes<S: Scalar>(mono: &AxisymMonopole<S>) -> Vec<S> {
    let e = S::from_i64(mono.exponent());
    mono.roots
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let den = mono
                .roots
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(a.clone(), |acc, (_, b)| acc.mul_by(&(a.clone() - b.clone())));
            e.clone() / den
        })
        .collect()
}

/// Domain coordinates: `b` then `p_{rs}`, `0 ≤ r ≤ k−2`, `0 ≤ s ≤ k`.
pub fn lambda_domain(k: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for r in 0..k.saturating_sub(1) {
        for s in 0..=k {
            out.push((r, s));
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct LambdaReport<S> {
    pub matrix: Matrix<S>,
    pub kernel: Vec<Vec<S>>,
    pub domain_dim: usize,
    /// Largest `|b|` over the normalized kernel basis.
    pub max_b: f64,
    pub b_zero: bool,
}

impl<S: Scalar> LambdaReport<S> {
    pub fn to_json(&self) -> Value {
        json!({
            "domain_dim": self.domain_dim,
            "kernel_dim": self.kernel.len(),
            "max_b": self.max_b,
            "b_zero": self.b_zero,
        })
    }
}

/// `λ: H⁰(O_S(k−2,k)) → ⊕ H¹(S_i, O(−2,0))`, section `b η^k/ζ + Σ p_{rs} ζ^r η^s` times `δ_i`.
pub fn lambda_kernel<S: Scalar>(mono: &AxisymMonopole<S>, curve: &PlaneCurve<S>) -> Result<LambdaReport<S>, Error> {
    let k = mono.k as i64;
    let cs = delta_classes(mono);
    let domain = lambda_domain(mono.k);
    let dim = 1 + domain.len();
    let mut columns: Vec<Vec<S>> = Vec::with_capacity(dim);
    // each domain element restricted to η = a_iζ and multiplied by c_i/ζ^k
    let restricted = |col: usize, i: usize| -> Laurent1<S> {
        let a = &mono.roots[i];
        let (exp, c) = if col == 0 {
            (k - 1, crate::curvecoh::pow_signed(a, k))
        } else {
            let (r, s) = domain[col - 1];
            ((r + s) as i64, crate::curvecoh::pow_signed(a, s as i64))
        };
        [(exp - k, c.mul_by(&cs[i]))].into_iter().collect()
    };
    for col in 0..dim {
        let classes: Vec<Laurent1<S>> = (0..mono.k).map(|i| restricted(col, i)).collect();
        let w = component_cech(curve, &classes, (-2, 0))?;
        columns.push(w.into_iter().flatten().collect());
    }
    let rows = columns.first().map_or(0, Vec::len);
    let matrix = Matrix::from_fn(rows, dim, |r, c| columns[c][r].clone());
    let tol = curve.tol;
    let kernel = S::nullspace_of(&matrix, tol);
    let max_b = kernel
        .iter()
        .map(|v| {
            let norm = v.iter().map(|x| x.modulus()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
            v[0].modulus() / norm
        })
        .fold(0.0, f64::max);
    let b_zero = if S::EXACT { kernel.iter().all(|v| v[0].is_zero()) } else { max_b <= tol.max(1e-8) };
    Ok(LambdaReport { matrix, kernel, domain_dim: dim, max_b, b_zero })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LinkSource {
    Computed,
    Cited,
}

impl LinkSource {
    pub fn as_str(self) -> &'static str {
        match self {
            LinkSource::Computed => "computed",
            LinkSource::Cited => "paper-cited",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Link {
    pub claim: String,
    pub source: LinkSource,
    pub holds: bool,
    pub detail: Value,
}

#[derive(Clone, Debug)]
pub struct VanishingReport {
    pub links: Vec<Link>,
    /// All computed links hold, so `h⁰(N(−2,0)) = h⁰(N(0,−2)) = 0` follows.
    pub vanishing: bool,
}

impl VanishingReport {
    pub fn conclusion(&self) -> &'static str {
        if self.vanishing { "vanishing holds" } else { "unknown" }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "links": self.links.iter().map(|l| json!({
                "claim": l.claim,
                "source": l.source.as_str(),
                "holds": l.holds,
                "detail": l.detail,
            })).collect::<Vec<_>>(),
            "conclusion": self.conclusion(),
        })
    }
}

pub fn vanishing_report<S: Scalar>(mono: &AxisymMonopole<S>, curve: &PlaneCurve<S>) -> Result<VanishingReport, Error> {
    let k = mono.k as i64;
    let e = mono.exponent();
    let triv: TrivialityReport<S> = triviality_check(curve, e)?;
    let h = h_curve(curve, k - 2, k);
    let lam = lambda_kernel(mono, curve)?;
    let obstruction = (h_line(-2, 0).1, h_line(k - 2, k).1);
    let links = vec![
        Link {
            claim: format!("O_S({e},{}) is trivial", -e),
            source: LinkSource::Computed,
            holds: triv.h0 >= 1 && triv.nowhere_vanishing().unwrap_or(true),
            detail: triv.to_json(),
        },
        Link {
            claim: format!("h0(O_S({},{})) = k^2 = {}", k - 2, k, k * k),
            source: LinkSource::Computed,
            holds: h.0 as i64 == k * k,
            detail: json!({"h0": h.0, "h1": h.1}),
        },
        Link {
            claim: "one obstruction direction b: h1(O(-2,0)) = 1 and h1(O(k-2,k)) = 0".into(),
            source: LinkSource::Computed,
            holds: obstruction == (1, 0),
            detail: json!({"h1_O(-2,0)": obstruction.0, "h1_O(k-2,k)": obstruction.1}),
        },
        Link {
            claim: "every element of ker(lambda) has b = 0".into(),
            source: LinkSource::Computed,
            holds: lam.b_zero && lam.domain_dim as i64 == k * k,
            detail: lam.to_json(),
        },
        Link {
            claim: "Nash bound h0(N(-2,0)) <= 1".into(),
            source: LinkSource::Cited,
            holds: true,
            detail: Value::Null,
        },
        Link {
            claim: "a nonzero section of N(-2,0) yields a kernel element with b != 0".into(),
            source: LinkSource::Cited,
            holds: true,
            detail: Value::Null,
        },
        Link {
            claim: "the curve is sigma-invariant, so h0(N(0,-2)) = h0(N(-2,0))".into(),
            source: LinkSource::Computed,
            holds: curve.sigma_invariant(),
            detail: Value::Null,
        },
    ];
    let vanishing = links.iter().all(|l| l.holds);
    Ok(VanishingReport { links, vanishing })
}

/// `k` distinct `N`-th roots of `ρ^N` (`ρ > 0`) closed under conjugation and off the negative axis,
/// chosen with `pick` (an index below its argument); `N = two_m + k`.
pub fn symmetric_roots(k: usize, two_m: u32, rho: f64, pick: &mut dyn FnMut(usize) -> usize) -> Option<Vec<num_complex::Complex64>> {
    let n = two_m as usize + k;
    // exponents j ∈ 1..n/2 paired with n − j, excluding j = n/2
    let pairs: Vec<usize> = (1..n).filter(|&j| 2 * j < n).collect();
    let need = k / 2;
    if pairs.len() < need {
        return None;
    }
    let mut avail = pairs;
    let mut js = Vec::new();
    if k % 2 == 1 {
        js.push(0);
    }
    for _ in 0..need {
        let j = avail.remove(pick(avail.len()));
        js.push(j);
        js.push(n - j);
    }
    Some(
        js.into_iter()
            .map(|j| num_complex::Complex64::from_polar(rho, 2.0 * std::f64::consts::PI * j as f64 / n as f64))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::GaussianRational as G;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn build_checks() {
        let w = c(-0.5, 3f64.sqrt() / 2.0);
        let (m, curve) = axisym_build(3, 0, &[c(1.0, 0.0), w, w.conj()], 1e-9).unwrap();
        assert!(curve.sigma_invariant());
        assert_eq!(m.exponent(), 3);
        let e = Complex64::from_polar(1.0, std::f64::consts::PI / 3.0);
        let (_, c2) = axisym_build(2, 1, &[e.conj(), e], 1e-9).unwrap();
        assert!(c2.sigma_invariant());
        assert_eq!(c2.antidiagonal.status, crate::plurilinear::Status::Certified);
        assert!(axisym_build(2, 1, &[G::from(1), G::from(-1)], 0.0).is_err());
        assert!(axisym_build(2, 0, &[G::from(1), G::from(1)], 0.0).is_err());
        assert!(axisym_build(1, 0, &[G::from(0)], 0.0).is_err());
    }

    #[test]
    fn delta_coefficients() {
        let (m, _) = axisym_build(1, 3, &[G::from(2)], 0.0).unwrap();
        assert_eq!(delta_classes(&m), vec![G::from_fracs((2, 1), (0, 1))]);
        let e = Complex64::from_polar(1.0, std::f64::consts::PI / 3.0);
        let (m2, _) = axisym_build(2, 1, &[e.conj(), e], 1e-9).unwrap();
        let d = delta_classes(&m2);
        let expect = c(3.0, 0.0) / (e.conj() * (e.conj() - e));
        assert!((d[0] - expect).norm() < 1e-12);
        let (m3, _) = axisym_build(2, 1, &[e, e.conj()], 1e-9).unwrap();
        let d3 = delta_classes(&m3);
        assert!((d[0] + d[1] - d3[0] - d3[1]).norm() < 1e-12);
    }

    #[test]
    fn lambda_and_report() {
        let e = Complex64::from_polar(1.0, std::f64::consts::PI / 3.0);
        let (m, curve) = axisym_build(2, 1, &[e.conj(), e], 1e-8).unwrap();
        let lam = lambda_kernel(&m, &curve).unwrap();
        assert_eq!(lam.domain_dim, 4);
        assert_eq!(lam.kernel.len(), 2);
        assert!(lam.b_zero);
        let rep = vanishing_report(&m, &curve).unwrap();
        assert!(rep.vanishing, "{}", rep.to_json());
        // exact roots ±i with 2m + k = 4
        let (mx, cx) = axisym_build(2, 2, &[G::i(), -G::i()], 0.0).unwrap();
        let lx = lambda_kernel(&mx, &cx).unwrap();
        assert!(lx.b_zero && lx.kernel.len() == 2);
        assert!(vanishing_report(&mx, &cx).unwrap().vanishing);
    }

    #[test]
    fn triviality_exponents() {
        let mut first = |_: usize| 0;
        let roots = symmetric_roots(4, 1, 1.3, &mut first).unwrap();
        let (m, curve) = axisym_build(4, 1, &roots, 1e-8).unwrap();
        assert!(curve.sigma_invariant());
        for a in 1..m.exponent() {
            let t = triviality_check(&curve, a).unwrap();
            assert_eq!(t.h0, 0, "a = {a}");
        }
        assert!(triviality_check(&curve, m.exponent()).unwrap().h0 >= 1);
    }
}
