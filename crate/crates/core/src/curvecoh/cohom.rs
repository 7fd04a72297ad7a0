//! Cohomology of `O_S(a, b)` through `0 → O(a−k, b−k) →^{·P} O(a, b) → O_S(a, b) → 0`,
//! connecting maps, and two-chart section data.

use rand::Rng;
use serde_json::{json, Value};

use super::laurent::{Laurent1, Laurent2};
use super::plane::PlaneCurve;
use crate::error::Error;
use crate::exactnum::{BiPoly, Matrix, PolyMatrix, Scalar};
use crate::p1p1coh::{mult_map, CohBasis};

fn p_map<S: Scalar>(curve: &PlaneCurve<S>, a: i64, b: i64, degree: usize) -> Matrix<S> {
    let k = curve.k as i64;
    let r = PolyMatrix::new(vec![vec![curve.poly.clone()]], vec![(curve.k, curve.k)]).expect("1x1 matrix");
    mult_map(&r, &[(a - k, b - k)], &[(a, b)], degree).expect("tags match by construction")
}

/// The three induced maps `H^d(O(a−k, b−k)) → H^d(O(a, b))`.
pub fn restriction_maps<S: Scalar>(curve: &PlaneCurve<S>, a: i64, b: i64) -> [Matrix<S>; 3] {
    [p_map(curve, a, b, 0), p_map(curve, a, b, 1), p_map(curve, a, b, 2)]
}

/// `(h⁰, h¹)` of `O_S(a, b)`.
pub fn h_curve<S: Scalar>(curve: &PlaneCurve<S>, a: i64, b: i64) -> (usize, usize) {
    let [m0, m1, m2] = restriction_maps(curve, a, b);
    let (r0, r1, r2) = (S::rank_of(&m0, curve.tol), S::rank_of(&m1, curve.tol), S::rank_of(&m2, curve.tol));
    ((m0.rows() - r0) + (m1.cols() - r1), (m1.rows() - r1) + (m2.cols() - r2))
}

/// `χ(O_S(a, b)) = k(a + b) + 1 − (k−1)²`.
pub fn riemann_roch(k: usize, a: i64, b: i64) -> i64 {
    let k = k as i64;
    k * (a + b) + 1 - (k - 1) * (k - 1)
}

/// One element of the model basis of `H⁰(O_S(a, b))`.
#[derive(Clone, Debug)]
pub enum SectionRep<S> {
    /// Restriction of a global polynomial.
    Lift(BiPoly<S>),
    /// Kernel vector of `H¹(O(a−k, b−k)) → H¹(O(a, b))`, as Laurent data on the window basis.
    Obstruction(Vec<((i64, i64), S)>),
}

#[derive(Clone, Debug)]
pub struct SectionBasis<S> {
    pub twist: (i64, i64),
    pub elements: Vec<SectionRep<S>>,
    /// Window basis of `H¹(O(a−k, b−k))`.
    pub obstruction_space: CohBasis,
}

impl<S: Scalar> SectionBasis<S> {
    pub fn lift_count(&self) -> usize {
        self.elements.iter().filter(|e| matches!(e, SectionRep::Lift(_))).count()
    }

    pub fn obstruction_count(&self) -> usize {
        self.elements.len() - self.lift_count()
    }
}

/// Lifts complete the image of `H⁰(O(a−k, b−k))` by monomials; obstructions span the `H¹` kernel.
pub fn section_basis<S: Scalar>(curve: &PlaneCurve<S>, a: i64, b: i64) -> SectionBasis<S> {
    let k = curve.k as i64;
    let [m0, m1, _] = restriction_maps(curve, a, b);
    let dst0 = CohBasis::new(a, b, 0);
    let mut elements = Vec::new();
    let aug = m0.hstack(&Matrix::identity(m0.rows()));
    for &p in &aug.rref(curve.tol).pivots {
        if p >= m0.cols() {
            let (i, j) = dst0.monomials[p - m0.cols()];
            elements.push(SectionRep::Lift(BiPoly::monomial(S::one(), i as usize, j as usize)));
        }
    }
    let src1 = CohBasis::new(a - k, b - k, 1);
    for v in S::nullspace_of(&m1, curve.tol) {
        elements.push(SectionRep::Obstruction(src1.monomials.iter().cloned().zip(v).collect()));
    }
    SectionBasis { twist: (a, b), elements, obstruction_space: src1 }
}

/// `δ: H⁰(O_S(a, b)) → H¹(O(a−k, b−k))` on the model basis: lifts go to zero, obstruction
/// elements to their Laurent data.
pub fn connecting<S: Scalar>(curve: &PlaneCurve<S>, a: i64, b: i64) -> (SectionBasis<S>, Matrix<S>) {
    let basis = section_basis(curve, a, b);
    let dim = basis.obstruction_space.dim();
    let mut m = Matrix::zeros(dim, basis.elements.len());
    for (c, e) in basis.elements.iter().enumerate() {
        if let SectionRep::Obstruction(v) = e {
            for (r, (_, x)) in v.iter().enumerate() {
                m[(r, c)] = x.clone();
            }
        }
    }
    (basis, m)
}

/// Section of `O_S(a, b)` on the cover `{η ≠ ∞}, {η ≠ 0}`: local lifts `s0` (η-exponents ≥ 0)
/// and `s1` (η-exponents ≤ b) in the first chart's trivialization, with `P | s0 − s1`.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalSection<S> {
    pub twist: (i64, i64),
    pub s0: Laurent2<S>,
    pub s1: Laurent2<S>,
}

impl<S: Scalar> LocalSection<S> {
    pub fn from_lift(f: &BiPoly<S>, twist: (i64, i64)) -> Self {
        let l = Laurent2::from_bipoly(f);
        LocalSection { twist, s0: l.clone(), s1: l }
    }

    /// The section whose connecting class is `h ∈ ker(H¹(O(a−k, b−k)) → H¹(O(a, b)))`.
    pub fn from_obstruction(curve: &PlaneCurve<S>, twist: (i64, i64), h: &[((i64, i64), S)]) -> Result<Self, Error> {
        let (a, b) = twist;
        let k = curve.k as i64;
        if h.iter().any(|((_, j), c)| *j >= 0 && !c.is_zero()) {
            return Err(Error::InvalidInput("obstruction class outside the η-window block".into()));
        }
        let lh = Laurent2::from_terms(h.iter().cloned());
        let ph = lh.mul_bipoly(&curve.poly);
        let scale = ph.max_modulus();
        let middle = ph.filter(|_, j| j > b && j < 0);
        if !middle.is_negligible(curve.tol.max(1e-12), scale) {
            return Err(Error::InvalidInput(format!("class is not in the kernel of multiplication into O({a},{b})")));
        }
        let _ = k;
        Ok(LocalSection { twist, s0: ph.filter(|_, j| j >= 0), s1: ph.filter(|_, j| j <= b).scale(&-S::one()) })
    }

    /// `(s0 − s1)/P`, a cocycle for `O(a−k, b−k)` on the overlap.
    pub fn delta(&self, curve: &PlaneCurve<S>) -> Result<Laurent2<S>, Error> {
        self.s0
            .sub(&self.s1)
            .div_bipoly(&curve.poly, curve.tol.max(1e-12))
            .ok_or_else(|| Error::InvalidInput("local lifts do not agree on the curve".into()))
    }

    pub fn mul(&self, o: &Self) -> Self {
        LocalSection {
            twist: (self.twist.0 + o.twist.0, self.twist.1 + o.twist.1),
            s0: self.s0.mul(&o.s0),
            s1: self.s1.mul(&o.s1),
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        LocalSection { twist: self.twist, s0: self.s0.scale(c), s1: self.s1.scale(c) }
    }

    pub fn add(&self, o: &Self) -> Self {
        LocalSection { twist: self.twist, s0: self.s0.add(&o.s0), s1: self.s1.add(&o.s1) }
    }

    /// Restriction of `s0` to a graph `η = αζ`.
    pub fn on_graph(&self, alpha: &S) -> Laurent1<S> {
        self.s0.restrict_graph(alpha)
    }

    pub fn to_json(&self) -> Value {
        let enc = |l: &Laurent2<S>| -> Value {
            Value::Array(l.terms().map(|(e, c)| json!({"zeta": e.0, "eta": e.1, "c": c.to_json()})).collect())
        };
        json!({"twist": [self.twist.0, self.twist.1], "s0": enc(&self.s0), "s1": enc(&self.s1)})
    }
}

/// Coordinates of a cocycle for `O(a, b)` in the `H¹` window basis (η-window block only).
pub fn cocycle_class<S: Scalar>(l: &Laurent2<S>, twist: (i64, i64)) -> Result<Vec<S>, Error> {
    let basis = CohBasis::new(twist.0, twist.1, 1);
    if basis.monomials.iter().any(|m| m.1 >= 0) {
        return Err(Error::InvalidInput(format!("O({},{}) has H¹ in the ζ-direction; two η-charts do not see it", twist.0, twist.1)));
    }
    Ok(basis.monomials.iter().map(|&(i, j)| l.coeff(i, j)).collect())
}

/// Product rule `δ(st) = s·δ(t) + t·δ(s)` on the window classes; returns the defect.
pub fn product_rule_defect<S: Scalar>(curve: &PlaneCurve<S>, s: &LocalSection<S>, t: &LocalSection<S>) -> Result<f64, Error> {
    let k = curve.k as i64;
    let st = s.mul(t);
    let tw = (st.twist.0 - k, st.twist.1 - k);
    let lhs = cocycle_class(&st.delta(curve)?, tw)?;
    let r1 = cocycle_class(&s.s0.mul(&t.delta(curve)?), tw)?;
    let r2 = cocycle_class(&t.s1.mul(&s.delta(curve)?), tw)?;
    Ok(lhs
        .iter()
        .zip(r1.iter().zip(&r2))
        .map(|(l, (x, y))| (l.clone() - x.clone() - y.clone()).modulus())
        .fold(0.0, f64::max))
}

/// Random element of `H⁰(O_S(a, b))` with small integer coordinates on the model basis.
pub fn random_local_section<S: Scalar, R: Rng>(curve: &PlaneCurve<S>, a: i64, b: i64, rng: &mut R) -> Result<LocalSection<S>, Error> {
    let basis = section_basis(curve, a, b);
    let mut out = LocalSection::from_lift(&BiPoly::zero(), (a, b));
    for e in &basis.elements {
        let c = S::from_i64(rng.gen_range(-3..=3));
        let piece = match e {
            SectionRep::Lift(f) => LocalSection::from_lift(f, (a, b)),
            SectionRep::Obstruction(h) => LocalSection::from_obstruction(curve, (a, b), h)?,
        };
        out = out.add(&piece.scale(&c));
    }
    Ok(out)
}

/// `h⁰(O_S(a, −a))` and its kernel description.
#[derive(Clone, Debug)]
pub struct TrivialityReport<S> {
    pub a: i64,
    pub h0: usize,
    pub kernel: Vec<Vec<((i64, i64), S)>>,
    /// Constant value of each kernel section on each graph component, when the components are
    /// linear graphs `η = αζ`.
    pub component_values: Option<Vec<Vec<S>>>,
}

impl<S: Scalar> TrivialityReport<S> {
    /// Some kernel section is nonzero on every component.
    pub fn nowhere_vanishing(&self) -> Option<bool> {
        let vals = self.component_values.as_ref()?;
        Some(vals.iter().any(|v| v.iter().all(|c| c.modulus() > 1e-8)))
    }

    pub fn to_json(&self) -> Value {
        let mut out = json!({
            "a": self.a,
            "h0": self.h0,
            "kernel": self.kernel.iter().map(|v| {
                v.iter().filter(|(_, c)| !c.is_zero()).map(|(e, c)| json!({"zeta": e.0, "eta": e.1, "c": c.to_json()})).collect::<Vec<_>>()
            }).collect::<Vec<_>>(),
        });
        if let Some(nv) = self.nowhere_vanishing() {
            out["nowhere_vanishing"] = json!(nv);
        }
        out
    }
}

/// Slope `α` of a component `c·(η − αζ)`, when it has that form.
pub fn linear_graph_slope<S: Scalar>(c: &BiPoly<S>, tol: f64) -> Option<S> {
    let scale = c.max_modulus();
    let small = |x: S| x.is_negligible(tol, scale);
    if !small(c.coeff(0, 0)) || !small(c.coeff(1, 1)) || small(c.coeff(0, 1)) {
        return None;
    }
    Some(-(c.coeff(1, 0) / c.coeff(0, 1)))
}

pub fn triviality_check<S: Scalar>(curve: &PlaneCurve<S>, a: i64) -> Result<TrivialityReport<S>, Error> {
    if a < 1 {
        return Err(Error::InvalidInput("triviality check needs a ≥ 1".into()));
    }
    let basis = section_basis(curve, a, -a);
    let kernel: Vec<Vec<((i64, i64), S)>> = basis
        .elements
        .iter()
        .filter_map(|e| match e {
            SectionRep::Obstruction(h) => Some(h.clone()),
            SectionRep::Lift(_) => None,
        })
        .collect();
    let h0 = basis.elements.len();
    let slopes: Option<Vec<S>> =
        curve.components.as_ref().and_then(|cs| cs.iter().map(|c| linear_graph_slope(c, curve.tol)).collect());
    let component_values = match slopes {
        Some(sl) => {
            let mut vals = Vec::new();
            for h in &kernel {
                let sec = LocalSection::from_obstruction(curve, (a, -a), h)?;
                vals.push(
                    sl.iter()
                        .map(|al| {
                            let r = sec.on_graph(al);
                            let scale = r.values().map(|c| c.modulus()).fold(0.0, f64::max);
                            let constant = r.iter().all(|(e, c)| *e == 0 || c.is_negligible(curve.tol.max(1e-10), scale));
                            if constant { r.get(&0).cloned().unwrap_or_else(S::zero) } else { S::zero() }
                        })
                        .collect(),
                );
            }
            Some(vals)
        }
        None => None,
    };
    Ok(TrivialityReport { a, h0, kernel, component_values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvecoh::plane::{curve_from_poly, curve_from_poly_with, CurveOptions};
    use crate::exactnum::GaussianRational as G;
    use num_traits::Zero;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn graph(a: G) -> BiPoly<G> {
        BiPoly::from_table(vec![vec![G::from(0), G::from(1)], vec![-a, G::from(0)]]).unwrap()
    }

    fn random_curve(k: usize, seed: u64) -> PlaneCurve<G> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = BiPoly::from_fn(k, k, |_, _| G::from_ints(rng.gen_range(-4..=4), rng.gen_range(-4..=4)));
        let sym = p.add(&p.sigma_transform(k).unwrap());
        let opts = CurveOptions { certify: false, ..Default::default() };
        curve_from_poly_with(&sym, k, &[], &opts).unwrap()
    }

    #[test]
    fn genus_and_riemann_roch() {
        for k in 1..=3 {
            let c = random_curve(k, 10 + k as u64);
            assert!(c.sigma_invariant());
            assert_eq!(h_curve(&c, 0, 0), (1, (k - 1) * (k - 1)));
            for (a, b) in [(k as i64 - 2, k as i64), (k as i64 - 1, k as i64 - 1), (2, -3), (-1, 4), (-3, -2)] {
                let (h0, h1) = h_curve(&c, a, b);
                assert_eq!(h0 as i64 - h1 as i64, riemann_roch(k, a, b), "k={k} twist ({a},{b})");
            }
            assert_eq!(h_curve(&c, k as i64 - 2, k as i64).0, k * k);
            assert_eq!(h_curve(&c, k as i64 - 1, k as i64 - 1).0, k * k);
        }
    }

    #[test]
    fn connecting_splits_sections() {
        let c = random_curve(2, 5);
        for (a, b) in [(1, 0), (0, 1), (2, -2), (3, -1), (0, 0)] {
            let (basis, m) = connecting(&c, a, b);
            assert_eq!(basis.elements.len(), h_curve(&c, a, b).0);
            for (col, e) in basis.elements.iter().enumerate() {
                let zero = m.column(col).iter().all(|x| x.is_zero());
                assert_eq!(zero, matches!(e, SectionRep::Lift(_)));
            }
        }
    }

    #[test]
    fn axisymmetric_triviality() {
        // roots ±i: fourth powers agree, squares agree, cubes differ
        let comps = vec![graph(G::i()), graph(-G::i())];
        let p = comps[0].mul(&comps[1]);
        let c = curve_from_poly_with(&p, 2, &comps, &CurveOptions::default()).unwrap();
        assert!(c.sigma_invariant());
        for (a, expect) in [(1, 0), (2, 1), (3, 0), (4, 1)] {
            let t = triviality_check(&c, a).unwrap();
            assert_eq!(t.h0, expect, "a = {a}");
            if expect > 0 {
                assert_eq!(t.nowhere_vanishing(), Some(true));
            }
        }
    }

    #[test]
    fn product_rule_on_sections() {
        let comps = vec![graph(G::i()), graph(-G::i())];
        let p = comps[0].mul(&comps[1]);
        let c = curve_from_poly_with(&p, 2, &comps, &CurveOptions::default()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (t1, t2) in [((1, 0), (0, 1)), ((2, -2), (2, -2)), ((2, -2), (1, 0)), ((2, -2), (0, 1))] {
            for _ in 0..3 {
                let s = random_local_section(&c, t1.0, t1.1, &mut rng).unwrap();
                let t = random_local_section(&c, t2.0, t2.1, &mut rng).unwrap();
                assert_eq!(product_rule_defect(&c, &s, &t).unwrap(), 0.0);
            }
        }
        let generic = curve_from_poly(&random_curve(2, 8).poly, 2).unwrap();
        let s = random_local_section(&generic, 1, 0, &mut rng).unwrap();
        let t = random_local_section(&generic, 0, 1, &mut rng).unwrap();
        assert_eq!(product_rule_defect(&generic, &s, &t).unwrap(), 0.0);
    }
}
