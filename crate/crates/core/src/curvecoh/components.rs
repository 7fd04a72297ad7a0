//! Čech classes on curves that split into graphs of Möbius maps.

use super::laurent::Laurent1;
use super::plane::PlaneCurve;
use crate::error::Error;
use crate::exactnum::{BiPoly, Scalar};

/// A `(1,1)` factor `αζη + βζ + γη + δ` whose zero set is a graph over the ζ-line.
pub fn is_graph<S: Scalar>(c: &BiPoly<S>, tol: f64) -> bool {
    let (a, b) = c.degrees();
    if a > 1 || b > 1 {
        return false;
    }
    let det = c.coeff(1, 1).mul_by(&c.coeff(0, 0)) - c.coeff(1, 0).mul_by(&c.coeff(0, 1));
    let scale = c.max_modulus();
    !det.is_negligible(tol, scale * scale)
}

/// `H¹` window coefficients `{ζ^j : a+b+1 ≤ j ≤ −1}` of a Laurent class on each component
/// (each component is a `P¹` on which `O(a, b)` pulls back to degree `a + b`).
pub fn component_cech<S: Scalar>(curve: &PlaneCurve<S>, classes: &[Laurent1<S>], twist: (i64, i64)) -> Result<Vec<Vec<S>>, Error> {
    let comps = curve.components.as_ref().ok_or_else(|| Error::NonGraph("curve has no component list".into()))?;
    if comps.len() != classes.len() {
        return Err(Error::Shape(format!("{} classes for {} components", classes.len(), comps.len())));
    }
    if let Some(bad) = comps.iter().position(|c| !is_graph(c, curve.tol)) {
        return Err(Error::NonGraph(format!("component {bad} is not the graph of a Möbius map")));
    }
    Ok(classes.iter().map(|cl| window_coefficients(cl, twist.0 + twist.1)).collect())
}

/// Coefficients of `ζ^j`, `d+1 ≤ j ≤ −1`, for degree `d`.
pub fn window_coefficients<S: Scalar>(class: &Laurent1<S>, degree: i64) -> Vec<S> {
    (degree + 1..=-1).map(|j| class.get(&j).cloned().unwrap_or_else(S::zero)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvecoh::plane::{curve_from_poly_with, CurveOptions};
    use crate::exactnum::GaussianRational as G;

    #[test]
    fn windows_on_components() {
        let g = |a: i64| BiPoly::from_table(vec![vec![G::from(0), G::from(1)], vec![G::from(-a), G::from(0)]]).unwrap();
        let comps = vec![g(1), g(2)];
        let p = comps[0].mul(&comps[1]);
        let c = curve_from_poly_with(&p, 2, &comps, &CurveOptions::default()).unwrap();
        let constant: Laurent1<G> = [(0, G::from(5))].into_iter().collect();
        let mixed: Laurent1<G> = [(1, G::from(1)), (-1, G::from(7)), (-2, G::from(3))].into_iter().collect();
        let out = component_cech(&c, &[constant.clone(), mixed], (-2, 0)).unwrap();
        assert_eq!(out, vec![vec![G::from(0)], vec![G::from(7)]]);
        assert!(component_cech(&c, &[constant.clone(), constant.clone()], (0, -1)).unwrap().iter().all(Vec::is_empty));
        let mut bad = c.clone();
        bad.components = Some(vec![BiPoly::zeta().mul(&BiPoly::eta()), g(1)]);
        assert!(matches!(component_cech(&bad, &[constant.clone(), constant], (-2, 0)), Err(Error::NonGraph(_))));
    }
}
