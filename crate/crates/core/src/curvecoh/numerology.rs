//! Degree bookkeeping for bundles on spectral curves, and the σ-essentiality example.

use serde_json::{json, Value};

use super::cohom::h_curve;
use super::plane::{curve_from_poly_with, CurveOptions, PlaneCurve};
use crate::exactnum::{BiPoly, GaussianRational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PwNumerology {
    pub genus: i64,
    pub canonical_twist: (i64, i64),
    pub degree: i64,
    pub theta_degree: i64,
    pub n: i64,
}

impl PwNumerology {
    pub fn to_json(&self) -> Value {
        json!({
            "genus": self.genus,
            "canonical_twist": [self.canonical_twist.0, self.canonical_twist.1],
            "degree": self.degree,
            "theta_degree": self.theta_degree,
            "n": self.n,
        })
    }
}

/// Curve of bidegree `(k, k)`, rank-`r` bundle of level `l`.
pub fn pw_numerology(k: i64, l: i64, r: i64) -> PwNumerology {
    let genus = (k - 1) * (k - 1);
    PwNumerology {
        genus,
        canonical_twist: (k - 2, k - 2),
        degree: 2 * l * (k * k - k),
        theta_degree: l * r * (genus - 1),
        n: r * k,
    }
}

/// Integer `(2,2)` curve, not σ-invariant, on which `O_S(3,−1)` meets the three base vanishings.
pub fn sigma_essential_poly() -> BiPoly<GaussianRational> {
    let rows: [[i64; 3]; 3] = SIGMA_ESSENTIAL;
    BiPoly::from_fn(2, 2, |i, j| GaussianRational::from(rows[i][j]))
}

const SIGMA_ESSENTIAL: [[i64; 3]; 3] = [[1, 0, 2], [0, -1, 1], [3, 1, 0]];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EssentialityReport {
    pub sigma_invariant: bool,
    /// `(twist of F, (h⁰, h¹))` for `F(−1,−1)`, `F(−2,0)`, `F(0,−2)`.
    pub base: Vec<((i64, i64), (usize, usize))>,
    pub h0_f_minus: usize,
    pub h0_structure: usize,
}

impl EssentialityReport {
    /// The base vanishings hold and still `h⁰(F(−3,1)) ≠ 0`.
    pub fn counterexample(&self) -> bool {
        !self.sigma_invariant && self.base.iter().all(|(_, h)| *h == (0, 0)) && self.h0_f_minus > 0
    }

    pub fn to_json(&self) -> Value {
        json!({
            "sigma_invariant": self.sigma_invariant,
            "base": self.base.iter().map(|(t, h)| json!({"twist": [t.0, t.1], "h0": h.0, "h1": h.1})).collect::<Vec<_>>(),
            "h0_F(-3,1)": self.h0_f_minus,
            "h0_O_S": self.h0_structure,
            "counterexample": self.counterexample(),
        })
    }
}

/// Cohomology of `F = O_S(3,−1)` at the twists entering the defining vanishings.
pub fn essentiality_report(curve: &PlaneCurve<GaussianRational>) -> EssentialityReport {
    let f = (3, -1);
    let base = [(-1, -1), (-2, 0), (0, -2)]
        .into_iter()
        .map(|(p, q)| ((f.0 + p, f.1 + q), h_curve(curve, f.0 + p, f.1 + q)))
        .collect();
    EssentialityReport {
        sigma_invariant: curve.sigma_invariant(),
        base,
        h0_f_minus: h_curve(curve, f.0 - 3, f.1 + 1).0,
        h0_structure: h_curve(curve, 0, 0).0,
    }
}

pub fn sigma_essential_curve() -> PlaneCurve<GaussianRational> {
    let opts = CurveOptions { certify: false, ..Default::default() };
    curve_from_poly_with(&sigma_essential_poly(), 2, &[], &opts).expect("nonzero polynomial")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numerology_values() {
        let n2 = pw_numerology(2, 3, 1);
        assert_eq!((n2.genus, n2.canonical_twist, n2.degree), (1, (0, 0), 12));
        assert_eq!(pw_numerology(1, 5, 2).degree, 0);
        assert_eq!(pw_numerology(1, 5, 2).genus, 0);
        let n3 = pw_numerology(3, 1, 2);
        assert_eq!((n3.degree, n3.genus, n3.theta_degree, n3.n), (12, 4, 6, 6));
    }

    #[test]
    fn sigma_essential_example() {
        let r = essentiality_report(&sigma_essential_curve());
        assert!(r.counterexample(), "{r:?}");
        assert_eq!(r.h0_structure, 1);
        assert_eq!(r.h0_f_minus, 1);
    }
}
