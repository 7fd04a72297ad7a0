//! Curves of bidegree `(k, k)` in `P¹×P¹` and the cohomology of line bundles restricted to them.

pub mod cohom;
pub mod components;
pub mod laurent;
pub mod numerology;
pub mod plane;

pub use cohom::{
    connecting, cocycle_class, h_curve, linear_graph_slope, product_rule_defect, random_local_section, restriction_maps,
    riemann_roch, section_basis, triviality_check, LocalSection, SectionBasis, SectionRep, TrivialityReport,
};
pub use components::{component_cech, is_graph, window_coefficients};
pub use laurent::{pow_signed, Laurent1, Laurent2};
pub use numerology::{
    essentiality_report, pw_numerology, sigma_essential_curve, sigma_essential_poly, EssentialityReport, PwNumerology,
};
pub use plane::{
    antidiagonal_charts, antidiagonal_check, antidiagonal_value, curve_from_poly, curve_from_poly_with, AntidiagonalVerdict,
    AntidiagonalWitness, CurveOptions, PlaneCurve,
};
