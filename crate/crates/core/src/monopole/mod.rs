//! Spectral curves of hyperbolic monopoles and the massless limit.

pub mod axisym;
pub mod massless;

pub use axisym::{
    axisym_build, delta_classes, graph_factor, lambda_domain, lambda_kernel, symmetric_roots, two_m_of, vanishing_report,
    AxisymMonopole, LambdaReport, Link, LinkSource, VanishingReport,
};
pub use massless::{
    bezout, expected_splitting, massless_build, massless_intersection, massless_splitting, massless_tangent_frames,
    lambda_cohomology, sample_pair, sylvester, trivializing_match, trivializing_section, MasslessData, MasslessFrames,
    MasslessPair, LambdaCohomologyReport, SectionMatch,
};
