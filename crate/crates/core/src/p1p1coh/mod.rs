//! Cohomology of line-bundle sums and of resolution-presented sheaves on `P¹×P¹`.

pub mod basis;
pub mod cech;
pub mod resolution;

pub use basis::{h_line, mult_map, mult_poly, sum_basis, CohBasis, TwistList};
pub use resolution::{
    euler_from_terms, induced_maps, kernel_recursion_witness, resolution_matrix, resolution_tags, sheaf_cohomology,
    sigma_compat_check, sigma_matrix, sphere_from_resolution, stalk_rank, twist_lists, verify_regularity, CohReport,
    RecursionReport, RegularityEntry, RegularityReport, Resolution,
};
