//! The `(X, Y)` matrix model of linear pluricomplex structures.

pub mod curve;
pub mod metric;
pub mod pair;
pub mod profile;
pub mod random;
pub mod structures;
pub mod validate;

pub use curve::{char_poly, normalize_degree_one, sigma_ratio, support_curve, Normalization, StalkSample, SupportCurve};
pub use pair::{block_swap, tau_columns, Frame, PluriPair};
pub use structures::{
    extension_j, from_three_structures, graph_map, hypercomplex_residual, is_hypercomplex, j_at, real_eigen_kernel_dim,
    reparameterize, reparameterized_pencil, ComplexStructure,
};
pub use validate::{q_charts, validate, Status, ValidateOptions, ValidationVerdict, Witness};
pub use metric::{metric_from_form, standard_symplectic, MetricReport};
pub use profile::{decode_degrees, splitting_profile, PolyFrame, SplittingProfile, SubspaceFamily};
pub use random::{random_pair, random_pair_with, DEFAULT_RETRIES};
