pub mod bipoly;
pub mod gaussian;
pub mod json;
pub mod matrix;
pub mod mobius;
pub mod modp;
pub mod poly1;
pub mod polymatrix;
pub mod scalar;
pub mod svd;
pub mod window;

pub use bipoly::BiPoly;
pub use gaussian::{format_rational, parse_rational, rat, rat_to_f64, GaussianRational};
pub use matrix::{canonical_rows, unit_vec, Matrix, Rref};
pub use mobius::{mobius_hermitian_factor, Mobius, ProjPoint};
pub use poly1::Poly1;
pub use polymatrix::PolyMatrix;
pub use scalar::{FloatReal, Scalar, DEFAULT_RANK_TOL, DEFAULT_TOL};
pub use window::{LaurentWindow, Var};

/// Rank and an echelon-normalized nullspace basis.
pub fn rref_nullspace<S: Scalar>(a: &Matrix<S>, tol: f64) -> (usize, Vec<Vec<S>>) {
    (S::rank_of(a, tol), S::nullspace_of(a, tol))
}
