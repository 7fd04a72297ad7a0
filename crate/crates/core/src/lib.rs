//! Exact linear algebra for pluricomplex structures, sheaf cohomology on P¹×P¹,
//! and monopole spectral curves.
//!
//! ```
//! use plurikit::{ExactPair, GaussianRational as G, Matrix};
//! use plurikit::plurilinear::{char_poly, is_hypercomplex};
//!
//! let x = Matrix::from_rows(vec![vec![G::from(0), G::from(1)], vec![G::from(-1), G::from(0)]]).unwrap();
//! let pair = ExactPair::new(x, Matrix::zeros(2, 2)).unwrap();
//! assert!(is_hypercomplex(&pair));
//! assert_eq!(char_poly(&pair).bidegree(), (2, 2));
//! ```

pub mod certify;
pub mod curvecoh;
pub mod error;
pub mod exactnum;
pub mod monopole;
pub mod p1p1coh;
pub mod plurilinear;
pub mod suite;

pub use error::{Error, Result};
pub use exactnum::{BiPoly, GaussianRational, Matrix, Mobius, Poly1, PolyMatrix, ProjPoint, Scalar};

pub use p1p1coh::Resolution;
pub use plurilinear::PluriPair;

pub type C64 = num_complex::Complex64;
pub type ExactMatrix = Matrix<GaussianRational>;
pub type FloatMatrix = Matrix<C64>;
pub type ExactBiPoly = BiPoly<GaussianRational>;
pub type FloatBiPoly = BiPoly<C64>;
pub type ExactPair = PluriPair<GaussianRational>;
pub type FloatPair = PluriPair<C64>;
