use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::{Complex, Complex64};
use num_traits::{One, Zero};

use super::gaussian::GaussianRational;
use super::matrix::Matrix;
use crate::error::Error;

/// Default tolerance for float-mode zero tests.
pub const DEFAULT_TOL: f64 = 1e-9;
/// Default relative singular-value threshold for float-mode rank decisions.
pub const DEFAULT_RANK_TOL: f64 = 1e-8;

/// Real type backing a float-mode complex scalar.
pub trait FloatReal:
    nalgebra::RealField + num_traits::Float + Copy + Debug + Display + Send + Sync + 'static
{
    fn from_f64_lossy(v: f64) -> Self;
    fn to_f64_lossy(self) -> f64;
}

impl FloatReal for f64 {
    fn from_f64_lossy(v: f64) -> Self {
        v
    }
    fn to_f64_lossy(self) -> f64 {
        self
    }
}

impl FloatReal for f32 {
    fn from_f64_lossy(v: f64) -> Self {
        v as f32
    }
    fn to_f64_lossy(self) -> f64 {
        self as f64
    }
}

/// Field of complex scalars: exact (Gaussian rationals) or float (`Complex<f32|f64>`).
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    const EXACT: bool;

    fn conj(&self) -> Self;
    fn imag_unit() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_gaussian(g: &GaussianRational) -> Self;
    fn to_c64(&self) -> Complex64;

    /// Exact values convert only when representable; floats always.
    fn from_c64(z: Complex64) -> Option<Self>;

    fn modulus(&self) -> f64 {
        self.to_c64().norm()
    }

    /// Zero test; exact scalars ignore `tol`, floats compare against `tol * scale`.
    fn is_negligible(&self, tol: f64, scale: f64) -> bool;

    /// `self - a*b`.
    fn sub_mul(&self, a: &Self, b: &Self) -> Self {
        self.clone() - a.clone() * b.clone()
    }

    fn mul_by(&self, o: &Self) -> Self {
        self.clone() * o.clone()
    }

    fn rank_of(m: &Matrix<Self>, tol: f64) -> usize {
        m.rref(tol).pivots.len()
    }

    fn nullspace_of(m: &Matrix<Self>, tol: f64) -> Vec<Vec<Self>> {
        m.rref_nullspace_exact(tol)
    }

    fn to_json(&self) -> serde_json::Value;
    fn from_json(v: &serde_json::Value) -> Result<Self, Error>;
}

impl Scalar for GaussianRational {
    const EXACT: bool = true;

    fn conj(&self) -> Self {
        GaussianRational::conj(self)
    }
    fn imag_unit() -> Self {
        GaussianRational::i()
    }
    fn from_i64(v: i64) -> Self {
        GaussianRational::from_ints(v, 0)
    }
    fn from_gaussian(g: &GaussianRational) -> Self {
        g.clone()
    }
    fn to_c64(&self) -> Complex64 {
        GaussianRational::to_c64(self)
    }
    fn from_c64(z: Complex64) -> Option<Self> {
        let re = num_rational::BigRational::from_float(z.re)?;
        let im = num_rational::BigRational::from_float(z.im)?;
        Some(GaussianRational::new(re, im))
    }
    fn is_negligible(&self, _tol: f64, _scale: f64) -> bool {
        self.is_zero()
    }
    fn sub_mul(&self, a: &Self, b: &Self) -> Self {
        self.sub_ref(&a.mul_ref(b))
    }
    fn mul_by(&self, o: &Self) -> Self {
        self.mul_ref(o)
    }
    fn rank_of(m: &Matrix<Self>, tol: f64) -> usize {
        let full = m.rows().min(m.cols());
        if full > 8 && super::modp::modular_rank(m) == Some(full) {
            // reduction mod p can only lower the rank, so full rank mod p is exact
            return full;
        }
        m.rref(tol).pivots.len()
    }
    fn to_json(&self) -> serde_json::Value {
        super::json::gaussian_to_json(self)
    }
    fn from_json(v: &serde_json::Value) -> Result<Self, Error> {
        super::json::gaussian_from_json(v)
    }
}

impl<T: FloatReal> Scalar for Complex<T> {
    const EXACT: bool = false;

    fn conj(&self) -> Self {
        Complex::conj(self)
    }
    fn imag_unit() -> Self {
        Complex::new(T::zero(), T::one())
    }
    fn from_i64(v: i64) -> Self {
        Complex::new(T::from_f64_lossy(v as f64), T::zero())
    }
    fn from_gaussian(g: &GaussianRational) -> Self {
        let z = g.to_c64();
        Complex::new(T::from_f64_lossy(z.re), T::from_f64_lossy(z.im))
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64_lossy(), self.im.to_f64_lossy())
    }
    fn from_c64(z: Complex64) -> Option<Self> {
        Some(Complex::new(T::from_f64_lossy(z.re), T::from_f64_lossy(z.im)))
    }
    fn modulus(&self) -> f64 {
        self.norm().to_f64_lossy()
    }
    fn is_negligible(&self, tol: f64, scale: f64) -> bool {
        self.modulus() <= tol * scale.max(f64::MIN_POSITIVE)
    }
    fn rank_of(m: &Matrix<Self>, tol: f64) -> usize {
        super::svd::svd_rank(m, tol)
    }
    fn nullspace_of(m: &Matrix<Self>, tol: f64) -> Vec<Vec<Self>> {
        super::svd::svd_nullspace(m, tol)
    }
    fn to_json(&self) -> serde_json::Value {
        let z = self.to_c64();
        serde_json::json!({"re": z.re, "im": z.im})
    }
    fn from_json(v: &serde_json::Value) -> Result<Self, Error> {
        let z = super::json::complex_from_json(v)?;
        Ok(Complex::new(T::from_f64_lossy(z.re), T::from_f64_lossy(z.im)))
    }
}
