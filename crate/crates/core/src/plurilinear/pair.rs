use serde_json::{json, Value};

use crate::error::Error;
use crate::exactnum::json::{matrix_from_json, matrix_to_json};
use crate::exactnum::{Matrix, ProjPoint, Scalar};

/// The `(X, Y)` model: `V^{1,0}_ζ` is the column span of `[[X + ζY], [ζI]]` in `ℂⁿ ⊕ ℂⁿ`,
/// with real structure `τ(v, w) = (w̄, v̄)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PluriPair<S> {
    n: usize,
    x: Matrix<S>,
    y: Matrix<S>,
}

/// Linear pencil `ζ ↦ col-span(A + ζB)`, with value `col-span(B)` at ∞.
#[derive(Clone, Debug, PartialEq)]
pub struct Frame<S> {
    pub a: Matrix<S>,
    pub b: Matrix<S>,
}

impl<S: Scalar> Frame<S> {
    pub fn at(&self, z: &ProjPoint<S>) -> Matrix<S> {
        match z {
            ProjPoint::Finite(z) => self.a.add(&self.b.scale(z)),
            ProjPoint::Infinity => self.b.clone(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.a.rows()
    }

    pub fn rank(&self) -> usize {
        self.a.cols()
    }
}

/// Block swap `(v, w) ↦ (w, v)` on `ℂⁿ ⊕ ℂⁿ`.
pub fn block_swap<S: Scalar>(n: usize) -> Matrix<S> {
    Matrix::from_fn(2 * n, 2 * n, |r, c| if (r + n) % (2 * n) == c { S::one() } else { S::zero() })
}

/// `τ` applied column-wise: `T · conj(F)`.
pub fn tau_columns<S: Scalar>(f: &Matrix<S>) -> Matrix<S> {
    let n = f.rows() / 2;
    let c = f.conj();
    c.block(n, 0, n, f.cols()).vstack(&c.block(0, 0, n, f.cols()))
}

impl<S: Scalar> PluriPair<S> {
    pub fn new(x: Matrix<S>, y: Matrix<S>) -> Result<Self, Error> {
        let n = x.rows();
        if n == 0 || x.shape() != (n, n) || y.shape() != (n, n) {
            return Err(Error::Shape(format!("X {:?} and Y {:?} must be equal square shapes", x.shape(), y.shape())));
        }
        Ok(PluriPair { n, x, y })
    }

    /// `X = diag(j, …, j)` with `j = [[0, 1], [−1, 0]]`, `Y = 0` (n even).
    pub fn standard_hypercomplex(n: usize) -> Result<Self, Error> {
        if n == 0 || n % 2 == 1 {
            return Err(Error::InvalidInput(format!("hypercomplex model needs even n, got {n}")));
        }
        let x = Matrix::from_fn(n, n, |r, c| {
            if r % 2 == 0 && c == r + 1 {
                S::one()
            } else if r % 2 == 1 && c + 1 == r {
                -S::one()
            } else {
                S::zero()
            }
        });
        PluriPair::new(x, Matrix::zeros(n, n))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn x(&self) -> &Matrix<S> {
        &self.x
    }

    pub fn y(&self) -> &Matrix<S> {
        &self.y
    }

    /// Pencil `A = [[X], [0]]`, `B = [[Y], [I]]`.
    pub fn pencil(&self) -> Frame<S> {
        let n = self.n;
        Frame { a: self.x.vstack(&Matrix::zeros(n, n)), b: self.y.vstack(&Matrix::identity(n)) }
    }

    pub fn frame(&self, z: &ProjPoint<S>) -> Matrix<S> {
        self.pencil().at(z)
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T + Copy) -> PluriPair<T> {
        PluriPair { n: self.n, x: self.x.map(f), y: self.y.map(f) }
    }

    pub fn to_json(&self) -> Value {
        json!({"n": self.n, "X": matrix_to_json(&self.x), "Y": matrix_to_json(&self.y)})
    }

    pub fn from_json(v: &Value) -> Result<Self, Error> {
        let x = matrix_from_json(v.get("X").ok_or_else(|| Error::Parse("pair needs \"X\"".into()))?)?;
        let y = match v.get("Y") {
            Some(y) => matrix_from_json(y)?,
            None => Matrix::zeros(x.rows(), x.rows()),
        };
        let pair = PluriPair::new(x, y)?;
        if let Some(n) = v.get("n") {
            if n.as_u64() != Some(pair.n as u64) {
                return Err(Error::Parse(format!("\"n\" = {n} does not match the matrix size {}", pair.n)));
            }
        }
        Ok(pair)
    }
}
