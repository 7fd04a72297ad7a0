use num_complex::Complex64;
use num_rational::BigRational;
use serde_json::{json, Value};

use super::bipoly::BiPoly;
use super::gaussian::{format_rational, parse_rational, rat_to_f64, GaussianRational};
use super::matrix::Matrix;
use super::poly1::Poly1;
use super::scalar::Scalar;
use crate::error::Error;

pub fn rational_to_json(r: &BigRational) -> Value {
    Value::String(format_rational(r))
}

pub fn rational_from_json(v: &Value) -> Result<BigRational, Error> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigRational::from_integer(i.into()))
            } else {
                parse_rational(&n.to_string())
            }
        }
        other => Err(Error::Parse(format!("expected rational, found {other}"))),
    }
}

pub fn gaussian_to_json(z: &GaussianRational) -> Value {
    json!({"re": rational_to_json(&z.re), "im": rational_to_json(&z.im)})
}

/// Accepts `{"re":..,"im":..}`, a string such as `"1/2-i"`, or a plain number.
pub fn gaussian_from_json(v: &Value) -> Result<GaussianRational, Error> {
    match v {
        Value::Object(m) => {
            let part = |k: &str| m.get(k).map(rational_from_json).transpose();
            let re = part("re")?.unwrap_or_default();
            let im = part("im")?.unwrap_or_default();
            Ok(GaussianRational::new(re, im))
        }
        Value::String(s) => s.parse(),
        Value::Number(_) => Ok(GaussianRational::real(rational_from_json(v)?)),
        other => Err(Error::Parse(format!("expected complex number, found {other}"))),
    }
}

pub fn complex_from_json(v: &Value) -> Result<Complex64, Error> {
    let num = |x: &Value| -> Result<f64, Error> {
        match x {
            Value::Number(n) => n.as_f64().ok_or_else(|| Error::Parse(format!("bad number {n}"))),
            Value::String(s) => Ok(rat_to_f64(&parse_rational(s)?)),
            other => Err(Error::Parse(format!("expected number, found {other}"))),
        }
    };
    match v {
        Value::Object(m) => {
            let re = m.get("re").map(num).transpose()?.unwrap_or(0.0);
            let im = m.get("im").map(num).transpose()?.unwrap_or(0.0);
            Ok(Complex64::new(re, im))
        }
        Value::Array(a) if a.len() == 2 => Ok(Complex64::new(num(&a[0])?, num(&a[1])?)),
        Value::String(s) => Ok(s.parse::<GaussianRational>()?.to_c64()),
        Value::Number(_) => Ok(Complex64::new(num(v)?, 0.0)),
        other => Err(Error::Parse(format!("expected complex number, found {other}"))),
    }
}

pub fn matrix_to_json<S: Scalar>(m: &Matrix<S>) -> Value {
    Value::Array(m.to_rows().iter().map(|r| Value::Array(r.iter().map(S::to_json).collect())).collect())
}

pub fn matrix_from_json<S: Scalar>(v: &Value) -> Result<Matrix<S>, Error> {
    let rows = v.as_array().ok_or_else(|| Error::Parse("matrix must be an array of rows".into()))?;
    let parsed = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| Error::Parse("matrix row must be an array".into()))?
                .iter()
                .map(S::from_json)
                .collect::<Result<Vec<S>, Error>>()
        })
        .collect::<Result<Vec<_>, Error>>()?;
    Matrix::from_rows(parsed)
}

pub fn bipoly_to_json<S: Scalar>(p: &BiPoly<S>) -> Value {
    let (k1, k2) = p.bidegree();
    let coeffs: Vec<Value> =
        p.table().iter().map(|r| Value::Array(r.iter().map(S::to_json).collect())).collect();
    json!({"bidegree": [k1, k2], "coeffs": coeffs})
}

pub fn bipoly_from_json<S: Scalar>(v: &Value) -> Result<BiPoly<S>, Error> {
    let table = v.get("coeffs").ok_or_else(|| Error::Parse("bipoly needs \"coeffs\"".into()))?;
    let m: Matrix<S> = matrix_from_json(table)?;
    let p = BiPoly::from_table(m.to_rows())?;
    match v.get("bidegree").and_then(Value::as_array) {
        Some(b) if b.len() == 2 => {
            let k = |x: &Value| x.as_u64().map(|u| u as usize).ok_or_else(|| Error::Parse("bad bidegree".into()));
            p.with_bounds(k(&b[0])?, k(&b[1])?)
        }
        Some(_) => Err(Error::Parse("bidegree must be [k1, k2]".into())),
        None => Ok(p),
    }
}

pub fn poly1_to_json<S: Scalar>(p: &Poly1<S>) -> Value {
    Value::Array(p.coeffs().iter().map(S::to_json).collect())
}

pub fn poly1_from_json<S: Scalar>(v: &Value) -> Result<Poly1<S>, Error> {
    let a = v.as_array().ok_or_else(|| Error::Parse("polynomial must be a coefficient array".into()))?;
    Ok(Poly1::new(a.iter().map(S::from_json).collect::<Result<Vec<_>, _>>()?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        let z = GaussianRational::from_fracs((1, 3), (-2, 5));
        let v = gaussian_to_json(&z);
        assert_eq!(v, json!({"re": "1/3", "im": "-2/5"}));
        assert_eq!(gaussian_from_json(&v).unwrap(), z);
        let p = BiPoly::zeta().sub(&BiPoly::eta());
        let q: BiPoly<GaussianRational> = bipoly_from_json(&bipoly_to_json(&p)).unwrap();
        assert_eq!(p, q);
    }
}
