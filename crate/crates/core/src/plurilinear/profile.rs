use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::pair::Frame;
use crate::error::Error;
use crate::exactnum::{GaussianRational, Matrix, Poly1, ProjPoint, Scalar};

/// A family `ζ ↦ V_ζ` of subspaces of a fixed ambient space.
pub trait SubspaceFamily<S: Scalar> {
    fn ambient(&self) -> usize;
    /// Spanning columns of `V_ζ` at a finite point.
    fn at(&self, z: &S) -> Matrix<S>;
}

impl<S: Scalar> SubspaceFamily<S> for Frame<S> {
    fn ambient(&self) -> usize {
        self.a.rows()
    }

    fn at(&self, z: &S) -> Matrix<S> {
        Frame::at(self, &ProjPoint::Finite(z.clone()))
    }
}

/// Columns given by polynomial vectors in `ζ`.
#[derive(Clone, Debug)]
pub struct PolyFrame<S> {
    pub columns: Vec<Vec<Poly1<S>>>,
    pub ambient: usize,
}

impl<S: Scalar> SubspaceFamily<S> for PolyFrame<S> {
    fn ambient(&self) -> usize {
        self.ambient
    }

    fn at(&self, z: &S) -> Matrix<S> {
        let cols: Vec<Vec<S>> = self.columns.iter().map(|c| c.iter().map(|p| p.eval(z)).collect()).collect();
        Matrix::from_columns(self.ambient, &cols)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittingProfile {
    /// `d_j = dim ∩_{i ≤ j} V_{ζ_i}`, ending at the first zero.
    pub d: Vec<usize>,
    /// Decoded degrees, in decreasing order.
    pub degrees: Vec<i64>,
    /// `Σ (e_a + 1) ≠ dim` or a negative decoded count.
    pub hidden_negative: bool,
    /// Sample sets that agreed with the reported profile.
    pub agreeing: usize,
    pub sets: usize,
}

impl SplittingProfile {
    pub fn to_json(&self) -> Value {
        json!({
            "d": self.d,
            "degrees": self.degrees,
            "hidden_negative": self.hidden_negative,
            "agreeing": self.agreeing,
            "sets": self.sets,
        })
    }
}

/// `d_j − d_{j+1} = #{a : e_a ≥ j}`.
pub fn decode_degrees(d: &[usize]) -> (Vec<i64>, bool) {
    let delta: Vec<i64> = (0..d.len()).map(|j| d[j] as i64 - d.get(j + 1).copied().unwrap_or(0) as i64).collect();
    let mut degrees = Vec::new();
    let mut bad = false;
    for j in 0..delta.len() {
        let count = delta[j] - delta.get(j + 1).copied().unwrap_or(0);
        if count < 0 {
            bad = true;
        }
        for _ in 0..count.max(0) {
            degrees.push(j as i64);
        }
    }
    degrees.sort_unstable_by(|a, b| b.cmp(a));
    let total: i64 = degrees.iter().map(|e| e + 1).sum();
    (degrees, bad || d.first().is_some_and(|&d0| total != d0 as i64))
}

fn random_point<S: Scalar>(rng: &mut ChaCha8Rng) -> S {
    let re = rng.gen_range(-40i64..=40);
    let im = rng.gen_range(-40i64..=40);
    let den = rng.gen_range(7i64..=23);
    S::from_gaussian(&GaussianRational::from_fracs((re, den), (im, den)))
}

fn one_profile<S: Scalar>(family: &dyn SubspaceFamily<S>, rng: &mut ChaCha8Rng, tol: f64) -> Vec<usize> {
    let n = family.ambient();
    let mut cur = Matrix::<S>::identity(n);
    let mut d = vec![n];
    while cur.cols() > 0 && d.len() <= n + 1 {
        let z = random_point::<S>(rng);
        let v = family.at(&z).column_basis(tol);
        cur = cur.intersect_columns(&v, tol);
        d.push(cur.cols());
    }
    d
}

/// Splitting type of `V/V_ζ` from dimensions of intersections over random sample sets;
/// the profile must be shared by a strict majority of the `sets` repetitions.
pub fn splitting_profile<S: Scalar>(family: &dyn SubspaceFamily<S>, sets: usize, seed: u64, tol: f64) -> Result<SplittingProfile, Error> {
    let sets = sets.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen: Vec<(Vec<usize>, usize)> = Vec::new();
    for _ in 0..sets {
        let d = one_profile(family, &mut rng, tol);
        match seen.iter_mut().find(|(x, _)| *x == d) {
            Some(e) => e.1 += 1,
            None => seen.push((d, 1)),
        }
    }
    seen.sort_by(|a, b| b.1.cmp(&a.1));
    let (d, agreeing) = seen.swap_remove(0);
    if 2 * agreeing <= sets {
        return Err(Error::InvalidInput(format!("no majority profile among {sets} sample sets")));
    }
    let (degrees, hidden_negative) = decode_degrees(&d);
    Ok(SplittingProfile { d, degrees, hidden_negative, agreeing, sets })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::GaussianRational as G;
    use crate::plurilinear::PluriPair;

    #[test]
    fn decode_examples() {
        assert_eq!(decode_degrees(&[4, 2, 0]), (vec![1, 1], false));
        assert_eq!(decode_degrees(&[8, 4, 2, 0]), (vec![2, 2, 0, 0], false));
        assert!(decode_degrees(&[4, 3, 0]).1);
    }

    #[test]
    fn hypercomplex_profile() {
        let p = PluriPair::<G>::standard_hypercomplex(2).unwrap();
        let prof = splitting_profile(&p.pencil(), 3, 7, 0.0).unwrap();
        assert_eq!(prof.d, vec![4, 2, 0]);
        assert_eq!(prof.degrees, vec![1, 1]);
        assert_eq!(prof.agreeing, 3);
    }
}
