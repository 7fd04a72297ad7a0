use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::pair::PluriPair;
use super::validate::{validate, Status, ValidateOptions};
use crate::error::Error;
use crate::exactnum::{GaussianRational, Matrix};

/// Default number of candidates tried by [`random_pair`].
pub const DEFAULT_RETRIES: usize = 64;

fn entry(rng: &mut ChaCha8Rng, scale: f64) -> GaussianRational {
    let z = num_complex::Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)) * scale;
    GaussianRational::approximate(z, 64)
}

fn random_matrix(rng: &mut ChaCha8Rng, n: usize, scale: f64) -> Matrix<GaussianRational> {
    Matrix::from_fn(n, n, |_, _| entry(rng, scale))
}

/// Candidate `(X, Y)`: for even `n`, the hypercomplex `X₀` plus a perturbation of size `scale`
/// and `Y` of size `scale`; for odd `n`, `X` and `Y` drawn freely.
pub fn random_candidate(n: usize, rng: &mut ChaCha8Rng, scale: f64) -> PluriPair<GaussianRational> {
    let (x, y) = if n.is_multiple_of(2) {
        let x0 = PluriPair::<GaussianRational>::standard_hypercomplex(n).expect("even n");
        (x0.x().add(&random_matrix(rng, n, scale)), random_matrix(rng, n, scale))
    } else {
        (random_matrix(rng, n, 1.0), random_matrix(rng, n, scale))
    };
    PluriPair::new(x, y).expect("square")
}

/// Deterministic Certified pair from `(n, seed, scale)` by rejection sampling.
pub fn random_pair(n: usize, seed: u64, scale: f64) -> Result<PluriPair<GaussianRational>, Error> {
    random_pair_with(n, seed, scale, DEFAULT_RETRIES, &ValidateOptions::default())
}

pub fn random_pair_with(n: usize, seed: u64, scale: f64, retries: usize, opts: &ValidateOptions) -> Result<PluriPair<GaussianRational>, Error> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..retries {
        let cand = random_candidate(n, &mut rng, scale);
        if cand.x().det().map(|d| !num_traits::Zero::is_zero(&d)).unwrap_or(false)
            && validate(&cand, opts).status == Status::Certified
        {
            return Ok(cand);
        }
    }
    Err(Error::RetryExhausted(retries))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_certified() {
        let a = random_pair(2, 1, 0.3).unwrap();
        let b = random_pair(2, 1, 0.3).unwrap();
        assert_eq!(a, b);
        assert_eq!(validate(&a, &ValidateOptions::default()).status, Status::Certified);
    }

    #[test]
    fn odd_dimension_exhausts() {
        assert!(matches!(random_pair_with(3, 5, 0.3, 8, &ValidateOptions::default()), Err(Error::RetryExhausted(8))));
    }
}
