use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::gaussian::GaussianRational;
use super::matrix::Matrix;

const PRIMES: [u64; 3] = [998_244_353, 1_000_000_009, 2_013_265_921];

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn sqrt_minus_one(p: u64) -> u64 {
    (2..p)
        .map(|a| pow_mod(a, (p - 1) / 4, p))
        .find(|&r| r * r % p == p - 1)
        .expect("p = 1 mod 4 has a square root of -1")
}

fn reduce(x: &BigInt, p: u64) -> u64 {
    let r = x % BigInt::from(p);
    let r = if r < BigInt::zero() { r + BigInt::from(p) } else { r };
    r.to_u64().expect("residue fits")
}

fn reduce_rational(num: &BigInt, den: &BigInt, p: u64) -> Option<u64> {
    let d = reduce(den, p);
    if d == 0 {
        return None;
    }
    Some(reduce(num, p) * pow_mod(d, p - 2, p) % p)
}

/// Rank of the reduction modulo a prime `p = 1 (mod 4)` with `i` sent to a square root of -1.
/// `None` when every prime divides some denominator.
pub fn modular_rank(m: &Matrix<GaussianRational>) -> Option<usize> {
    'primes: for &p in &PRIMES {
        let iota = sqrt_minus_one(p);
        let mut a = Vec::with_capacity(m.rows() * m.cols());
        for z in m.entries() {
            let Some(re) = reduce_rational(z.re.numer(), z.re.denom(), p) else { continue 'primes };
            let Some(im) = reduce_rational(z.im.numer(), z.im.denom(), p) else { continue 'primes };
            a.push((re + im * iota % p) % p);
        }
        return Some(rank_mod(a, m.rows(), m.cols(), p));
    }
    None
}

fn rank_mod(mut a: Vec<u64>, rows: usize, cols: usize, p: u64) -> usize {
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&r| a[r * cols + c] != 0) else { continue };
        for j in 0..cols {
            a.swap(piv * cols + j, rank * cols + j);
        }
        let inv = pow_mod(a[rank * cols + c], p - 2, p);
        for r in rank + 1..rows {
            let f = a[r * cols + c] * inv % p;
            if f == 0 {
                continue;
            }
            for j in c..cols {
                let sub = f * a[rank * cols + j] % p;
                a[r * cols + j] = (a[r * cols + j] + p - sub) % p;
            }
        }
        rank += 1;
    }
    rank
}
