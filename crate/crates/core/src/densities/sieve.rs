//! The inclusion-exclusion sum over squarefree moduli built from 5 and the
//! primes `p = 1 (mod 5)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use serde::{Deserialize, Serialize};

use super::euler::{local_denominator, primes_one_mod_five};
use super::local::m_star;
use crate::error::{Error, Result};

pub const MAX_SIEVE_Y: u64 = 1_000_000;

/// Cutoff for the upper bound on the full unsigned sum.
const MAJORANT_CUTOFF: u64 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SievePrediction {
    pub y: u64,
    /// `sum_{f <= Y} prod_{p | f} -1/(m*(p) p^4)`.
    pub value: BigRational,
    /// Upper bound on `sum_{f > Y} prod_{p | f} 1/(m*(p) p^4)`.
    pub majorant: BigRational,
    /// Number of moduli `f <= Y`, including `f = 1`.
    pub terms: usize,
}

impl SievePrediction {
    pub fn low(&self) -> BigRational {
        &self.value - &self.majorant
    }

    pub fn high(&self) -> BigRational {
        &self.value + &self.majorant
    }
}

/// `(prime, m*(p) p^4)` for the primes of the sieve up to `limit`.
fn sieve_primes(limit: u64) -> Result<Vec<(u64, BigInt)>> {
    let mut out = Vec::new();
    if limit >= 5 {
        out.push((5, m_star(5) * BigInt::from(625)));
    }
    for p in primes_one_mod_five(limit) {
        out.push((p, local_denominator(p)?));
    }
    Ok(out)
}

/// Signed and unsigned sums over squarefree `f <= y`, as numerators over
/// the product `D` of all the local denominators.
fn walk(primes: &[(u64, BigInt)], start: usize, f: u64, y: u64, cofactor: &BigInt, sign: bool, acc: &mut Acc) {
    if sign {
        acc.signed -= cofactor;
    } else {
        acc.signed += cofactor;
    }
    acc.unsigned += cofactor;
    acc.terms += 1;
    for (i, (p, d)) in primes.iter().enumerate().skip(start) {
        let Some(next) = f.checked_mul(*p).filter(|&n| n <= y) else {
            break;
        };
        walk(primes, i + 1, next, y, &(cofactor / d), !sign, acc);
    }
}

#[derive(Default)]
struct Acc {
    signed: BigInt,
    unsigned: BigInt,
    terms: usize,
}

struct Sums {
    signed: BigRational,
    unsigned: BigRational,
    terms: usize,
}

fn sums(y: u64) -> Result<Sums> {
    if y > MAX_SIEVE_Y {
        return Err(Error::InvalidInput(format!("Y = {y} exceeds {MAX_SIEVE_Y}")));
    }
    let primes = sieve_primes(y)?;
    let denom = primes.iter().fold(BigInt::one(), |acc, (_, d)| acc * d);
    let mut acc = Acc::default();
    walk(&primes, 0, 1, y.max(1), &denom, false, &mut acc);
    Ok(Sums {
        signed: BigRational::new(acc.signed, denom.clone()),
        unsigned: BigRational::new(acc.unsigned, denom),
        terms: acc.terms,
    })
}

/// The truncated sum as an exact rational.
pub fn truncated_sieve_density(y: u64) -> Result<BigRational> {
    Ok(sums(y)?.signed)
}

/// Upper bound on `prod_{p in T} (1 + 1/(m*(p) p^4))`.
fn unsigned_total_bound() -> Result<BigRational> {
    let primes = sieve_primes(MAJORANT_CUTOFF)?;
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for (_, d) in &primes {
        num *= d + 1;
        den *= d;
    }
    let p3 = BigInt::from(MAJORANT_CUTOFF).pow(3);
    // prod_{p > P} (1 + w_p) <= exp(1/(3P^3)) <= 1/(1 - 1/(3P^3)).
    let tail = BigRational::new(3 * &p3, 3 * &p3 - 1);
    Ok(BigRational::new(num, den) * tail)
}

/// The truncated sum with a bound on everything omitted.
pub fn sieve_prediction(y: u64) -> Result<SievePrediction> {
    let acc = sums(y)?;
    let majorant = unsigned_total_bound()? - acc.unsigned;
    if majorant < BigRational::zero() {
        return Err(Error::Consistency("unsigned partial sum exceeds its bound".into()));
    }
    Ok(SievePrediction {
        y,
        value: acc.signed,
        majorant,
        terms: acc.terms,
    })
}
