//! Factoring discriminants: trial division, then Pollard–Brent.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::polycore::arith::{exact_root, is_prime, small_primes};
use crate::polycore::current_seed;

/// Trial division runs through the primes below this bound.
pub const TRIAL_BOUND: u64 = 1_000_000;

/// Total Pollard–Brent iterations allowed for a cofactor of at most 1024
/// bits. Larger cofactors get proportionally fewer, since each step costs
/// quadratically more.
pub const RHO_BUDGET: u64 = 1 << 18;

fn rho_budget(n: &BigUint) -> u64 {
    let words = n.bits().div_ceil(64).max(16);
    (RHO_BUDGET * 256 / (words * words)).max(256)
}

/// A partial factorization. Every prime in `cofactor` exceeds the trial
/// bound; a cofactor below `TRIAL_BOUND^4` therefore has no prime whose
/// fourth power divides it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub primes: Vec<(BigUint, u32)>,
    pub cofactor: BigUint,
}

impl Factorization {
    pub fn is_complete(&self) -> bool {
        self.cofactor.is_one()
    }
}

fn pollard_brent(n: &BigUint, rng: &mut ChaCha8Rng, budget: &mut u64) -> Option<BigUint> {
    if n.is_even() {
        return Some(BigUint::from(2u32));
    }
    let m = 128u64;
    while *budget > 0 {
        let c = BigUint::from(rng.gen_range(1..u64::MAX)) % n;
        let mut y = BigUint::from(rng.gen::<u64>()) % n;
        let f = |x: &BigUint| (x * x + &c) % n;
        let (mut g, mut r, mut q) = (BigUint::one(), 1u64, BigUint::one());
        let mut x = y.clone();
        let mut ys = y.clone();
        while g.is_one() && *budget > 0 {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..m.min(r - k) {
                    y = f(&y);
                    let d = if x > y { &x - &y } else { &y - &x };
                    q = q * d % n;
                }
                g = q.gcd(n);
                k += m;
                *budget = budget.saturating_sub(m.min(r));
            }
            r *= 2;
        }
        if g == *n {
            // Backtrack one step at a time.
            loop {
                ys = f(&ys);
                let d = if x > ys { &x - &ys } else { &ys - &x };
                g = d.gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if !g.is_one() && g != *n {
            return Some(g);
        }
    }
    None
}

fn push(out: &mut Vec<(BigUint, u32)>, p: BigUint, e: u32) {
    match out.iter_mut().find(|(q, _)| *q == p) {
        Some(entry) => entry.1 += e,
        None => out.push((p, e)),
    }
}

/// Splits `n` (free of primes below the trial bound) into primes and an
/// unfactored remainder.
fn split_large(n: BigUint, rng: &mut ChaCha8Rng, budget: &mut u64, out: &mut Vec<(BigUint, u32)>) -> BigUint {
    if n.is_one() {
        return n;
    }
    if is_prime(&n) {
        push(out, n, 1);
        return BigUint::one();
    }
    for k in (2..=8u32).rev() {
        if let Some(r) = exact_root(&n, k) {
            let mut rest = BigUint::one();
            let mut sub = Vec::new();
            let left = split_large(r, rng, budget, &mut sub);
            for (p, e) in sub {
                push(out, p, e * k);
            }
            for _ in 0..k {
                rest *= &left;
            }
            return rest;
        }
    }
    match pollard_brent(&n, rng, budget) {
        Some(d) => {
            let other = &n / &d;
            let a = split_large(d, rng, budget, out);
            let b = split_large(other, rng, budget, out);
            a * b
        }
        None => n,
    }
}

/// Factors `|n|` as far as the budget allows.
pub fn factor_integer(n: &BigInt) -> Result<Factorization> {
    if n.is_zero() {
        return Err(Error::InvalidInput("cannot factor zero".into()));
    }
    let mut m = n.abs().to_biguint().expect("absolute value");
    let mut primes = Vec::new();
    for &p in small_primes() {
        if m.is_one() {
            break;
        }
        if let Some(small) = m.to_u64() {
            if p * p > small {
                break;
            }
        }
        let pb = BigUint::from(p);
        let mut e = 0;
        while (&m % &pb).is_zero() {
            m /= &pb;
            e += 1;
        }
        if e > 0 {
            primes.push((pb, e));
        }
    }
    if let Some(small) = m.to_u64() {
        if small > 1 && small < TRIAL_BOUND * TRIAL_BOUND {
            push(&mut primes, BigUint::from(small), 1);
            m = BigUint::one();
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(current_seed());
    let mut budget = rho_budget(&m);
    let cofactor = split_large(m, &mut rng, &mut budget, &mut primes);
    primes.sort();
    Ok(Factorization { primes, cofactor })
}

/// The primes dividing `n`. An unfactored cofactor is accepted only when
/// it cannot contain a fourth power of a prime, since every caller only
/// cares about primes with `v_p(n) >= 4`.
pub fn prime_divisors_for_ramification(n: &BigInt) -> Result<Vec<(BigUint, u32)>> {
    let f = factor_integer(n)?;
    if f.is_complete() {
        return Ok(f.primes);
    }
    let bound = BigUint::from(TRIAL_BOUND).pow(4);
    if f.cofactor < bound {
        return Ok(f.primes);
    }
    Err(Error::FactorizationTimeout {
        cofactor: BigInt::from(f.cofactor),
    })
}
