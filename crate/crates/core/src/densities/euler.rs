//! Euler products over primes `p = 1 (mod 5)` and Bhargava's constant.
//!
//! Each product is split at a cutoff `P`. The factors beyond `P` differ from
//! 1 by at most `c p^-4`, and `sum_{n > P} n^-4 <= P^-3 / 3`, which gives the
//! tail brackets below. The bound ignores the thinning to a residue class,
//! so it over-estimates by roughly a factor of four.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use rayon::prelude::*;

use super::certified::CertifiedValue;
use super::local::m;
use crate::error::{Error, Result};
use crate::polycore::arith::primes_up_to;

/// Largest cutoff any constant will use.
pub const MAX_CUTOFF: u64 = 10_000_000;
pub const MAX_DIGITS: u32 = 30;
pub const MAX_K: usize = 20;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn big(n: u64) -> BigInt {
    BigInt::from(n)
}

pub fn primes_one_mod_five(limit: u64) -> Vec<u64> {
    primes_up_to(limit).into_iter().filter(|p| p % 5 == 1).collect()
}

/// `p^4 + p^3 + 2p^2 + 2p + 1`, checked against `p^4 m(p)`.
pub fn local_denominator(p: u64) -> Result<BigInt> {
    let b = big(p);
    let poly: BigInt = Pow::pow(&b, 4u32) + Pow::pow(&b, 3u32) + 2 * Pow::pow(&b, 2u32) + 2 * &b + 1;
    let via_mass = m(p) * BigRational::from_integer(Pow::pow(&b, 4u32));
    if !via_mass.is_integer() || via_mass.to_integer() != poly {
        return Err(Error::Consistency(format!("m({p}) p^4 differs from {poly}")));
    }
    Ok(poly)
}

fn tree_product(v: Vec<BigInt>) -> BigInt {
    v.into_par_iter().with_min_len(64).reduce(BigInt::one, |a, b| a * b)
}

/// `prod num_i / den_i`, multiplying numerators and denominators separately
/// and reducing once.
fn ratio_product(factors: Vec<(BigInt, BigInt)>) -> BigRational {
    let (nums, dens): (Vec<BigInt>, Vec<BigInt>) = factors.into_iter().unzip();
    let (n, d) = rayon::join(|| tree_product(nums), || tree_product(dens));
    BigRational::new(n, d)
}

/// `1 - 1/(5^8 m(5))`, the factor at 5 in the genus-one density.
pub fn genus_one_prefactor() -> BigRational {
    BigRational::one() - BigRational::one() / (m(5) * BigRational::from_integer(big(5).pow(8u32)))
}

/// `1 + 4/(5^8 m(5))`, the factor at 5 in the average genus number.
pub fn average_prefactor() -> BigRational {
    BigRational::one() + q(4, 1) / (m(5) * BigRational::from_integer(big(5).pow(8u32)))
}

/// `sum_{n > P} n^-4 <= 1 / (3 P^3)`.
fn quartic_tail(cutoff: u64) -> BigRational {
    let p = big(cutoff.max(1));
    BigRational::new(BigInt::one(), 3 * Pow::pow(&p, 3u32))
}

fn weighted_product(cutoff: u64, weight: i64, skip: &[u64]) -> Result<BigRational> {
    let factors = primes_one_mod_five(cutoff)
        .into_iter()
        .filter(|p| !skip.contains(p))
        .map(|p| {
            let d = local_denominator(p)?;
            Ok((&d + weight, d))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ratio_product(factors))
}

/// `(1 - 1/(5^8 m(5))) prod_{p = 1 (5), p <= P} (1 - 1/(m(p) p^4))`.
pub fn genus_one_density_at(cutoff: u64) -> Result<CertifiedValue> {
    check_cutoff(cutoff)?;
    Ok(CertifiedValue {
        partial: genus_one_prefactor() * weighted_product(cutoff, -1, &[])?,
        tail_low: BigRational::one() - quartic_tail(cutoff),
        tail_high: BigRational::one(),
        cutoff,
    })
}

/// The same product with weight `+4`; the tail is at most
/// `exp(4/(3P^3)) <= 1/(1 - 4/(3P^3))`.
pub fn average_genus_constant_at(cutoff: u64) -> Result<CertifiedValue> {
    check_cutoff(cutoff)?;
    let cutoff = cutoff.max(2);
    Ok(CertifiedValue {
        partial: average_prefactor() * weighted_product(cutoff, 4, &[])?,
        tail_low: BigRational::one(),
        tail_high: BigRational::one() / (BigRational::one() - q(4, 1) * quartic_tail(cutoff)),
        cutoff,
    })
}

/// The first `k` primes congruent to 1 mod 5.
pub fn first_primes_one_mod_five(k: usize) -> Vec<u64> {
    crate::polycore::arith::primes_from(11)
        .filter(|p| p % 5 == 1)
        .take(k)
        .collect()
}

/// Genus-one product with the factors at the first `k` primes `p = 1 (5)`
/// replaced by `1/(m(p) p^4)`.
pub fn lower_bound_5k_at(k: usize, cutoff: u64) -> Result<CertifiedValue> {
    if k > MAX_K {
        return Err(Error::InvalidInput(format!("k = {k} exceeds {MAX_K}")));
    }
    let u = first_primes_one_mod_five(k);
    let cutoff = cutoff.max(u.last().copied().unwrap_or(0));
    check_cutoff(cutoff)?;
    let forced = u
        .iter()
        .map(|&p| Ok((BigInt::one(), local_denominator(p)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(CertifiedValue {
        partial: genus_one_prefactor() * weighted_product(cutoff, -1, &u)? * ratio_product(forced),
        tail_low: BigRational::one() - quartic_tail(cutoff),
        tail_high: BigRational::one(),
        cutoff,
    })
}

/// Signature prefactor of Bhargava's constant, indexed by the number of
/// complex places.
pub fn bhargava_prefactor(i: u8) -> Result<BigRational> {
    match i {
        0 => Ok(q(1, 240)),
        1 => Ok(q(1, 24)),
        2 => Ok(q(1, 16)),
        _ => Err(Error::InvalidInput(format!("signature index {i} is not 0, 1 or 2"))),
    }
}

/// Partial sums of `atan(1/m)` bracketing the limit, with enough terms for
/// an error below `10^-places`.
fn atan_inv_bracket(m: u64, places: u32) -> (BigRational, BigRational) {
    let target = BigRational::new(BigInt::one(), big(10).pow(places));
    let mm = big(m * m);
    let mut power = big(m);
    let mut sum = BigRational::zero();
    let mut k = 0u64;
    loop {
        let term = BigRational::new(BigInt::one(), big(2 * k + 1) * &power);
        let small = term < target;
        if k.is_multiple_of(2) {
            sum += &term;
        } else {
            sum -= &term;
        }
        if small {
            // The next term has the opposite sign and is smaller still.
            let next = BigRational::new(BigInt::one(), big(2 * k + 3) * &power * &mm);
            let other = if k.is_multiple_of(2) {
                &sum - &next
            } else {
                &sum + &next
            };
            return if k.is_multiple_of(2) {
                (other, sum)
            } else {
                (sum, other)
            };
        }
        power *= &mm;
        k += 1;
    }
}

/// Rational bracket on `pi` from Machin's formula.
pub fn pi_bracket(places: u32) -> (BigRational, BigRational) {
    let (l5, h5) = atan_inv_bracket(5, places + 2);
    let (l239, h239) = atan_inv_bracket(239, places + 2);
    (q(16, 1) * &l5 - q(4, 1) * &h239, q(16, 1) * &h5 - q(4, 1) * &l239)
}

/// Bhargava's constant for signature `i`. The Euler product
/// `prod (1 + p^-2 - p^-4 - p^-5)` converges slowly, so it is evaluated as
/// `zeta(2) prod (1 - 2p^-4 - p^-5 + p^-6 + p^-7)`; `zeta(2) = pi^2/6` enters
/// through the lower end of a rational bracket on `pi` and the upper tail
/// absorbs the bracket's width.
pub fn bhargava_constant_at(i: u8, cutoff: u64, pi_places: u32) -> Result<CertifiedValue> {
    check_cutoff(cutoff)?;
    let pre = bhargava_prefactor(i)?;
    let factors: Vec<(BigInt, BigInt)> = primes_up_to(cutoff)
        .into_iter()
        .map(|p| {
            let b = big(p);
            let p7: BigInt = Pow::pow(&b, 7u32);
            let num = &p7 - 2 * Pow::pow(&b, 3u32) - Pow::pow(&b, 2u32) + &b + 1;
            (num, p7)
        })
        .collect();
    let (pi_lo, pi_hi) = pi_bracket(pi_places);
    let zeta_lo = &pi_lo * &pi_lo / BigInt::from(6);
    let ratio = (&pi_hi / &pi_lo) * (&pi_hi / &pi_lo);
    // Beyond P the factors are 1 - a_p with 0 < a_p < 3p^-4.
    let tail = q(3, 1) * quartic_tail(cutoff);
    Ok(CertifiedValue {
        partial: pre * zeta_lo * ratio_product(factors),
        tail_low: BigRational::one() - tail,
        tail_high: ratio,
        cutoff,
    })
}

fn check_cutoff(cutoff: u64) -> Result<()> {
    if cutoff > MAX_CUTOFF {
        return Err(Error::Unsatisfiable(format!(
            "cutoff {cutoff} exceeds the cap {MAX_CUTOFF}"
        )));
    }
    Ok(())
}

/// Runs `at` with cutoffs from an estimate upward until the interval width
/// is below `10^-digits`.
fn certify(digits: u32, at: impl Fn(u64) -> Result<CertifiedValue>) -> Result<CertifiedValue> {
    if digits > MAX_DIGITS {
        return Err(Error::InvalidInput(format!(
            "at most {MAX_DIGITS} digits can be requested"
        )));
    }
    let target = BigRational::new(BigInt::one(), big(10).pow(digits));
    // Tail widths are all about 2 P^-3.
    let mut cutoff = ((4.0 * 10f64.powi(digits as i32)).cbrt().ceil() as u64).max(16);
    loop {
        if cutoff > MAX_CUTOFF {
            return Err(Error::Unsatisfiable(format!(
                "{digits} digits need a cutoff above {MAX_CUTOFF}"
            )));
        }
        let v = at(cutoff)?;
        if v.width() < target {
            return Ok(v);
        }
        cutoff *= 2;
    }
}

pub fn genus_one_density(digits: u32) -> Result<CertifiedValue> {
    certify(digits, genus_one_density_at)
}

pub fn average_genus_constant(digits: u32) -> Result<CertifiedValue> {
    certify(digits, average_genus_constant_at)
}

pub fn lower_bound_5k(k: usize, digits: u32) -> Result<CertifiedValue> {
    certify(digits, |c| lower_bound_5k_at(k, c))
}

pub fn bhargava_constant(i: u8, digits: u32) -> Result<CertifiedValue> {
    certify(digits, |c| bhargava_constant_at(i, c, digits + 4))
}

/// `C^(i)` times the genus-one density: the leading coefficient in the
/// count of genus-one fields of signature `i`.
pub fn genus_one_slope(i: u8, digits: u32) -> Result<CertifiedValue> {
    let c = bhargava_constant(i, digits + 1)?;
    let g = genus_one_density(digits + 1)?;
    Ok(c.mul(&g))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prefactors() {
        assert_eq!(genus_one_prefactor(), q(506874, 506875));
        assert_eq!(average_prefactor(), q(506879, 506875));
        assert_eq!(genus_one_density_at(10).unwrap().partial, q(506874, 506875));
    }

    #[test]
    fn eleven_factor() {
        // 14641 + 1331 + 242 + 22 + 1
        assert_eq!(local_denominator(11).unwrap(), BigInt::from(16237));
        let v = genus_one_density_at(11).unwrap();
        assert_eq!(v.partial, q(506874, 506875) * q(16236, 16237));
    }

    #[test]
    fn pi_bracket_is_tight() {
        // pi = 3.14159265358979323846 26..., truncated to 20 places.
        let eps = BigRational::new(BigInt::one(), big(10).pow(20u32));
        let approx = BigRational::new(BigInt::from(314159265358979323846u128), big(10).pow(20u32));
        let (lo, hi) = pi_bracket(20);
        assert!(&hi - &lo < eps);
        assert!(hi > approx);
        assert!(lo < approx + eps);
    }

    #[test]
    fn average_exceeds_one() {
        for cutoff in [10u64, 11, 100, 1000] {
            let v = average_genus_constant_at(cutoff).unwrap();
            assert!(v.partial >= BigRational::one());
        }
    }

    #[test]
    fn lower_bound_k1() {
        let v = lower_bound_5k_at(1, 11).unwrap();
        assert_eq!(v.partial, q(506874, 506875) * q(1, 16237));
        assert_eq!(lower_bound_5k_at(0, 500).unwrap(), genus_one_density_at(500).unwrap());
        assert!(lower_bound_5k_at(21, 500).is_err());
    }

    #[test]
    fn unsatisfiable_cap() {
        assert!(matches!(
            genus_one_density_at(MAX_CUTOFF + 1),
            Err(Error::Unsatisfiable(_))
        ));
        assert!(matches!(genus_one_density(25), Err(Error::Unsatisfiable(_))));
        assert!(matches!(genus_one_density(31), Err(Error::InvalidInput(_))));
    }
}
