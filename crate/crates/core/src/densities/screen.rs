//! Density of fields that are inert at 2 and 5, totally ramified at 7, and
//! have no totally ramified prime `p = 1 (mod 5)`, relative to all fields of
//! a given signature.

use num_rational::BigRational;
use num_traits::One;

use super::certified::CertifiedValue;
use super::euler::{genus_one_density_at, genus_one_prefactor};
use crate::error::Result;
use crate::localfields::{local_density_factor, LocalConditionSet};

/// `C_2(inert)`, `C_5(inert)` and `C_7(totally ramified)`.
pub fn screen_local_factors() -> Result<Vec<(u64, BigRational)>> {
    Ok(vec![
        (2, local_density_factor(2, &LocalConditionSet::inert(2))?),
        (5, local_density_factor(5, &LocalConditionSet::inert(5))?),
        (7, local_density_factor(7, &LocalConditionSet::totally_ramified(7))?),
    ])
}

/// The local factors times `prod_{p = 1 (5)} (1 - 1/(m(p) p^4))`. Inertness
/// at 5 replaces the genus-one condition there, so the factor at 5 is
/// divided back out of the genus-one product.
pub fn screen_density_at(cutoff: u64) -> Result<CertifiedValue> {
    let local = screen_local_factors()?
        .into_iter()
        .fold(BigRational::one(), |acc, (_, c)| acc * c);
    Ok(genus_one_density_at(cutoff)?.scale(&(local / genus_one_prefactor())))
}

pub fn screen_density(digits: u32) -> Result<CertifiedValue> {
    let mut cutoff = 1000;
    loop {
        let v = screen_density_at(cutoff)?;
        let target = BigRational::new(1.into(), num_bigint::BigInt::from(10).pow(digits));
        if v.width() < target {
            return Ok(v);
        }
        cutoff *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn factors() {
        let f = screen_local_factors().unwrap();
        assert_eq!(f[0], (2, q(16, 185)));
        // (1/5) / (811/625)
        assert_eq!(f[1], (5, q(125, 811)));
        // One tame totally ramified quintic over Q_7, with trivial
        // automorphisms and discriminant 7^4.
        assert_eq!(f[2], (7, q(1, 2857)));
    }

    #[test]
    fn positive() {
        let v = screen_density(12).unwrap();
        assert!(v.low() > BigRational::zero());
        assert!(v.high() < q(16, 185) * q(125, 811) * q(1, 2857));
    }
}
