use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Pow, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::arith::primes_from;
use super::hensel::hensel_lift_factorization;
use super::modpoly::{factor_mod_p, factor_shape_mod_p, ModPoly};
use super::resultant::discriminant;
use super::IntPoly;
use crate::error::{Error, Result};

/// Number of primes not dividing the discriminant tried before giving up.
pub const DEFAULT_PRIME_BUDGET: usize = 25;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum IrreducibilityCertificate {
    Eisenstein {
        prime: u64,
    },
    IrreducibleModP {
        prime: u64,
    },
    /// The possible factor-degree sets at these primes intersect in `{deg f}`.
    DegreeSets {
        primes: Vec<u64>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum ReducibilityWitness {
    RationalRoot(String),
    Factor(IntPoly),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Irreducibility {
    Irreducible(IrreducibilityCertificate),
    Reducible(ReducibilityWitness),
    Inconclusive { primes_tested: Vec<u64> },
}

impl Irreducibility {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, Irreducibility::Irreducible(_))
    }
}

pub fn is_irreducible_over_q(f: &IntPoly) -> Result<Irreducibility> {
    is_irreducible_over_q_with_budget(f, DEFAULT_PRIME_BUDGET)
}

pub fn is_irreducible_over_q_with_budget(f: &IntPoly, budget: usize) -> Result<Irreducibility> {
    if f.is_zero() || f.degree() < 1 {
        return Err(Error::InvalidInput("irreducibility needs degree at least 1".into()));
    }
    let f = f.primitive_part();
    let n = f.degree();
    if n == 1 {
        return Ok(Irreducibility::Irreducible(
            IrreducibilityCertificate::IrreducibleModP { prime: 2 },
        ));
    }
    if f.coeff(0).is_zero() {
        return Ok(Irreducibility::Reducible(ReducibilityWitness::RationalRoot("0".into())));
    }
    if let Some(p) = eisenstein_prime(&f) {
        return Ok(Irreducibility::Irreducible(IrreducibilityCertificate::Eisenstein {
            prime: p,
        }));
    }
    let gcd = f.gcd(&f.derivative());
    if gcd.degree() > 0 {
        return Ok(Irreducibility::Reducible(ReducibilityWitness::Factor(gcd)));
    }
    let disc = discriminant(&f)?;
    let lc = f.leading();
    let good_primes: Vec<u64> = primes_from(2)
        .filter(|&p| !(&disc % p).is_zero() && !(&lc % p).is_zero())
        .take(budget)
        .collect();

    if let Some(w) = small_factor(&f, good_primes[0])? {
        return Ok(Irreducibility::Reducible(w));
    }

    // Subset sums of factor degrees that are achievable at every prime.
    let mut possible: BTreeSet<usize> = (1..=n).collect();
    let mut used = Vec::new();
    for &p in &good_primes {
        let shape = factor_shape_mod_p(&f, p)?;
        used.push(p);
        if shape.len() == 1 {
            return Ok(Irreducibility::Irreducible(
                IrreducibilityCertificate::IrreducibleModP { prime: p },
            ));
        }
        let mut sums = BTreeSet::from([0usize]);
        for &(d, m) in &shape {
            for _ in 0..m {
                let next: Vec<usize> = sums.iter().map(|s| s + d).collect();
                sums.extend(next);
            }
        }
        possible.retain(|d| sums.contains(d));
        if possible.len() == 1 {
            return Ok(Irreducibility::Irreducible(IrreducibilityCertificate::DegreeSets {
                primes: used,
            }));
        }
    }
    Ok(Irreducibility::Inconclusive { primes_tested: used })
}

fn eisenstein_prime(f: &IntPoly) -> Option<u64> {
    let g = f.coeffs()[..f.degree()].iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if g.is_zero() {
        return None;
    }
    primes_from(2)
        .take_while(|&p| BigInt::from(p) <= g && p < 1_000_000)
        .find(|&p| (&g % p).is_zero() && f.is_eisenstein(p))
}

/// Search for a factor of degree 1 or 2 by lifting the factorisation at `p`
/// beyond a coefficient bound and testing every small combination.
fn small_factor(f: &IntPoly, p: u64) -> Result<Option<ReducibilityWitness>> {
    let n = f.degree();
    let lc = f.leading();
    // g(x) = lc^(n-1) f(x / lc) is monic with integer coefficients.
    let g = IntPoly::new(
        (0..=n)
            .map(|i| {
                if i == n {
                    BigInt::from(1)
                } else {
                    f.coeff(i) * Pow::pow(&lc, (n - 1 - i) as u32)
                }
            })
            .collect(),
    );
    let norm: BigInt = g.coeffs().iter().map(|c| c.abs()).sum();
    let bound = norm * 8;
    let pb = BigInt::from(p);
    let mut k = 1u32;
    while Pow::pow(&pb, k) <= bound {
        k += 1;
    }
    let fac = factor_mod_p(&g, p)?;
    let seeds: Vec<ModPoly> = fac.factors.iter().map(|(h, _)| h.clone()).collect();
    let lifted = hensel_lift_factorization(&g, p, k, &seeds)?;
    let mut candidates: Vec<ModPoly> = lifted.iter().filter(|h| h.degree() <= 2).cloned().collect();
    let linear: Vec<&ModPoly> = lifted.iter().filter(|h| h.degree() == 1).collect();
    for i in 0..linear.len() {
        for j in i + 1..linear.len() {
            candidates.push(linear[i].mul(linear[j]));
        }
    }
    for h in candidates {
        if h.degree() * 2 > n {
            continue;
        }
        let h = h.to_int_symmetric();
        if !g.div_rem_monic(&h).1.is_zero() {
            continue;
        }
        // Undo the substitution: h(lc x) is a multiple of a factor of f.
        let back = h.scale_variable(&lc).primitive_part();
        if back.degree() == 1 {
            let root = BigRational::new(-back.coeff(0), back.coeff(1));
            return Ok(Some(ReducibilityWitness::RationalRoot(root.to_string())));
        }
        return Ok(Some(ReducibilityWitness::Factor(back)));
    }
    Ok(None)
}
