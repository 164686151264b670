use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::cyclic::{classify_cyclic, CyclicityVerdict, NonCyclicWitness, DEFAULT_SAMPLE_BOUND};
use super::factor::prime_divisors_for_ramification;
use crate::error::{Error, Result};
use crate::localfields::{eisenstein_generator_at_5, is_inert, is_totally_ramified, star_condition};
use crate::polycore::{
    char_poly_of_element, discriminant, is_irreducible_over_q, sturm_real_root_count, IntPoly, Irreducibility,
};

/// Primes counted by the genus formula.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamificationProduct {
    /// Totally ramified primes `p = 1 (mod 5)`, plus 5 when it is totally
    /// ramified with the star condition, in increasing order.
    pub primes: Vec<u64>,
    /// The star condition at 5 when 5 is totally ramified.
    pub star_at_5: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusCertificate {
    pub poly: IntPoly,
    pub disc: BigInt,
    /// Number of pairs of complex embeddings.
    pub signature_i: u8,
    pub ramification_product: Vec<u64>,
    pub t: usize,
    pub star_at_5: Option<bool>,
    pub cyclic: bool,
    pub cyclicity: CyclicityVerdict,
    pub genus_number: u64,
}

impl GenusCertificate {
    /// Rechecks the relations between the fields.
    pub fn check(&self) -> Result<()> {
        let fail = |m: &str| Err(Error::Consistency(format!("certificate for {}: {m}", self.poly)));
        if self.t != self.ramification_product.len() {
            return fail("t differs from the number of counted primes");
        }
        if self
            .ramification_product
            .iter()
            .any(|&p| !(&self.disc % BigInt::from(p)).is_zero())
        {
            return fail("a counted prime does not divide the discriminant");
        }
        if self.cyclic != self.cyclicity.is_cyclic() || (self.cyclic && self.t == 0) {
            return fail("cyclic flag inconsistent");
        }
        let exp = if self.cyclic { self.t - 1 } else { self.t };
        if Some(self.genus_number) != 5u64.checked_pow(exp as u32) {
            return fail("genus number is not 5^t or 5^(t-1)");
        }
        Ok(())
    }
}

/// Generators tried, in order, when a splitting computation is irregular:
/// `theta + c` for `c = 1..5`, then `theta^2 + theta + c` for `c = 0..4`.
fn alternative_generators(f: &IntPoly) -> Vec<IntPoly> {
    let linear = (1..=5).map(|c| IntPoly::from_i64s(&[c, 1]));
    let quadratic = (0..5).map(|c| IntPoly::from_i64s(&[c, 1, 1]));
    linear
        .chain(quadratic)
        .filter_map(|g| char_poly_of_element(f, &g).ok())
        .filter(|h| discriminant(h).map(|d| !d.is_zero()).unwrap_or(false))
        .collect()
}

/// Runs `op` on `f`, falling back to other generators of the same field
/// while the local computation reports an irregular case.
fn with_generators<T>(f: &IntPoly, op: impl Fn(&IntPoly) -> Result<T>) -> Result<T> {
    let first = op(f);
    let Err(Error::IrregularSplitting { .. }) = first else {
        return first;
    };
    let mut last = first;
    for g in alternative_generators(f) {
        match op(&g) {
            Err(e @ Error::IrregularSplitting { .. }) => last = Err(e),
            other => return other,
        }
    }
    last
}

fn require_quintic(f: &IntPoly) -> Result<()> {
    if f.degree() != 5 || !f.is_monic() {
        return Err(Error::Precondition(format!("{f} is not a monic quintic")));
    }
    Ok(())
}

/// The primes `p = 0, 1 (mod 5)` counted by the genus formula.
pub fn ramification_product(f: &IntPoly) -> Result<RamificationProduct> {
    require_quintic(f)?;
    let disc = discriminant(f)?;
    if disc.is_zero() {
        return Err(Error::NotSquarefree {
            witness: "zero discriminant".into(),
        });
    }
    let mut primes = Vec::new();
    let mut star_at_5 = None;
    for (p, e) in prime_divisors_for_ramification(&disc)? {
        let r = (&p % 5u32).to_u32().unwrap();
        // A tamely totally ramified prime has v_p(disc K) = 4, and v_p of
        // disc(f) exceeds that by twice the index valuation.
        if r > 1 || (r == 1 && e < 4) {
            continue;
        }
        let p = p
            .to_u64()
            .ok_or_else(|| Error::Precondition(format!("prime {p} exceeds 64 bits")))?;
        if !with_generators(f, |g| is_totally_ramified(g, p))? {
            continue;
        }
        if p == 5 {
            let g = with_generators(f, eisenstein_generator_at_5)?;
            let star = star_condition(&g)?;
            star_at_5 = Some(star);
            if !star {
                continue;
            }
        }
        primes.push(p);
    }
    primes.sort_unstable();
    Ok(RamificationProduct { primes, star_at_5 })
}

fn require_irreducible(f: &IntPoly) -> Result<()> {
    match is_irreducible_over_q(f)? {
        Irreducibility::Irreducible(_) => Ok(()),
        Irreducibility::Reducible(w) => Err(Error::Precondition(format!("{f} is reducible: {w:?}"))),
        Irreducibility::Inconclusive { .. } => {
            Err(Error::Precondition(format!("irreducibility of {f} is inconclusive")))
        }
    }
}

pub fn genus_number(f: &IntPoly) -> Result<GenusCertificate> {
    genus_number_with_bound(f, DEFAULT_SAMPLE_BOUND)
}

/// The genus number `5^t`, or `5^(t-1)` for cyclic fields, with its
/// supporting data.
pub fn genus_number_with_bound(f: &IntPoly, sample_bound: usize) -> Result<GenusCertificate> {
    require_quintic(f)?;
    require_irreducible(f)?;
    let disc = discriminant(f)?;
    let real = sturm_real_root_count(f)?;
    let ram = ramification_product(f)?;
    let t = ram.primes.len();
    let mut cyclicity = classify_cyclic(f, sample_bound)?;
    if cyclicity.is_cyclic() && t == 0 {
        cyclicity = CyclicityVerdict::NonCyclic(NonCyclicWitness::NoCountedPrime);
    }
    let cyclic = cyclicity.is_cyclic();
    let exp = if cyclic { t - 1 } else { t };
    let genus = 5u64
        .checked_pow(exp as u32)
        .ok_or_else(|| Error::InvalidInput(format!("genus number 5^{exp} overflows")))?;
    let cert = GenusCertificate {
        poly: f.clone(),
        disc,
        signature_i: ((5 - real) / 2) as u8,
        ramification_product: ram.primes,
        t,
        star_at_5: ram.star_at_5,
        cyclic,
        cyclicity,
        genus_number: genus,
    };
    cert.check()?;
    Ok(cert)
}

/// Inert at 2 and 5, totally ramified at 7, and no totally ramified prime
/// `p = 1 (mod 5)`. Such a field has genus number one and is not
/// norm-Euclidean.
pub fn norm_euclidean_screen(f: &IntPoly) -> Result<bool> {
    require_quintic(f)?;
    if !with_generators(f, |g| is_inert(g, 2))? || !with_generators(f, |g| is_inert(g, 5))? {
        return Ok(false);
    }
    if !with_generators(f, |g| is_totally_ramified(g, 7))? {
        return Ok(false);
    }
    let ram = ramification_product(f)?;
    Ok(ram.primes.iter().all(|p| p % 5 != 1))
}
