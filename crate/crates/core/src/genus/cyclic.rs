use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polycore::arith::{exact_root, primes_from};
use crate::polycore::{discriminant, factor_shape_mod_p, IntPoly};

pub const DEFAULT_SAMPLE_BOUND: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum NonCyclicWitness {
    /// Unramified prime whose factorization degrees are not all equal.
    MixedShape { prime: u64, degrees: Vec<usize> },
    /// The discriminant is not a square, so the Galois group is not in `A_5`.
    NonSquareDiscriminant,
    /// No prime is counted by the genus formula, which a cyclic quintic
    /// always has (its conductor is divisible by 25 or a prime `1 mod 5`).
    NoCountedPrime,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum CyclicityVerdict {
    NonCyclic(NonCyclicWitness),
    /// Every one of the first `sample_bound` unramified primes split as
    /// `1+1+1+1+1` or stayed inert. This is evidence, not proof.
    Cyclic {
        sample_bound: usize,
        disc_fourth_power: bool,
    },
}

impl CyclicityVerdict {
    pub fn is_cyclic(&self) -> bool {
        matches!(self, CyclicityVerdict::Cyclic { .. })
    }
}

/// Classifies the monic irreducible quintic `f` as cyclic or not by its
/// Frobenius cycle types.
pub fn classify_cyclic(f: &IntPoly, sample_bound: usize) -> Result<CyclicityVerdict> {
    if f.degree() != 5 || !f.is_monic() {
        return Err(Error::Precondition("expected a monic quintic".into()));
    }
    let disc = discriminant(f)?;
    if disc.is_zero() {
        return Err(Error::NotSquarefree {
            witness: "zero discriminant".into(),
        });
    }
    let mut sampled = 0;
    for p in primes_from(2) {
        if sampled == sample_bound {
            break;
        }
        if (&disc % BigInt::from(p)).is_zero() {
            continue;
        }
        let shape = factor_shape_mod_p(f, p)?;
        let mut degrees: Vec<usize> = shape.iter().flat_map(|&(d, m)| std::iter::repeat_n(d, m)).collect();
        degrees.sort_unstable();
        if degrees.iter().any(|&d| d != degrees[0]) {
            return Ok(CyclicityVerdict::NonCyclic(NonCyclicWitness::MixedShape {
                prime: p,
                degrees,
            }));
        }
        sampled += 1;
    }
    let abs = disc.abs().to_biguint().unwrap();
    if disc.is_negative() || exact_root(&abs, 2).is_none() {
        return Ok(CyclicityVerdict::NonCyclic(NonCyclicWitness::NonSquareDiscriminant));
    }
    Ok(CyclicityVerdict::Cyclic {
        sample_bound,
        disc_fourth_power: exact_root(&abs, 4).is_some(),
    })
}
