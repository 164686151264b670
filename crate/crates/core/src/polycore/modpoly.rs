use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::finite_field::{self as ff, FPoly, PrimeField};
use super::IntPoly;
use crate::error::{Error, Result};

/// Seed used when callers do not supply one.
pub const DEFAULT_SEED: u64 = 0x5eed_0005;

static SEED: AtomicU64 = AtomicU64::new(DEFAULT_SEED);

/// Seed for the randomized internals (equal-degree splitting, Pollard
/// rho). Results never depend on it, only running times.
pub fn current_seed() -> u64 {
    SEED.load(Ordering::Relaxed)
}

pub fn set_seed(seed: u64) {
    SEED.store(seed, Ordering::Relaxed);
}

/// Polynomial with coefficients reduced into `[0, m)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModPoly {
    coeffs: Vec<BigInt>,
    modulus: BigInt,
}

impl ModPoly {
    pub fn new(coeffs: Vec<BigInt>, modulus: BigInt) -> Self {
        assert!(modulus >= BigInt::from(2), "modulus must be at least 2");
        let mut c: Vec<BigInt> = coeffs.into_iter().map(|a| a.mod_floor(&modulus)).collect();
        while c.last().is_some_and(|a| a.is_zero()) {
            c.pop();
        }
        ModPoly { coeffs: c, modulus }
    }

    pub fn from_int(f: &IntPoly, modulus: &BigInt) -> Self {
        Self::new(f.coeffs().to_vec(), modulus.clone())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lift to integer coefficients in `[0, m)`.
    pub fn to_int(&self) -> IntPoly {
        IntPoly::new(self.coeffs.clone())
    }

    /// Lift to integer coefficients in `(-m/2, m/2]`.
    pub fn to_int_symmetric(&self) -> IntPoly {
        let half = &self.modulus / 2;
        IntPoly::new(
            self.coeffs
                .iter()
                .map(|c| if c > &half { c - &self.modulus } else { c.clone() })
                .collect(),
        )
    }

    pub(crate) fn to_fp(&self) -> FPoly<PrimeField> {
        self.coeffs
            .iter()
            .map(|c| c.to_u64().expect("prime modulus fits in u64"))
            .collect()
    }

    pub(crate) fn from_fp(c: &[u64], p: u64) -> Self {
        Self::new(c.iter().map(|&a| BigInt::from(a)).collect(), BigInt::from(p))
    }

    pub fn mul(&self, other: &ModPoly) -> ModPoly {
        assert_eq!(self.modulus, other.modulus);
        ModPoly::new((&self.to_int() * &other.to_int()).into_coeffs(), self.modulus.clone())
    }
}

impl fmt::Display for ModPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.to_int(), self.modulus)
    }
}

impl fmt::Debug for ModPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModPoly({self})")
    }
}

/// Factorisation of a polynomial into monic irreducibles over `F_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationModP {
    pub prime: u64,
    /// The leading coefficient of the input, modulo `p`.
    pub unit: u64,
    pub factors: Vec<(ModPoly, usize)>,
}

impl FactorizationModP {
    /// Sorted list of `(degree, multiplicity)` pairs.
    pub fn shape(&self) -> Vec<(usize, usize)> {
        let mut s: Vec<_> = self.factors.iter().map(|(g, m)| (g.degree(), *m)).collect();
        s.sort_unstable();
        s
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|(_, m)| *m == 1)
    }

    /// Product of `factor^multiplicity` (monic).
    pub fn expand(&self) -> ModPoly {
        let p = BigInt::from(self.prime);
        let mut acc = ModPoly::new(vec![BigInt::one()], p);
        for (g, m) in &self.factors {
            for _ in 0..*m {
                acc = acc.mul(g);
            }
        }
        acc
    }
}

pub(crate) fn reduce_to_fp(f: &IntPoly, p: u64) -> FPoly<PrimeField> {
    ModPoly::from_int(f, &BigInt::from(p)).to_fp()
}

/// Complete factorisation of `f` modulo the prime `p` (square-free
/// decomposition, distinct-degree, then equal-degree splitting seeded by
/// `seed`).
pub fn factor_mod_p_seeded(f: &IntPoly, p: u64, seed: u64) -> Result<FactorizationModP> {
    if p < 2 || !super::arith::is_prime_u64(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    let field = PrimeField::new(p);
    let fp = reduce_to_fp(f, p);
    if fp.is_empty() {
        return Err(Error::InvalidInput(format!("polynomial vanishes modulo {p}")));
    }
    let unit = *fp.last().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let factors = ff::factor(&field, &fp, &mut rng)
        .into_iter()
        .map(|(g, m)| (ModPoly::from_fp(&g, p), m))
        .collect();
    Ok(FactorizationModP {
        prime: p,
        unit,
        factors,
    })
}

pub fn factor_mod_p(f: &IntPoly, p: u64) -> Result<FactorizationModP> {
    factor_mod_p_seeded(f, p, current_seed())
}

/// Factor degrees with multiplicity modulo `p`, skipping equal-degree
/// splitting. Used for cheap shape scans.
pub fn factor_shape_mod_p(f: &IntPoly, p: u64) -> Result<Vec<(usize, usize)>> {
    let field = PrimeField::new(p);
    let fp = reduce_to_fp(f, p);
    if fp.is_empty() {
        return Err(Error::InvalidInput(format!("polynomial vanishes modulo {p}")));
    }
    Ok(ff::factor_degrees(&field, &fp))
}
