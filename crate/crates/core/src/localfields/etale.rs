//! Quintic étale algebras over `Q_p` and their masses.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use serde::{Deserialize, Serialize};

use super::splitting::SplittingType;
use super::wild::enumerate_wild_quintic_q5;
use crate::densities::m;
use crate::error::{Error, Result};
use crate::polycore::arith::{is_prime_u64, pow_mod};

const DEGREE: usize = 5;

/// A field extension of `Q_p` appearing as a factor of an étale algebra.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LocalField {
    pub e: usize,
    pub f: usize,
    pub disc_exponent: u32,
    pub aut_count: usize,
    /// Distinguishes fields with the same `(e, f)`: the Frobenius orbit
    /// representative for tame fields, the class index for wild ones.
    pub label: String,
    pub galois_wild: Option<bool>,
}

impl LocalField {
    pub fn degree(&self) -> usize {
        self.e * self.f
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EtaleClass {
    pub components: Vec<LocalField>,
    pub total_aut: u64,
    pub total_disc_exponent: u32,
}

impl EtaleClass {
    pub fn splitting_type(&self) -> SplittingType {
        SplittingType::new(self.components.iter().map(|c| (c.e, c.f)).collect())
    }

    /// `p^(-d) / #Aut`.
    pub fn mass(&self, p: u64) -> BigRational {
        let denom: BigInt = Pow::pow(&BigInt::from(p), self.total_disc_exponent) * BigInt::from(self.total_aut);
        BigRational::new(BigInt::one(), denom)
    }
}

impl fmt::Display for EtaleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|c| format!("[e={} f={} {}]", c.e, c.f, c.label))
            .collect();
        write!(
            f,
            "{} aut={} d={}",
            parts.join(" x "),
            self.total_aut,
            self.total_disc_exponent
        )
    }
}

/// Tamely ramified fields of type `(e, f)` with `p` not dividing `e`: the
/// extensions `K_f((p u)^(1/e))` of the unramified `K_f`, one for each
/// Frobenius orbit of `u` in `mu_(q-1) / mu_(q-1)^e`.
fn tame_fields(p: u64, e: usize, f: usize) -> Vec<LocalField> {
    debug_assert!(!(e as u64).is_multiple_of(p));
    let q = (p as u128).pow(f as u32);
    let g = (e as u128).gcd(&(q - 1)) as u64;
    let mut seen = vec![false; g as usize];
    let mut out = Vec::new();
    for s in 0..g {
        if seen[s as usize] {
            continue;
        }
        let mut t = s;
        loop {
            seen[t as usize] = true;
            t = (t * (p % g)) % g;
            if t == s {
                break;
            }
        }
        let stable = (0..f as u32)
            .filter(|&k| (s as u128 * (pow_mod(p, k as u64, g) as u128 + g as u128 - 1)).is_multiple_of(g as u128))
            .count();
        out.push(LocalField {
            e,
            f,
            disc_exponent: (f * (e - 1)) as u32,
            aut_count: g as usize * stable,
            label: format!("tame s={s}"),
            galois_wild: None,
        });
    }
    out
}

/// Every field factor of degree at most 5 whose type is admitted by the
/// predicate; fails for a wild type at 2 or 3.
fn fields(p: u64, wanted: &dyn Fn(usize, usize) -> bool) -> Result<Vec<LocalField>> {
    let mut out = Vec::new();
    for e in 1..=DEGREE {
        for f in 1..=DEGREE / e {
            if !wanted(e, f) {
                continue;
            }
            if !(e as u64).is_multiple_of(p) {
                out.extend(tame_fields(p, e, f));
            } else if p == 5 && e == 5 {
                for (i, c) in enumerate_wild_quintic_q5()?.into_iter().enumerate() {
                    out.push(LocalField {
                        e: 5,
                        f: 1,
                        disc_exponent: c.disc_exponent,
                        aut_count: c.aut_count,
                        label: format!("wild #{i} {}", c.representative),
                        galois_wild: Some(c.is_galois),
                    });
                }
            } else {
                return Err(Error::UnsupportedPrime(p));
            }
        }
    }
    Ok(out)
}

fn multisets(fields: &[LocalField], start: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if left == 0 {
        out.push(cur.clone());
        return;
    }
    for i in start..fields.len() {
        if fields[i].degree() <= left {
            cur.push(i);
            multisets(fields, i, left - fields[i].degree(), cur, out);
            cur.pop();
        }
    }
}

fn assemble(fields: &[LocalField], idx: &[usize]) -> EtaleClass {
    let components: Vec<LocalField> = idx.iter().map(|&i| fields[i].clone()).collect();
    let mut total_aut: u64 = components.iter().map(|c| c.aut_count as u64).product();
    let mut run = 1u64;
    for w in idx.windows(2) {
        if w[0] == w[1] {
            run += 1;
            total_aut *= run;
        } else {
            run = 1;
        }
    }
    let total_disc_exponent = components.iter().map(|c| c.disc_exponent).sum();
    EtaleClass {
        components,
        total_aut,
        total_disc_exponent,
    }
}

fn classes_with(p: u64, wanted: &dyn Fn(usize, usize) -> bool) -> Result<Vec<EtaleClass>> {
    if !is_prime_u64(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    let fs = fields(p, wanted)?;
    let mut idx = Vec::new();
    multisets(&fs, 0, DEGREE, &mut Vec::new(), &mut idx);
    Ok(idx.iter().map(|ix| assemble(&fs, ix)).collect())
}

/// All isomorphism classes of quintic étale algebras over `Q_p`.
pub fn etale_quintic_classes(p: u64) -> Result<Vec<EtaleClass>> {
    if p == 2 || p == 3 {
        return Err(Error::UnsupportedPrime(p));
    }
    classes_with(p, &|_, _| true)
}

/// A set of admitted splitting types at `p`, optionally restricted at 5 to
/// Galois (or non-Galois) totally ramified algebras.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalConditionSet {
    pub prime: u64,
    admitted: BTreeSet<SplittingType>,
    galois_at_5: Option<bool>,
}

impl LocalConditionSet {
    pub fn from_types(prime: u64, types: impl IntoIterator<Item = SplittingType>) -> Result<Self> {
        let admitted: BTreeSet<SplittingType> = types.into_iter().collect();
        if admitted.is_empty() {
            return Err(Error::InvalidInput(
                "a local condition must admit at least one type".into(),
            ));
        }
        if let Some(t) = admitted.iter().find(|t| t.degree() != DEGREE) {
            return Err(Error::InvalidInput(format!(
                "splitting type {t} is not of degree {DEGREE}"
            )));
        }
        Ok(LocalConditionSet {
            prime,
            admitted,
            galois_at_5: None,
        })
    }

    pub fn all(prime: u64) -> Self {
        Self::from_types(prime, SplittingType::all_of_degree(DEGREE)).unwrap()
    }

    pub fn inert(prime: u64) -> Self {
        Self::from_types(prime, [SplittingType::inert(DEGREE)]).unwrap()
    }

    pub fn totally_ramified(prime: u64) -> Self {
        Self::from_types(prime, [SplittingType::totally_ramified(DEGREE)]).unwrap()
    }

    pub fn not_totally_ramified(prime: u64) -> Self {
        let tr = SplittingType::totally_ramified(DEGREE);
        Self::from_types(
            prime,
            SplittingType::all_of_degree(DEGREE).into_iter().filter(|t| *t != tr),
        )
        .unwrap()
    }

    /// Totally ramified at 5 with Galois (`true`) or non-Galois completion.
    pub fn totally_ramified_with_galois(galois: bool) -> Self {
        let mut c = Self::totally_ramified(5);
        c.galois_at_5 = Some(galois);
        c
    }

    pub fn totally_ramified_galois() -> Self {
        Self::totally_ramified_with_galois(true)
    }

    pub fn admitted(&self) -> impl Iterator<Item = &SplittingType> {
        self.admitted.iter()
    }

    pub fn admits_type(&self, t: &SplittingType) -> bool {
        self.admitted.contains(t)
    }

    pub fn admits(&self, class: &EtaleClass) -> bool {
        if !self.admits_type(&class.splitting_type()) {
            return false;
        }
        match self.galois_at_5 {
            None => true,
            Some(g) => class.components.len() == 1 && class.components[0].galois_wild == Some(g),
        }
    }

    fn admits_pair(&self, e: usize, f: usize) -> bool {
        self.admitted.iter().any(|t| t.parts().contains(&(e, f)))
    }
}

impl fmt::Display for LocalConditionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let types: Vec<String> = self.admitted.iter().map(|t| t.to_string()).collect();
        write!(f, "p={} types={}", self.prime, types.join(" "))?;
        if let Some(g) = self.galois_at_5 {
            write!(f, " galois={g}")?;
        }
        Ok(())
    }
}

/// The étale classes admitted by `condition`.
pub fn admitted_classes(condition: &LocalConditionSet) -> Result<Vec<EtaleClass>> {
    let p = condition.prime;
    if condition.galois_at_5.is_some() && p != 5 {
        return Err(Error::InvalidInput("the Galois refinement applies only at 5".into()));
    }
    let classes = classes_with(p, &|e, f| condition.admits_pair(e, f))?;
    Ok(classes.into_iter().filter(|c| condition.admits(c)).collect())
}

/// `sum p^(-d(F)) / #Aut(F)` over the admitted classes.
pub fn mass_subset(p: u64, condition: &LocalConditionSet) -> Result<BigRational> {
    if condition.prime != p {
        return Err(Error::InvalidInput(format!(
            "condition is for p = {}, not {p}",
            condition.prime
        )));
    }
    Ok(admitted_classes(condition)?
        .iter()
        .map(|c| c.mass(p))
        .fold(BigRational::zero(), |a, b| a + b))
}

/// `C_p = mass_subset / m(p)`. Where the full enumeration is available the
/// closed form of `m(p)` is checked against it.
pub fn local_density_factor(p: u64, condition: &LocalConditionSet) -> Result<BigRational> {
    let mass = mass_subset(p, condition)?;
    let mp = m(p);
    if p >= 5 {
        let total = mass_subset(p, &LocalConditionSet::all(p))?;
        if total != mp {
            return Err(Error::Consistency(format!(
                "enumerated mass {total} differs from m({p}) = {mp}"
            )));
        }
    }
    Ok(mass / mp)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn p7_examples() {
        let classes = etale_quintic_classes(7).unwrap();
        let inert = classes
            .iter()
            .find(|c| c.splitting_type() == SplittingType::inert(5))
            .unwrap();
        assert_eq!((inert.total_aut, inert.total_disc_exponent), (5, 0));
        let split = SplittingType::new(vec![(1, 1); 5]);
        let split = classes.iter().find(|c| c.splitting_type() == split).unwrap();
        assert_eq!(split.total_aut, 120);
        assert_eq!(mass_subset(7, &LocalConditionSet::all(7)).unwrap(), q(2857, 2401));
    }

    #[test]
    fn p11_totally_ramified_fields() {
        let tr: Vec<_> = admitted_classes(&LocalConditionSet::totally_ramified(11)).unwrap();
        assert_eq!(tr.len(), 5);
        assert!(tr.iter().all(|c| c.total_aut == 5 && c.total_disc_exponent == 4));
    }

    #[test]
    fn tame_counts() {
        // Over Q_7 there is one totally ramified quintic (gcd(5, 6) = 1)
        // with trivial automorphism group.
        let t = tame_fields(7, 5, 1);
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].aut_count, 1);
        // Two ramified quadratic extensions of Q_7, each Galois.
        let t = tame_fields(7, 2, 1);
        assert_eq!(t.iter().map(|c| c.aut_count).collect::<Vec<_>>(), vec![2, 2]);
    }

    #[test]
    fn inert_at_two() {
        let c = local_density_factor(2, &LocalConditionSet::inert(2)).unwrap();
        assert_eq!(c, q(16, 185));
        assert_eq!(m(2), q(37, 16));
        assert_eq!(
            mass_subset(2, &LocalConditionSet::all(2)),
            Err(Error::UnsupportedPrime(2))
        );
        assert_eq!(etale_quintic_classes(3), Err(Error::UnsupportedPrime(3)));
    }

    #[test]
    fn five_adic_masses() {
        assert_eq!(mass_subset(5, &LocalConditionSet::all(5)).unwrap(), q(811, 625));
        let galois = LocalConditionSet::totally_ramified_galois();
        assert_eq!(mass_subset(5, &galois).unwrap(), q(1, 390625));
        assert_eq!(local_density_factor(5, &galois).unwrap(), q(1, 506875));
        let non_galois = LocalConditionSet::totally_ramified_with_galois(false);
        let tr = LocalConditionSet::totally_ramified(5);
        assert_eq!(
            mass_subset(5, &galois).unwrap() + mass_subset(5, &non_galois).unwrap(),
            mass_subset(5, &tr).unwrap()
        );
    }

    #[test]
    fn not_totally_ramified_mass() {
        for p in [7u64, 11, 13, 19, 29, 31] {
            let pr = |k: u32| q(1, (p as i64).pow(k));
            let expected = q(1, 1) + pr(1) + q(2, 1) * pr(2) + q(2, 1) * pr(3);
            assert_eq!(
                mass_subset(p, &LocalConditionSet::not_totally_ramified(p)).unwrap(),
                expected
            );
        }
    }

    #[test]
    fn totally_ramified_factor_at_one_mod_five() {
        for p in [11u64, 31, 41] {
            let c = local_density_factor(p, &LocalConditionSet::totally_ramified(p)).unwrap();
            let p4: BigInt = Pow::pow(BigInt::from(p), 4u32);
            assert_eq!(c, BigRational::new(BigInt::one(), p4.clone()) / m(p));
        }
    }

    #[test]
    fn empty_condition_rejected() {
        assert!(LocalConditionSet::from_types(7, []).is_err());
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(24))]
        /// The mass identity holds for every tame prime.
        #[test]
        fn tame_mass_identity(idx in 0usize..40) {
            let p = crate::polycore::arith::primes_from(7).nth(idx).unwrap();
            proptest::prop_assert_eq!(mass_subset(p, &LocalConditionSet::all(p)).unwrap(), m(p));
        }
    }
}
