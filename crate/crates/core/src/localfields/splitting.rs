use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Pow;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::newton::lower_hull;
use crate::error::{Error, Result};
use crate::polycore::arith::valuation;
use crate::polycore::finite_field::{self as ff, ExtField, FPoly, FiniteField, PrimeField};
use crate::polycore::modpoly::{current_seed, reduce_to_fp, FactorizationModP};
use crate::polycore::{discriminant, factor_mod_p, IntPoly};

/// Refinement rounds allowed before a splitting computation gives up.
pub const MAX_ORE_DEPTH: usize = 6;

/// Multiset of `(e, f)` pairs, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SplittingType {
    parts: Vec<(usize, usize)>,
}

impl SplittingType {
    pub fn new(mut parts: Vec<(usize, usize)>) -> Self {
        assert!(parts.iter().all(|&(e, f)| e >= 1 && f >= 1));
        parts.sort_unstable();
        SplittingType { parts }
    }

    pub fn parts(&self) -> &[(usize, usize)] {
        &self.parts
    }

    pub fn degree(&self) -> usize {
        self.parts.iter().map(|(e, f)| e * f).sum()
    }

    pub fn totally_ramified(n: usize) -> Self {
        Self::new(vec![(n, 1)])
    }

    pub fn inert(n: usize) -> Self {
        Self::new(vec![(1, n)])
    }

    pub fn is_totally_ramified(&self) -> bool {
        self.parts.len() == 1 && self.parts[0].1 == 1 && self.parts[0].0 > 1
    }

    pub fn is_inert(&self) -> bool {
        self.parts.len() == 1 && self.parts[0].0 == 1
    }

    pub fn is_unramified(&self) -> bool {
        self.parts.iter().all(|&(e, _)| e == 1)
    }

    /// True if some part has ramification index divisible by `p`.
    pub fn is_wild_at(&self, p: u64) -> bool {
        self.parts.iter().any(|&(e, _)| (e as u64).is_multiple_of(p))
    }

    /// Every splitting type of total degree `n`.
    pub fn all_of_degree(n: usize) -> Vec<SplittingType> {
        let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|e| (1..=n / e).map(move |f| (e, f))).collect();
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(
            pairs: &[(usize, usize)],
            start: usize,
            left: usize,
            cur: &mut Vec<(usize, usize)>,
            out: &mut Vec<SplittingType>,
        ) {
            if left == 0 {
                out.push(SplittingType::new(cur.clone()));
                return;
            }
            for i in start..pairs.len() {
                let (e, f) = pairs[i];
                if e * f <= left {
                    cur.push((e, f));
                    rec(pairs, i, left - e * f, cur, out);
                    cur.pop();
                }
            }
        }
        rec(&pairs, 0, n, &mut cur, &mut out);
        out.sort();
        out
    }
}

impl fmt::Display for SplittingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|(e, g)| format!("({e},{g})")).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

fn require_monic(f: &IntPoly) -> Result<()> {
    if !f.is_monic() || f.degree() < 1 {
        return Err(Error::InvalidInput(
            "expected a monic polynomial of positive degree".into(),
        ));
    }
    Ok(())
}

fn dedekind_from_factorization(f: &IntPoly, p: u64, fac: &FactorizationModP) -> bool {
    if fac.is_squarefree() {
        return true;
    }
    let field = PrimeField::new(p);
    let mut g = IntPoly::one();
    let mut h = IntPoly::one();
    for (phi, e) in &fac.factors {
        let lift = phi.to_int();
        g = &g * &lift;
        for _ in 1..*e {
            h = &h * &lift;
        }
    }
    let diff = &(&g * &h) - f;
    let pb = BigInt::from(p);
    let big_f = IntPoly::new(diff.coeffs().iter().map(|c| c.div_floor(&pb)).collect());
    let d = ff::gcd(&field, &reduce_to_fp(&big_f, p), &reduce_to_fp(&g, p));
    let d = ff::gcd(&field, &d, &reduce_to_fp(&h, p));
    ff::degree::<PrimeField>(&d) == Some(0)
}

/// Dedekind's criterion: true iff `p` does not divide the index of
/// `Z[x]/(f)` in the maximal order.
pub fn dedekind_is_maximal_at(f: &IntPoly, p: u64) -> Result<bool> {
    require_monic(f)?;
    let fac = factor_mod_p(f, p)?;
    Ok(dedekind_from_factorization(f, p, &fac))
}

fn phi_expansion(f: &IntPoly, phi: &IntPoly) -> Vec<IntPoly> {
    let mut out = Vec::new();
    let mut cur = f.clone();
    while !cur.is_zero() {
        let (q, r) = cur.div_rem_monic(phi);
        out.push(r);
        cur = q;
    }
    out
}

enum ResidualFactor {
    Simple { degree: usize },
    RepeatedLinear { root: u64 },
    RepeatedOther,
}

fn classify_residual<F: FiniteField>(
    field: &F,
    r: &FPoly<F>,
    linear_root: impl Fn(&F::Elem) -> u64,
) -> Vec<ResidualFactor> {
    let mut rng = ChaCha8Rng::seed_from_u64(current_seed());
    ff::factor(field, r, &mut rng)
        .into_iter()
        .map(|(g, m)| {
            let d = g.len() - 1;
            if m == 1 {
                ResidualFactor::Simple { degree: d }
            } else if d == 1 {
                ResidualFactor::RepeatedLinear {
                    root: linear_root(&field.neg(&g[0])),
                }
            } else {
                ResidualFactor::RepeatedOther
            }
        })
        .collect()
}

/// Order-one Montes analysis of the cluster of roots attached to `phi`,
/// restricted to Newton polygon sides of root valuation above `lb`.
fn ore_parts(f: &IntPoly, phi: &IntPoly, p: u64, lb: i64, depth: usize) -> Result<Vec<(usize, usize)>> {
    let m = phi.degree();
    let a = phi_expansion(f, phi);
    if a.first().is_none_or(|a0| a0.is_zero()) {
        return Err(Error::Consistency("reducible input in splitting analysis".into()));
    }
    let pts: Vec<(usize, i64)> = a
        .iter()
        .enumerate()
        .filter_map(|(j, aj)| aj.valuation(p).map(|v| (j, v as i64)))
        .collect();
    let hull = lower_hull(&pts);
    let pb = BigInt::from(p);
    let phibar = reduce_to_fp(phi, p);
    let ext = (m > 1).then(|| ExtField::new(p, phibar.clone()));
    let prime = PrimeField::new(p);
    let mut parts = Vec::new();

    for w in hull.windows(2) {
        let ((s, vs), (t, vt)) = (w[0], w[1]);
        let len = (t - s) as i64;
        let num = vs - vt;
        if num <= lb * len {
            continue;
        }
        let g = num.gcd(&len);
        let (h, e) = (num / g, (len / g) as usize);
        let d = g as usize;
        let coeff = |k: usize| -> Option<Vec<u64>> {
            let j = s + k * e;
            let expected = vs - k as i64 * h;
            let aj = &a[j];
            if aj.valuation(p) != Some(expected as u32) {
                return None;
            }
            let scale: BigInt = Pow::pow(&pb, expected as u32);
            let unit = IntPoly::new(aj.coeffs().iter().map(|c| c / &scale).collect());
            Some(reduce_to_fp(&unit, p))
        };
        let factors = match &ext {
            None => {
                let r: FPoly<PrimeField> = (0..=d)
                    .map(|k| coeff(k).and_then(|c| c.first().copied()).unwrap_or(0))
                    .collect();
                classify_residual(&prime, &r, |x| *x)
            }
            Some(fq) => {
                let r: FPoly<ExtField> = (0..=d)
                    .map(|k| coeff(k).map(|c| fq.reduce(&c)).unwrap_or_else(|| fq.zero()))
                    .collect();
                classify_residual(fq, &r, |_| 0)
            }
        };
        for rf in factors {
            match rf {
                ResidualFactor::Simple { degree } => parts.push((e, m * degree)),
                ResidualFactor::RepeatedLinear { root } if m == 1 && e == 1 => {
                    if depth + 1 > MAX_ORE_DEPTH {
                        return Err(Error::IrregularSplitting {
                            prime: p,
                            depth: depth + 1,
                        });
                    }
                    let shift = -phi.coeff(0) + BigInt::from(root) * Pow::pow(&pb, h as u32);
                    let refined = IntPoly::linear_root(&shift);
                    parts.extend(ore_parts(f, &refined, p, h, depth + 1)?);
                }
                _ => return Err(Error::IrregularSplitting { prime: p, depth }),
            }
        }
    }
    Ok(parts)
}

fn splitting_from_factorization(f: &IntPoly, p: u64, fac: &FactorizationModP) -> Result<SplittingType> {
    let parts: Vec<(usize, usize)> = if fac.is_squarefree() {
        fac.factors.iter().map(|(g, _)| (1, g.degree())).collect()
    } else if dedekind_from_factorization(f, p, fac) {
        fac.factors.iter().map(|(g, e)| (*e, g.degree())).collect()
    } else {
        let mut parts = Vec::new();
        for (g, e) in &fac.factors {
            if *e == 1 {
                parts.push((1, g.degree()));
            } else {
                parts.extend(ore_parts(f, &g.to_int(), p, 0, 0)?);
            }
        }
        parts
    };
    let st = SplittingType::new(parts);
    if st.degree() != f.degree() {
        return Err(Error::IrregularSplitting { prime: p, depth: 0 });
    }
    Ok(st)
}

/// Splitting type of `p` in `Q[x]/(f)` for monic irreducible `f`.
pub fn splitting_type(f: &IntPoly, p: u64) -> Result<SplittingType> {
    require_monic(f)?;
    let fac = factor_mod_p(f, p)?;
    splitting_from_factorization(f, p, &fac)
}

/// True iff `p` is totally ramified. Away from 5 a tame ramification check
/// on the discriminant is applied whenever `Z[x]/(f)` is `p`-maximal.
pub fn is_totally_ramified(f: &IntPoly, p: u64) -> Result<bool> {
    require_monic(f)?;
    let n = f.degree();
    let fac = factor_mod_p(f, p)?;
    let st = splitting_from_factorization(f, p, &fac)?;
    let tr = st == SplittingType::totally_ramified(n);
    if !(n as u64).is_multiple_of(p) && dedekind_from_factorization(f, p, &fac) {
        let v = valuation(&discriminant(f)?, p).unwrap_or(u32::MAX) as usize;
        // Tame total ramification contributes exactly n - 1; the converse only
        // holds when every ramification index is prime to p.
        let tame_everywhere = p as usize > n;
        let consistent = if tame_everywhere {
            (v == n - 1) == tr
        } else {
            !tr || v == n - 1
        };
        if !consistent {
            return Err(Error::Consistency(format!(
                "splitting type {st} at {p} disagrees with discriminant valuation {v}"
            )));
        }
    }
    Ok(tr)
}

pub fn is_inert(f: &IntPoly, p: u64) -> Result<bool> {
    Ok(splitting_type(f, p)?.is_inert())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};

    fn p(s: &str) -> IntPoly {
        IntPoly::parse(s).unwrap()
    }

    fn st(parts: &[(usize, usize)]) -> SplittingType {
        SplittingType::new(parts.to_vec())
    }

    #[test]
    fn dedekind_examples() {
        assert!(dedekind_is_maximal_at(&p("x^5 - x - 1"), 2).unwrap());
        assert!(dedekind_is_maximal_at(&p("x^5 - 11"), 5).unwrap());
        assert!(dedekind_is_maximal_at(&p("x^5 - 11"), 3).unwrap());
        // 7 = 2^5 mod 25, so x^5 - 7 is not 5-maximal.
        assert!(!dedekind_is_maximal_at(&p("x^5 - 7"), 5).unwrap());
        assert!(dedekind_is_maximal_at(&p("x^2 - 5"), 5).unwrap());
        assert!(!dedekind_is_maximal_at(&p("x^2 + 3"), 2).unwrap());
    }

    #[test]
    fn dedekind_agrees_with_shifted_eisenstein() {
        // Shift x -> x + 1 of x^5 - 11 is Eisenstein at 5.
        let shifted = p("x^5 - 11").shift(&BigInt::one());
        assert_eq!(shifted, p("x^5 + 5x^4 + 10x^3 + 10x^2 + 5x - 10"));
        assert!(shifted.is_eisenstein(5));
    }

    #[test]
    fn splitting_examples() {
        assert_eq!(splitting_type(&p("x^5 - x - 1"), 2).unwrap(), st(&[(1, 2), (1, 3)]));
        assert_eq!(splitting_type(&p("x^5 - 11"), 11).unwrap(), st(&[(5, 1)]));
        assert_eq!(splitting_type(&p("x^5 - 11"), 5).unwrap(), st(&[(5, 1)]));
        assert_eq!(splitting_type(&p("x^5 - 11"), 3).unwrap(), st(&[(1, 1), (1, 4)]));
    }

    #[test]
    fn non_maximal_orders_resolved() {
        // 7 is a fifth power in Z_5 (7 = 2^5 mod 25 and 1 + 25Z_5 consists
        // of fifth powers), so Q_5 ⊗ K = Q_5 × Q_5(zeta_5).
        assert_eq!(splitting_type(&p("x^5 - 7"), 5).unwrap(), st(&[(1, 1), (4, 1)]));
        // Z[sqrt(-3)] is not 2-maximal; 2 is inert in Q(sqrt(-3)).
        assert_eq!(splitting_type(&p("x^2 + 3"), 2).unwrap(), st(&[(1, 2)]));
        // Eisenstein, so 5 ramifies.
        assert_eq!(splitting_type(&p("x^2 - 5"), 5).unwrap(), st(&[(2, 1)]));
        // x^2 - 17 at 2: 17 = 1 mod 8 so 2 splits, though Z[sqrt 17] is not
        // 2-maximal.
        assert_eq!(splitting_type(&p("x^2 - 17"), 2).unwrap(), st(&[(1, 1), (1, 1)]));
        // x^2 - 5 at 2: 5 = 5 mod 8 so 2 is inert.
        assert_eq!(splitting_type(&p("x^2 - 5"), 2).unwrap(), st(&[(1, 2)]));
        // x^3 - 10 at 3: 10 = 1 mod 9 and the equation order is not
        // 3-maximal; 3 = P^2 Q in Q(10^(1/3)).
        assert_eq!(splitting_type(&p("x^3 - 10"), 3).unwrap(), st(&[(1, 1), (2, 1)]));
    }

    #[test]
    fn totally_ramified_examples() {
        assert!(is_totally_ramified(&p("x^5 - 11"), 11).unwrap());
        assert!(!is_totally_ramified(&p("x^5 - x - 1"), 151).unwrap());
        assert_eq!(valuation(&BigInt::from(2869), 151), Some(1));
        assert!(!is_totally_ramified(&p("x^5 - 11"), 3).unwrap());
        assert!(is_totally_ramified(&p("x^5 - 11"), 5).unwrap());
    }

    #[test]
    fn inert_examples() {
        assert!(is_inert(&p("x^5 + x^2 + 1"), 2).unwrap());
        assert!(!is_inert(&p("x^5 - x - 1"), 2).unwrap());
        assert!(!is_inert(&p("x^5 - 11"), 11).unwrap());
    }

    #[test]
    fn exhaustive_f2_irreducibility_of_x5_x2_1() {
        // No root, and no quadratic factor (x^2 + x + 1 is the only
        // irreducible quadratic over F_2).
        let f = reduce_to_fp(&p("x^5 + x^2 + 1"), 2);
        let field = PrimeField::new(2);
        for x in 0..2u64 {
            assert_ne!(f.iter().rev().fold(0, |acc, &c| (acc * x + c) % 2), 0);
        }
        assert!(!ff::rem(&field, &f, &vec![1, 1, 1]).is_empty());
    }

    #[test]
    fn all_types_of_degree_five() {
        let all = SplittingType::all_of_degree(5);
        assert!(all.iter().all(|t| t.degree() == 5));
        assert!(all.contains(&SplittingType::inert(5)));
        assert!(all.contains(&SplittingType::totally_ramified(5)));
        // Coefficient of x^5 in prod_k (1 - x^k)^(-d(k)).
        assert_eq!(all.len(), 17);
    }

    proptest::proptest! {
        #[test]
        fn degree_is_preserved(cs in proptest::collection::vec(-40i64..=40, 5), idx in 0usize..6) {
            let mut c = cs.clone();
            c.push(1);
            let f = IntPoly::from_i64s(&c);
            if !crate::polycore::is_irreducible_over_q(&f).unwrap().is_irreducible() {
                return Ok(());
            }
            let prime = [2u64, 3, 5, 7, 11, 31][idx];
            match splitting_type(&f, prime) {
                Ok(t) => {
                    proptest::prop_assert_eq!(t.degree(), 5);
                    let disc = discriminant(&f).unwrap();
                    if !(&disc % prime).is_zero() {
                        proptest::prop_assert!(t.is_unramified());
                    }
                }
                Err(Error::IrregularSplitting { .. }) => {}
                Err(e) => proptest::prop_assert!(false, "{e}"),
            }
        }
    }
}
