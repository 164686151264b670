use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};

use super::arith::{inv_mod, residue};
use super::finite_field::{self as ff, FPoly, FiniteField, PrimeField};
use super::modpoly::{reduce_to_fp, ModPoly};
use super::IntPoly;
use crate::error::{Error, Result};

/// Extended Euclid over `F_p`: returns `(g, s, t)` with `s a + t b = g`,
/// `g` monic.
pub(crate) fn ext_gcd(
    field: &PrimeField,
    a: &FPoly<PrimeField>,
    b: &FPoly<PrimeField>,
) -> (FPoly<PrimeField>, FPoly<PrimeField>, FPoly<PrimeField>) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = ff::div_rem(field, &r0, &r1);
        let s2 = ff::sub(field, &s0, &ff::mul(field, &q, &s1));
        let t2 = ff::sub(field, &t0, &ff::mul(field, &q, &t1));
        (r0, r1) = (r1, r);
        (s0, s1) = (s1, s2);
        (t0, t1) = (t1, t2);
    }
    if r0.is_empty() {
        return (r0, s0, t0);
    }
    let inv = field.inv(r0.last().unwrap());
    (
        ff::scale(field, &r0, &inv),
        ff::scale(field, &s0, &inv),
        ff::scale(field, &t0, &inv),
    )
}

fn from_fp(c: &FPoly<PrimeField>) -> IntPoly {
    IntPoly::new(c.iter().map(|&a| BigInt::from(a)).collect())
}

fn reduce(f: &IntPoly, m: &BigInt) -> IntPoly {
    IntPoly::new(f.coeffs().iter().map(|c| c.mod_floor(m)).collect())
}

/// Lift `f = g h mod p` (monic `f`, `g`, `h`, coprime mod `p`) to `p^k`.
fn lift_pair(f: &IntPoly, g: &IntPoly, h: &IntPoly, p: u64, k: u32) -> Result<(IntPoly, IntPoly)> {
    let field = PrimeField::new(p);
    let gbar = reduce_to_fp(g, p);
    let hbar = reduce_to_fp(h, p);
    let (d, s, t) = ext_gcd(&field, &gbar, &hbar);
    if d != vec![1] {
        return Err(Error::LiftingObstruction { prime: p });
    }
    let pb = BigInt::from(p);
    let (mut g, mut h) = (g.clone(), h.clone());
    let mut pj = pb.clone();
    for _ in 1..k {
        let diff = f - &(&g * &h);
        let e_int = IntPoly::new(diff.coeffs().iter().map(|c| c.div_floor(&pj)).collect());
        debug_assert!(diff.coeffs().iter().all(|c| c.mod_floor(&pj).is_zero()));
        let e = reduce_to_fp(&e_int, p);
        let dg = ff::rem(&field, &ff::mul(&field, &t, &e), &gbar);
        let dh = ff::rem(&field, &ff::mul(&field, &s, &e), &hbar);
        g = &g + &from_fp(&dg).scale(&pj);
        h = &h + &from_fp(&dh).scale(&pj);
        pj *= &pb;
    }
    Ok((reduce(&g, &pj), reduce(&h, &pj)))
}

/// Lift a factorisation of `f` modulo `p` into pairwise coprime monic
/// factors to a factorisation modulo `p^k`. The leading coefficient of `f`
/// must be a unit mod `p`; it is carried by the first returned factor.
pub fn hensel_lift_factorization(f: &IntPoly, p: u64, k: u32, factors: &[ModPoly]) -> Result<Vec<ModPoly>> {
    if k == 0 {
        return Err(Error::InvalidInput("precision exponent must be positive".into()));
    }
    if factors.is_empty() {
        return Err(Error::InvalidInput("empty factor list".into()));
    }
    let pb = BigInt::from(p);
    let pk: BigInt = Pow::pow(&pb, k);
    let lc = residue(&f.leading(), p);
    let lc_inv = inv_mod(lc, p).ok_or_else(|| Error::InvalidInput(format!("leading coefficient vanishes mod {p}")))?;
    // Monic representative of f modulo p^k.
    let lc_inv_k = invert_mod_pk(&f.leading(), &BigInt::from(lc_inv), &pk);
    let monic = reduce(&f.scale(&lc_inv_k), &pk);

    let seeds: Vec<IntPoly> = factors
        .iter()
        .map(|g| {
            let c = reduce_to_fp(&g.to_int(), p);
            from_fp(&ff::monic(&PrimeField::new(p), &c))
        })
        .collect();
    let total = seeds.iter().fold(IntPoly::one(), |a, b| &a * b);
    if reduce_to_fp(&total, p) != reduce_to_fp(&monic, p) {
        return Err(Error::InvalidInput(format!("factors do not multiply to f modulo {p}")));
    }

    let mut out = Vec::with_capacity(seeds.len());
    let mut target = monic;
    for i in 0..seeds.len() {
        if i == seeds.len() - 1 {
            out.push(target.clone());
            break;
        }
        let rest = seeds[i + 1..].iter().fold(IntPoly::one(), |a, b| &a * b);
        let (g, h) = lift_pair(&target, &seeds[i], &rest, p, k)?;
        out.push(g);
        target = h;
    }
    if !f.leading().is_one() {
        out[0] = reduce(&out[0].scale(&f.leading()), &pk);
    }
    Ok(out.into_iter().map(|g| ModPoly::from_int(&g, &pk)).collect())
}

/// Inverse of `a` modulo `p^k` by Newton iteration from an inverse mod `p`.
fn invert_mod_pk(a: &BigInt, seed: &BigInt, pk: &BigInt) -> BigInt {
    let mut x = seed.clone();
    let two = BigInt::from(2);
    loop {
        let check = (a * &x).mod_floor(pk);
        if check.is_one() {
            return x;
        }
        x = (&x * (&two - a * &x)).mod_floor(pk);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::factor_mod_p;

    fn p(s: &str) -> IntPoly {
        IntPoly::parse(s).unwrap()
    }

    fn m(s: &str, modulus: i64) -> ModPoly {
        ModPoly::from_int(&p(s), &BigInt::from(modulus))
    }

    #[test]
    fn exact_factors_lift_to_themselves() {
        let lifted = hensel_lift_factorization(&p("x^2 - 1"), 7, 2, &[m("x - 1", 7), m("x + 1", 7)]).unwrap();
        assert_eq!(lifted[0], m("x - 1", 49));
        assert_eq!(lifted[1], m("x + 1", 49));
    }

    #[test]
    fn square_root_of_two_mod_343() {
        let lifted = hensel_lift_factorization(&p("x^2 - 2"), 7, 3, &[m("x - 3", 7), m("x + 3", 7)]).unwrap();
        // Oracle: brute scan for the square root of 2 modulo 343 that is 3 mod 7.
        let r = (0..343i64).find(|r| (r * r - 2) % 343 == 0 && r % 7 == 3).unwrap();
        assert_eq!(r, 108);
        assert_eq!(lifted[0], m("x - 108", 343));
        assert_eq!(lifted[1], m("x + 108", 343));
    }

    #[test]
    fn quintic_mod_16() {
        let f = p("x^5 - x - 1");
        let fac = factor_mod_p(&f, 2).unwrap();
        let seeds: Vec<ModPoly> = fac.factors.iter().map(|(g, _)| g.clone()).collect();
        let lifted = hensel_lift_factorization(&f, 2, 4, &seeds).unwrap();
        let prod = lifted[0].mul(&lifted[1]);
        assert_eq!(prod, ModPoly::from_int(&f, &BigInt::from(16)));
        assert_eq!(lifted[0].degree(), 2);
        assert_eq!(lifted[1].degree(), 3);
    }

    #[test]
    fn non_coprime_factors_obstructed() {
        let r = hensel_lift_factorization(&p("x^2 - 2x + 1"), 5, 2, &[m("x - 1", 5), m("x - 1", 5)]);
        assert_eq!(r, Err(Error::LiftingObstruction { prime: 5 }));
    }

    proptest::proptest! {
        #[test]
        fn lift_round_trip(cs in proptest::collection::vec(-30i64..=30, 5), k in 1u32..6) {
            let mut c = cs.clone();
            c.push(1);
            let f = IntPoly::from_i64s(&c);
            for prime in [3u64, 7, 13] {
                let fac = factor_mod_p(&f, prime).unwrap();
                if !fac.is_squarefree() {
                    continue;
                }
                let seeds: Vec<ModPoly> = fac.factors.iter().map(|(g, _)| g.clone()).collect();
                let lifted = hensel_lift_factorization(&f, prime, k, &seeds).unwrap();
                let pk = BigInt::from(prime).pow(k);
                let prod = lifted.iter().skip(1).fold(lifted[0].clone(), |a, b| a.mul(b));
                proptest::prop_assert_eq!(prod, ModPoly::from_int(&f, &pk));
                for (l, s) in lifted.iter().zip(&seeds) {
                    proptest::prop_assert_eq!(&ModPoly::from_int(&l.to_int(), &BigInt::from(prime)), s);
                }
            }
        }
    }
}
