use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Pow, Zero};

use super::splitting::is_totally_ramified;
use crate::error::{Error, Result};
use crate::polycore::arith::valuation;
use crate::polycore::{char_poly_of_element, factor_mod_p, IntPoly};

/// Refinement steps allowed for the shift search.
pub const EISENSTEIN_SEARCH_BOUND: usize = 32;

/// A polynomial, Eisenstein at `p`, generating the same completion at `p`
/// as `f`. Requires `p` totally ramified in `Q[x]/(f)`.
///
/// The root `theta` is first shifted so that `theta - a` has positive
/// valuation; when that valuation `j/n` is integral, `a` is refined by the
/// residual root, and otherwise a suitable power of `theta - a` divided by
/// a power of `p` is a uniformiser whose characteristic polynomial is
/// returned.
pub fn eisenstein_generator(f: &IntPoly, p: u64) -> Result<IntPoly> {
    if !is_totally_ramified(f, p)? {
        return Err(Error::Precondition(format!("{p} is not totally ramified")));
    }
    if f.is_eisenstein(p) {
        return Ok(f.clone());
    }
    let n = f.degree();
    let pb = BigInt::from(p);
    let mut a = single_root_mod_p(f, p)?;
    for _ in 0..EISENSTEIN_SEARCH_BOUND {
        let g = f.shift(&a);
        let j = valuation(&g.coeff(0), p).ok_or_else(|| Error::Precondition("polynomial has a rational root".into()))?
            as usize;
        if j == 1 {
            return Ok(g);
        }
        if j.is_multiple_of(n) {
            let k = (j / n) as u32;
            let pk: BigInt = Pow::pow(&pb, k);
            let scaled = g.scale_variable(&pk);
            let denom: BigInt = Pow::pow(&pk, n as u32);
            let scaled = IntPoly::new(scaled.coeffs().iter().map(|c| c / &denom).collect());
            let c = single_root_mod_p(&scaled, p)?;
            a += c * pk;
            continue;
        }
        if j.gcd(&n) != 1 {
            return Err(Error::Consistency(format!(
                "root valuation {j}/{n} incompatible with total ramification"
            )));
        }
        let u = (1..n).find(|u| (u * j) % n == 1).expect("j is invertible mod n");
        let w = ((u * j - 1) / n) as u32;
        let cp = char_poly_of_element(&g, &IntPoly::monomial(BigInt::from(1), u))?;
        let coeffs = cp
            .coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let d: BigInt = Pow::pow(&pb, w * (n - i) as u32);
                let (q, r) = c.div_rem(&d);
                debug_assert!(r.is_zero());
                q
            })
            .collect();
        let h = IntPoly::new(coeffs);
        if !h.is_eisenstein(p) {
            return Err(Error::Consistency("uniformiser polynomial is not Eisenstein".into()));
        }
        return Ok(h);
    }
    Err(Error::SearchExhausted {
        bound: EISENSTEIN_SEARCH_BOUND,
    })
}

pub fn eisenstein_generator_at_5(f: &IntPoly) -> Result<IntPoly> {
    eisenstein_generator(f, 5)
}

/// The unique root of `f` modulo `p` when `f = (x - c)^n mod p`.
fn single_root_mod_p(f: &IntPoly, p: u64) -> Result<BigInt> {
    let fac = factor_mod_p(f, p)?;
    match fac.factors.as_slice() {
        [(g, m)] if g.degree() == 1 && *m == f.degree() => {
            let c0 = g.coeffs().first().cloned().unwrap_or_default();
            Ok((BigInt::from(p) - c0).mod_floor(&BigInt::from(p)))
        }
        _ => Err(Error::Consistency(format!(
            "expected a single repeated linear factor modulo {p}"
        ))),
    }
}

/// Coefficient congruences `a1 = a2 = a3 = a4 + a0 = 0 (mod 25)` on a
/// quintic Eisenstein polynomial at 5.
pub fn star_condition(g: &IntPoly) -> Result<bool> {
    if g.degree() != 5 || !g.is_monic() || !g.is_eisenstein(5) {
        return Err(Error::Precondition(
            "star condition needs a monic quintic Eisenstein at 5".into(),
        ));
    }
    let m = BigInt::from(25);
    let zero = |c: BigInt| c.mod_floor(&m).is_zero();
    Ok(zero(g.coeff(1)) && zero(g.coeff(2)) && zero(g.coeff(3)) && zero(g.coeff(4) + g.coeff(0)))
}
