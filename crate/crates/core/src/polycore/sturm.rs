use num_bigint::BigInt;
use num_traits::Signed;

use super::resultant::sign;
use super::IntPoly;
use crate::error::{Error, Result};

/// Number of distinct real roots of a squarefree polynomial, by a Sturm
/// chain of sign-preserving pseudo-remainders.
pub fn sturm_real_root_count(f: &IntPoly) -> Result<usize> {
    if f.is_zero() {
        return Err(Error::InvalidInput("zero polynomial".into()));
    }
    if f.degree() == 0 {
        return Ok(0);
    }
    let g = f.gcd(&f.derivative());
    if g.degree() > 0 {
        return Err(Error::NotSquarefree { witness: g.to_string() });
    }
    let chain = sturm_chain(f);
    let at_pos: Vec<i32> = chain.iter().map(|s| sign(&s.leading())).collect();
    let at_neg: Vec<i32> = chain
        .iter()
        .map(|s| {
            let l = sign(&s.leading());
            if s.degree() % 2 == 1 {
                -l
            } else {
                l
            }
        })
        .collect();
    Ok(variations(&at_neg) - variations(&at_pos))
}

fn sturm_chain(f: &IntPoly) -> Vec<IntPoly> {
    let mut chain = vec![positive_primitive(f), positive_primitive(&f.derivative())];
    loop {
        let n = chain.len();
        if chain[n - 1].degree() == 0 {
            break;
        }
        let r = chain[n - 2].pseudo_rem(&chain[n - 1]);
        if r.is_zero() {
            break;
        }
        chain.push(positive_primitive(&-&r));
    }
    chain
}

/// Divide by the (positive) content, keeping the sign of every value.
fn positive_primitive(f: &IntPoly) -> IntPoly {
    let c: BigInt = f.content().abs();
    if c <= BigInt::from(1) {
        return f.clone();
    }
    IntPoly::new(f.coeffs().iter().map(|a| a / &c).collect())
}

fn variations(signs: &[i32]) -> usize {
    let nz: Vec<i32> = signs.iter().copied().filter(|&s| s != 0).collect();
    nz.windows(2).filter(|w| w[0] != w[1]).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::Zero;

    fn p(s: &str) -> IntPoly {
        IntPoly::parse(s).unwrap()
    }

    fn eval_q(f: &IntPoly, x: &BigRational) -> BigRational {
        f.coeffs().iter().rev().fold(BigRational::zero(), |acc, c| {
            acc * x + BigRational::from_integer(c.clone())
        })
    }

    /// Count sign changes of `f` on a fine rational grid over the Cauchy
    /// bound interval. Valid as an oracle when roots are well separated.
    fn grid_root_count(f: &IntPoly, steps: i64) -> usize {
        let lc = f.leading().abs();
        let bound: BigInt = f.coeffs().iter().map(|c| c.abs()).max().unwrap() / &lc + 1;
        let lo = BigRational::from_integer(-bound.clone());
        let width = BigRational::from_integer(bound * 2);
        let mut count = 0;
        let mut prev = sign(eval_q(f, &lo).numer());
        for k in 1..=steps {
            let x = &lo + &width * BigRational::new(k.into(), steps.into());
            let s = sign(eval_q(f, &x).numer());
            if s != 0 && prev != 0 && s != prev {
                count += 1;
            }
            if s != 0 {
                prev = s;
            }
        }
        count
    }

    #[test]
    fn examples() {
        assert_eq!(sturm_real_root_count(&p("x^5 - 11")).unwrap(), 1);
        assert_eq!(sturm_real_root_count(&p("x^5 - x - 1")).unwrap(), 1);
        assert_eq!(
            sturm_real_root_count(&p("x^5 + x^4 - 4x^3 - 3x^2 + 3x + 1")).unwrap(),
            5
        );
        assert_eq!(sturm_real_root_count(&p("x^2 + 1")).unwrap(), 0);
        assert_eq!(sturm_real_root_count(&p("-x^3 + 2x")).unwrap(), 3);
    }

    #[test]
    fn critical_point_sign_chart() {
        // x^5 - x - 1 has critical points at x = ±5^(-1/4) ~ ±0.669; both
        // critical values are negative, so there is exactly one real root.
        let f = p("x^5 - x - 1");
        for c in ["2/3", "-2/3", "67/100", "-67/100"] {
            let x: BigRational = c.parse().unwrap();
            assert!(eval_q(&f, &x) < BigRational::zero());
        }
    }

    #[test]
    fn agrees_with_grid_for_totally_real_quintic() {
        let f = p("x^5 + x^4 - 4x^3 - 3x^2 + 3x + 1");
        assert_eq!(grid_root_count(&f, 2000), 5);
    }

    #[test]
    fn repeated_root_rejected_with_witness() {
        let err = sturm_real_root_count(&p("x^3 - 3x + 2"));
        match err {
            Err(Error::NotSquarefree { witness }) => assert_eq!(witness, "x - 1"),
            other => panic!("unexpected {other:?}"),
        }
    }

    proptest::proptest! {
        #[test]
        fn parity_matches_degree(cs in proptest::collection::vec(-20i64..=20, 5)) {
            let mut c = cs.clone();
            c.push(1);
            let f = IntPoly::from_i64s(&c);
            if let Ok(r) = sturm_real_root_count(&f) {
                proptest::prop_assert_eq!(r % 2, 1);
                proptest::prop_assert!(r <= 5);
            }
        }
    }
}
