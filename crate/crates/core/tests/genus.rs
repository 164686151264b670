use num_bigint::BigInt;
use proptest::prelude::*;
use quintic_genus::genus::*;
use quintic_genus::polycore::{char_poly_of_element, discriminant, is_irreducible_over_q, Irreducibility};
use quintic_genus::IntPoly;

fn p(s: &str) -> IntPoly {
    IntPoly::parse(s).unwrap()
}

const EXAMPLES: [(&str, u64); 4] = [
    ("x^5 - x - 1", 1),
    ("x^5 - 11", 5),
    ("x^5 - 341", 25),
    ("x^5 + x^4 - 4x^3 - 3x^2 + 3x + 1", 1),
];

#[test]
fn examples_and_shifts() {
    for (s, g) in EXAMPLES {
        let f = p(s);
        for c in -2..=2i64 {
            let cert = genus_number(&f.shift(&BigInt::from(c))).unwrap();
            assert_eq!(cert.genus_number, g, "{s} shifted by {c}");
        }
    }
}

/// Independent reasons for each example value.
#[test]
fn example_cross_checks() {
    // Squarefree discriminant 19 * 151: nothing is totally ramified.
    let d = discriminant(&p("x^5 - x - 1")).unwrap();
    assert_eq!(d, BigInt::from(19 * 151));
    // Eisenstein at 11 and 31; at 5, (x+1)^5 - 341 is Eisenstein too.
    let f = p("x^5 - 341");
    assert!(f.is_eisenstein(11) && f.is_eisenstein(31));
    assert!(f.shift(&BigInt::from(1)).is_eisenstein(5));
    assert_eq!(ramification_product(&f).unwrap().star_at_5, Some(false));
    // The cyclic field of conductor 11: one counted prime, genus 5^0.
    let c = genus_number(&p("x^5 + x^4 - 4x^3 - 3x^2 + 3x + 1")).unwrap();
    assert!(c.cyclic);
    assert_eq!(c.ramification_product, vec![11]);
    assert_eq!(discriminant(&c.poly).unwrap(), BigInt::from(11).pow(4));
}

#[test]
fn generator_change_for_x5_minus_11() {
    let f = p("x^5 - 11");
    let g = char_poly_of_element(&f, &IntPoly::from_i64s(&[1, 1])).unwrap();
    let (a, b) = (genus_number(&f).unwrap(), genus_number(&g).unwrap());
    assert_eq!(a.genus_number, b.genus_number);
    assert_eq!(a.ramification_product, b.ramification_product);
    assert_eq!(a.star_at_5, b.star_at_5);
}

#[test]
fn screen_witness() {
    let f = p("x^5 + 35x^2 + 14x + 399");
    assert!(norm_euclidean_screen(&f).unwrap());
    assert_eq!(genus_number(&f).unwrap().genus_number, 1);
    assert!(!norm_euclidean_screen(&p("x^5 - x - 1")).unwrap());
}

fn monic(cs: &[i64]) -> IntPoly {
    let mut all = cs.to_vec();
    all.push(1);
    IntPoly::from_i64s(&all)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn genus_rule(cs in prop::collection::vec(-40i64..=40, 5)) {
        let f = monic(&cs);
        prop_assume!(matches!(is_irreducible_over_q(&f).unwrap(), Irreducibility::Irreducible(_)));
        let c = match genus_number(&f) {
            Ok(c) => c,
            Err(e) => {
                prop_assert!(e.is_abort(), "{e}");
                return Ok(());
            }
        };
        prop_assert!(c.check().is_ok());
        let mut g = c.genus_number;
        while g % 5 == 0 {
            g /= 5;
        }
        prop_assert_eq!(g, 1);
        let one = (!c.cyclic && c.ramification_product.is_empty()) || (c.cyclic && c.t == 1);
        prop_assert_eq!(c.genus_number == 1, one);
    }

    /// Polynomials congruent to the screen witness modulo 2, 5 and 49 keep
    /// the local conditions at 2, 5 and 7.
    #[test]
    fn screen_implies_genus_one(ks in prop::collection::vec(-3i64..=3, 5)) {
        let mut cs = vec![399i64, 14, 35, 0, 0];
        for (c, k) in cs.iter_mut().zip(&ks) {
            *c += 490 * k;
        }
        let f = monic(&cs);
        if norm_euclidean_screen(&f).unwrap() {
            prop_assert_eq!(genus_number(&f).unwrap().genus_number, 1);
        }
    }
}
