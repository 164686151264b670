//! The totally ramified quintic extensions of `Q_5`.
//!
//! For an Eisenstein quintic `x^5 + a4 x^4 + ... + a0` the different
//! exponent is `d = min(9, 5v(a1), 5v(a2) + 1, 5v(a3) + 2, 5v(a4) + 3)`, and
//! `d` is also the discriminant exponent since the equation order is
//! maximal. If `f*` is another Eisenstein polynomial with the same `d` and
//! `pi` a root of `f`, then `v_pi(f*(pi)) <= d + delta` where `delta` is the
//! distance from `pi` to the nearest root of `f*`. Conjugates of `pi` lie at
//! distance at most `d - 3`, so by Krasner `v_pi(f*(pi)) > 2d - 3` forces
//! `Q_5(pi)` to contain a root of `f*`. For `d = 9` every conjugate lies at
//! distance exactly `9/4`, so `v_pi(f*(pi)) >= 12` suffices. Perturbing
//! `a_i` by a multiple of `5^s` changes `f(pi)` by valuation `5s + i`, which
//! gives the moduli below; every modulus is at most `5^3`.

use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::eisenstein::star_condition;
use super::padic::count_roots_in_extension;
use crate::error::{Error, Result};
use crate::polycore::arith::valuation;
use crate::polycore::{discriminant, IntPoly};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalFieldClass {
    pub representative: IntPoly,
    pub disc_exponent: u32,
    pub aut_count: usize,
    pub is_galois: bool,
    pub satisfies_star: bool,
    /// Number of enumerated candidates found to define this field.
    pub members: usize,
}

/// Values `c` modulo `5^k` with `v_5(c) = min` (or `>= min` unless
/// `exact`), as nonnegative representatives.
fn residues(k: u32, min: u32, exact: bool) -> Vec<i64> {
    let m = 5i64.pow(k);
    (0..m)
        .filter(|&c| {
            let v = if c == 0 { k } else { c.trailing_zeros_base5() };
            if exact {
                v == min
            } else {
                v >= min
            }
        })
        .collect()
}

trait Base5 {
    fn trailing_zeros_base5(self) -> u32;
}

impl Base5 for i64 {
    fn trailing_zeros_base5(mut self) -> u32 {
        let mut v = 0;
        while self != 0 && self % 5 == 0 {
            self /= 5;
            v += 1;
        }
        v
    }
}

/// Candidate Eisenstein polynomials of discriminant exponent `d`, as
/// coefficient arrays `[a0, a1, a2, a3, a4]`.
fn candidates(d: u32) -> Vec<[i64; 5]> {
    let zero = vec![0i64];
    // (a0, a1, a2, a3, a4)
    let sets: [Vec<i64>; 5] = match d {
        5 => [
            residues(2, 1, true),
            residues(2, 1, true),
            residues(2, 1, false),
            zero.clone(),
            zero.clone(),
        ],
        6 => [
            residues(2, 1, true),
            zero.clone(),
            residues(2, 1, true),
            residues(2, 1, false),
            residues(2, 1, false),
        ],
        7 => [
            residues(3, 1, true),
            residues(3, 2, false),
            zero.clone(),
            residues(2, 1, true),
            residues(2, 1, false),
        ],
        8 => [
            residues(3, 1, true),
            residues(3, 2, false),
            residues(3, 2, false),
            residues(3, 2, false),
            residues(2, 1, true),
        ],
        9 => [
            residues(3, 1, true),
            residues(3, 2, false),
            zero.clone(),
            zero.clone(),
            zero,
        ],
        _ => return Vec::new(),
    };
    let mut out = Vec::new();
    for &a0 in &sets[0] {
        for &a1 in &sets[1] {
            for &a2 in &sets[2] {
                for &a3 in &sets[3] {
                    for &a4 in &sets[4] {
                        out.push([a0, a1, a2, a3, a4]);
                    }
                }
            }
        }
    }
    out.sort();
    out
}

fn poly(c: &[i64; 5]) -> IntPoly {
    IntPoly::from_i64s(&[c[0], c[1], c[2], c[3], c[4], 1])
}

/// Different exponent read from the coefficient valuations.
pub fn wild_disc_exponent(g: &IntPoly) -> u32 {
    let v = |i: usize| valuation(&g.coeff(i), 5).unwrap_or(u32::MAX / 8);
    [9, 5 * v(1), 5 * v(2) + 1, 5 * v(3) + 2, 5 * v(4) + 3]
        .into_iter()
        .min()
        .unwrap()
}

fn classes_for(d: u32) -> Result<Vec<LocalFieldClass>> {
    let mut reps: Vec<(IntPoly, usize, bool)> = Vec::new();
    for c in candidates(d) {
        let g = poly(&c);
        let star = star_condition(&g)?;
        let mut found = false;
        for (rep, members, rep_star) in reps.iter_mut() {
            if count_roots_in_extension(&g, rep, 5)? > 0 {
                if *rep_star != star {
                    return Err(Error::Consistency(format!(
                        "star condition differs between {g} and {rep}"
                    )));
                }
                *members += 1;
                found = true;
                break;
            }
        }
        if !found {
            reps.push((g, 1, star));
        }
    }
    reps.into_iter()
        .map(|(rep, members, star)| {
            let disc_exponent = valuation(&discriminant(&rep)?, 5).unwrap_or(0);
            if disc_exponent != d {
                return Err(Error::Consistency(format!(
                    "{rep} has discriminant exponent {disc_exponent}, expected {d}"
                )));
            }
            let aut_count = count_roots_in_extension(&rep, &rep, 5)?;
            Ok(LocalFieldClass {
                representative: rep,
                disc_exponent,
                aut_count,
                is_galois: aut_count == 5,
                satisfies_star: star,
                members,
            })
        })
        .collect()
}

fn compute() -> Result<Vec<LocalFieldClass>> {
    let per_d: Vec<Result<Vec<LocalFieldClass>>> = (5..=9u32).into_par_iter().map(classes_for).collect();
    let mut all = Vec::new();
    for r in per_d {
        all.extend(r?);
    }
    all.sort_by(|a, b| a.representative.coeffs().cmp(b.representative.coeffs()));
    if all.len() != 25 {
        return Err(Error::Consistency(format!(
            "found {} wild quintic classes, expected 25",
            all.len()
        )));
    }
    Ok(all)
}

/// The 25 totally ramified quintic extensions of `Q_5`, sorted by
/// representative coefficients. Computed once per process.
pub fn enumerate_wild_quintic_q5() -> Result<Vec<LocalFieldClass>> {
    static CACHE: OnceLock<Result<Vec<LocalFieldClass>>> = OnceLock::new();
    CACHE.get_or_init(compute).clone()
}

/// Index of the class containing the field generated by `g` (quintic,
/// Eisenstein at 5).
pub fn wild_class_of(g: &IntPoly) -> Result<usize> {
    if g.degree() != 5 || !g.is_monic() || !g.is_eisenstein(5) {
        return Err(Error::Precondition("expected a monic quintic Eisenstein at 5".into()));
    }
    let classes = enumerate_wild_quintic_q5()?;
    let d = wild_disc_exponent(g);
    for (i, c) in classes.iter().enumerate() {
        if c.disc_exponent == d && count_roots_in_extension(g, &c.representative, 5)? > 0 {
            return Ok(i);
        }
    }
    Err(Error::Consistency(format!("{g} matches no wild class")))
}
