use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polycore::arith::valuation;
use crate::polycore::IntPoly;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    /// Valuation of the roots on this segment (the negated hull slope).
    pub root_valuation: BigRational,
    pub length: usize,
}

/// Lower convex hull of `(i, v_p(a_i))`, left to right. Hull slopes increase
/// along the list, so root valuations decrease.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewtonPolygon {
    pub segments: Vec<Segment>,
    /// Multiplicity of the root 0, removed before the hull is taken.
    pub zero_roots: usize,
}

impl NewtonPolygon {
    pub fn is_single_segment(&self) -> bool {
        self.segments.len() == 1
    }

    pub fn width(&self) -> usize {
        self.segments.iter().map(|s| s.length).sum::<usize>() + self.zero_roots
    }
}

/// Vertices of the lower convex hull of the points, which must be sorted by
/// abscissa.
pub(crate) fn lower_hull(points: &[(usize, i64)]) -> Vec<(usize, i64)> {
    let mut hull: Vec<(usize, i64)> = Vec::new();
    for &pt in points {
        while hull.len() >= 2 {
            let (x1, y1) = hull[hull.len() - 2];
            let (x2, y2) = hull[hull.len() - 1];
            // Drop the middle point unless it lies strictly below the chord.
            let cross = (x2 as i128 - x1 as i128) * (pt.1 as i128 - y1 as i128)
                - (y2 as i128 - y1 as i128) * (pt.0 as i128 - x1 as i128);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    hull
}

pub fn newton_polygon(f: &IntPoly, p: u64) -> Result<NewtonPolygon> {
    if f.is_zero() {
        return Err(Error::InvalidInput("Newton polygon of the zero polynomial".into()));
    }
    let zero_roots = f
        .coeffs()
        .iter()
        .take_while(|c| c.sign() == num_bigint::Sign::NoSign)
        .count();
    let points: Vec<(usize, i64)> = f
        .coeffs()
        .iter()
        .enumerate()
        .skip(zero_roots)
        .filter_map(|(i, c)| valuation(c, p).map(|v| (i - zero_roots, v as i64)))
        .collect();
    let hull = lower_hull(&points);
    let segments = hull
        .windows(2)
        .map(|w| {
            let len = w[1].0 - w[0].0;
            Segment {
                root_valuation: BigRational::new(BigInt::from(w[0].1 - w[1].1), BigInt::from(len)),
                length: len,
            }
        })
        .collect();
    Ok(NewtonPolygon { segments, zero_roots })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPoly {
        IntPoly::parse(s).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn eisenstein_shift_is_one_segment() {
        let np = newton_polygon(&p("x^5 + 5x^4 + 10x^3 + 10x^2 + 5x - 10"), 5).unwrap();
        assert_eq!(
            np.segments,
            vec![Segment {
                root_valuation: q(1, 5),
                length: 5
            }]
        );
        let np = newton_polygon(&p("x^5 - 11"), 11).unwrap();
        assert_eq!(
            np.segments,
            vec![Segment {
                root_valuation: q(1, 5),
                length: 5
            }]
        );
    }

    #[test]
    fn zero_root_removed() {
        let np = newton_polygon(&p("x^2 - 7x"), 7).unwrap();
        assert_eq!(np.zero_roots, 1);
        assert_eq!(
            np.segments,
            vec![Segment {
                root_valuation: q(1, 1),
                length: 1
            }]
        );
    }

    #[test]
    fn two_slopes() {
        // (x - 9)(x - 1): one root of valuation 2 and one unit root at p = 3.
        let np = newton_polygon(&p("x^2 - 10x + 9"), 3).unwrap();
        assert_eq!(
            np.segments,
            vec![
                Segment {
                    root_valuation: q(2, 1),
                    length: 1
                },
                Segment {
                    root_valuation: q(0, 1),
                    length: 1
                }
            ]
        );
    }

    proptest::proptest! {
        /// Every point lies on or above the hull and lengths add up.
        #[test]
        fn hull_is_lower_and_complete(cs in proptest::collection::vec(1i64..2000, 2..8)) {
            let f = IntPoly::from_i64s(&cs);
            let np = newton_polygon(&f, 3).unwrap();
            proptest::prop_assert_eq!(np.width(), f.degree());
            let mut x = 0usize;
            let mut y = BigRational::from_integer(valuation(&f.coeff(0), 3).unwrap().into());
            for s in &np.segments {
                for k in 1..=s.length {
                    let on_hull = &y - &s.root_valuation * BigRational::from_integer((k as i64).into());
                    let v = BigRational::from_integer(valuation(&f.coeff(x + k), 3).unwrap().into());
                    proptest::prop_assert!(v >= on_hull);
                }
                x += s.length;
                y = &y - &s.root_valuation * BigRational::from_integer((s.length as i64).into());
            }
        }
    }
}
