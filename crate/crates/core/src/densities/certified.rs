use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// An exact partial product together with a bracket on the omitted tail:
/// the true value lies in `[partial * tail_low, partial * tail_high]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertifiedValue {
    pub partial: BigRational,
    pub tail_low: BigRational,
    pub tail_high: BigRational,
    pub cutoff: u64,
}

impl CertifiedValue {
    pub fn exact(value: BigRational) -> Self {
        CertifiedValue {
            partial: value,
            tail_low: BigRational::one(),
            tail_high: BigRational::one(),
            cutoff: 0,
        }
    }

    pub fn low(&self) -> BigRational {
        lower_end(&self.partial, &self.tail_low, &self.tail_high)
    }

    pub fn high(&self) -> BigRational {
        upper_end(&self.partial, &self.tail_low, &self.tail_high)
    }

    pub fn width(&self) -> BigRational {
        self.high() - self.low()
    }

    pub fn midpoint(&self) -> BigRational {
        (self.low() + self.high()) / BigInt::from(2)
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        self.low() <= *x && *x <= self.high()
    }

    /// Whether `other` lies inside `self`.
    pub fn encloses(&self, other: &CertifiedValue) -> bool {
        self.low() <= other.low() && other.high() <= self.high()
    }

    /// The decimal rounding to `places` shared by both endpoints, if any.
    pub fn rounds_to(&self, places: u32) -> Option<String> {
        let lo = round_decimal(&self.low(), places);
        let hi = round_decimal(&self.high(), places);
        (lo == hi).then_some(lo)
    }

    pub fn to_f64(&self) -> f64 {
        self.midpoint().to_f64().unwrap_or(f64::NAN)
    }

    /// Product of two certified values; the brackets multiply.
    pub fn mul(&self, other: &CertifiedValue) -> CertifiedValue {
        let corners = [
            &self.tail_low * &other.tail_low,
            &self.tail_low * &other.tail_high,
            &self.tail_high * &other.tail_low,
            &self.tail_high * &other.tail_high,
        ];
        CertifiedValue {
            partial: &self.partial * &other.partial,
            tail_low: corners.iter().min().unwrap().clone(),
            tail_high: corners.iter().max().unwrap().clone(),
            cutoff: self.cutoff.max(other.cutoff),
        }
    }

    pub fn scale(&self, c: &BigRational) -> CertifiedValue {
        CertifiedValue {
            partial: &self.partial * c,
            ..self.clone()
        }
    }
}

fn lower_end(partial: &BigRational, lo: &BigRational, hi: &BigRational) -> BigRational {
    if partial.is_negative() {
        partial * hi
    } else {
        partial * lo
    }
}

fn upper_end(partial: &BigRational, lo: &BigRational, hi: &BigRational) -> BigRational {
    if partial.is_negative() {
        partial * lo
    } else {
        partial * hi
    }
}

impl fmt::Display for CertifiedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mid = self.midpoint();
        let tiny = BigRational::new(BigInt::one(), BigInt::from(1000));
        if !mid.is_zero() && mid.abs() < tiny {
            let exp = decimal_exponent(&mid);
            let shift = BigRational::from_integer(BigInt::from(10).pow((-exp) as u32));
            let sig = significant_places(&(self.width() * &shift));
            return write!(
                f,
                "{}e{exp} in [{}e{exp}, {}e{exp}] (cutoff {})",
                round_decimal(&(&mid * &shift), sig),
                floor_decimal(&(self.low() * &shift), sig + 2),
                ceil_decimal(&(self.high() * &shift), sig + 2),
                self.cutoff
            );
        }
        let places = significant_places(&self.width());
        write!(
            f,
            "{} in [{}, {}] (cutoff {})",
            round_decimal(&mid, places),
            floor_decimal(&self.low(), places + 2),
            ceil_decimal(&self.high(), places + 2),
            self.cutoff
        )
    }
}

/// The `e` with `10^e <= |x| < 10^(e+1)`, for nonzero `|x| < 1`.
fn decimal_exponent(x: &BigRational) -> i64 {
    let mut v = x.abs();
    let ten = BigRational::from_integer(10.into());
    let mut e = 0;
    while v < BigRational::one() {
        v *= &ten;
        e -= 1;
    }
    e
}

/// `x` with `sig` significant digits, in scientific notation below
/// `10^-3` and as a plain decimal otherwise.
pub fn format_significant(x: &BigRational, sig: u32) -> String {
    let tiny = BigRational::new(BigInt::one(), BigInt::from(1000));
    if x.is_zero() || x.abs() >= tiny {
        let int_digits = x.abs().to_integer().to_string().len() as u32;
        let places = if x.abs() >= BigRational::one() {
            sig.saturating_sub(int_digits)
        } else {
            sig + 2
        };
        return round_decimal(x, places);
    }
    let exp = decimal_exponent(x);
    let shifted = x * BigRational::from_integer(BigInt::from(10).pow((-exp) as u32));
    format!("{}e{exp}", round_decimal(&shifted, sig.saturating_sub(1)))
}

/// Decimal places worth printing for an interval of the given width.
pub fn significant_places(width: &BigRational) -> u32 {
    if width.is_zero() {
        return 12;
    }
    let mut places = 0u32;
    let mut w = width.clone();
    let ten = BigRational::from_integer(10.into());
    while w < BigRational::one() && places < 40 {
        w *= &ten;
        places += 1;
    }
    places.max(1)
}

fn scaled(x: &BigRational, places: u32) -> BigRational {
    x * BigRational::from_integer(BigInt::from(10).pow(places))
}

fn render(n: BigInt, places: u32) -> String {
    let neg = n.sign() == Sign::Minus;
    let digits = n.abs().to_string();
    let digits = format!("{digits:0>width$}", width = places as usize + 1);
    let (int, frac) = digits.split_at(digits.len() - places as usize);
    let sign = if neg { "-" } else { "" };
    if places == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

/// `x` rounded half away from zero to `places` decimals.
pub fn round_decimal(x: &BigRational, places: u32) -> String {
    let s = scaled(x, places);
    let (q, r) = s.numer().abs().div_rem(s.denom());
    let q = if r * 2 >= *s.denom() { q + 1 } else { q };
    render(if s.is_negative() { -q } else { q }, places)
}

pub fn floor_decimal(x: &BigRational, places: u32) -> String {
    render(scaled(x, places).floor().to_integer(), places)
}

pub fn ceil_decimal(x: &BigRational, places: u32) -> String {
    render(scaled(x, places).ceil().to_integer(), places)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rounding() {
        assert_eq!(round_decimal(&q(2, 3), 3), "0.667");
        assert_eq!(round_decimal(&q(-2, 3), 3), "-0.667");
        assert_eq!(round_decimal(&q(1, 8), 2), "0.13");
        assert_eq!(round_decimal(&q(5, 1), 0), "5");
        assert_eq!(floor_decimal(&q(2, 3), 2), "0.66");
        assert_eq!(ceil_decimal(&q(2, 3), 2), "0.67");
        assert_eq!(round_decimal(&q(1, 1000), 2), "0.00");
    }

    #[test]
    fn interval_ends() {
        let v = CertifiedValue {
            partial: q(1, 2),
            tail_low: q(9, 10),
            tail_high: q(11, 10),
            cutoff: 7,
        };
        assert_eq!(v.low(), q(9, 20));
        assert_eq!(v.high(), q(11, 20));
        assert!(v.contains(&q(1, 2)));
        assert_eq!(v.rounds_to(0), None);
        assert_eq!(CertifiedValue::exact(q(2, 3)).rounds_to(3), Some("0.667".into()));
        let neg = v.scale(&q(-1, 1));
        assert_eq!(neg.low(), q(-11, 20));
        let sq = v.mul(&v);
        assert_eq!(sq.low(), q(81, 400));
        assert!(v.encloses(&CertifiedValue::exact(q(1, 2))));
    }

    #[test]
    fn display() {
        let v = CertifiedValue {
            partial: q(1, 3),
            tail_low: q(999, 1000),
            tail_high: q(1, 1),
            cutoff: 5,
        };
        assert_eq!(v.to_string(), "0.3332 in [0.333000, 0.333334] (cutoff 5)");
        assert_eq!(format_significant(&q(1, 3), 4), "0.333333");
        assert_eq!(format_significant(&q(-100, 3), 4), "-33.33");
        assert_eq!(format_significant(&q(1, 30000), 3), "3.33e-5");
        let small = v.scale(&q(3, 200000));
        assert_eq!(decimal_exponent(&small.partial), -6);
        assert_eq!(small.to_string(), "4.998e-6 in [4.99500e-6, 5.00000e-6] (cutoff 5)");
    }
}
