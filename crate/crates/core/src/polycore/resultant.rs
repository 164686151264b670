use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::IntPoly;
use crate::error::{Error, Result};

/// Determinant of a square integer matrix by fraction-free (Bareiss)
/// elimination.
pub fn determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Sylvester resultant `Res(f, g)`.
pub fn resultant(f: &IntPoly, g: &IntPoly) -> BigInt {
    if f.is_zero() || g.is_zero() {
        return BigInt::zero();
    }
    let (m, n) = (f.degree(), g.degree());
    if m == 0 && n == 0 {
        return BigInt::one();
    }
    if m == 0 {
        return num_traits::pow(f.leading(), n);
    }
    if n == 0 {
        return num_traits::pow(g.leading(), m);
    }
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![BigInt::zero(); size];
        for (j, c) in f.coeffs().iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![BigInt::zero(); size];
        for (j, c) in g.coeffs().iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    determinant(rows)
}

/// `Disc(f) = (-1)^(n(n-1)/2) Res(f, f') / lc(f)`.
pub fn discriminant(f: &IntPoly) -> Result<BigInt> {
    if f.is_zero() {
        return Err(Error::InvalidInput("discriminant of the zero polynomial".into()));
    }
    let n = f.degree();
    if n == 0 {
        return Err(Error::InvalidInput("discriminant of a constant".into()));
    }
    if n == 1 {
        return Ok(BigInt::one());
    }
    let r = resultant(f, &f.derivative());
    let d = r / f.leading();
    Ok(if (n * (n - 1) / 2) % 2 == 1 { -d } else { d })
}

/// Characteristic polynomial of an integer matrix (Faddeev-LeVerrier; every
/// division is exact because the result has integer coefficients).
pub fn char_poly_of_matrix(a: &[Vec<BigInt>]) -> IntPoly {
    let n = a.len();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut mk: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = mat_mul(a, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        mk = next;
        let am = mat_mul(a, &mk);
        let tr: BigInt = (0..n).map(|i| am[i][i].clone()).sum();
        coeffs[n - k] = -tr / BigInt::from(k);
    }
    IntPoly::new(coeffs)
}

fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = a.len();
    let mut out = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                out[i][j] += &a[i][k] * &b[k][j];
            }
        }
    }
    out
}

/// Characteristic polynomial of `g(theta)` where `theta` is a root of the
/// monic `f`, i.e. `Res_y(f(y), x - g(y))` up to sign.
pub fn char_poly_of_element(f: &IntPoly, g: &IntPoly) -> Result<IntPoly> {
    if !f.is_monic() || f.degree() < 1 {
        return Err(Error::InvalidInput(
            "defining polynomial must be monic of positive degree".into(),
        ));
    }
    let n = f.degree();
    let gr = g.div_rem_monic(f).1;
    // Column j holds g(theta) * theta^j in the power basis.
    let mut cols = Vec::with_capacity(n);
    let mut cur = gr;
    for _ in 0..n {
        cols.push((0..n).map(|i| cur.coeff(i)).collect::<Vec<_>>());
        cur = (&cur * &IntPoly::x()).div_rem_monic(f).1;
    }
    let m: Vec<Vec<BigInt>> = (0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect();
    Ok(char_poly_of_matrix(&m))
}

/// Sign of an integer as -1, 0 or 1.
pub(crate) fn sign(n: &BigInt) -> i32 {
    if n.is_positive() {
        1
    } else if n.is_negative() {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPoly {
        IntPoly::parse(s).unwrap()
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(discriminant(&p("x^5 - x - 1")).unwrap(), BigInt::from(2869));
        assert_eq!(discriminant(&p("x^5 - 11")).unwrap(), BigInt::from(45_753_125));
        assert_eq!(discriminant(&p("x^2 - 1")).unwrap(), BigInt::from(4));
        assert_eq!(
            discriminant(&p("x^5 + x^4 - 4x^3 - 3x^2 + 3x + 1")).unwrap(),
            BigInt::from(14641)
        );
        assert!(discriminant(&IntPoly::zero()).is_err());
    }

    #[test]
    fn quadratic_discriminant_formula() {
        for (a, b, c) in [(1i64, 3, 2), (2, -5, 7), (-3, 1, 1), (5, 0, -4)] {
            let f = IntPoly::from_i64s(&[c, b, a]);
            assert_eq!(discriminant(&f).unwrap(), BigInt::from(b * b - 4 * a * c));
        }
    }

    #[test]
    fn char_poly_of_shift_is_translate() {
        let f = p("x^5 - 11");
        let cp = char_poly_of_element(&f, &p("x + 1")).unwrap();
        assert_eq!(cp, f.shift(&BigInt::from(-1)));
        let sq = char_poly_of_element(&p("x^2 - 2"), &p("x^2")).unwrap();
        assert_eq!(sq, p("x^2 - 4x + 4"));
    }

    proptest::proptest! {
        /// Trinomial identity Disc(x^5 + a x + b) = 256 a^5 + 3125 b^4.
        #[test]
        fn trinomial_oracle(a in -50i64..=50, b in -50i64..=50) {
            let f = IntPoly::from_i64s(&[b, a, 0, 0, 0, 1]);
            let oracle = BigInt::from(256) * BigInt::from(a).pow(5) + BigInt::from(3125) * BigInt::from(b).pow(4);
            proptest::prop_assert_eq!(discriminant(&f).unwrap(), oracle);
        }

        /// Power identity Disc(x^5 + b) = 5^5 b^4.
        #[test]
        fn power_oracle(b in -10_000i64..=10_000) {
            let f = IntPoly::from_i64s(&[b, 0, 0, 0, 0, 1]);
            proptest::prop_assert_eq!(discriminant(&f).unwrap(), BigInt::from(3125) * BigInt::from(b).pow(4));
        }
    }
}
