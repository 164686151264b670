use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

fn inv_pow(p: u64, k: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(p).pow(k))
}

/// Total mass of quintic étale algebras over `Q_p`:
/// `1 + 1/p + 2/p^2 + 2/p^3 + 1/p^4`.
pub fn m(p: u64) -> BigRational {
    let two = BigRational::from_integer(2.into());
    BigRational::one() + inv_pow(p, 1) + &two * inv_pow(p, 2) + &two * inv_pow(p, 3) + inv_pow(p, 4)
}

/// `p^4 m(p)`, the integer numerator of the mass.
pub fn m_star(p: u64) -> BigInt {
    let v = m(p) * BigRational::from_integer(BigInt::from(p).pow(4));
    v.to_integer()
}
