//! Root counting in a totally ramified extension `Z_p[pi]/(host(pi))`.
//!
//! Elements are coefficient vectors in the basis `1, pi, ..., pi^(n-1)`
//! with entries modulo `p^N`, which fixes every element to absolute
//! precision `pi^(nN)`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::polycore::arith::{inv_mod, residue, valuation};
use crate::polycore::finite_field::{self as ff, PrimeField};
use crate::polycore::modpoly::current_seed;
use crate::polycore::{discriminant, IntPoly};

type Elem = Vec<u64>;

struct Ring {
    n: usize,
    p: u64,
    big_n: u32,
    modulus: u64,
    /// Lower coefficients of the host polynomial, reduced mod `p^N`.
    host: Vec<u64>,
    /// `-(a0 / p)^(-1) mod p`: the residue of `p / pi^n`.
    p_over_pin: u64,
}

impl Ring {
    fn new(host: &IntPoly, p: u64, precision: usize) -> Result<Self> {
        let n = host.degree();
        let big_n = precision.div_ceil(n).max(1) as u32;
        let modulus = (p as u128).checked_pow(big_n).filter(|m| *m < (1u128 << 62));
        let modulus = modulus.ok_or(Error::PrecisionTooLow { precision })? as u64;
        let m = BigInt::from(modulus);
        let coeffs: Vec<u64> = (0..n)
            .map(|i| {
                let r = host.coeff(i) % &m;
                let r = if r.sign() == num_bigint::Sign::Minus { r + &m } else { r };
                r.to_u64().unwrap()
            })
            .collect();
        let u0 = residue(&(host.coeff(0) / BigInt::from(p)), p);
        let inv = inv_mod(u0, p).expect("host is Eisenstein");
        Ok(Ring {
            n,
            p,
            big_n,
            modulus,
            host: coeffs,
            p_over_pin: (p - inv) % p,
        })
    }

    fn cap(&self) -> usize {
        self.n * self.big_n as usize
    }

    fn zero(&self) -> Elem {
        vec![0; self.n]
    }

    fn constant(&self, c: &BigInt) -> Elem {
        let m = BigInt::from(self.modulus);
        let mut r = self.zero();
        let v = c % &m;
        r[0] = if v.sign() == num_bigint::Sign::Minus { v + &m } else { v }
            .to_u64()
            .unwrap();
        r
    }

    fn add(&self, a: &Elem, b: &Elem) -> Elem {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.modulus).collect()
    }

    fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        let m = self.modulus as u128;
        let n = self.n;
        let mut prod = vec![0u128; 2 * n - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u128 * y as u128) % m;
            }
        }
        // pi^n = -(a_0 + a_1 pi + ... + a_(n-1) pi^(n-1)).
        for k in (n..2 * n - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for (i, &ai) in self.host.iter().enumerate() {
                let sub = c * ai as u128 % m;
                prod[k - n + i] = (prod[k - n + i] + m - sub) % m;
            }
        }
        prod[..n].iter().map(|&c| c as u64).collect()
    }

    fn pi_power(&self, k: usize) -> Elem {
        let mut pi = self.zero();
        if self.n == 1 {
            pi[0] = (self.modulus - self.host[0]) % self.modulus;
        } else {
            pi[1] = 1;
        }
        let mut r = self.zero();
        r[0] = 1 % self.modulus;
        for _ in 0..k {
            r = self.mul(&r, &pi);
        }
        r
    }

    /// `v_pi`, or `None` when the element is zero to working precision.
    fn val(&self, a: &Elem) -> Option<usize> {
        a.iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(j, &c)| self.n * valuation(&BigInt::from(c), self.p).unwrap() as usize + j)
            .min()
    }

    /// Residue of `a / pi^v` where `v = v_pi(a)`.
    fn unit_residue(&self, a: &Elem, v: usize) -> u64 {
        let (t, j) = (v / self.n, v % self.n);
        let c = a[j] / self.p.pow(t as u32) % self.p;
        let mut r = c;
        for _ in 0..t {
            r = r * self.p_over_pin % self.p;
        }
        r
    }
}

/// `g(x0 + z) = sum T_i z^i`, by repeated synthetic division.
fn taylor(ring: &Ring, g: &[Elem], x0: &Elem) -> Vec<Elem> {
    let mut c = g.to_vec();
    let d = c.len() - 1;
    for i in 0..d {
        for j in (i..d).rev() {
            let t = ring.mul(&c[j + 1], x0);
            c[j] = ring.add(&c[j], &t);
        }
    }
    c
}

fn count_from(ring: &Ring, g: &[Elem], x0: &Elem, k: usize, precision: usize) -> Result<usize> {
    let t = taylor(ring, g, x0);
    let pik = ring.pi_power(k);
    let mut scale = ring.constant(&BigInt::from(1));
    let mut h = Vec::with_capacity(t.len());
    for ti in &t {
        h.push(ring.mul(ti, &scale));
        scale = ring.mul(&scale, &pik);
    }
    let vals: Vec<Option<usize>> = h.iter().map(|c| ring.val(c)).collect();
    let vmin = vals
        .iter()
        .flatten()
        .min()
        .copied()
        .ok_or(Error::PrecisionTooLow { precision })?;
    let field = PrimeField::new(ring.p);
    let residual: Vec<u64> = h
        .iter()
        .zip(&vals)
        .map(|(c, v)| {
            if *v == Some(vmin) {
                ring.unit_residue(c, vmin)
            } else {
                0
            }
        })
        .collect();
    let residual = ff::trim(&field, residual);
    if residual.len() <= 1 {
        return Ok(0);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(current_seed());
    let mut count = 0;
    for (fac, mult) in ff::factor(&field, &residual, &mut rng) {
        if fac.len() != 2 {
            continue;
        }
        let z0 = (ring.p - fac[0]) % ring.p;
        if mult == 1 {
            count += 1;
            continue;
        }
        if k + 1 >= precision {
            return Err(Error::PrecisionTooLow { precision });
        }
        let mut step = ring.pi_power(k);
        step = ring.mul(&step, &ring.constant(&BigInt::from(z0)));
        count += count_from(ring, g, &ring.add(x0, &step), k + 1, precision)?;
    }
    Ok(count)
}

/// Number of roots of the monic `g` in the field generated by a root of the
/// Eisenstein polynomial `host`, working to `precision` pi-adic digits.
pub fn find_roots_in_extension(g: &IntPoly, host: &IntPoly, p: u64, precision: usize) -> Result<usize> {
    if !host.is_monic() || !host.is_eisenstein(p) {
        return Err(Error::InvalidInput("host must be monic and Eisenstein".into()));
    }
    if !g.is_monic() || g.degree() < 1 {
        return Err(Error::InvalidInput("root counting needs a monic polynomial".into()));
    }
    let ring = Ring::new(host, p, precision)?;
    let gl: Vec<Elem> = g.coeffs().iter().map(|c| ring.constant(c)).collect();
    let precision = precision.min(ring.cap());
    count_from(&ring, &gl, &ring.zero(), 0, precision)
}

/// Root count with precision starting at `2 d + 1` (`d` the discriminant
/// exponent of the host) and doubling until the search is unambiguous.
pub fn count_roots_in_extension(g: &IntPoly, host: &IntPoly, p: u64) -> Result<usize> {
    let d = valuation(&discriminant(host)?, p).unwrap_or(0) as usize;
    let mut precision = 2 * d + 1;
    loop {
        match find_roots_in_extension(g, host, p, precision) {
            Err(Error::PrecisionTooLow { .. }) if precision < 128 => precision *= 2,
            other => return other,
        }
    }
}
