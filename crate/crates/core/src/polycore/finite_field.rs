//! Finite fields `F_q` and factorisation of polynomials over them.
//!
//! Two fields are provided: the prime field `F_p` and extensions `F_p[t]/(m)`.
//! Polynomials are plain coefficient vectors (constant first, no trailing
//! zeros) and the algorithms are generic over [`FiniteField`].

use std::fmt::Debug;

use num_bigint::BigUint;
use num_traits::One;
use rand::Rng;

use super::arith::{inv_mod, mul_mod};

pub trait FiniteField {
    type Elem: Clone + PartialEq + Eq + Ord + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn characteristic(&self) -> u64;
    /// Degree over the prime field.
    fn degree(&self) -> usize;
    fn embed_u64(&self, n: u64) -> Self::Elem;
    fn random<R: Rng>(&self, rng: &mut R) -> Self::Elem;

    fn order(&self) -> BigUint {
        BigUint::from(self.characteristic()).pow(self.degree() as u32)
    }

    fn pow(&self, a: &Self::Elem, e: &BigUint) -> Self::Elem {
        let mut r = self.one();
        for i in (0..e.bits()).rev() {
            r = self.mul(&r, &r);
            if e.bit(i) {
                r = self.mul(&r, a);
            }
        }
        r
    }

    /// The unique `p`-th root, `a^(q/p)`.
    fn pth_root(&self, a: &Self::Elem) -> Self::Elem {
        let e = self.order() / BigUint::from(self.characteristic());
        self.pow(a, &e)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    pub p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        PrimeField { p }
    }
}

impl FiniteField for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + self.p as u128 - *b as u128) % self.p as u128) as u64
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.p)
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> u64 {
        inv_mod(*a, self.p).expect("inverse of zero in F_p")
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn degree(&self) -> usize {
        1
    }
    fn embed_u64(&self, n: u64) -> u64 {
        n % self.p
    }
    fn random<R: Rng>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }
    fn pth_root(&self, a: &u64) -> u64 {
        *a
    }
}

/// `F_p[t]/(m)` for a monic irreducible `m` of degree `k`; elements are
/// coefficient vectors of length exactly `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtField {
    base: PrimeField,
    modulus: Vec<u64>,
}

impl ExtField {
    /// `modulus` must be monic and irreducible over `F_p` (not checked).
    pub fn new(p: u64, modulus: Vec<u64>) -> Self {
        assert!(modulus.len() >= 2 && *modulus.last().unwrap() == 1);
        ExtField {
            base: PrimeField::new(p),
            modulus,
        }
    }

    pub fn k(&self) -> usize {
        self.modulus.len() - 1
    }

    /// Embed a polynomial over `F_p` (any length) by reduction.
    pub fn reduce(&self, a: &[u64]) -> Vec<u64> {
        let k = self.k();
        let mut r: Vec<u64> = a.iter().map(|&c| c % self.base.p).collect();
        while r.len() > k {
            let top = r.pop().unwrap();
            if top == 0 {
                continue;
            }
            let off = r.len() - k;
            for (j, &mc) in self.modulus[..k].iter().enumerate() {
                r[off + j] = self.base.sub(&r[off + j], &mul_mod(top, mc, self.base.p));
            }
        }
        r.resize(k, 0);
        r
    }
}

impl FiniteField for ExtField {
    type Elem = Vec<u64>;

    fn zero(&self) -> Vec<u64> {
        vec![0; self.k()]
    }
    fn one(&self) -> Vec<u64> {
        let mut v = self.zero();
        v[0] = 1;
        v
    }
    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }
    fn sub(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| self.base.sub(x, y)).collect()
    }
    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let mut prod = vec![0u64; 2 * self.k() - 1];
        for (i, x) in a.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                prod[i + j] = self.base.add(&prod[i + j], &mul_mod(*x, *y, self.base.p));
            }
        }
        self.reduce(&prod)
    }
    fn neg(&self, a: &Vec<u64>) -> Vec<u64> {
        a.iter().map(|x| self.base.neg(x)).collect()
    }
    fn inv(&self, a: &Vec<u64>) -> Vec<u64> {
        assert!(!self.is_zero(a), "inverse of zero in F_q");
        let e = self.order() - BigUint::from(2u32);
        self.pow(a, &e)
    }
    fn is_zero(&self, a: &Vec<u64>) -> bool {
        a.iter().all(|&x| x == 0)
    }
    fn characteristic(&self) -> u64 {
        self.base.p
    }
    fn degree(&self) -> usize {
        self.k()
    }
    fn embed_u64(&self, n: u64) -> Vec<u64> {
        let mut v = self.zero();
        v[0] = n % self.base.p;
        v
    }
    fn random<R: Rng>(&self, rng: &mut R) -> Vec<u64> {
        (0..self.k()).map(|_| rng.gen_range(0..self.base.p)).collect()
    }
}

/// Polynomial over a finite field, constant term first.
pub type FPoly<F> = Vec<<F as FiniteField>::Elem>;

pub fn trim<F: FiniteField>(field: &F, mut a: FPoly<F>) -> FPoly<F> {
    while a.last().is_some_and(|c| field.is_zero(c)) {
        a.pop();
    }
    a
}

pub fn degree<F: FiniteField>(a: &FPoly<F>) -> Option<usize> {
    a.len().checked_sub(1)
}

pub fn add<F: FiniteField>(field: &F, a: &FPoly<F>, b: &FPoly<F>) -> FPoly<F> {
    let n = a.len().max(b.len());
    let z = field.zero();
    let out = (0..n)
        .map(|i| field.add(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
        .collect();
    trim(field, out)
}

pub fn sub<F: FiniteField>(field: &F, a: &FPoly<F>, b: &FPoly<F>) -> FPoly<F> {
    let n = a.len().max(b.len());
    let z = field.zero();
    let out = (0..n)
        .map(|i| field.sub(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
        .collect();
    trim(field, out)
}

pub fn mul<F: FiniteField>(field: &F, a: &FPoly<F>, b: &FPoly<F>) -> FPoly<F> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![field.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if field.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = field.add(&out[i + j], &field.mul(x, y));
        }
    }
    trim(field, out)
}

pub fn scale<F: FiniteField>(field: &F, a: &FPoly<F>, c: &F::Elem) -> FPoly<F> {
    trim(field, a.iter().map(|x| field.mul(x, c)).collect())
}

pub fn div_rem<F: FiniteField>(field: &F, a: &FPoly<F>, b: &FPoly<F>) -> (FPoly<F>, FPoly<F>) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let db = b.len() - 1;
    if a.len() <= db {
        return (Vec::new(), a.clone());
    }
    let lc_inv = field.inv(b.last().unwrap());
    let mut r = a.clone();
    let mut q = vec![field.zero(); a.len() - db];
    for i in (0..q.len()).rev() {
        let c = field.mul(&r[i + db], &lc_inv);
        if field.is_zero(&c) {
            continue;
        }
        for (j, bc) in b.iter().enumerate() {
            r[i + j] = field.sub(&r[i + j], &field.mul(&c, bc));
        }
        q[i] = c;
    }
    r.truncate(db);
    (trim(field, q), trim(field, r))
}

pub fn rem<F: FiniteField>(field: &F, a: &FPoly<F>, b: &FPoly<F>) -> FPoly<F> {
    div_rem(field, a, b).1
}

pub fn monic<F: FiniteField>(field: &F, a: &FPoly<F>) -> FPoly<F> {
    match a.last() {
        None => Vec::new(),
        Some(lc) => scale(field, a, &field.inv(lc)),
    }
}

pub fn gcd<F: FiniteField>(field: &F, a: &FPoly<F>, b: &FPoly<F>) -> FPoly<F> {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = rem(field, &a, &b);
        a = b;
        b = r;
    }
    monic(field, &a)
}

pub fn derivative<F: FiniteField>(field: &F, a: &FPoly<F>) -> FPoly<F> {
    let out = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| field.mul(c, &field.embed_u64(i as u64)))
        .collect();
    trim(field, out)
}

pub fn pow_mod<F: FiniteField>(field: &F, base: &FPoly<F>, e: &BigUint, m: &FPoly<F>) -> FPoly<F> {
    let mut r = rem(field, &vec![field.one()], m);
    let b = rem(field, base, m);
    for i in (0..e.bits()).rev() {
        r = rem(field, &mul(field, &r, &r), m);
        if e.bit(i) {
            r = rem(field, &mul(field, &r, &b), m);
        }
    }
    r
}

fn is_one<F: FiniteField>(field: &F, a: &FPoly<F>) -> bool {
    a.len() == 1 && a[0] == field.one()
}

/// Square-free decomposition of a monic polynomial: pairs `(g, m)` with the
/// `g` square-free, pairwise coprime and `f = prod g^m`.
pub fn squarefree_decomposition<F: FiniteField>(field: &F, f: &FPoly<F>) -> Vec<(FPoly<F>, usize)> {
    let f = monic(field, f);
    if degree::<F>(&f).unwrap_or(0) == 0 {
        return Vec::new();
    }
    let p = field.characteristic() as usize;
    let mut out = Vec::new();
    let mut c = gcd(field, &f, &derivative(field, &f));
    let mut w = div_rem(field, &f, &c).0;
    let mut i = 1;
    while !is_one(field, &w) {
        let y = gcd(field, &w, &c);
        let fac = div_rem(field, &w, &y).0;
        if degree::<F>(&fac).unwrap_or(0) > 0 {
            out.push((fac, i));
        }
        w = y;
        c = div_rem(field, &c, &w).0;
        i += 1;
    }
    if !is_one(field, &c) {
        // c is a polynomial in x^p: take the p-th root coefficientwise.
        let root: FPoly<F> = c.iter().step_by(p).map(|a| field.pth_root(a)).collect();
        for (g, m) in squarefree_decomposition(field, &trim(field, root)) {
            out.push((g, m * p));
        }
    }
    out
}

/// Distinct-degree factorisation of a monic square-free polynomial:
/// pairs `(g, d)` where `g` is the product of all irreducible factors of
/// degree `d`.
pub fn distinct_degree<F: FiniteField>(field: &F, f: &FPoly<F>) -> Vec<(FPoly<F>, usize)> {
    let q = field.order();
    let x: FPoly<F> = vec![field.zero(), field.one()];
    let mut out = Vec::new();
    let mut h = monic(field, f);
    let mut xp = x.clone();
    let mut d = 0;
    while degree::<F>(&h).unwrap_or(0) >= 2 * (d + 1) {
        d += 1;
        xp = pow_mod(field, &xp, &q, &h);
        let g = gcd(field, &h, &sub(field, &xp, &x));
        if degree::<F>(&g).unwrap_or(0) > 0 {
            h = div_rem(field, &h, &g).0;
            xp = rem(field, &xp, &h);
            out.push((g, d));
        }
    }
    if let Some(dh) = degree::<F>(&h) {
        if dh > 0 {
            out.push((h, dh));
        }
    }
    out
}

/// Split a monic square-free product of irreducibles of common degree `d`.
pub fn equal_degree<F: FiniteField, R: Rng>(field: &F, f: &FPoly<F>, d: usize, rng: &mut R) -> Vec<FPoly<F>> {
    let n = degree::<F>(f).unwrap_or(0);
    if n == d {
        return vec![monic(field, f)];
    }
    let q = field.order();
    let qd = q.pow(d as u32);
    let p = field.characteristic();
    loop {
        let a: FPoly<F> = trim(field, (0..n).map(|_| field.random(rng)).collect());
        if degree::<F>(&a).unwrap_or(0) == 0 {
            continue;
        }
        let g = gcd(field, &a, f);
        let candidate = if degree::<F>(&g).unwrap_or(0) > 0 {
            g
        } else if p == 2 {
            // Trace map a + a^2 + ... + a^(2^(kd-1)).
            let steps = field.degree() * d;
            let mut t = a.clone();
            let mut acc = a.clone();
            for _ in 1..steps {
                t = rem(field, &mul(field, &t, &t), f);
                acc = add(field, &acc, &t);
            }
            gcd(field, &acc, f)
        } else {
            let e = (&qd - BigUint::one()) >> 1;
            let b = pow_mod(field, &a, &e, f);
            gcd(field, &sub(field, &b, &vec![field.one()]), f)
        };
        let dc = degree::<F>(&candidate).unwrap_or(0);
        if dc > 0 && dc < n {
            let other = div_rem(field, f, &candidate).0;
            let mut out = equal_degree(field, &candidate, d, rng);
            out.extend(equal_degree(field, &other, d, rng));
            return out;
        }
    }
}

/// Complete factorisation into monic irreducibles with multiplicities,
/// sorted by degree and then coefficients.
pub fn factor<F: FiniteField, R: Rng>(field: &F, f: &FPoly<F>, rng: &mut R) -> Vec<(FPoly<F>, usize)> {
    let mut out = Vec::new();
    for (g, m) in squarefree_decomposition(field, f) {
        for (h, d) in distinct_degree(field, &g) {
            for irr in equal_degree(field, &h, d, rng) {
                out.push((irr, m));
            }
        }
    }
    out.sort_by(|a, b| {
        a.0.len()
            .cmp(&b.0.len())
            .then_with(|| a.0.iter().rev().cmp(b.0.iter().rev()))
    });
    out
}

/// Degrees of the irreducible factors, with multiplicity, without running
/// equal-degree splitting.
pub fn factor_degrees<F: FiniteField>(field: &F, f: &FPoly<F>) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (g, m) in squarefree_decomposition(field, f) {
        for (h, d) in distinct_degree(field, &g) {
            let count = degree::<F>(&h).unwrap_or(0) / d;
            for _ in 0..count {
                out.push((d, m));
            }
        }
    }
    out.sort_unstable();
    out
}

pub fn is_squarefree<F: FiniteField>(field: &F, f: &FPoly<F>) -> bool {
    if f.len() <= 2 {
        return true;
    }
    let g = gcd(field, f, &derivative(field, f));
    degree::<F>(&g) == Some(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn expand<F: FiniteField>(field: &F, facs: &[(FPoly<F>, usize)]) -> FPoly<F> {
        let mut acc = vec![field.one()];
        for (g, m) in facs {
            for _ in 0..*m {
                acc = mul(field, &acc, g);
            }
        }
        acc
    }

    #[test]
    fn factor_over_f2() {
        let f2 = PrimeField::new(2);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        // x^5 + x + 1 = (x^2+x+1)(x^3+x^2+1) over F_2
        let f = vec![1, 1, 0, 0, 0, 1];
        let facs = factor(&f2, &f, &mut rng);
        assert_eq!(facs, vec![(vec![1, 1, 1], 1), (vec![1, 0, 1, 1], 1)]);
    }

    #[test]
    fn repeated_factors_in_char_p() {
        let f5 = PrimeField::new(5);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        // (x - 1)^5 = x^5 - 1 over F_5
        let f = vec![4, 0, 0, 0, 0, 1];
        assert_eq!(factor(&f5, &f, &mut rng), vec![(vec![4, 1], 5)]);
        // (x+1)^2 (x+2)^3 (x^2+2)
        let facs_in = vec![(vec![1u64, 1], 2), (vec![2, 1], 3), (vec![2, 0, 1], 1)];
        let g = expand(&f5, &facs_in);
        let mut got = factor(&f5, &g, &mut rng);
        got.sort();
        let mut want = facs_in.clone();
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn extension_field_arithmetic() {
        // F_9 = F_3[t]/(t^2 + 1)
        let f9 = ExtField::new(3, vec![1, 0, 1]);
        let t = vec![0, 1];
        assert_eq!(f9.mul(&t, &t), vec![2, 0]);
        let inv = f9.inv(&vec![1, 1]);
        assert_eq!(f9.mul(&inv, &vec![1, 1]), f9.one());
        // x^2 + 1 splits over F_9 but is irreducible over F_3.
        let poly = vec![f9.one(), f9.zero(), f9.one()];
        assert_eq!(factor_degrees(&f9, &poly), vec![(1, 1), (1, 1)]);
        assert_eq!(factor_degrees(&PrimeField::new(3), &vec![1, 0, 1]), vec![(2, 1)]);
    }

    #[test]
    fn char_two_extension_splitting() {
        // F_4 = F_2[t]/(t^2+t+1); x^2 + x + 1 splits there.
        let f4 = ExtField::new(2, vec![1, 1, 1]);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let poly = vec![f4.one(), f4.one(), f4.one()];
        let facs = factor(&f4, &poly, &mut rng);
        assert_eq!(facs.len(), 2);
        assert!(facs.iter().all(|(g, m)| g.len() == 2 && *m == 1));
    }

    proptest::proptest! {
        #[test]
        fn factorization_multiplies_back(cs in proptest::collection::vec(0u64..7, 1..9), seed in 0u64..1000) {
            let f7 = PrimeField::new(7);
            let mut f = trim(&f7, cs);
            f.push(1);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let facs = factor(&f7, &f, &mut rng);
            proptest::prop_assert_eq!(expand(&f7, &facs), f.clone());
            for (g, _) in &facs {
                proptest::prop_assert_eq!(factor_degrees(&f7, g), vec![(g.len() - 1, 1)]);
            }
        }
    }
}
