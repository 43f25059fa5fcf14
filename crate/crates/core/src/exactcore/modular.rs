//! Polynomial arithmetic over prime fields, used by the integer gcd fast
//! path and by factorization over ℚ.

use std::fmt::Debug;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

pub(crate) trait PrimeModulus: Sync {
    type E: Clone + PartialEq + Debug;

    fn modulus(&self) -> BigInt;
    fn reduce(&self, x: &BigInt) -> Self::E;
    /// Representative in `[0, p)`.
    fn lift(&self, x: &Self::E) -> BigInt;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn from_u64(&self, x: u64) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Self::E;
    fn random<R: Rng>(&self, rng: &mut R) -> Self::E;
}

/// Prime below 2^63, so products fit in `u128`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct SmallPrime(pub u64);

#[derive(Clone, Debug)]
pub(crate) struct BigPrime(pub BigInt);

impl PrimeModulus for SmallPrime {
    type E = u64;

    fn modulus(&self) -> BigInt {
        BigInt::from(self.0)
    }
    fn reduce(&self, x: &BigInt) -> u64 {
        x.mod_floor(&BigInt::from(self.0)).to_u64().expect("reduced value fits")
    }
    fn lift(&self, x: &u64) -> BigInt {
        BigInt::from(*x)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_u64(&self, x: u64) -> u64 {
        x % self.0
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.0 as u128) as u64
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + self.0 as u128 - *b as u128) % self.0 as u128) as u64
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.0 as u128) as u64
    }
    fn inv(&self, a: &u64) -> u64 {
        let (mut t, mut new_t) = (0i128, 1i128);
        let (mut r, mut new_r) = (self.0 as i128, *a as i128);
        while new_r != 0 {
            let q = r / new_r;
            (t, new_t) = (new_t, t - q * new_t);
            (r, new_r) = (new_r, r - q * new_r);
        }
        assert_eq!(r, 1, "inverse of a non-unit modulo p");
        t.rem_euclid(self.0 as i128) as u64
    }
    fn random<R: Rng>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.0)
    }
}

impl PrimeModulus for BigPrime {
    type E = BigInt;

    fn modulus(&self) -> BigInt {
        self.0.clone()
    }
    fn reduce(&self, x: &BigInt) -> BigInt {
        x.mod_floor(&self.0)
    }
    fn lift(&self, x: &BigInt) -> BigInt {
        x.clone()
    }
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn from_u64(&self, x: u64) -> BigInt {
        BigInt::from(x).mod_floor(&self.0)
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        (a + b).mod_floor(&self.0)
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        (a - b).mod_floor(&self.0)
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        (a * b).mod_floor(&self.0)
    }
    fn inv(&self, a: &BigInt) -> BigInt {
        let e = a.extended_gcd(&self.0);
        assert!(e.gcd.is_one(), "inverse of a non-unit modulo p");
        e.x.mod_floor(&self.0)
    }
    fn random<R: Rng>(&self, rng: &mut R) -> BigInt {
        let bytes = (self.0.bits() as usize).div_ceil(8) + 8;
        let buf: Vec<u8> = (0..bytes).map(|_| rng.gen()).collect();
        BigInt::from_bytes_le(Sign::Plus, &buf).mod_floor(&self.0)
    }
}

pub(crate) fn trim<M: PrimeModulus>(m: &M, mut v: Vec<M::E>) -> Vec<M::E> {
    while v.last().is_some_and(|c| m.is_zero(c)) {
        v.pop();
    }
    v
}

pub(crate) fn from_ints<M: PrimeModulus>(m: &M, a: &[BigInt]) -> Vec<M::E> {
    trim(m, a.iter().map(|c| m.reduce(c)).collect())
}

pub(crate) fn degree<E>(a: &[E]) -> Option<usize> {
    a.len().checked_sub(1)
}

pub(crate) fn sub<M: PrimeModulus>(m: &M, a: &[M::E], b: &[M::E]) -> Vec<M::E> {
    let n = a.len().max(b.len());
    let zero = m.zero();
    let out = (0..n).map(|i| m.sub(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero))).collect();
    trim(m, out)
}

pub(crate) fn mul<M: PrimeModulus>(m: &M, a: &[M::E], b: &[M::E]) -> Vec<M::E> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![m.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if m.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = m.add(&out[i + j], &m.mul(x, y));
        }
    }
    trim(m, out)
}

pub(crate) fn scale<M: PrimeModulus>(m: &M, a: &[M::E], c: &M::E) -> Vec<M::E> {
    trim(m, a.iter().map(|x| m.mul(x, c)).collect())
}

pub(crate) fn monic<M: PrimeModulus>(m: &M, a: &[M::E]) -> Vec<M::E> {
    match a.last() {
        None => Vec::new(),
        Some(lc) => scale(m, a, &m.inv(lc)),
    }
}

pub(crate) fn div_rem<M: PrimeModulus>(m: &M, a: &[M::E], b: &[M::E]) -> (Vec<M::E>, Vec<M::E>) {
    let db = degree(b).expect("division by zero polynomial mod p");
    let Some(da) = degree(a) else {
        return (Vec::new(), Vec::new());
    };
    if da < db {
        return (Vec::new(), a.to_vec());
    }
    let inv_lc = m.inv(&b[db]);
    let mut rem = a.to_vec();
    let mut quot = vec![m.zero(); da - db + 1];
    for k in (0..=da - db).rev() {
        let c = m.mul(&rem[k + db], &inv_lc);
        if m.is_zero(&c) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            rem[k + j] = m.sub(&rem[k + j], &m.mul(&c, y));
        }
        quot[k] = c;
    }
    rem.truncate(db);
    (trim(m, quot), trim(m, rem))
}

pub(crate) fn rem<M: PrimeModulus>(m: &M, a: &[M::E], b: &[M::E]) -> Vec<M::E> {
    div_rem(m, a, b).1
}

/// Monic gcd.
pub(crate) fn gcd<M: PrimeModulus>(m: &M, a: &[M::E], b: &[M::E]) -> Vec<M::E> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    while !b.is_empty() {
        let r = rem(m, &a, &b);
        a = b;
        b = r;
    }
    monic(m, &a)
}

pub(crate) fn derivative<M: PrimeModulus>(m: &M, a: &[M::E]) -> Vec<M::E> {
    trim(m, a.iter().enumerate().skip(1).map(|(i, c)| m.mul(c, &m.from_u64(i as u64))).collect())
}

/// `base^exp mod f`.
pub(crate) fn pow_mod<M: PrimeModulus>(m: &M, base: &[M::E], exp: &BigUint, f: &[M::E]) -> Vec<M::E> {
    let mut result = vec![m.one()];
    let base = rem(m, base, f);
    for i in (0..exp.bits()).rev() {
        result = rem(m, &mul(m, &result, &result), f);
        if exp.bit(i) {
            result = rem(m, &mul(m, &result, &base), f);
        }
    }
    rem(m, &result, f)
}

/// Distinct-degree factorization of a monic squarefree polynomial:
/// pairs `(product of all irreducible factors of degree d, d)`.
fn distinct_degree<M: PrimeModulus>(m: &M, f: &[M::E]) -> Vec<(Vec<M::E>, usize)> {
    let p = m.modulus().to_biguint().expect("positive modulus");
    let x = vec![m.zero(), m.one()];
    let mut out = Vec::new();
    let mut rest = f.to_vec();
    let mut h = x.clone();
    let mut d = 0;
    while degree(&rest).unwrap_or(0) >= 2 * (d + 1) {
        d += 1;
        h = pow_mod(m, &h, &p, &rest);
        let g = gcd(m, &sub(m, &h, &x), &rest);
        if degree(&g).unwrap_or(0) > 0 {
            rest = div_rem(m, &rest, &g).0;
            h = rem(m, &h, &rest);
            out.push((g, d));
        }
    }
    if degree(&rest).unwrap_or(0) > 0 {
        let d = degree(&rest).unwrap();
        out.push((rest, d));
    }
    out
}

/// Splits a monic product of irreducibles all of degree `d` (odd `p`).
fn equal_degree<M: PrimeModulus, R: Rng>(m: &M, f: Vec<M::E>, d: usize, rng: &mut R, out: &mut Vec<Vec<M::E>>) {
    let n = degree(&f).unwrap_or(0);
    if n <= d {
        out.push(f);
        return;
    }
    let p = m.modulus().to_biguint().expect("positive modulus");
    let exp = (p.pow(d as u32) - BigUint::one()) >> 1;
    loop {
        let a = trim(m, (0..n).map(|_| m.random(rng)).collect());
        if degree(&a).unwrap_or(0) == 0 {
            continue;
        }
        let b = sub(m, &pow_mod(m, &a, &exp, &f), &[m.one()]);
        let g = gcd(m, &b, &f);
        let dg = degree(&g).unwrap_or(0);
        if dg > 0 && dg < n {
            let h = div_rem(m, &f, &g).0;
            equal_degree(m, g, d, rng, out);
            equal_degree(m, monic(m, &h), d, rng, out);
            return;
        }
    }
}

/// Monic irreducible factors of a monic squarefree polynomial over F_p.
pub(crate) fn factor_squarefree<M: PrimeModulus, R: Rng>(m: &M, f: &[M::E], rng: &mut R) -> Vec<Vec<M::E>> {
    let mut out = Vec::new();
    for (g, d) in distinct_degree(m, f) {
        equal_degree(m, g, d, rng, &mut out);
    }
    out
}
