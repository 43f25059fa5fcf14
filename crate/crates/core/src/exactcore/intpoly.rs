//! Helpers on primitive integer polynomials (`Vec<BigInt>`, low degree first).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::modular::{self, PrimeModulus, SmallPrime};

const GCD_PRIMES: [u64; 2] = [2_305_843_009_213_693_951, 4_611_686_018_427_387_847];

pub(crate) fn trim(mut a: Vec<BigInt>) -> Vec<BigInt> {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

pub(crate) fn content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
}

/// Primitive part with positive leading coefficient.
pub(crate) fn primitive(a: &[BigInt]) -> Vec<BigInt> {
    let mut c = content(a);
    if c.is_zero() {
        return Vec::new();
    }
    if a.last().is_some_and(Signed::is_negative) {
        c = -c;
    }
    a.iter().map(|x| x / &c).collect()
}

/// Pseudo-remainder of `a` by `b`.
fn prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for x in r.iter_mut() {
            *x *= lb;
        }
        for (j, y) in b.iter().enumerate() {
            r[dr - db + j] -= &lr * y;
        }
        r = trim(r);
    }
    r
}

/// Degree of `gcd(a, b) mod p` is an upper bound on the true gcd degree
/// whenever `p` divides neither leading coefficient.
fn coprime_mod_p(a: &[BigInt], b: &[BigInt]) -> bool {
    for &p in &GCD_PRIMES {
        let m = SmallPrime(p);
        let bp = BigInt::from(p);
        if a.last().unwrap().is_multiple_of(&bp) || b.last().unwrap().is_multiple_of(&bp) {
            continue;
        }
        let g = modular::gcd(&m, &modular::from_ints(&m, a), &modular::from_ints(&m, b));
        return modular::degree(&g) == Some(0);
    }
    false
}

/// Primitive gcd of two nonzero integer polynomials; `None` when the gcd is
/// a constant.
pub(crate) fn gcd(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    if coprime_mod_p(a, b) {
        return None;
    }
    let (mut a, mut b) = if a.len() >= b.len() {
        (primitive(a), primitive(b))
    } else {
        (primitive(b), primitive(a))
    };
    while !b.is_empty() {
        let r = primitive(&prem(&a, &b));
        a = b;
        b = r;
    }
    (a.len() > 1).then_some(a)
}

/// Exact quotient `a / b` over ℤ when it exists.
pub(crate) fn exact_div(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let db = b.len().checked_sub(1)?;
    if a.len() <= db {
        return a.is_empty().then(Vec::new);
    }
    let lb = &b[db];
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let (c, rem) = r[k + db].div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        if c.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            r[k + j] -= &c * y;
        }
        q[k] = c;
    }
    r.iter().all(Zero::is_zero).then(|| trim(q))
}

pub(crate) fn norm1(a: &[BigInt]) -> BigInt {
    a.iter().map(|c| c.abs()).sum()
}

/// Symmetric lift of a polynomial mod `p` into `(-p/2, p/2]`.
pub(crate) fn symmetric_lift<M: PrimeModulus>(m: &M, a: &[M::E]) -> Vec<BigInt> {
    let p = m.modulus();
    let half = &p >> 1;
    trim(
        a.iter()
            .map(|c| {
                let v = m.lift(c);
                if v > half {
                    v - &p
                } else {
                    v
                }
            })
            .collect(),
    )
}
