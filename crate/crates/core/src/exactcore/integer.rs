//! Primality, prime search and integer factorization.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

const MR_BASES: [u32; 20] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71];

/// Miller-Rabin with fixed bases: deterministic below 3.3·10^24 and
/// overwhelmingly reliable above.
pub fn is_prime(n: &BigInt) -> bool {
    if n < &BigInt::from(2) {
        return false;
    }
    for &b in &MR_BASES {
        let b = BigInt::from(b);
        if *n == b {
            return true;
        }
        if n.is_multiple_of(&b) {
            return false;
        }
    }
    let one = BigInt::one();
    let n1 = n - &one;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    'witness: for &b in &MR_BASES {
        let mut x = BigInt::from(b).modpow(&d, n);
        if x == one || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Smallest prime strictly greater than `n`.
pub fn next_prime(n: &BigInt) -> BigInt {
    let mut c: BigInt = n + 1;
    if c <= BigInt::from(2) {
        return BigInt::from(2);
    }
    if c.is_even() {
        c += 1;
    }
    while !is_prime(&c) {
        c += 2;
    }
    c
}

fn pollard_brent(n: &BigInt) -> BigInt {
    let mut c = BigInt::one();
    loop {
        let f = |x: &BigInt| (x * x + &c) % n;
        let mut y = BigInt::from(2);
        let mut r: u64 = 1;
        let mut q = BigInt::one();
        let mut g = BigInt::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..(r - k).min(64) {
                    y = f(&y);
                    q = (&q * (&x - &y).abs()) % n;
                }
                g = q.gcd(n);
                k += 64;
            }
            r *= 2;
        }
        if g == *n {
            loop {
                ys = f(&ys);
                g = (&x - &ys).abs().gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if g != *n {
            return g;
        }
        c += 1;
    }
}

fn factor_into(n: BigInt, out: &mut BTreeMap<BigInt, u32>) {
    if n.is_one() {
        return;
    }
    if is_prime(&n) {
        *out.entry(n).or_insert(0) += 1;
        return;
    }
    let d = pollard_brent(&n);
    factor_into(&n / &d, out);
    factor_into(d, out);
}

/// Prime factorization of `|n|`; empty for `n = ±1`. Panics on zero.
pub fn factor_integer(n: &BigInt) -> BTreeMap<BigInt, u32> {
    assert!(!n.is_zero(), "factor_integer(0)");
    let mut n = n.abs();
    let mut out = BTreeMap::new();
    for p in 2u32..1000 {
        if p > 2 && p % 2 == 0 {
            continue;
        }
        let bp = BigInt::from(p);
        if &bp * &bp > n {
            break;
        }
        while n.is_multiple_of(&bp) {
            n /= &bp;
            *out.entry(bp.clone()).or_insert(0) += 1;
        }
    }
    factor_into(n, &mut out);
    out
}

/// All positive divisors of `|n|`, ascending. Panics on zero.
pub fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut divs = vec![BigInt::one()];
    for (p, e) in factor_integer(n) {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}

/// Exponent of `p` in `|n|` for nonzero `n`.
pub fn multiplicity(n: &BigInt, p: &BigInt) -> u32 {
    let mut n = n.clone();
    let mut k = 0;
    while !n.is_zero() && n.is_multiple_of(p) {
        n /= p;
        k += 1;
    }
    k
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// `⌊log2 |n|⌋ + fractional part`, accurate to about 1e-12 relative.
/// Reporting only.
pub fn log2_bigint(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits <= 64 {
        return n.abs().to_f64().unwrap_or(f64::NAN).log2();
    }
    let shift = bits - 64;
    let top = (n.abs() >> shift).to_f64().unwrap_or(f64::NAN);
    top.log2() + shift as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        assert!(is_prime(&BigInt::from(2)));
        assert!(is_prime(&BigInt::from(1_000_003)));
        assert!(!is_prime(&BigInt::from(1)));
        assert!(!is_prime(&BigInt::from(561)));
        assert!(is_prime(&((BigInt::one() << 127) - 1)));
        assert_eq!(next_prime(&BigInt::from(13)), BigInt::from(17));
    }

    #[test]
    fn factoring() {
        let f = factor_integer(&BigInt::from(-360));
        let expected: BTreeMap<BigInt, u32> =
            [(2, 3), (3, 2), (5, 1)].into_iter().map(|(p, e)| (BigInt::from(p), e)).collect();
        assert_eq!(f, expected);
        let big = BigInt::from(1_000_003u64) * BigInt::from(998_244_353u64);
        assert_eq!(factor_integer(&big).len(), 2);
        assert!(factor_integer(&BigInt::one()).is_empty());
    }

    #[test]
    fn divisor_list() {
        let d: Vec<i64> = divisors(&BigInt::from(12)).iter().map(|x| x.to_i64().unwrap()).collect();
        assert_eq!(d, vec![1, 2, 3, 4, 6, 12]);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(1, 2), BigInt::zero());
        assert_eq!(factorial(5), BigInt::from(120));
    }
}
