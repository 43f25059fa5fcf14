//! Closed rational intervals and certified natural logarithms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exactcore::Rational;

#[derive(Clone, Debug, PartialEq)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn point(x: Rational) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn add(&self, o: &Interval) -> Interval {
        Interval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    pub fn scale(&self, c: &Rational) -> Interval {
        let (a, b) = (&self.lo * c, &self.hi * c);
        if c.is_negative() {
            Interval { lo: b, hi: a }
        } else {
            Interval { lo: a, hi: b }
        }
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        let products = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        Interval {
            lo: products.iter().min().unwrap().clone(),
            hi: products.iter().max().unwrap().clone(),
        }
    }

    /// Division by an interval of strictly positive numbers.
    pub fn div_positive(&self, o: &Interval) -> Interval {
        assert!(o.lo.is_positive(), "divisor interval must be positive");
        let inv = Interval { lo: o.hi.recip(), hi: o.lo.recip() };
        self.mul(&inv)
    }

    pub fn ceil_lo(&self) -> BigInt {
        self.lo.ceil().to_integer()
    }

    pub fn ceil_hi(&self) -> BigInt {
        self.hi.ceil().to_integer()
    }

    pub fn hi_f64(&self) -> f64 {
        rational_to_f64(&self.hi)
    }
}

pub(crate) fn rational_to_f64(x: &Rational) -> f64 {
    let (n, d) = (x.numer(), x.denom());
    let shift = n.bits().max(d.bits()).saturating_sub(60);
    let n = (n >> shift).to_string().parse::<f64>().unwrap_or(f64::NAN);
    let d = (d >> shift).to_string().parse::<f64>().unwrap_or(f64::NAN);
    if d == 0.0 {
        return if x.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY };
    }
    n / d
}

/// `2^prec · atanh(u)` enclosed in `[lo, hi]` for rational `0 ≤ u ≤ 1/3`.
fn atanh_fixed(u: &Rational, prec: u32) -> (BigInt, BigInt) {
    let scale = BigInt::one() << prec;
    let u2 = u * u;
    let u2_lo = (&u2 * &scale).floor().to_integer();
    let u2_hi = (&u2 * &scale).ceil().to_integer();
    let mut p_lo = (u * &scale).floor().to_integer();
    let mut p_hi = (u * &scale).ceil().to_integer();
    let (mut lo, mut hi) = (BigInt::zero(), BigInt::zero());
    let mut k: u64 = 1;
    while !p_hi.is_zero() {
        lo += p_lo.div_floor(&BigInt::from(k));
        hi += p_hi.div_ceil(&BigInt::from(k));
        p_lo = (&p_lo * &u2_lo) >> prec;
        p_hi = (&p_hi * &u2_hi + &scale - 1u32) >> prec;
        k += 2;
        // the remaining tail is below p_hi·Σ u^{2i} ≤ (9/8)·p_hi
        if p_hi < BigInt::from(k) {
            hi += (&p_hi * 9u32).div_ceil(&BigInt::from(8)) + 1u32;
            break;
        }
    }
    (lo, hi)
}

/// Certified `ln x` for rational `x > 0`, of width about `2^{-prec}`
/// times `|log2 x|`.
pub fn ln_interval(x: &Rational, prec: u32) -> Interval {
    assert!(x.is_positive(), "logarithm of a non-positive number");
    if x.is_one() {
        return Interval::point(Rational::zero());
    }
    // x = y·2^k with 1 ≤ y < 2
    let mut k = x.numer().bits() as i64 - x.denom().bits() as i64;
    let pow2 = |e: i64| {
        if e >= 0 {
            Rational::from_integer(BigInt::one() << e as u64)
        } else {
            Rational::new(BigInt::one(), BigInt::one() << (-e) as u64)
        }
    };
    let mut y = x / pow2(k);
    while y < Rational::one() {
        y *= Rational::from_integer(2.into());
        k -= 1;
    }
    while y >= Rational::from_integer(2.into()) {
        y /= Rational::from_integer(2.into());
        k += 1;
    }
    let guard = prec + 8 + 64 - (k.unsigned_abs().max(1).leading_zeros());
    let scale = Rational::from_integer(BigInt::one() << guard);
    let u = (&y - Rational::one()) / (&y + Rational::one());
    let (ly_lo, ly_hi) = atanh_fixed(&u, guard);
    let (l2_lo, l2_hi) = atanh_fixed(&Rational::new(1.into(), 3.into()), guard);
    let two = BigInt::from(2);
    let (lo, hi) = if k >= 0 {
        (&two * (ly_lo + &l2_lo * k), &two * (ly_hi + &l2_hi * k))
    } else {
        (&two * (ly_lo + &l2_hi * k), &two * (ly_hi + &l2_lo * k))
    };
    Interval { lo: Rational::from_integer(lo) / &scale, hi: Rational::from_integer(hi) / &scale }
}

/// `ln` of a positive interval, monotone.
pub fn ln_of(x: &Interval, prec: u32) -> Interval {
    Interval { lo: ln_interval(&x.lo, prec).lo, hi: ln_interval(&x.hi, prec).hi }
}
