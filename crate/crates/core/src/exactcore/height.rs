//! Absolute height over ℚ.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// `H(x)`: the largest absolute entry of the primitive integer vector
/// proportional to `x`.
pub fn rational_height(xs: &[Rational]) -> Result<BigInt> {
    if xs.iter().all(Zero::is_zero) {
        return Err(Error::ZeroVector);
    }
    let den = xs.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = xs.iter().map(|x| (x * &den).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    Ok(ints.iter().map(|c| (c / &g).abs()).max().expect("nonempty"))
}

/// `H(a) := H((1, a))`, i.e. `max(|num a|, |den a|)`.
pub fn rational_height_single(a: &Rational) -> BigInt {
    a.numer().abs().max(a.denom().clone())
}
