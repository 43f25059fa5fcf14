//! Projective heights on ℚ(z) and linear independence over the constants.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::place::{divisor, Place};
use super::RatFunc;
use crate::error::{Error, Result};
use crate::exactcore::field::rank;
use crate::exactcore::{Poly, Rational};

/// `ℋ(f_1, …, f_n) = −Σ_v deg(v)·min_i μ_v(f_i)`; zero entries are skipped.
pub fn ff_height(fs: &[RatFunc]) -> Result<u64> {
    let nonzero: Vec<&RatFunc> = fs.iter().filter(|f| !f.is_zero()).collect();
    if nonzero.is_empty() {
        return Err(Error::ZeroVector);
    }
    let divisors = nonzero.iter().map(|f| divisor(f)).collect::<Result<Vec<_>>>()?;
    let mut mins: BTreeMap<&Place, i64> = BTreeMap::new();
    for d in &divisors {
        for v in d.places() {
            mins.entry(v).or_insert_with(|| divisors.iter().map(|e| e.get(v)).min().unwrap_or(0));
        }
    }
    let total: i64 = mins.iter().map(|(v, m)| v.degree() as i64 * m).sum();
    Ok((-total) as u64)
}

/// `ℋ(f) := ℋ((1, f))`; zero maps to 0.
pub fn ff_height_single(f: &RatFunc) -> u64 {
    ff_height(&[RatFunc::one(), f.clone()]).expect("first entry is nonzero")
}

/// Coefficient vectors over ℚ of `fs` after clearing a common denominator.
pub(crate) fn coefficient_rows(fs: &[&RatFunc]) -> Vec<Vec<Rational>> {
    let den = fs.iter().fold(Poly::one(), |acc, f| {
        let g = acc.gcd(f.denom());
        &acc * &f.denom().exact_div(&g).expect("gcd divides")
    });
    let nums: Vec<Poly> = fs.iter().map(|f| f.numer() * &den.exact_div(f.denom()).expect("lcm")).collect();
    let width = nums.iter().map(|p| p.coeffs().len()).max().unwrap_or(0);
    nums.iter().map(|p| (0..width).map(|k| p.coeff(k)).collect()).collect()
}

/// Dimension of the ℚ-span (equivalently ℂ-span) of `fs`.
pub fn constant_rank(fs: &[RatFunc]) -> usize {
    rank(coefficient_rows(&fs.iter().collect::<Vec<_>>()))
}

pub fn linearly_independent(fs: &[RatFunc]) -> bool {
    constant_rank(fs) == fs.len()
}
