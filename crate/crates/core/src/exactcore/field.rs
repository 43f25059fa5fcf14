//! Coefficient fields and exact Gaussian elimination over them.

use std::fmt::Debug;
use std::ops::{Div, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::Rational;

/// An exact field: ℚ or ℚ(z) in this crate.
pub trait Field:
    Clone + PartialEq + Debug + Zero + One + Neg<Output = Self> + Sub<Output = Self> + Div<Output = Self> + Send + Sync
{
    fn from_bigint(n: &BigInt) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_bigint(&BigInt::from(n))
    }

    /// Integer power. Panics for a zero base with negative exponent.
    fn pow_i64(&self, e: i64) -> Self {
        let mut base = if e < 0 { Self::one() / self.clone() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }
}

impl Field for Rational {
    fn from_bigint(n: &BigInt) -> Self {
        Rational::from_integer(n.clone())
    }
}

/// In-place reduction to row echelon form. Returns the pivot columns and
/// the sign of the row permutation.
pub fn row_echelon<F: Field>(m: &mut [Vec<F>]) -> (Vec<usize>, bool) {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut negate = false;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            m.swap(p, r);
            negate = !negate;
        }
        let pivot = m[r][c].clone();
        for i in r + 1..rows {
            if m[i][c].is_zero() {
                continue;
            }
            let factor = m[i][c].clone() / pivot.clone();
            for j in c..cols {
                let delta = factor.clone() * m[r][j].clone();
                m[i][j] = m[i][j].clone() - delta;
            }
        }
        pivots.push(c);
        r += 1;
    }
    (pivots, negate)
}

pub fn rank<F: Field>(mut m: Vec<Vec<F>>) -> usize {
    row_echelon(&mut m).0.len()
}

/// Determinant of a square matrix (1 for the empty matrix).
pub fn determinant<F: Field>(mut m: Vec<Vec<F>>) -> F {
    let n = m.len();
    let (pivots, negate) = row_echelon(&mut m);
    if pivots.len() < n {
        return F::zero();
    }
    let det = (0..n).fold(F::one(), |acc, i| acc * m[i][i].clone());
    if negate {
        -det
    } else {
        det
    }
}

/// A solution of `a x = b` (free variables set to zero), or `None` when the
/// system is inconsistent.
pub fn solve<F: Field>(a: &[Vec<F>], b: &[F]) -> Option<Vec<F>> {
    let cols = a.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<F>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| row.iter().cloned().chain(std::iter::once(rhs.clone())).collect())
        .collect();
    let (pivots, _) = row_echelon(&mut aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![F::zero(); cols];
    for (r, &c) in pivots.iter().enumerate().rev() {
        let mut acc = aug[r][cols].clone();
        for j in c + 1..cols {
            acc = acc - aug[r][j].clone() * x[j].clone();
        }
        x[c] = acc / aug[r][c].clone();
    }
    Some(x)
}
