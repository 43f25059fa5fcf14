//! Sparse multivariate polynomials in `x_1..x_t` with non-negative exponents.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use super::field::Field;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct MPoly<C> {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, C>,
}

/// Graded order: total degree first, then lexicographic on exponents.
fn graded_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| u64::from(e)).sum();
    let db: u64 = b.iter().map(|&e| u64::from(e)).sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

impl<C: Field> MPoly<C> {
    pub fn zero(nvars: usize) -> Self {
        MPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        MPoly::from_terms(nvars, [(vec![0; nvars], c)]).expect("dimension is consistent")
    }

    /// Sums repeated exponent vectors and drops zero coefficients.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, C)>,
    {
        let mut map: BTreeMap<Vec<u32>, C> = BTreeMap::new();
        for (exps, c) in terms {
            if exps.len() != nvars {
                return Err(Error::DimensionMismatch { expected: nvars, got: exps.len() });
            }
            let slot = map.entry(exps).or_insert_with(C::zero);
            *slot = slot.clone() + c;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(MPoly { nvars, terms: map })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> C {
        self.terms.get(exps).cloned().unwrap_or_else(C::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &C)> {
        self.terms.iter()
    }

    /// Terms from the leading monomial down (graded order, descending).
    pub fn terms_desc(&self) -> Vec<(&Vec<u32>, &C)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| graded_cmp(b.0, a.0));
        v
    }

    pub fn coefficients(&self) -> impl Iterator<Item = &C> {
        self.terms.values()
    }

    /// Max over monomials of the exponent sum; `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// `Σ c · Π n_j^{e_j}` with `0^0 = 1`.
    pub fn eval(&self, n: &[i64]) -> Result<C> {
        if n.len() != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, got: n.len() });
        }
        let mut acc = C::zero();
        for (exps, c) in &self.terms {
            let mono = exps
                .iter()
                .zip(n)
                .fold(C::one(), |m, (&e, &x)| m * C::from_i64(x).pow_i64(i64::from(e)));
            acc = acc + c.clone() * mono;
        }
        Ok(acc)
    }

    pub fn add(&self, other: &MPoly<C>) -> Result<MPoly<C>> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, got: other.nvars });
        }
        let terms = self.terms.iter().chain(other.terms.iter()).map(|(e, c)| (e.clone(), c.clone()));
        MPoly::from_terms(self.nvars, terms)
    }

    pub fn map<D: Field>(&self, f: impl Fn(&C) -> D) -> MPoly<D> {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), f(c)));
        MPoly::from_terms(self.nvars, terms).expect("dimension is preserved")
    }

    pub fn scale(&self, c: &C) -> MPoly<C> {
        self.map(|x| x.clone() * c.clone())
    }

    /// Coefficients in `x_1` (dense, low degree first) for `nvars == 1`.
    pub fn univariate_coeffs(&self) -> Result<Vec<C>> {
        if self.nvars != 1 {
            return Err(Error::DimensionMismatch { expected: 1, got: self.nvars });
        }
        let deg = self.total_degree().unwrap_or(0) as usize;
        let mut out = vec![C::zero(); if self.is_zero() { 0 } else { deg + 1 }];
        for (e, c) in &self.terms {
            out[e[0] as usize] = c.clone();
        }
        Ok(out)
    }
}

impl<C: Field + fmt::Display> fmt::Display for MPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms_desc()
            .into_iter()
            .map(|(exps, c)| {
                let vars: Vec<String> = exps
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(j, &e)| if e == 1 { format!("x{}", j + 1) } else { format!("x{}^{}", j + 1, e) })
                    .collect();
                if vars.is_empty() {
                    format!("({c})")
                } else if c.is_one() {
                    vars.join("*")
                } else {
                    format!("({c})*{}", vars.join("*"))
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::Rational;
    use crate::funcfield::RatFunc;
    use num_traits::One;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn evaluation_examples() {
        let p = MPoly::from_terms(2, [(vec![1, 1], q(1)), (vec![0, 0], q(1))]).unwrap();
        assert_eq!(p.eval(&[2, 3]).unwrap(), q(7));
        let sq = MPoly::from_terms(1, [(vec![2], q(1))]).unwrap();
        assert_eq!(sq.eval(&[-3]).unwrap(), q(9));
        let zx = MPoly::from_terms(1, [(vec![1], RatFunc::z()), (vec![0], RatFunc::one())]).unwrap();
        assert_eq!(zx.eval(&[0]).unwrap(), RatFunc::one());
    }

    #[test]
    fn zero_to_the_zero_is_one() {
        let c = MPoly::constant(2, q(5));
        assert_eq!(c.eval(&[0, 0]).unwrap(), q(5));
    }

    #[test]
    fn dimension_mismatch() {
        let p = MPoly::constant(2, q(1));
        assert!(matches!(p.eval(&[1]), Err(Error::DimensionMismatch { expected: 2, got: 1 })));
        assert!(MPoly::from_terms(2, [(vec![1], q(1))]).is_err());
    }

    #[test]
    fn duplicates_merge_and_cancel() {
        let p = MPoly::from_terms(1, [(vec![1], q(2)), (vec![1], q(-2)), (vec![0], q(1))]).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p.total_degree(), Some(0));
    }

    #[test]
    fn leading_monomial_first() {
        let p = MPoly::from_terms(2, [(vec![0, 0], q(1)), (vec![0, 1], q(2)), (vec![1, 0], q(3))]).unwrap();
        let order: Vec<Vec<u32>> = p.terms_desc().into_iter().map(|(e, _)| e.clone()).collect();
        assert_eq!(order, vec![vec![1, 0], vec![0, 1], vec![0, 0]]);
    }
}
