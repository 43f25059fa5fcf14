//! The Wronskian of `Ξ = {π_il·α_i^n}` for single-parameter sequences over
//! ℚ(z), the polynomial `Δ(x)` and the thresholds `C11`, `C12`, `C7`.
//!
//! Differentiating `Q(x)·α^x` with respect to `z` gives
//! `(∂_z Q(x) + x·(α'/α)·Q(x))·α^x`, so the entries of the Wronskian matrix
//! divided by `α_i^n` are the polynomials
//!
//! ```text
//! Q_0(x) = π_il,   Q_{j+1}(x) = ∂_z Q_j(x) + x·(α_i'/α_i)·Q_j(x).
//! ```
//!
//! The printed variant `Q_{j+1} = Q_j + x·Q_j'·α'/α` does not reproduce the
//! Wronskian (already for `z^n + (z+1)^n` it gives a different `Δ`).

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactcore::field::determinant;
use crate::exactcore::{integer_roots, Poly, Rational};
use crate::funcfield::height::coefficient_rows;
use crate::funcfield::RatFunc;
use crate::model::{decompose_coeffs, CoeffDecomp, FieldTag, MultiRecSpec};

/// Polynomials in `x` over ℚ(z), low degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Default)]
struct LPoly(Vec<RatFunc>);

impl LPoly {
    fn new(mut c: Vec<RatFunc>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        LPoly(c)
    }

    fn constant(c: RatFunc) -> Self {
        LPoly::new(vec![c])
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn coeff(&self, k: usize) -> RatFunc {
        self.0.get(k).cloned().unwrap_or_else(RatFunc::zero)
    }

    fn add(&self, o: &LPoly) -> LPoly {
        let n = self.0.len().max(o.0.len());
        LPoly::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }

    fn sub(&self, o: &LPoly) -> LPoly {
        let n = self.0.len().max(o.0.len());
        LPoly::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }

    fn mul(&self, o: &LPoly) -> LPoly {
        if self.is_zero() || o.is_zero() {
            return LPoly::default();
        }
        let mut out = vec![RatFunc::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        LPoly::new(out)
    }

    /// `x·c·self`.
    fn shift_scale(&self, c: &RatFunc) -> LPoly {
        let mut out = vec![RatFunc::zero()];
        out.extend(self.0.iter().map(|a| a * c));
        LPoly::new(out)
    }

    fn d_dz(&self) -> LPoly {
        LPoly::new(self.0.iter().map(RatFunc::derivative).collect())
    }

    fn neg(&self) -> LPoly {
        LPoly(self.0.iter().map(|c| -c).collect())
    }

    /// Exact quotient; panics if `d` does not divide `self`.
    fn exact_div(&self, d: &LPoly) -> LPoly {
        let dl = d.0.len() - 1;
        let lead_inv = d.0[dl].inv().expect("nonzero leading coefficient");
        let mut r = self.0.clone();
        if r.len() <= dl {
            assert!(self.is_zero(), "inexact division in Bareiss elimination");
            return LPoly::default();
        }
        let mut q = vec![RatFunc::zero(); r.len() - dl];
        for k in (0..q.len()).rev() {
            let c = &r[k + dl] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, y) in d.0.iter().enumerate() {
                r[k + j] = &r[k + j] - &(&c * y);
            }
            q[k] = c;
        }
        assert!(r.iter().all(Zero::is_zero), "inexact division in Bareiss elimination");
        LPoly::new(q)
    }

    fn eval(&self, n: i64) -> RatFunc {
        let x = RatFunc::from_int(n);
        self.0.iter().rev().fold(RatFunc::zero(), |acc, c| acc * x.clone() + c.clone())
    }
}

/// Fraction-free determinant over `L[x]`.
fn bareiss(mut m: Vec<Vec<LPoly>>) -> LPoly {
    let n = m.len();
    if n == 0 {
        return LPoly::constant(RatFunc::one());
    }
    let mut negate = false;
    let mut prev = LPoly::constant(RatFunc::one());
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return LPoly::default();
            };
            m.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.exact_div(&prev);
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        det.neg()
    } else {
        det
    }
}

/// `Δ(x)`, a polynomial in `x` with coefficients in ℚ(z).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DeltaPoly {
    pub q: usize,
    /// Coefficients of `x^0, x^1, …`.
    pub coeffs: Vec<RatFunc>,
}

impl DeltaPoly {
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, n: i64) -> RatFunc {
        LPoly(self.coeffs.clone()).eval(n)
    }

    /// Every integer `n` with `Δ(n) = 0` identically in `z`.
    pub fn integer_roots(&self) -> Result<Vec<BigInt>> {
        if self.is_zero() {
            return Err(Error::Degenerate("Delta vanishes identically".into()));
        }
        // clear z-denominators; each power of z yields a rational polynomial in x
        let rows = coefficient_rows(&self.coeffs.iter().collect::<Vec<_>>());
        let width = rows.iter().map(Vec::len).max().unwrap_or(0);
        let mut common: Option<BTreeSet<BigInt>> = None;
        for m in 0..width {
            let rm = Poly::from_coeffs(rows.iter().map(|row| row.get(m).cloned().unwrap_or_else(Rational::zero)).collect());
            if rm.is_zero() {
                continue;
            }
            let roots: BTreeSet<BigInt> = integer_roots(&rm)?.into_iter().collect();
            common = Some(match common {
                None => roots,
                Some(c) => c.intersection(&roots).cloned().collect(),
            });
        }
        Ok(common.unwrap_or_default().into_iter().collect())
    }
}

impl fmt::Display for DeltaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("({c})"),
                1 => format!("({c})*x"),
                _ => format!("({c})*x^{k}"),
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

fn single_parameter(spec: &MultiRecSpec) -> Result<()> {
    spec.require_field(FieldTag::Qz)?;
    if spec.t != 1 {
        return Err(Error::InvalidArgument(format!("the Wronskian criterion needs t = 1, spec has t = {}", spec.t)));
    }
    Ok(())
}

fn decompositions(spec: &MultiRecSpec) -> Result<Vec<CoeffDecomp>> {
    spec.terms.iter().map(decompose_coeffs).collect()
}

pub fn build_delta(spec: &MultiRecSpec) -> Result<DeltaPoly> {
    single_parameter(spec)?;
    let decomps = decompositions(spec)?;
    let q: usize = decomps.iter().map(CoeffDecomp::rank).sum();
    let mut columns: Vec<Vec<LPoly>> = Vec::with_capacity(q);
    for (term, d) in spec.terms.iter().zip(&decomps) {
        let alpha = &term.alpha[0];
        let log_deriv = &alpha.derivative() / alpha;
        for pi in &d.pis {
            let mut col = vec![LPoly::constant(pi.clone())];
            for j in 1..q {
                let prev = &col[j - 1];
                col.push(prev.d_dz().add(&prev.shift_scale(&log_deriv)));
            }
            columns.push(col);
        }
    }
    let matrix: Vec<Vec<LPoly>> = (0..q).map(|j| columns.iter().map(|c| c[j].clone()).collect()).collect();
    Ok(DeltaPoly { q, coeffs: bareiss(matrix).0 })
}

/// The functions `π_il·α_i^n` for a fixed `n`.
pub fn xi_functions(spec: &MultiRecSpec, n: i64) -> Result<Vec<RatFunc>> {
    single_parameter(spec)?;
    let mut out = Vec::new();
    for (term, d) in spec.terms.iter().zip(decompositions(spec)?) {
        let power = term.alpha[0].powi(n)?;
        out.extend(d.pis.iter().map(|pi| pi * &power));
    }
    Ok(out)
}

/// `W(Ξ)` at a fixed `n`: the determinant of successive `z`-derivatives.
pub fn direct_wronskian(spec: &MultiRecSpec, n: i64) -> Result<RatFunc> {
    let fs = xi_functions(spec, n)?;
    let q = fs.len();
    let mut rows = vec![fs];
    for j in 1..q {
        let next = rows[j - 1].iter().map(RatFunc::derivative).collect();
        rows.push(next);
    }
    Ok(determinant(rows))
}

/// `Π_i (α_i^n)^{r_i}`.
pub fn alpha_factor(spec: &MultiRecSpec, n: i64) -> Result<RatFunc> {
    single_parameter(spec)?;
    let mut acc = RatFunc::one();
    for (term, d) in spec.terms.iter().zip(decompositions(spec)?) {
        acc = acc * term.alpha[0].powi(n * d.rank() as i64)?;
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct C7Report {
    pub c11: u64,
    pub c12: u64,
    pub c7: u64,
    pub coefficient_roots: Vec<i64>,
    pub delta_roots: Vec<i64>,
    pub delta: String,
    pub q: usize,
}

/// `0` when there are no roots, else `max(0, 1 + max root)`.
fn threshold(roots: &[BigInt]) -> u64 {
    roots.iter().max().map_or(0, |m| {
        let v: BigInt = m + 1;
        if v <= BigInt::zero() {
            0
        } else {
            u64::try_from(&v).unwrap_or(u64::MAX)
        }
    })
}

fn small(roots: &[BigInt]) -> Vec<i64> {
    roots.iter().map(|r| i64::try_from(r).unwrap_or(if *r > BigInt::zero() { i64::MAX } else { i64::MIN })).collect()
}

/// `C7 = max{C11, C12}`: beyond it every `P_i(n)` is nonzero and `Ξ(n)`
/// is linearly independent.
pub fn c7_threshold(spec: &MultiRecSpec) -> Result<C7Report> {
    let delta = build_delta(spec)?;
    let delta_roots = delta.integer_roots()?;
    let mut coeff_roots: BTreeSet<BigInt> = BTreeSet::new();
    for d in decompositions(spec)? {
        // P_i(n) = 0 iff every Q_il(n) = 0, since the π_il are independent
        let mut common: Option<BTreeSet<BigInt>> = None;
        for q in &d.qs {
            let poly = Poly::from_coeffs(q.univariate_coeffs()?);
            let roots: BTreeSet<BigInt> = integer_roots(&poly)?.into_iter().collect();
            common = Some(match common {
                None => roots,
                Some(c) => c.intersection(&roots).cloned().collect(),
            });
        }
        coeff_roots.extend(common.unwrap_or_default());
    }
    let coeff_roots: Vec<BigInt> = coeff_roots.into_iter().collect();
    let c11 = threshold(&coeff_roots);
    let c12 = threshold(&delta_roots);
    Ok(C7Report {
        c11,
        c12,
        c7: c11.max(c12),
        coefficient_roots: small(&coeff_roots),
        delta_roots: small(&delta_roots),
        delta: delta.to_string(),
        q: delta.q,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::parse_expr;
    use crate::funcfield::linearly_independent;
    use crate::model::load_spec;

    pub(crate) fn lrs(terms: &[(&[(u32, &str)], &str)]) -> MultiRecSpec {
        let ts: Vec<String> = terms
            .iter()
            .map(|(poly, alpha)| {
                let monos: Vec<String> =
                    poly.iter().map(|(e, c)| format!(r#"{{"exps":[{e}],"coeff":"{c}"}}"#)).collect();
                format!(r#"{{"poly":[{}],"alpha":["{alpha}"]}}"#, monos.join(","))
            })
            .collect();
        load_spec(&format!(r#"{{"field":"Q(z)","t":1,"terms":[{}]}}"#, ts.join(","))).unwrap()
    }

    fn p(s: &str) -> RatFunc {
        parse_expr(s).unwrap()
    }

    fn calibrated(spec: &MultiRecSpec) {
        let delta = build_delta(spec).unwrap();
        for n in 0..=5 {
            let lhs = delta.eval(n) * alpha_factor(spec, n).unwrap();
            assert_eq!(lhs, direct_wronskian(spec, n).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn two_powers() {
        let spec = lrs(&[(&[(0, "1")], "z"), (&[(0, "1")], "z+1")]);
        assert_eq!(direct_wronskian(&spec, 1).unwrap(), p("-1"));
        let delta = build_delta(&spec).unwrap();
        assert_eq!(delta.coeffs, vec![RatFunc::zero(), p("-1/(z^2+z)")]);
        assert_eq!(delta.eval(1) * p("z*(z+1)"), p("-1"));
        calibrated(&spec);
        let rep = c7_threshold(&spec).unwrap();
        // Δ(0) = 0: at n = 0 both functions equal 1
        assert_eq!((rep.c11, rep.c12, rep.c7), (0, 1, 1));
    }

    #[test]
    fn single_term() {
        let spec = lrs(&[(&[(0, "5")], "z")]);
        assert_eq!(build_delta(&spec).unwrap().coeffs, vec![p("5")]);
        let rep = c7_threshold(&spec).unwrap();
        assert_eq!(rep.c7, rep.c11);
        let spec = lrs(&[(&[(1, "1"), (0, "-7")], "z^2")]);
        assert_eq!(c7_threshold(&spec).unwrap().c7, 8);
    }

    #[test]
    fn three_functions() {
        let spec = lrs(&[(&[(1, "z"), (0, "1")], "z"), (&[(0, "1")], "z+1")]);
        assert_eq!(build_delta(&spec).unwrap().q, 3);
        calibrated(&spec);
    }

    #[test]
    fn shifted_coefficient() {
        let spec = lrs(&[(&[(1, "1"), (0, "-3")], "z"), (&[(0, "1")], "z+1")]);
        calibrated(&spec);
        let rep = c7_threshold(&spec).unwrap();
        assert_eq!(rep.c11, 4);
        assert_eq!(rep.c7, 4);
        assert_eq!(rep.coefficient_roots, vec![3]);
    }

    #[test]
    fn independent_beyond_c7() {
        for spec in [
            lrs(&[(&[(0, "1")], "z"), (&[(0, "1")], "z+1")]),
            lrs(&[(&[(1, "z"), (0, "1")], "z"), (&[(0, "1")], "z+1")]),
            lrs(&[(&[(1, "1"), (0, "-3")], "z"), (&[(0, "1")], "z+1")]),
            lrs(&[(&[(0, "z")], "z^2"), (&[(0, "1")], "z-1"), (&[(0, "1")], "1/z")]),
        ] {
            calibrated(&spec);
            let c7 = c7_threshold(&spec).unwrap().c7 as i64;
            for n in c7 + 1..=c7 + 5 {
                assert!(linearly_independent(&xi_functions(&spec, n).unwrap()));
            }
        }
    }

    #[test]
    fn degenerate_and_bad_inputs() {
        // equal alphas: Ξ = {z^n, 2 z^n} is dependent for every n
        let spec = lrs(&[(&[(0, "1")], "z"), (&[(0, "2")], "z")]);
        assert!(build_delta(&spec).unwrap().is_zero());
        assert!(matches!(c7_threshold(&spec), Err(Error::Degenerate(_))));
        let two = load_spec(
            r#"{"field":"Q(z)","t":2,"terms":[{"poly":[{"exps":[0,0],"coeff":"1"}],"alpha":["z","z"]}]}"#,
        )
        .unwrap();
        assert!(matches!(build_delta(&two), Err(Error::InvalidArgument(_))));
    }
}
