//! Bounds for multi-recurrences over number fields (specialized data from
//! a `Q` spec, with `d` and `s` open to overrides).

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::interval::{ln_interval, ln_of, rational_to_f64, Interval};
use super::{log2_rational, BoundReport};
use crate::error::{Error, Result};
use crate::exactcore::integer::{binomial, factor_integer};
use crate::exactcore::poly::fmt_rational;
use crate::exactcore::Rational;
use crate::independence::rational_relation_lattice;
use crate::model::{denominator_lcm, FieldTag, MultiRecSpec};

/// Exact values above this many bits are reported through log2 only.
pub const MAX_EXACT_BITS: f64 = 1e7;

const BASE_PRECISION: u32 = 96;
const MAX_PRECISION: u32 = 96 << 8;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundParamsNF {
    pub r: u64,
    pub t: u64,
    pub d: u64,
    pub s: u64,
    pub m: Vec<u64>,
    #[serde(serialize_with = "super::serialize_rational")]
    pub b: Rational,
    #[serde(serialize_with = "super::serialize_bigint")]
    pub q_lcm: BigInt,
    #[serde(serialize_with = "super::serialize_rational")]
    pub alpha_max: Rational,
}

impl BoundParamsNF {
    pub fn m_max(&self) -> u64 {
        self.m.iter().copied().max().unwrap_or(0)
    }

    pub fn validate(&self) -> Result<()> {
        if self.alpha_max <= Rational::one() {
            return Err(Error::NoDominantRoot(fmt_rational(&self.alpha_max)));
        }
        for (name, v) in [("r", self.r), ("t", self.t), ("d", self.d), ("s", self.s)] {
            if v == 0 {
                return Err(Error::InvalidArgument(format!("{name} must be at least 1")));
            }
        }
        if self.m.len() as u64 != self.r {
            return Err(Error::DimensionMismatch { expected: self.r as usize, got: self.m.len() });
        }
        if !self.b.is_positive() {
            return Err(Error::InvalidArgument("B must be positive".into()));
        }
        Ok(())
    }

    fn echo(&self) -> BTreeMap<String, String> {
        let ms: Vec<String> = self.m.iter().map(u64::to_string).collect();
        BTreeMap::from([
            ("r".to_string(), self.r.to_string()),
            ("t".to_string(), self.t.to_string()),
            ("d".to_string(), self.d.to_string()),
            ("s".to_string(), self.s.to_string()),
            ("m".to_string(), format!("[{}]", ms.join(","))),
            ("B".to_string(), fmt_rational(&self.b)),
            ("q".to_string(), self.q_lcm.to_string()),
            ("alpha_max".to_string(), fmt_rational(&self.alpha_max)),
        ])
    }
}

/// Parameters read off a `Q` spec; `d` defaults to 1 and `s` to one more
/// than the number of primes in the alphas.
pub fn nf_params(spec: &MultiRecSpec, d: Option<u64>, s: Option<u64>) -> Result<BoundParamsNF> {
    spec.require_field(FieldTag::Q)?;
    let alphas = spec.rational_alphas().expect("validated constant alphas");
    let polys = spec.rational_polys().expect("validated constant coefficients");
    let q_lcm = denominator_lcm(&polys);
    let qr = Rational::from_integer(q_lcm.clone());
    let b = polys.iter().flat_map(|p| p.coefficients()).map(|c| (c * &qr).abs()).max().unwrap_or_else(Rational::zero);
    let alpha_max = alphas.iter().flatten().map(Signed::abs).max().expect("nonempty spec");
    let mut primes: BTreeSet<BigInt> = BTreeSet::new();
    for a in alphas.iter().flatten() {
        primes.extend(factor_integer(a.numer()).into_keys());
        primes.extend(factor_integer(a.denom()).into_keys());
    }
    let p = BoundParamsNF {
        r: spec.r() as u64,
        t: spec.t as u64,
        d: d.unwrap_or(1),
        s: s.unwrap_or(1 + primes.len() as u64),
        m: spec.terms.iter().map(|t| u64::from(t.degree())).collect(),
        b,
        q_lcm,
        alpha_max,
    };
    p.validate()?;
    Ok(p)
}

/// `T(x)`: exact when the logarithms cancel, else a certified enclosure.
#[derive(Clone, Debug, PartialEq)]
pub struct TauValue {
    pub t: Interval,
    pub t_exact: bool,
    pub tau: Interval,
}

impl TauValue {
    pub fn ceil_tau(&self) -> Option<BigInt> {
        let (a, b) = (self.tau.ceil_lo(), self.tau.ceil_hi());
        (a == b).then_some(a)
    }
}

/// `ln A / ln α` when `A^p = α^q` for integers, i.e. when the ratio of
/// logarithms is rational.
fn log_ratio(a: &Rational, alpha: &Rational) -> Option<Rational> {
    if a.is_one() {
        return Some(Rational::zero());
    }
    let basis = rational_relation_lattice(&[a.clone(), alpha.clone()]).ok()?;
    let k = basis.vectors.first()?;
    // a^k0 · α^k1 = ±1 with both positive, hence = 1
    (k[0] != 0).then(|| Rational::new((-k[1]).into(), k[0].into()))
}

fn t_interval(x: &Rational, p: &BoundParamsNF, prec: u32) -> (Interval, bool) {
    let m = Rational::from_integer(p.m_max().into());
    let arg = Rational::from_integer(BigInt::one() << (p.m_max() + p.t)) * &p.b;
    let factor = Rational::from_integer((20 * p.r * p.d).into()) / (x * Rational::from_integer(p.t.into()));
    if m.is_zero() {
        if let Some(ratio) = log_ratio(&arg, &p.alpha_max) {
            return (Interval::point(factor * ratio), true);
        }
    }
    let num = ln_interval(&arg, prec).add(&Interval::point(m));
    let den = ln_interval(&p.alpha_max, prec);
    (num.div_positive(&den).scale(&factor), false)
}

/// `max{10, 2·T·ln T}` over an enclosure of `T`.
fn tau_from(t: &Interval, prec: u32) -> Interval {
    let ten = Rational::from_integer(10.into());
    let one = Rational::one();
    let two = Rational::from_integer(2.into());
    let f = |x: &Rational, upper: bool| -> Rational {
        if *x <= one {
            return ten.clone();
        }
        let l = ln_interval(x, prec);
        let v = &two * x * if upper { &l.hi } else { &l.lo };
        v.max(ten.clone())
    };
    if t.is_point() && !t.lo.is_zero() && t.lo > one {
        let l = ln_of(t, prec).scale(&(&two * &t.lo));
        return Interval { lo: l.lo.max(ten.clone()), hi: l.hi.max(ten) };
    }
    Interval { lo: f(&t.lo, false), hi: f(&t.hi, true) }
}

fn tau_at(x: &Rational, p: &BoundParamsNF, prec: u32) -> TauValue {
    let (t, exact) = t_interval(x, p, prec);
    let tau = tau_from(&t, prec);
    TauValue { t, t_exact: exact, tau }
}

/// `T(x)` and `τ(x)`, refined until `⌈τ⌉` is determined and stable under a
/// re-evaluation at doubled precision.
pub fn tau(x: &Rational, p: &BoundParamsNF) -> Result<TauValue> {
    if !x.is_positive() {
        return Err(Error::InvalidArgument("x must be positive".into()));
    }
    p.validate()?;
    let mut prec = BASE_PRECISION;
    loop {
        let v = tau_at(x, p, prec);
        if let Some(c) = v.ceil_tau() {
            let check = tau_at(x, p, 2 * prec);
            if check.ceil_tau().as_ref() == Some(&c) {
                return Ok(v);
            }
        }
        if prec >= MAX_PRECISION {
            // τ is (numerically) an integer; the upper ceiling stays sound
            return Ok(v);
        }
        prec *= 2;
    }
}

fn ceil_tau_upper(v: &TauValue) -> BigInt {
    v.ceil_tau().unwrap_or_else(|| v.tau.ceil_hi())
}

/// `(A', A)` with `A = max{t, r}` when every `m_i` is zero.
pub fn a_constants(p: &BoundParamsNF) -> (BigInt, BigInt) {
    let a_prime: BigInt = p.m.iter().map(|&mi| binomial(p.t + mi, p.t)).sum();
    let a = if p.m.iter().all(|&mi| mi == 0) { BigInt::from(p.t.max(p.r)) } else { a_prime.clone() };
    (a_prime, a)
}

/// The derangement number `D_r = r!·Σ_{k≤r} (-1)^k/k!`.
fn derangements(r: u64) -> BigInt {
    let (mut a, mut b) = (BigInt::one(), BigInt::zero());
    if r == 0 {
        return a;
    }
    for n in 2..=r {
        let next = (n - 1) * (&a + &b);
        a = b;
        b = next;
    }
    b
}

/// `⌈r!/e⌉`: `r!/e − D_r` has sign `(-1)^{r+1}` and modulus below `1/(r+1)`.
pub fn ceil_factorial_over_e(r: u64) -> BigInt {
    let d = derangements(r);
    if r % 2 == 1 {
        d + 1
    } else {
        d
    }
}

/// `⌈2·r!/e⌉` for `r ≥ 1`.
pub fn ceil_two_factorial_over_e(r: u64) -> BigInt {
    assert!(r >= 1);
    let d = derangements(r) * 2;
    if r % 2 == 1 {
        d + 1
    } else {
        d
    }
}

fn subspace_inner(p: &BoundParamsNF, eps: &Rational) -> Rational {
    Rational::new(10.into(), (22 * p.d).into()) * eps
}

/// log2 of `(2^{60r²}·((10/(22d))·ε)^{−7r})^s`.
fn subspace_log2(p: &BoundParamsNF, eps: &Rational) -> f64 {
    let inner = subspace_inner(p, eps);
    p.s as f64 * (60.0 * (p.r * p.r) as f64 - 7.0 * p.r as f64 * log2_rational(&inner))
}

fn subspace_exact(p: &BoundParamsNF, eps: &Rational) -> Rational {
    let base = Rational::from_integer(BigInt::one() << (60 * p.r * p.r * p.s));
    base * num_traits::pow(subspace_inner(p, eps).recip(), (7 * p.r * p.s) as usize)
}

fn check_eps(eps: &Rational) -> Result<()> {
    if !eps.is_positive() {
        return Err(Error::InvalidArgument("epsilon must be positive".into()));
    }
    Ok(())
}

fn first_summand(p: &BoundParamsNF, eps: &Rational) -> Result<(BigInt, TauValue)> {
    let x = eps / Rational::from_integer((2 * p.d).into());
    let tv = tau(&x, p)?;
    let first = num_traits::pow(ceil_tau_upper(&tv) + 1, p.t as usize);
    Ok((first, tv))
}

fn nf_report(name: &str, p: &BoundParamsNF, eps: &Rational, scale: u64) -> Result<BoundReport> {
    check_eps(eps)?;
    p.validate()?;
    let (first, tv) = first_summand(p, eps)?;
    let (_, a) = a_constants(p);
    let a64 = a.to_u64().ok_or_else(|| Error::InvalidArgument("A too large".into()))?;
    let rfe = ceil_factorial_over_e(p.r);
    let sub_log2 = subspace_log2(p, eps);
    let second_log2 = crate::exactcore::integer::log2_bigint(&rfe)
        + 35.0 * (a64 as f64).powi(3)
        + 6.0 * (a64 * a64) as f64 * (p.d as f64).log2()
        + 1.0
        + sub_log2;
    let scale_log2 = scale.trailing_zeros() as f64;
    let mut report = BoundReport::new(name, None);
    report.inputs = p.echo();
    report.inputs.insert("epsilon".into(), fmt_rational(eps));
    report.components.insert("ceil_tau".into(), ceil_tau_upper(&tv).to_string());
    report.components.insert("A".into(), a.to_string());
    report.components.insert("first_summand".into(), first.to_string());
    if second_log2 + scale_log2 > MAX_EXACT_BITS {
        report.log2_value = Some(second_log2 + scale_log2);
        return Ok(report);
    }
    let second = Rational::from_integer(
        rfe * (BigInt::one() << (35 * a64 * a64 * a64 + 1)) * num_traits::pow(BigInt::from(p.d), (6 * a64 * a64) as usize),
    ) * subspace_exact(p, eps);
    let total = (Rational::from_integer(first) + second) * Rational::from_integer(scale.into());
    let value = total.ceil().to_integer();
    report.log2_value = Some(crate::exactcore::integer::log2_bigint(&value));
    report.exact_value = Some(value);
    Ok(report)
}

/// The cardinality bound: `(τ(ε/2d)+1)^t + ⌈r!/e⌉·2^{35A³}·d^{6A²}·2·(…)^s`.
pub fn thm21_bound(p: &BoundParamsNF, eps: &Rational) -> Result<BoundReport> {
    nf_report("thm21", p, eps, 1)
}

/// `2^{r−1}` times the expression of [`thm21_bound`].
pub fn cor23_bound(p: &BoundParamsNF, eps: &Rational) -> Result<BoundReport> {
    if p.r > 63 {
        return Err(Error::InvalidArgument("r too large".into()));
    }
    nf_report("cor23", p, eps, 1 << (p.r - 1))
}

/// The constant-coefficient bound with `exp(N)` kept symbolic,
/// `N = (6(r−1))^{3(r−1)}·(r(s−1)+1)` and `0^0 = 1`.
pub fn rem24_bound(p: &BoundParamsNF, eps: &Rational) -> Result<BoundReport> {
    check_eps(eps)?;
    p.validate()?;
    if p.m.iter().any(|&mi| mi > 0) {
        return Err(Error::Precondition("every coefficient polynomial must be constant".into()));
    }
    let (first, tv) = first_summand(p, eps)?;
    let r1 = p.r - 1;
    let n = num_traits::pow(BigInt::from(6 * r1), (3 * r1) as usize) * BigInt::from(p.r * (p.s - 1) + 1);
    let sub_log2 = subspace_log2(p, eps);
    let c2 = ceil_two_factorial_over_e(p.r);
    let mut report = BoundReport::new("rem24", None);
    report.inputs = p.echo();
    report.inputs.insert("epsilon".into(), fmt_rational(eps));
    report.components.insert("ceil_tau".into(), ceil_tau_upper(&tv).to_string());
    report.components.insert("ceil_2r!/e".into(), c2.to_string());
    let cof_log2 = crate::exactcore::integer::log2_bigint(&c2) + sub_log2;
    let exp_log2 = n.to_f64().unwrap_or(f64::INFINITY) * std::f64::consts::LOG2_E;
    let big = exp_log2 + cof_log2;
    let first_log2 = crate::exactcore::integer::log2_bigint(&first);
    // log2(2^a + 2^b) = max + log2(1 + 2^{-|a-b|})
    let (hi, lo) = if big >= first_log2 { (big, first_log2) } else { (first_log2, big) };
    report.log2_value = Some(hi + (lo - hi).exp2().ln_1p() / std::f64::consts::LN_2);
    if cof_log2 <= MAX_EXACT_BITS {
        report.cofactor = Some(Rational::from_integer(c2) * subspace_exact(p, eps));
    }
    report.first_summand = Some(first);
    report.log_natural_exponent = Some(n);
    Ok(report)
}

/// `T` and `τ` at `x` as a report.
pub fn tau_report(x: &Rational, p: &BoundParamsNF) -> Result<BoundReport> {
    let v = tau(x, p)?;
    let mut report = BoundReport::new("tau", None);
    report.inputs = p.echo();
    report.inputs.insert("x".into(), fmt_rational(x));
    if v.t_exact {
        report.components.insert("T".into(), fmt_rational(&v.t.lo));
    } else {
        report.components.insert("T_upper".into(), format!("{:.6}", rational_to_f64(&v.t.hi)));
    }
    report.components.insert("tau_upper".into(), format!("{:.6}", v.tau.hi_f64()));
    let c = ceil_tau_upper(&v);
    report.log2_value = Some(crate::exactcore::integer::log2_bigint(&c));
    report.exact_value = Some(c);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::load_spec;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    pub(crate) fn params(r_: u64, t: u64, d: u64, s: u64, m: &[u64], b: Rational, alpha: Rational) -> BoundParamsNF {
        BoundParamsNF { r: r_, t, d, s, m: m.to_vec(), b, q_lcm: BigInt::one(), alpha_max: alpha }
    }

    #[test]
    fn cancellation_fixture() {
        let p = params(2, 1, 1, 1, &[0, 0], r(1, 1), r(2, 1));
        let v = tau(&r(1, 2), &p).unwrap();
        assert!(v.t_exact);
        assert_eq!(v.t.lo, r(80, 1));
        // τ(1/2) = 160·ln 80 ≈ 701.1242615478
        assert_eq!(v.ceil_tau(), Some(BigInt::from(702)));
        let lo = rational_to_f64(&v.tau.lo);
        let hi = rational_to_f64(&v.tau.hi);
        assert!(lo <= 701.124261547821 + 1e-9 && 701.124261547821 - 1e-9 <= hi);
        assert!(hi - lo < 1e-12);
        assert_eq!(tau(&r(1, 1), &p).unwrap().t.lo, r(40, 1));
    }

    #[test]
    fn tau_clamps_at_ten() {
        let p = params(1, 1, 1, 1, &[0], r(1, 1), r(1000, 1));
        let v = tau(&r(100, 1), &p).unwrap();
        assert_eq!(v.tau, Interval::point(r(10, 1)));
    }

    #[test]
    fn a_constant_examples() {
        let p = params(2, 2, 1, 1, &[1, 0], r(1, 1), r(2, 1));
        assert_eq!(a_constants(&p), (BigInt::from(4), BigInt::from(4)));
        let p = params(4, 1, 1, 1, &[0; 4], r(1, 1), r(2, 1));
        assert_eq!(a_constants(&p), (BigInt::from(4), BigInt::from(4)));
        let p = params(1, 3, 1, 1, &[0], r(1, 1), r(2, 1));
        assert_eq!(a_constants(&p).1, BigInt::from(3));
    }

    #[test]
    fn factorial_over_e_ceilings() {
        let e = std::f64::consts::E;
        for n in 1..15u64 {
            let f = (1..=n).product::<u64>() as f64;
            assert_eq!(ceil_factorial_over_e(n), BigInt::from((f / e).ceil() as u64), "r = {n}");
            assert_eq!(ceil_two_factorial_over_e(n), BigInt::from((2.0 * f / e).ceil() as u64), "r = {n}");
        }
        assert_eq!(ceil_factorial_over_e(0), BigInt::one());
    }

    #[test]
    fn params_from_specs() {
        let spec = load_spec(
            r#"{"field":"Q","t":1,"terms":[
                {"poly":[{"exps":[0],"coeff":"1"}],"alpha":["3"]},
                {"poly":[{"exps":[0],"coeff":"-1"}],"alpha":["2"]}]}"#,
        )
        .unwrap();
        let p = nf_params(&spec, None, None).unwrap();
        assert_eq!((p.r, p.t, p.d, p.s, p.m_max()), (2, 1, 1, 3, 0));
        assert_eq!((p.b.clone(), p.q_lcm.clone(), p.alpha_max.clone()), (r(1, 1), BigInt::one(), r(3, 1)));

        let spec = load_spec(crate::model::tests::REMARK11).unwrap();
        let p = nf_params(&spec, None, None).unwrap();
        assert_eq!((p.s, p.alpha_max.clone(), p.b.clone()), (3, r(3, 1), r(1, 1)));

        let spec = load_spec(
            r#"{"field":"Q","t":1,"terms":[{"poly":[{"exps":[1],"coeff":"3/2"},{"exps":[0],"coeff":"1"}],"alpha":["5"]}]}"#,
        )
        .unwrap();
        let p = nf_params(&spec, Some(2), Some(7)).unwrap();
        assert_eq!((p.q_lcm.clone(), p.b.clone(), p.d, p.s, p.m.clone()), (BigInt::from(2), r(3, 1), 2, 7, vec![1]));

        let flat = load_spec(r#"{"field":"Q","t":1,"terms":[{"poly":[{"exps":[0],"coeff":"1"}],"alpha":["-1"]}]}"#).unwrap();
        assert!(matches!(nf_params(&flat, None, None), Err(Error::NoDominantRoot(_))));
    }

    #[test]
    fn remark_exponent_examples() {
        let p = params(2, 1, 1, 2, &[0, 0], r(1, 1), r(2, 1));
        let rep = rem24_bound(&p, &r(1, 1)).unwrap();
        assert_eq!(rep.log_natural_exponent, Some(BigInt::from(648)));
        let p1 = params(1, 1, 1, 5, &[0], r(1, 1), r(2, 1));
        assert_eq!(rem24_bound(&p1, &r(1, 1)).unwrap().log_natural_exponent, Some(BigInt::from(5)));
        let mut nonconst = p.clone();
        nonconst.m = vec![1, 0];
        assert!(matches!(rem24_bound(&nonconst, &r(1, 1)), Err(Error::Precondition(_))));
    }

    #[test]
    fn epsilon_must_be_positive() {
        let p = params(1, 1, 1, 1, &[0], r(1, 1), r(2, 1));
        assert!(thm21_bound(&p, &r(0, 1)).is_err());
        assert!(cor23_bound(&p, &r(-1, 2)).is_err());
        assert!(tau(&r(0, 1), &p).is_err());
    }

    #[test]
    fn log_only_above_cap() {
        let p = params(8, 70, 1, 1, &[0; 8], r(1, 1), r(2, 1));
        let rep = thm21_bound(&p, &r(1, 1)).unwrap();
        assert!(rep.exact_value.is_none());
        assert!(rep.log2_value.unwrap() > MAX_EXACT_BITS);
    }
}
