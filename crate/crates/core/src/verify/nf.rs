use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::{sup_norm, Entry, EntryClass, SearchBox, VerifyReport};
use crate::bounds::{cor23_bound, nf_params};
use crate::error::{Error, Result};
use crate::exactcore::poly::fmt_rational;
use crate::exactcore::Rational;
use crate::independence::check_g_trivial;
use crate::model::{FieldTag, MultiRecSpec, RationalSpec};

/// Subset search is exponential in `r`.
pub const MAX_SUBSET_TERMS: usize = 20;

fn check_i0(spec: &MultiRecSpec, i0: usize) -> Result<()> {
    if i0 == 0 || i0 > spec.r() {
        return Err(Error::InvalidArgument(format!("term index {i0} outside 1..={}", spec.r())));
    }
    Ok(())
}

fn alpha_max(rs: &RationalSpec) -> Result<Rational> {
    let m = rs.alphas.iter().flatten().map(Signed::abs).max().ok_or_else(|| Error::InvalidArgument("empty spec".into()))?;
    if m <= Rational::from_integer(1.into()) {
        return Err(Error::NoDominantRoot(fmt_rational(&m)));
    }
    Ok(m)
}

/// `|G(n)|^q·α_max^{|n|·t·p} < |P_{i0}(n)·α_{i0}^n|^q` for `ε = p/q`, i.e.
/// the damped inequality with the exponent cleared.
fn solves(rs: &RationalSpec, amax: &Rational, eps: &Rational, i0: usize, n: &[i64]) -> Result<Option<bool>> {
    let lead = rs.term(i0 - 1, n)?;
    if lead.is_zero() {
        return Ok(None);
    }
    let g = rs.eval(n)?.abs();
    let q = eps.denom().to_usize().ok_or_else(|| Error::InvalidArgument("epsilon denominator too large".into()))?;
    let e = BigInt::from(sup_norm(n)) * BigInt::from(rs.t()) * eps.numer();
    let e = e.to_usize().ok_or_else(|| Error::InvalidArgument("damping exponent too large".into()))?;
    let lhs = num_traits::pow(g, q) * num_traits::pow(amax.clone(), e);
    Ok(Some(lhs < num_traits::pow(lead.abs(), q)))
}

fn prepare(spec: &MultiRecSpec, eps: &Rational, i0: usize) -> Result<(RationalSpec, Rational)> {
    spec.require_field(FieldTag::Q)?;
    check_i0(spec, i0)?;
    if !eps.is_positive() {
        return Err(Error::InvalidArgument("epsilon must be positive".into()));
    }
    let rs = RationalSpec::new(spec)?;
    let amax = alpha_max(&rs)?;
    Ok((rs, amax))
}

/// Single-point form of [`enumerate_nf_solutions`]'s predicate.
pub fn nf_is_solution(spec: &MultiRecSpec, eps: &Rational, i0: usize, n: &[i64]) -> Result<bool> {
    let (rs, amax) = prepare(spec, eps, i0)?;
    Ok(solves(&rs, &amax, eps, i0, n)?.unwrap_or(false))
}

/// All solutions in the box, plus the points where `P_{i0}` vanishes.
pub fn enumerate_nf_solutions(
    spec: &MultiRecSpec,
    eps: &Rational,
    sbox: SearchBox,
    i0: usize,
    workers: Option<usize>,
) -> Result<VerifyReport> {
    let (rs, amax) = prepare(spec, eps, i0)?;
    let outcomes = sbox.par_map(rs.t(), workers, |n| solves(&rs, &amax, eps, i0, n))?;
    let mut report = VerifyReport::new("verify-nf", None);
    report.params.insert("epsilon".into(), fmt_rational(eps));
    report.params.insert("box".into(), sbox.n.to_string());
    report.params.insert("nonneg".into(), sbox.nonneg.to_string());
    report.params.insert("i0".into(), i0.to_string());
    report.params.insert("alpha_max".into(), fmt_rational(&amax));
    let points = sbox.points(rs.t());
    report.counts.insert("points".into(), points.len() as u64);
    for (n, o) in points.into_iter().zip(outcomes) {
        match o {
            Some(true) => report.entries.push(Entry::new(n, EntryClass::Solution)),
            Some(false) => {}
            None => report.entries.push(Entry::new(n, EntryClass::ZeroLeadingTerm)),
        }
    }
    report.counts.insert("solutions".into(), report.entries_of(EntryClass::Solution).count() as u64);
    report.counts.insert("zero_leading_term".into(), report.entries_of(EntryClass::ZeroLeadingTerm).count() as u64);
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NfClass {
    pub zero_terms: Vec<usize>,
    /// Every `I ∋ i0` with a vanishing subsum, as sorted 1-based indices.
    pub vanishing_subsums: Vec<Vec<usize>>,
    pub in_a: bool,
}

pub fn classify_point(spec: &MultiRecSpec, i0: usize, n: &[i64]) -> Result<NfClass> {
    check_i0(spec, i0)?;
    let r = spec.r();
    if r > MAX_SUBSET_TERMS {
        return Err(Error::InvalidArgument(format!("subset search capped at r = {MAX_SUBSET_TERMS}, got {r}")));
    }
    let rs = RationalSpec::new(spec)?;
    let values: Vec<Rational> = (0..r).map(|i| rs.term(i, n)).collect::<Result<_>>()?;
    let zero_terms: Vec<usize> =
        (0..r).filter(|&i| rs.polys[i].eval(n).map(|p| p.is_zero()).unwrap_or(false)).map(|i| i + 1).collect();
    let others: Vec<usize> = (0..r).filter(|&i| i != i0 - 1).collect();
    let mut vanishing = Vec::new();
    for mask in 0u32..(1 << others.len()) {
        let mut idx = vec![i0 - 1];
        idx.extend(others.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &i)| i));
        let sum: Rational = idx.iter().map(|&i| &values[i]).sum();
        if sum.is_zero() {
            let mut one_based: Vec<usize> = idx.iter().map(|i| i + 1).collect();
            one_based.sort_unstable();
            vanishing.push(one_based);
        }
    }
    vanishing.sort();
    let in_a = vanishing.is_empty();
    Ok(NfClass { zero_terms, vanishing_subsums: vanishing, in_a })
}

fn param<'a>(report: &'a VerifyReport, key: &str) -> Result<&'a str> {
    report.params.get(key).map(String::as_str).ok_or_else(|| Error::InvalidArgument(format!("report lacks {key}")))
}

/// Tags each point with its `S_i` memberships and vanishing subsums, and
/// compares the number of solutions in `𝒜` with the counting bound.
pub fn classify_nf(mut report: VerifyReport, spec: &MultiRecSpec) -> Result<VerifyReport> {
    let i0: usize = param(&report, "i0")?.parse().map_err(|_| Error::InvalidArgument("bad i0".into()))?;
    let eps: Rational = param(&report, "epsilon")?.parse().map_err(|_| Error::InvalidArgument("bad epsilon".into()))?;
    for e in &mut report.entries {
        let c = classify_point(spec, i0, &e.n)?;
        e.zero_terms = c.zero_terms;
        e.vanishing_subsums = c.vanishing_subsums;
        e.in_a = Some(c.in_a);
    }
    let in_a = report.entries_of(EntryClass::Solution).filter(|e| e.in_a == Some(true)).count() as u64;
    report.counts.insert("solutions_in_A".into(), in_a);
    let trivial = check_g_trivial(spec)?.trivial;
    report.params.insert("g_trivial".into(), trivial.to_string());
    let bound = cor23_bound(&nf_params(spec, None, None)?, &eps)?;
    report.pass = match (&bound.exact_value, bound.log2_value) {
        (Some(v), _) => BigInt::from(in_a) <= *v,
        (None, Some(l)) => in_a == 0 || (in_a as f64).log2() <= l,
        (None, None) => true,
    };
    report.bounds.push(bound);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::load_spec;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn three_two() -> MultiRecSpec {
        load_spec(
            r#"{"field":"Q","t":1,"terms":[
                {"poly":[{"exps":[0],"coeff":"1"}],"alpha":["3"]},
                {"poly":[{"exps":[0],"coeff":"-1"}],"alpha":["2"]}]}"#,
        )
        .unwrap()
    }

    fn solutions(r: &VerifyReport) -> Vec<Vec<i64>> {
        r.entries_of(EntryClass::Solution).map(|e| e.n.clone()).collect()
    }

    #[test]
    fn three_minus_two() {
        let rep = enumerate_nf_solutions(&three_two(), &q("1/10"), SearchBox::new(8, true), 1, None).unwrap();
        assert_eq!(solutions(&rep), vec![vec![0], vec![1], vec![2], vec![3]]);
        let rep = classify_nf(rep, &three_two()).unwrap();
        let two = rep.entries.iter().find(|e| e.n == vec![2]).unwrap();
        assert_eq!(two.in_a, Some(true));
        // at n = 0 the full sum vanishes
        let zero = rep.entries.iter().find(|e| e.n == vec![0]).unwrap();
        assert_eq!(zero.vanishing_subsums, vec![vec![1, 2]]);
        assert!(rep.pass);
    }

    #[test]
    fn remark_solutions_on_the_diagonal() {
        let spec = load_spec(crate::model::tests::REMARK11).unwrap();
        let rep = enumerate_nf_solutions(&spec, &q("1/2"), SearchBox::new(3, false), 1, Some(2)).unwrap();
        let sols = solutions(&rep);
        for n in SearchBox::new(3, false).points(4) {
            if n[0] == n[1] && n[2] == n[3] {
                assert!(sols.contains(&n), "{n:?}");
            }
        }
        let c = classify_point(&spec, 1, &[2, 2, 1, 1]).unwrap();
        assert_eq!(c.vanishing_subsums, vec![vec![1, 2], vec![1, 2, 3, 4]]);
        assert!(!c.in_a);
    }

    #[test]
    fn single_power_has_no_solutions() {
        let spec = load_spec(r#"{"field":"Q","t":1,"terms":[{"poly":[{"exps":[0],"coeff":"1"}],"alpha":["2"]}]}"#).unwrap();
        let rep = enumerate_nf_solutions(&spec, &q("1/10"), SearchBox::new(8, true), 1, None).unwrap();
        assert!(solutions(&rep).iter().all(|n| n[0] == 0));
    }

    #[test]
    fn vanishing_polynomial_goes_to_its_own_bucket() {
        let spec = load_spec(
            r#"{"field":"Q","t":1,"terms":[
                {"poly":[{"exps":[1],"coeff":"1"},{"exps":[0],"coeff":"-2"}],"alpha":["3"]},
                {"poly":[{"exps":[0],"coeff":"1"}],"alpha":["2"]}]}"#,
        )
        .unwrap();
        let rep = enumerate_nf_solutions(&spec, &q("1"), SearchBox::new(4, false), 1, None).unwrap();
        let zl: Vec<_> = rep.entries_of(EntryClass::ZeroLeadingTerm).map(|e| e.n.clone()).collect();
        assert_eq!(zl, vec![vec![2]]);
        assert!(!nf_is_solution(&spec, &q("1"), 1, &[2]).unwrap());
        assert_eq!(classify_point(&spec, 1, &[2]).unwrap().zero_terms, vec![1]);
    }

    #[test]
    fn every_entry_rechecks() {
        let spec = three_two();
        let eps = q("1/3");
        let rep = enumerate_nf_solutions(&spec, &eps, SearchBox::new(6, false), 2, None).unwrap();
        for e in rep.entries_of(EntryClass::Solution) {
            assert!(nf_is_solution(&spec, &eps, 2, &e.n).unwrap());
        }
    }

    #[test]
    fn argument_errors() {
        let spec = three_two();
        assert!(enumerate_nf_solutions(&spec, &q("0"), SearchBox::new(2, true), 1, None).is_err());
        assert!(enumerate_nf_solutions(&spec, &q("1"), SearchBox::new(2, true), 3, None).is_err());
        let flat = load_spec(r#"{"field":"Q","t":1,"terms":[{"poly":[{"exps":[0],"coeff":"1"}],"alpha":["1"]}]}"#).unwrap();
        assert!(matches!(
            enumerate_nf_solutions(&flat, &q("1"), SearchBox::new(2, true), 1, None),
            Err(Error::NoDominantRoot(_))
        ));
    }
}
