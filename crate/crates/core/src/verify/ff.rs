use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{sup_norm, Entry, EntryClass, GrowthBreakdown, SearchBox, VerifyReport};
use crate::bounds::{ff_c5, ff_c6, Mode};
use crate::error::{Error, Result};
use crate::funcfield::{valuation, Place, RatFunc};
use crate::model::MultiRecSpec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GrowthOutcome {
    /// Some `P_i(n)` vanishes.
    ZeroCoefficient,
    ZeroG,
    Checked(GrowthBreakdown),
}

impl GrowthOutcome {
    pub fn holds(&self) -> bool {
        match self {
            GrowthOutcome::Checked(b) => b.mu_g <= b.rhs,
            _ => true,
        }
    }
}

/// `μ(G(n)) ≤ C6 + min_i Σ_j n_j·μ(α_ij)` at one point.
pub fn ff_growth_point(spec: &MultiRecSpec, mu: &Place, c6: i64, n: &[i64]) -> Result<GrowthOutcome> {
    let mut g = RatFunc::zero();
    for term in &spec.terms {
        if term.poly.eval(n)?.is_zero() {
            return Ok(GrowthOutcome::ZeroCoefficient);
        }
        g = g + term.eval(n)?;
    }
    if g.is_zero() {
        return Ok(GrowthOutcome::ZeroG);
    }
    let term_valuations: Vec<i64> = spec
        .terms
        .iter()
        .map(|t| t.alpha.iter().zip(n).try_fold(0i64, |acc, (a, &e)| Ok(acc + e * valuation(a, mu)?)))
        .collect::<Result<_>>()?;
    let rhs = c6 + term_valuations.iter().copied().min().unwrap_or(0);
    Ok(GrowthOutcome::Checked(GrowthBreakdown { mu_g: valuation(&g, mu)?, c6, term_valuations, rhs }))
}

fn to_i64(v: &Option<BigInt>, name: &str) -> Result<i64> {
    v.as_ref().and_then(ToPrimitive::to_i64).ok_or_else(|| Error::InvalidArgument(format!("{name} does not fit 64 bits")))
}

/// Checks the valuation growth bound over the box. Only points with
/// `|n| ≥ C5` can fail the check; breaches below the threshold are listed
/// for information.
pub fn verify_ff_growth(
    spec: &MultiRecSpec,
    mu: &Place,
    sbox: SearchBox,
    mode: Mode,
    workers: Option<usize>,
) -> Result<VerifyReport> {
    let c5_report = ff_c5(spec, mode)?;
    let c6_report = ff_c6(spec, mu, mode)?;
    let c5 = c5_report.exact_value.clone().unwrap_or_default();
    let c6 = to_i64(&c6_report.exact_value, "C6")?;
    let outcomes = sbox.par_map(spec.t, workers, |n| ff_growth_point(spec, mu, c6, n))?;

    let mut report = VerifyReport::new("verify-ff", Some(mode));
    report.params.insert("place".into(), mu.to_string());
    report.params.insert("box".into(), sbox.n.to_string());
    report.params.insert("nonneg".into(), sbox.nonneg.to_string());
    report.params.insert("C5".into(), c5.to_string());
    report.params.insert("C6".into(), c6.to_string());
    let mut count = |k: &str| *report.counts.entry(k.into()).or_insert(0) += 1;
    let mut entries = Vec::new();
    for (n, o) in sbox.points(spec.t).into_iter().zip(outcomes) {
        count("points");
        let binding = BigInt::from(sup_norm(&n)) >= c5;
        match o {
            GrowthOutcome::ZeroCoefficient => count("zero_coefficient"),
            GrowthOutcome::ZeroG => count("zero_g"),
            GrowthOutcome::Checked(b) => {
                count(if binding { "checked" } else { "below_threshold" });
                if b.mu_g > b.rhs {
                    count(if binding { "violations" } else { "below_threshold_violations" });
                    let mut e = Entry::new(n, if binding { EntryClass::Violation } else { EntryClass::BelowThreshold });
                    e.growth = Some(b);
                    entries.push(e);
                }
            }
        }
    }
    for k in ["checked", "violations", "below_threshold", "below_threshold_violations", "zero_g", "zero_coefficient"] {
        report.counts.entry(k.into()).or_insert(0);
    }
    report.pass = report.count("violations") == 0;
    report.entries = entries;
    report.bounds = vec![c5_report, c6_report];
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::load_spec;

    const CONST1: &str = r#"{"field":"Q(z)","t":2,"terms":[
        {"poly":[{"exps":[0,0],"coeff":"1"}],"alpha":["z","z+1"]},
        {"poly":[{"exps":[0,0],"coeff":"1"}],"alpha":["z-1","z"]}]}"#;

    #[test]
    fn printed_constant_fails_at_one_one() {
        let spec = load_spec(CONST1).unwrap();
        let z = Place::parse("z").unwrap();
        let rep = verify_ff_growth(&spec, &z, SearchBox::new(8, false), Mode::AsPrinted, None).unwrap();
        assert!(!rep.pass);
        let v: Vec<_> = rep.entries_of(EntryClass::Violation).collect();
        assert!(v.iter().any(|e| e.n == vec![1, 1]));
        let b = v.iter().find(|e| e.n == vec![1, 1]).unwrap().growth.clone().unwrap();
        assert_eq!((b.mu_g, b.c6, b.rhs), (2, 0, 1));
        assert_eq!(b.term_valuations, vec![1, 1]);
    }

    #[test]
    fn conservative_constant_holds() {
        let spec = load_spec(CONST1).unwrap();
        for mu in ["z", "z-1", "inf"] {
            let mu = Place::parse(mu).unwrap();
            let rep = verify_ff_growth(&spec, &mu, SearchBox::new(8, false), Mode::Conservative, Some(3)).unwrap();
            assert!(rep.pass, "{mu}");
            assert_eq!(rep.count("violations"), 0);
        }
        let z = Place::parse("z").unwrap();
        let o = ff_growth_point(&spec, &z, 2, &[1, 1]).unwrap();
        assert!(o.holds());
    }

    #[test]
    fn zero_values_are_bucketed() {
        let spec = load_spec(
            r#"{"field":"Q(z)","t":1,"terms":[
            {"poly":[{"exps":[0],"coeff":"1"}],"alpha":["z"]},
            {"poly":[{"exps":[0],"coeff":"-1"}],"alpha":["z^2"]}]}"#,
        )
        .unwrap();
        let z = Place::parse("z").unwrap();
        assert_eq!(ff_growth_point(&spec, &z, 0, &[0]).unwrap(), GrowthOutcome::ZeroG);
        let rep = verify_ff_growth(&spec, &z, SearchBox::new(3, false), Mode::Conservative, None).unwrap();
        assert_eq!(rep.count("zero_g"), 1);
    }
}
