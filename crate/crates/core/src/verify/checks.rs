use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::bounds::Mode;
use crate::error::{Error, Result};
use crate::funcfield::{divisor, ff_height, ff_height_single, linearly_independent, valuation, PlaceSet, RatFunc};
use crate::independence::{dependence_bounds, power_product, relation_lattice};
use crate::exactcore::Rational;

const MAX_SUBSET_TERMS: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlaceRow {
    pub place: String,
    pub degree: u64,
    pub mu_sum: i64,
    pub min_mu: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InequalityCheck {
    pub lhs: i64,
    pub rhs: i64,
    pub pass: bool,
    pub places: Vec<String>,
    pub weighted_s: u64,
    pub binomial: i64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub table: Vec<PlaceRow>,
}

fn binomial_i64(mode: Mode, n: usize) -> i64 {
    mode.binomial(n as u64).to_i64().expect("small binomial")
}

fn nonzero(fs: &[RatFunc]) -> Result<()> {
    if fs.iter().any(RatFunc::is_zero) {
        return Err(Error::ZeroFunction);
    }
    Ok(())
}

/// `ℋ(u) ≤ (n−1)(n−2)/2·(|S| + 2g − 2)` for `u_1 + … + u_n = 0` with no
/// vanishing proper subsum in the strong (linear) sense.
pub fn check_bm(us: &[RatFunc], genus: u64) -> Result<InequalityCheck> {
    let n = us.len();
    if n < 3 {
        return Err(Error::InvalidArgument(format!("need at least 3 functions, got {n}")));
    }
    if n > MAX_SUBSET_TERMS {
        return Err(Error::InvalidArgument(format!("subset check capped at {MAX_SUBSET_TERMS} functions")));
    }
    nonzero(us)?;
    if !us.iter().fold(RatFunc::zero(), |a, u| a + u).is_zero() {
        return Err(Error::Precondition("the functions do not sum to zero".into()));
    }
    for mask in 1u32..(1 << n) - 1 {
        let sub: Vec<RatFunc> = (0..n).filter(|b| mask >> b & 1 == 1).map(|i| us[i].clone()).collect();
        if !linearly_independent(&sub) {
            let idx: Vec<usize> = (0..n).filter(|b| mask >> b & 1 == 1).map(|i| i + 1).collect();
            return Err(Error::Precondition(format!("subset {idx:?} is linearly dependent over the constants")));
        }
    }
    let mut places = PlaceSet::new();
    for u in us {
        for v in divisor(u)?.places() {
            places.insert(v.clone());
        }
    }
    let lhs = ff_height(us)? as i64;
    let bin = binomial_i64(Mode::AsPrinted, n);
    let w = places.weighted_size();
    let rhs = bin * (w as i64 + 2 * genus as i64 - 2);
    Ok(InequalityCheck {
        lhs,
        rhs,
        pass: lhs <= rhs,
        places: places.iter().map(ToString::to_string).collect(),
        weighted_s: w,
        binomial: bin,
        table: Vec::new(),
    })
}

/// The lower-bound form of the S-unit inequality for `δ = Σ ρ_i`:
/// `Σ_{v∈S} deg v·(μ_v(δ) − min_i μ_v(ρ_i)) ≤ Σ_{i>r} ℋ(ρ_i) + BIN·(|S| + 2g − 2)`.
pub fn check_zannier(
    rhos: &[RatFunc],
    r_idx: usize,
    extra: &PlaceSet,
    mode: Mode,
    genus: u64,
) -> Result<InequalityCheck> {
    let n = rhos.len();
    if n == 0 {
        return Err(Error::InvalidArgument("no functions".into()));
    }
    if r_idx > n {
        return Err(Error::InvalidArgument(format!("r = {r_idx} exceeds n = {n}")));
    }
    nonzero(rhos)?;
    if !linearly_independent(rhos) {
        return Err(Error::Precondition("functions are linearly dependent over the constants".into()));
    }
    let delta = rhos.iter().fold(RatFunc::zero(), |a, u| a + u);
    if delta.is_zero() {
        return Err(Error::Degenerate("the sum vanishes".into()));
    }
    let mut places = extra.clone();
    for (i, rho) in rhos.iter().enumerate() {
        for (v, &e) in divisor(rho)?.iter() {
            if e < 0 || (i < r_idx && e > 0) {
                places.insert(v.clone());
            }
        }
    }
    let mut table = Vec::new();
    let mut lhs = 0i64;
    for v in places.iter() {
        let mu_sum = valuation(&delta, v)?;
        let min_mu = rhos.iter().map(|r| valuation(r, v)).collect::<Result<Vec<_>>>()?.into_iter().min().unwrap_or(0);
        lhs += v.degree() as i64 * (mu_sum - min_mu);
        table.push(PlaceRow { place: v.to_string(), degree: v.degree(), mu_sum, min_mu });
    }
    let tail: i64 = rhos[r_idx..].iter().map(|r| ff_height_single(r) as i64).sum();
    let bin = binomial_i64(mode, n);
    let w = places.weighted_size();
    let rhs = tail + bin * (w as i64 + 2 * genus as i64 - 2);
    Ok(InequalityCheck {
        lhs,
        rhs,
        pass: lhs <= rhs,
        places: places.iter().map(ToString::to_string).collect(),
        weighted_s: w,
        binomial: bin,
        table,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Lemma61Check {
    pub alpha0: RatFunc,
    pub k: Vec<i64>,
    #[serde(serialize_with = "crate::bounds::serialize_rationals")]
    pub bounds: Vec<Rational>,
    pub pass: bool,
}

/// Forms `α_0 = Π b_i^{k_i}` and checks `|k_i|` against the dependence bounds.
pub fn check_lemma61(basis: &[RatFunc], k: &[i64]) -> Result<Lemma61Check> {
    if basis.len() != k.len() {
        return Err(Error::DimensionMismatch { expected: basis.len(), got: k.len() });
    }
    nonzero(basis)?;
    let rel = relation_lattice(basis)?;
    if !rel.is_trivial() {
        return Err(Error::Precondition(format!("basis is multiplicatively dependent: {:?}", rel.vectors[0])));
    }
    let alpha0 = power_product(basis, k)?;
    let bounds = dependence_bounds(&alpha0, basis);
    let pass = k.iter().zip(&bounds).all(|(ki, b)| Rational::from_integer(BigInt::from(ki.unsigned_abs())) <= *b);
    Ok(Lemma61Check { alpha0, k: k.to_vec(), bounds, pass })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::parse_expr;
    use crate::funcfield::Place;

    fn ps(xs: &[&str]) -> Vec<RatFunc> {
        xs.iter().map(|s| parse_expr(s).unwrap()).collect()
    }

    #[test]
    fn bm_examples() {
        let c = check_bm(&ps(&["z", "1-z", "-1"]), 0).unwrap();
        assert_eq!((c.lhs, c.rhs, c.pass), (1, 1, true));
        assert_eq!(c.places, vec!["z", "z - 1", "inf"]);
        let s = check_bm(&ps(&["2*z", "2-2*z", "-2"]), 0).unwrap();
        assert_eq!((s.lhs, s.rhs), (1, 1));
        let q = check_bm(&ps(&["z^2", "1-z^2", "-1"]), 0).unwrap();
        assert_eq!((q.lhs, q.rhs, q.weighted_s, q.pass), (2, 2, 4, true));
    }

    #[test]
    fn bm_preconditions() {
        assert!(matches!(check_bm(&ps(&["z", "1", "-1"]), 0), Err(Error::Precondition(_))));
        assert!(matches!(check_bm(&ps(&["z", "-z", "1", "-1"]), 0), Err(Error::Precondition(_))));
        assert!(check_bm(&ps(&["z", "-z"]), 0).is_err());
    }

    #[test]
    fn zannier_examples() {
        let none = PlaceSet::new();
        for mode in [Mode::AsPrinted, Mode::Conservative] {
            let c = check_zannier(&ps(&["1", "z"]), 2, &none, mode, 0).unwrap();
            assert_eq!((c.lhs, c.rhs, c.pass), (0, 0, true));
        }
        let extra: PlaceSet = [Place::parse("z").unwrap()].into_iter().collect();
        let rhos = ps(&["(z+1)^2", "-(z-1)^2"]);
        let printed = check_zannier(&rhos, 2, &extra, Mode::AsPrinted, 0).unwrap();
        assert_eq!((printed.lhs, printed.rhs, printed.pass), (2, 0, false));
        let cons = check_zannier(&rhos, 2, &extra, Mode::Conservative, 0).unwrap();
        assert_eq!((cons.lhs, cons.rhs, cons.pass), (2, 2, true));
        assert_eq!(cons.weighted_s, 4);
    }

    #[test]
    fn zannier_neutral_extra_place() {
        let rhos = ps(&["1", "z"]);
        let base = check_zannier(&rhos, 2, &PlaceSet::new(), Mode::Conservative, 0).unwrap();
        let extra: PlaceSet = [Place::parse("z+3").unwrap()].into_iter().collect();
        let more = check_zannier(&rhos, 2, &extra, Mode::Conservative, 0).unwrap();
        assert_eq!(base.lhs, more.lhs);
        assert!(matches!(check_zannier(&ps(&["z", "-z"]), 1, &PlaceSet::new(), Mode::Conservative, 0), Err(_)));
    }

    #[test]
    fn lemma61_examples() {
        let basis = ps(&["z", "z+1"]);
        let c = check_lemma61(&basis, &[2, -3]).unwrap();
        let b: Vec<String> = c.bounds.iter().map(ToString::to_string).collect();
        assert_eq!(b, vec!["18", "18"]);
        assert!(c.pass);
        let zero = check_lemma61(&basis, &[0, 0]).unwrap();
        assert!(zero.pass && zero.bounds.iter().all(Zero::is_zero));
        assert!(check_lemma61(&ps(&["z", "z^2"]), &[1, 1]).is_err());
    }
}
