//! Places of ℚ(z), valuations and divisors.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::RatFunc;
use crate::error::{Error, Result};
use crate::exactcore::factor::is_irreducible;
use crate::exactcore::{factor_poly, parse_expr, Poly};

/// A ℚ-rational place: a monic irreducible polynomial or the place at
/// infinity. Finite places sort before `Infinite`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Finite(Poly),
    Infinite,
}

impl Place {
    pub fn finite(p: Poly) -> Result<Place> {
        if !p.is_monic() || !is_irreducible(&p) {
            return Err(Error::InvalidPlace(p.to_string()));
        }
        Ok(Place::Finite(p))
    }

    /// `"inf"` or an expression for a monic irreducible polynomial.
    pub fn parse(s: &str) -> Result<Place> {
        if s.trim() == "inf" {
            return Ok(Place::Infinite);
        }
        let f = parse_expr(s)?;
        if !f.is_polynomial() {
            return Err(Error::InvalidPlace(s.to_string()));
        }
        Place::finite(f.numer().clone()).map_err(|_| Error::InvalidPlace(s.to_string()))
    }

    /// Number of complex points the place stands for.
    pub fn degree(&self) -> u64 {
        match self {
            Place::Finite(p) => p.degree_or_zero() as u64,
            Place::Infinite => 1,
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{p}"),
            Place::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Place {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Place::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Exponent of the monic irreducible `p` in the nonzero polynomial `f`.
fn poly_multiplicity(f: &Poly, p: &Poly) -> i64 {
    let mut f = f.clone();
    let mut k = 0;
    while let Some(q) = f.exact_div(p) {
        f = q;
        k += 1;
    }
    k
}

/// `μ_v(f)`. The zero function has no finite valuation.
pub fn valuation(f: &RatFunc, v: &Place) -> Result<i64> {
    if num_traits::Zero::is_zero(f) {
        return Err(Error::ZeroFunction);
    }
    Ok(match v {
        Place::Finite(p) => poly_multiplicity(f.numer(), p) - poly_multiplicity(f.denom(), p),
        Place::Infinite => f.denom().degree_or_zero() as i64 - f.numer().degree_or_zero() as i64,
    })
}

/// A finitely supported map from places to nonzero integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Divisor(BTreeMap<Place, i64>);

impl Divisor {
    pub fn get(&self, v: &Place) -> i64 {
        self.0.get(v).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Place, &i64)> {
        self.0.iter()
    }

    pub fn places(&self) -> impl Iterator<Item = &Place> {
        self.0.keys()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `Σ deg(v)·n_v`; zero for principal divisors.
    pub fn degree(&self) -> i64 {
        self.0.iter().map(|(v, n)| v.degree() as i64 * n).sum()
    }

    fn add_at(&mut self, v: Place, n: i64) {
        let e = self.0.entry(v.clone()).or_insert(0);
        *e += n;
        if *e == 0 {
            self.0.remove(&v);
        }
    }
}

pub fn divisor(f: &RatFunc) -> Result<Divisor> {
    if num_traits::Zero::is_zero(f) {
        return Err(Error::ZeroFunction);
    }
    let mut d = Divisor::default();
    for (part, sign) in [(f.numer(), 1i64), (f.denom(), -1)] {
        if part.is_constant() {
            continue;
        }
        for (p, e) in factor_poly(part)?.factors {
            d.add_at(Place::Finite(p), sign * i64::from(e));
        }
    }
    d.add_at(Place::Infinite, valuation(f, &Place::Infinite)?);
    Ok(d)
}

/// A set of places with its degree-weighted size.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PlaceSet {
    places: BTreeSet<Place>,
}

impl PlaceSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, v: Place) -> bool {
        self.places.insert(v)
    }

    pub fn extend(&mut self, other: &PlaceSet) {
        self.places.extend(other.places.iter().cloned());
    }

    pub fn contains(&self, v: &Place) -> bool {
        self.places.contains(v)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Place> {
        self.places.iter()
    }

    pub fn len(&self) -> usize {
        self.places.len()
    }

    pub fn is_empty(&self) -> bool {
        self.places.is_empty()
    }

    /// `Σ deg(v)`: each place counts the complex points above it.
    pub fn weighted_size(&self) -> u64 {
        self.places.iter().map(Place::degree).sum()
    }
}

impl FromIterator<Place> for PlaceSet {
    fn from_iter<I: IntoIterator<Item = Place>>(iter: I) -> Self {
        PlaceSet { places: iter.into_iter().collect() }
    }
}

/// Finite zeros and poles of every `f`; `∞` is present exactly when asked.
pub fn support(fs: &[RatFunc], include_infinite: bool) -> Result<PlaceSet> {
    let mut s = PlaceSet::new();
    for f in fs {
        for v in divisor(f)?.places().filter(|v| **v != Place::Infinite) {
            s.insert(v.clone());
        }
    }
    if include_infinite {
        s.insert(Place::Infinite);
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcfield::ratfunc::tests::ratfunc;
    use num_traits::Zero;
    use proptest::prelude::*;

    fn p(s: &str) -> RatFunc {
        parse_expr(s).unwrap()
    }

    fn place(s: &str) -> Place {
        Place::parse(s).unwrap()
    }

    #[test]
    fn valuations() {
        let f = p("z^3/(z-1)");
        assert_eq!(valuation(&f, &place("z")).unwrap(), 3);
        assert_eq!(valuation(&f, &place("z-1")).unwrap(), -1);
        assert_eq!(valuation(&p("(z^2+1)/z"), &Place::Infinite).unwrap(), -1);
        assert_eq!(valuation(&RatFunc::zero(), &Place::Infinite), Err(Error::ZeroFunction));
    }

    #[test]
    fn divisors() {
        let d = divisor(&p("z/(z-1)")).unwrap();
        assert_eq!(d.iter().count(), 2);
        assert_eq!(d.get(&place("z")), 1);
        assert_eq!(d.get(&place("z-1")), -1);
        assert!(divisor(&p("2/3")).unwrap().is_empty());
        let d = divisor(&p("z^2+1")).unwrap();
        assert_eq!(d.get(&place("z^2+1")), 1);
        assert_eq!(d.get(&Place::Infinite), -2);
        assert_eq!(d.degree(), 0);
    }

    #[test]
    fn supports() {
        let s = support(&[p("z"), p("z+1")], true).unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s.weighted_size(), 3);
        let s = support(&[p("5")], true).unwrap();
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![&Place::Infinite]);
        let s = support(&[p("(z^2+1)/z")], false).unwrap();
        assert_eq!(s.iter().cloned().collect::<Vec<_>>(), vec![place("z"), place("z^2+1")]);
        assert_eq!(s.weighted_size(), 3);
    }

    #[test]
    fn place_parsing() {
        assert_eq!(Place::parse("inf").unwrap(), Place::Infinite);
        assert!(Place::parse("2*z").is_err());
        assert!(Place::parse("z^2-1").is_err());
        assert!(Place::parse("1/z").is_err());
        assert!(Place::parse("3").is_err());
        assert!(place("z") < place("z-1"));
        assert!(place("z+1") < Place::Infinite);
        assert_eq!(place("z^2 + 1").to_string(), "z^2 + 1");
    }

    proptest! {
        #[test]
        fn product_formula(f in ratfunc().prop_filter("nonzero", |f| !num_traits::Zero::is_zero(f))) {
            prop_assert_eq!(divisor(&f).unwrap().degree(), 0);
        }
    }
}
