//! Elements of ℚ(z) in canonical form.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactcore::field::Field;
use crate::exactcore::{parse_expr, Poly, Rational};

/// `num / den` with `den` monic and `gcd(num, den) = 1`; zero is `0 / 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroFunction);
        }
        let g = num.gcd(&den);
        let num = num.exact_div(&g).expect("gcd divides");
        let den = den.exact_div(&g).expect("gcd divides");
        Ok(Self::normalized(num, den))
    }

    /// Makes `den` monic; assumes the parts are already coprime.
    fn normalized(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RatFunc { num, den: Poly::one() };
        }
        let lc = den.leading_coeff().expect("nonzero denominator").clone();
        if lc.is_one() {
            return RatFunc { num, den };
        }
        let inv = lc.recip();
        RatFunc { num: num.scale(&inv), den: den.scale(&inv) }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(Rational::from_integer(n.into()))
    }

    pub fn z() -> Self {
        Self::from_poly(Poly::z())
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_one()
    }

    /// The value of a constant function.
    pub fn as_constant(&self) -> Option<Rational> {
        self.is_constant().then(|| self.num.coeff(0))
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn inv(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::ZeroFunction);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Option<RatFunc> {
        rhs.inv().ok().map(|r| self * &r)
    }

    pub fn pow(&self, e: u32) -> RatFunc {
        RatFunc { num: self.num.pow(e), den: self.den.pow(e) }
    }

    /// Integer power; negative exponents need a nonzero base.
    pub fn powi(&self, e: i64) -> Result<RatFunc> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let e = u32::try_from(e.unsigned_abs()).map_err(|_| Error::InvalidArgument(format!("exponent {e} too large")))?;
        Ok(base.pow(e))
    }

    /// `d/dz` by the quotient rule.
    pub fn derivative(&self) -> RatFunc {
        let num = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        RatFunc::new(num, self.den.pow(2)).expect("nonzero denominator")
    }

    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        (!d.is_zero()).then(|| self.num.eval(x) / d)
    }

    pub fn scale(&self, c: &Rational) -> RatFunc {
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc { num: Poly::zero(), den: Poly::one() }
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFunc {
    fn one() -> Self {
        Self::from_poly(Poly::one())
    }
}

impl Field for RatFunc {
    fn from_bigint(n: &BigInt) -> Self {
        Self::constant(Rational::from_integer(n.clone()))
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc::new(&self.num + &rhs.num, self.den.clone()).expect("nonzero");
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RatFunc::new(num, &self.den * &rhs.den).expect("nonzero")
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let num = &self.num.exact_div(&g1).unwrap() * &rhs.num.exact_div(&g2).unwrap();
        let den = &self.den.exact_div(&g2).unwrap() * &rhs.den.exact_div(&g1).unwrap();
        RatFunc::normalized(num, den)
    }
}

/// Panics on division by the zero function; see [`RatFunc::checked_div`].
impl Div for &RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self.checked_div(rhs).expect("division by the zero function")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc { (&self).$m(&rhs) }
        }
        impl $tr<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: &RatFunc) -> RatFunc { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

/// Re-parseable: `num` alone for polynomials, else `(num)/(den)`.
impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl std::str::FromStr for RatFunc {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_expr(s)
    }
}

impl Serialize for RatFunc {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RatFunc {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_expr(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> RatFunc {
        parse_expr(s).unwrap()
    }

    #[test]
    fn canonical_form() {
        let f = RatFunc::new(Poly::from_ints(&[2, 2]), Poly::from_ints(&[0, 4])).unwrap();
        assert_eq!(f.numer(), &Poly::from_coeffs(vec![Rational::new(1.into(), 2.into()); 2]));
        assert_eq!(f.denom(), &Poly::z());
        assert!(RatFunc::new(Poly::one(), Poly::zero()).is_err());
        assert_eq!(RatFunc::new(Poly::zero(), Poly::z()).unwrap(), RatFunc::zero());
    }

    #[test]
    fn derivatives() {
        assert_eq!(p("z^2").derivative(), p("2*z"));
        assert_eq!(p("1/z").derivative(), p("-1/z^2"));
        assert_eq!(p("(z+1)/z").derivative(), p("-1/z^2"));
        assert_eq!(p("7").derivative(), RatFunc::zero());
    }

    #[test]
    fn display_roundtrip_examples() {
        for s in ["0", "1", "-z", "3/2*z^2 - z + 1", "(z+1)/(z-1)", "(-2)/(z^2+1)", "(1/3)/(z)"] {
            let f = p(s);
            assert_eq!(p(&f.to_string()), f, "{s} -> {f}");
        }
        assert_eq!(p("(z+1)/(2*z)").to_string(), "(1/2*z + 1/2)/(z)");
    }

    #[test]
    fn powers() {
        assert_eq!(p("z/(z+1)").powi(-2).unwrap(), p("(z+1)^2/z^2"));
        assert!(RatFunc::zero().powi(-1).is_err());
        assert_eq!(RatFunc::zero().powi(0).unwrap(), RatFunc::one());
    }

    fn small_poly() -> impl Strategy<Value = Poly> {
        proptest::collection::vec(-4i64..=4, 0..5).prop_map(|c| Poly::from_ints(&c))
    }

    pub(crate) fn ratfunc() -> impl Strategy<Value = RatFunc> {
        (small_poly(), small_poly().prop_filter("nonzero", |d| !d.is_zero()))
            .prop_map(|(n, d)| RatFunc::new(n, d).unwrap())
    }

    proptest! {
        #[test]
        fn display_parse_roundtrip(f in ratfunc()) {
            prop_assert_eq!(parse_expr(&f.to_string()).unwrap(), f);
        }

        #[test]
        fn leibniz_rule(f in ratfunc(), g in ratfunc()) {
            let lhs = (&f * &g).derivative();
            let rhs = &(&f.derivative() * &g) + &(&f * &g.derivative());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn field_axioms(f in ratfunc(), g in ratfunc(), h in ratfunc()) {
            prop_assert_eq!(&(&f + &g) * &h, &(&f * &h) + &(&g * &h));
            prop_assert_eq!(&(&f - &g) + &g, f.clone());
            if !g.is_zero() {
                prop_assert_eq!(&(&f / &g) * &g, f);
            }
        }
    }
}
