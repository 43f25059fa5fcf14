//! Explicit growth-bound constants.

pub mod ff;
pub mod interval;
pub mod nf;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;

use crate::exactcore::integer::log2_bigint;
use crate::exactcore::poly::fmt_rational;
use crate::exactcore::Rational;

pub use ff::{ff_c5, ff_c6, ff_c8, Mode};
pub use interval::{ln_interval, Interval};
pub use nf::{
    a_constants, cor23_bound, nf_params, rem24_bound, tau, tau_report, thm21_bound, BoundParamsNF, TauValue,
};

/// A computed constant. Exactly one of `exact_value` or the
/// `log_natural_exponent`/`cofactor` pair carries the value when it fits;
/// `log2_value` is always filled for reporting.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<Mode>,
    #[serde(serialize_with = "serialize_opt_bigint")]
    pub exact_value: Option<BigInt>,
    #[serde(serialize_with = "serialize_opt_log2")]
    pub log2_value: Option<f64>,
    #[serde(serialize_with = "serialize_opt_bigint", skip_serializing_if = "Option::is_none")]
    pub log_natural_exponent: Option<BigInt>,
    #[serde(serialize_with = "serialize_opt_rational", skip_serializing_if = "Option::is_none")]
    pub cofactor: Option<Rational>,
    #[serde(serialize_with = "serialize_opt_bigint", skip_serializing_if = "Option::is_none")]
    pub first_summand: Option<BigInt>,
    pub inputs: BTreeMap<String, String>,
    pub components: BTreeMap<String, String>,
}

impl BoundReport {
    pub fn new(name: &str, mode: Option<Mode>) -> Self {
        BoundReport {
            name: name.to_string(),
            mode,
            exact_value: None,
            log2_value: None,
            log_natural_exponent: None,
            cofactor: None,
            first_summand: None,
            inputs: BTreeMap::new(),
            components: BTreeMap::new(),
        }
    }

    pub(crate) fn with_exact(mut self, v: BigInt) -> Self {
        self.log2_value = (v.bits() > 0).then(|| log2_bigint(&v));
        self.exact_value = Some(v);
        self
    }

    /// The value as one line: the integer itself, `exp(N)·c + f`, or `2^x`.
    pub fn value_string(&self) -> String {
        if let Some(v) = &self.exact_value {
            return v.to_string();
        }
        if let (Some(n), Some(f)) = (&self.log_natural_exponent, &self.first_summand) {
            return match &self.cofactor {
                Some(c) => format!("{f} + exp({n})*{}", fmt_rational(c)),
                None => format!("{f} + exp({n})*c, log2 c ~ {:.6}", self.log2_value.unwrap_or(f64::NAN)),
            };
        }
        match self.log2_value {
            Some(l) => format!("2^{l:.6}"),
            None => "-".into(),
        }
    }
}

/// log2 of a positive rational, reporting precision only.
pub(crate) fn log2_rational(x: &Rational) -> f64 {
    log2_bigint(x.numer()) - log2_bigint(x.denom())
}

pub(crate) fn serialize_rationals<S: serde::Serializer>(xs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(fmt_rational))
}

pub(crate) fn serialize_rational<S: serde::Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_rational(x))
}

pub(crate) fn serialize_bigint<S: serde::Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

fn serialize_opt_bigint<S: serde::Serializer>(x: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.serialize_str(&v.to_string()),
        None => s.serialize_none(),
    }
}

fn serialize_opt_rational<S: serde::Serializer>(x: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.serialize_str(&fmt_rational(v)),
        None => s.serialize_none(),
    }
}

fn serialize_opt_log2<S: serde::Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) if v.is_finite() => s.serialize_f64((v * 1e6).round() / 1e6),
        _ => s.serialize_none(),
    }
}
