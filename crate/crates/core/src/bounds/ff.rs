//! C5, C6 and C8 for specs over `Q(z)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::BoundReport;
use crate::error::{Error, Result};
use crate::exactcore::integer::{binomial, factorial};
use crate::funcfield::{ff_height_single, support, valuation, Place, PlaceSet, RatFunc};
use crate::independence::require_pairwise_independent;
use crate::independence::wronskian::c7_threshold;
use crate::model::{decompose_coeffs, FieldTag, MultiRecSpec};

/// Which binomial the function-field constants use: the one printed, or
/// the larger one that restores the underlying ABC-type inequality.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    #[serde(rename = "as-printed")]
    AsPrinted,
    #[default]
    #[serde(rename = "conservative")]
    Conservative,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::AsPrinted => "as-printed",
            Mode::Conservative => "conservative",
        }
    }

    /// `C(n−1, 2)` as printed, `C(n, 2)` otherwise.
    pub fn binomial(self, n: u64) -> BigInt {
        match self {
            Mode::AsPrinted if n == 0 => BigInt::from(0),
            Mode::AsPrinted => binomial(n - 1, 2),
            Mode::Conservative => binomial(n, 2),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Mode> {
        match s {
            "as-printed" => Ok(Mode::AsPrinted),
            "conservative" => Ok(Mode::Conservative),
            _ => Err(Error::InvalidArgument(format!("unknown mode \"{s}\""))),
        }
    }
}

struct FfData {
    pis: Vec<Vec<RatFunc>>,
    /// `D = Σ r_i`.
    dim: u64,
    places: PlaceSet,
}

fn ff_data(spec: &MultiRecSpec) -> Result<FfData> {
    spec.require_field(FieldTag::Qz)?;
    let pis: Vec<Vec<RatFunc>> =
        spec.terms.iter().map(|t| decompose_coeffs(t).map(|d| d.pis)).collect::<Result<_>>()?;
    let dim = pis.iter().map(|p| p.len() as u64).sum();
    let all: Vec<RatFunc> = spec.terms.iter().flat_map(|t| t.alpha.iter().cloned()).chain(pis.iter().flatten().cloned()).collect();
    let places = support(&all, true)?;
    Ok(FfData { pis, dim, places })
}

/// `BIN·max(0, weighted|S| + 2g − 2)`.
fn abc_term(mode: Mode, n: u64, places: &PlaceSet, genus: u64, report: &mut BoundReport) -> BigInt {
    let bin = mode.binomial(n);
    let w = places.weighted_size() as i64 + 2 * genus as i64 - 2;
    report.components.insert("BIN".into(), bin.to_string());
    report.components.insert("weighted_S".into(), places.weighted_size().to_string());
    report.components.insert("genus".into(), genus.to_string());
    report.components.insert("S".into(), places.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "));
    bin * w.max(0)
}

fn echo(spec: &MultiRecSpec, report: &mut BoundReport) {
    report.inputs.insert("r".into(), spec.r().to_string());
    report.inputs.insert("t".into(), spec.t.to_string());
    report.inputs.insert("genus".into(), spec.genus.to_string());
}

fn max_pi_valuation(pis: &[Vec<RatFunc>], mu: &Place) -> Result<i64> {
    let mut best: Option<i64> = None;
    for p in pis.iter().flatten() {
        let v = valuation(p, mu)?;
        best = Some(best.map_or(v, |b| b.max(v)));
    }
    Ok(best.unwrap_or(0))
}

pub fn ff_c5(spec: &MultiRecSpec, mode: Mode) -> Result<BoundReport> {
    let data = ff_data(spec)?;
    let mut report = BoundReport::new("C5", Some(mode));
    echo(spec, &mut report);
    let r = spec.r();
    if r < 2 {
        return Ok(report.with_exact(BigInt::from(0)));
    }
    require_pairwise_independent(spec)?;
    let mut ratio_product = 0u64;
    for i in 0..r {
        for j in i + 1..r {
            let prod: u64 = spec.terms[i]
                .alpha
                .iter()
                .zip(&spec.terms[j].alpha)
                .map(|(a, b)| ff_height_single(&(a / b)))
                .product();
            ratio_product = ratio_product.max(prod);
        }
    }
    let flat: Vec<&RatFunc> = data.pis.iter().flatten().collect();
    let max_pi_height = flat.iter().flat_map(|a| flat.iter().map(move |b| ff_height_single(&(*a / *b)))).max().unwrap_or(0);
    let abc = abc_term(mode, data.dim, &data.places, spec.genus, &mut report);
    report.components.insert("D".into(), data.dim.to_string());
    report.components.insert("max_ratio_height_product".into(), ratio_product.to_string());
    report.components.insert("max_pi_ratio_height".into(), max_pi_height.to_string());
    let value = factorial(r as u64 + 1) * ratio_product * (BigInt::from(max_pi_height) + abc);
    Ok(report.with_exact(value))
}

fn c6_like(name: &str, spec: &MultiRecSpec, mu: &Place, mode: Mode) -> Result<(BoundReport, FfData)> {
    let mut data = ff_data(spec)?;
    data.places.insert(mu.clone());
    let mut report = BoundReport::new(name, Some(mode));
    echo(spec, &mut report);
    report.inputs.insert("place".into(), mu.to_string());
    let max_mu = max_pi_valuation(&data.pis, mu)?;
    let abc = abc_term(mode, data.dim, &data.places, spec.genus, &mut report);
    report.components.insert(if name == "C8" { "q" } else { "D" }.into(), data.dim.to_string());
    report.components.insert("max_pi_valuation".into(), max_mu.to_string());
    let report = report.with_exact(BigInt::from(max_mu) + abc);
    Ok((report, data))
}

/// May be negative when every `π` has a pole at `μ`.
pub fn ff_c6(spec: &MultiRecSpec, mu: &Place, mode: Mode) -> Result<BoundReport> {
    Ok(c6_like("C6", spec, mu, mode)?.0)
}

/// C8 for a one-variable spec, with the C7 threshold alongside.
pub fn ff_c8(spec: &MultiRecSpec, mu: &Place, mode: Mode) -> Result<BoundReport> {
    spec.require_field(FieldTag::Qz)?;
    if spec.t != 1 {
        return Err(Error::InvalidArgument(format!("C8 needs t = 1, got t = {}", spec.t)));
    }
    let (mut report, _) = c6_like("C8", spec, mu, mode)?;
    let c7 = c7_threshold(spec)?;
    report.components.insert("C7".into(), c7.c7.to_string());
    Ok(report)
}
