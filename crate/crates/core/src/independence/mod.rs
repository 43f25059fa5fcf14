//! Multiplicative relations, pairwise independence, the triviality test for
//! the exponent group over ℚ, and the Wronskian criterion.

pub mod lattice;
pub mod wronskian;

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactcore::field::solve;
use crate::exactcore::integer::{factor_integer, factorial};
use crate::exactcore::Rational;
use crate::funcfield::{divisor, ff_height_single, valuation, Divisor, Place, RatFunc};
use crate::model::{FieldTag, MultiRecSpec};

pub use lattice::{hnf, integer_kernel};
pub use wronskian::{build_delta, c7_threshold, direct_wronskian, C7Report, DeltaPoly};

/// A canonical basis of the integer relations among some field elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KernelBasis {
    pub vectors: Vec<Vec<i64>>,
}

impl KernelBasis {
    pub fn is_trivial(&self) -> bool {
        self.vectors.is_empty()
    }
}

fn to_i64_vectors(vs: Vec<Vec<BigInt>>) -> Result<Vec<Vec<i64>>> {
    vs.into_iter()
        .map(|v| {
            v.iter()
                .map(|x| x.to_i64().ok_or_else(|| Error::InvalidArgument(format!("relation entry {x} exceeds 64 bits"))))
                .collect()
        })
        .collect()
}

fn exponent_rows(divisors: &[Divisor]) -> Vec<Vec<BigInt>> {
    let places: BTreeSet<&Place> = divisors.iter().flat_map(Divisor::places).collect();
    divisors.iter().map(|d| places.iter().map(|v| BigInt::from(d.get(v))).collect()).collect()
}

/// `Π f_i^{k_i}` for integer `k`.
pub fn power_product(fs: &[RatFunc], k: &[i64]) -> Result<RatFunc> {
    fs.iter().zip(k).try_fold(RatFunc::one(), |acc, (f, &e)| Ok(acc * f.powi(e)?))
}

/// All `k` with `Π f_i^{k_i}` constant.
pub fn relation_lattice(fs: &[RatFunc]) -> Result<KernelBasis> {
    let divisors = fs.iter().map(divisor).collect::<Result<Vec<_>>>()?;
    let vectors = to_i64_vectors(integer_kernel(&exponent_rows(&divisors)))?;
    for k in &vectors {
        assert!(power_product(fs, k)?.is_constant(), "kernel vector {k:?} is not a relation");
    }
    Ok(KernelBasis { vectors })
}

/// Prime-exponent vectors of nonzero rationals (signs ignored).
fn rational_exponent_rows(xs: &[Rational]) -> Result<Vec<Vec<BigInt>>> {
    let mut maps = Vec::with_capacity(xs.len());
    for x in xs {
        if x.is_zero() {
            return Err(Error::ZeroFunction);
        }
        let mut m: BTreeMap<BigInt, i64> = BTreeMap::new();
        for (p, e) in factor_integer(x.numer()) {
            *m.entry(p).or_default() += i64::from(e);
        }
        for (p, e) in factor_integer(x.denom()) {
            *m.entry(p).or_default() -= i64::from(e);
        }
        maps.push(m);
    }
    let primes: BTreeSet<&BigInt> = maps.iter().flat_map(BTreeMap::keys).collect();
    Ok(maps.iter().map(|m| primes.iter().map(|p| BigInt::from(m.get(*p).copied().unwrap_or(0))).collect()).collect())
}

/// All `k` with `Π x_i^{k_i} = ±1`.
pub fn rational_relation_lattice(xs: &[Rational]) -> Result<KernelBasis> {
    Ok(KernelBasis { vectors: to_i64_vectors(integer_kernel(&rational_exponent_rows(xs)?))? })
}

/// Term indices in reports start at 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairReport {
    pub i: usize,
    pub j: usize,
    pub independent: bool,
    pub witness: Option<Vec<i64>>,
}

fn coordinate_ratios(spec: &MultiRecSpec, i: usize, j: usize) -> Vec<RatFunc> {
    spec.terms[i].alpha.iter().zip(&spec.terms[j].alpha).map(|(a, b)| a / b).collect()
}

/// For each pair `i < j`: is there a nonzero `k ∈ ℤ^t` with
/// `Π_l (α_il/α_jl)^{k_l}` constant?
pub fn pairwise_independent(spec: &MultiRecSpec) -> Result<Vec<PairReport>> {
    spec.require_field(FieldTag::Qz)?;
    let r = spec.r();
    let mut out = Vec::new();
    for i in 0..r {
        for j in i + 1..r {
            let basis = relation_lattice(&coordinate_ratios(spec, i, j))?;
            out.push(PairReport {
                i: i + 1,
                j: j + 1,
                independent: basis.is_trivial(),
                witness: basis.vectors.into_iter().next(),
            });
        }
    }
    Ok(out)
}

pub(crate) fn require_pairwise_independent(spec: &MultiRecSpec) -> Result<()> {
    if let Some(p) = pairwise_independent(spec)?.into_iter().find(|p| !p.independent) {
        return Err(Error::Precondition(format!(
            "alpha_{} and alpha_{} are dependent modulo constants (witness {:?})",
            p.i,
            p.j,
            p.witness.unwrap_or_default()
        )));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GTrivialReport {
    pub trivial: bool,
    /// `(l, k, z)` with `α_l^z = α_k^z`, term indices from 1.
    pub witness: Option<(usize, usize, Vec<i64>)>,
}

/// Decides whether some pair `l ≠ k` and nonzero `z ∈ ℤ^t` satisfy
/// `α_l^z = α_k^z` exactly.
pub fn check_g_trivial(spec: &MultiRecSpec) -> Result<GTrivialReport> {
    spec.require_field(FieldTag::Q)?;
    let alphas = spec.rational_alphas().expect("validated constant alphas");
    let r = alphas.len();
    for l in 0..r {
        for k in l + 1..r {
            let ratios: Vec<Rational> = alphas[l].iter().zip(&alphas[k]).map(|(a, b)| a / b).collect();
            let basis = rational_relation_lattice(&ratios)?;
            let Some(first) = basis.vectors.into_iter().next() else {
                continue;
            };
            // the product is ±1; the sign is (-1)^(Σ z_j over negative ratios)
            let parity: i64 = first.iter().zip(&ratios).filter(|(_, x)| x.is_negative()).map(|(z, _)| *z).sum();
            let z = if parity % 2 == 0 { first } else { first.iter().map(|x| 2 * x).collect() };
            return Ok(GTrivialReport { trivial: false, witness: Some((l + 1, k + 1, z)) });
        }
    }
    Ok(GTrivialReport { trivial: true, witness: None })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MultDependence {
    pub k: Option<Vec<i64>>,
    /// Per-index bound `(r+1)!·Π_j ℋ(b_j)·ℋ(α_0)/ℋ(b_i)`.
    #[serde(serialize_with = "crate::bounds::serialize_rationals")]
    pub bounds: Vec<Rational>,
}

/// The bound values of the dependence lemma for `basis` and `α_0`.
pub fn dependence_bounds(alpha0: &RatFunc, basis: &[RatFunc]) -> Vec<Rational> {
    let r = basis.len() as u64;
    let heights: Vec<BigInt> = basis.iter().map(|b| BigInt::from(ff_height_single(b))).collect();
    let prod: BigInt = heights.iter().product();
    let numerator = factorial(r + 1) * prod * BigInt::from(ff_height_single(alpha0));
    heights.iter().map(|h| Rational::new(numerator.clone(), h.clone())).collect()
}

/// Finds the unique `k` with `Π basis_i^{k_i} = α_0`, if any.
pub fn solve_mult_dependence(alpha0: &RatFunc, basis: &[RatFunc]) -> Result<MultDependence> {
    if alpha0.is_zero() {
        return Err(Error::ZeroFunction);
    }
    let rel = relation_lattice(basis)?;
    if !rel.is_trivial() {
        return Err(Error::Precondition(format!("basis is multiplicatively dependent: {:?}", rel.vectors[0])));
    }
    let bounds = dependence_bounds(alpha0, basis);
    let divisors = basis.iter().map(divisor).collect::<Result<Vec<_>>>()?;
    let mut places: BTreeSet<Place> = divisors.iter().flat_map(|d| d.places().cloned()).collect();
    places.insert(Place::Infinite);
    let a: Vec<Vec<Rational>> =
        places.iter().map(|v| divisors.iter().map(|d| Rational::from_integer(d.get(v).into())).collect()).collect();
    let b: Vec<Rational> =
        places.iter().map(|v| valuation(alpha0, v).map(|e| Rational::from_integer(e.into()))).collect::<Result<_>>()?;
    let k = solve(&a, &b).and_then(|x| {
        x.iter().map(|c| if c.is_integer() { c.to_integer().to_i64() } else { None }).collect::<Option<Vec<i64>>>()
    });
    // places outside the basis support and the constant factor are settled here
    let k = match k {
        Some(k) if power_product(basis, &k)? == *alpha0 => Some(k),
        _ => None,
    };
    Ok(MultDependence { k, bounds })
}
