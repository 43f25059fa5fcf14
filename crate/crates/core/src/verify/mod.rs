//! Exhaustive desk-scale checks over boxes of exponent vectors, and direct
//! checks of the S-unit inequalities behind the function-field bounds.

mod checks;
mod ff;
mod nf;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{BoundReport, Mode};
use crate::error::{Error, Result};

pub use checks::{check_bm, check_lemma61, check_zannier, InequalityCheck, Lemma61Check, PlaceRow};
pub use ff::{ff_growth_point, verify_ff_growth, GrowthOutcome};
pub use nf::{classify_nf, classify_point, enumerate_nf_solutions, nf_is_solution, NfClass, MAX_SUBSET_TERMS};

/// `{n ∈ ℤ^t : |n_j| ≤ N}`, or `[0, N]^t` when `nonneg` is set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SearchBox {
    pub n: u64,
    pub nonneg: bool,
}

impl SearchBox {
    pub fn new(n: u64, nonneg: bool) -> Self {
        SearchBox { n, nonneg }
    }

    fn range(&self) -> (i64, i64) {
        let n = self.n as i64;
        (if self.nonneg { 0 } else { -n }, n)
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        let (lo, hi) = self.range();
        p.iter().all(|&x| lo <= x && x <= hi)
    }

    /// Points with the given first coordinate, in lexicographic order.
    fn slice(&self, t: usize, first: i64) -> Vec<Vec<i64>> {
        let (lo, hi) = self.range();
        let mut out = Vec::new();
        let mut cur = vec![lo; t];
        cur[0] = first;
        loop {
            out.push(cur.clone());
            let mut k = t;
            loop {
                if k == 1 {
                    return out;
                }
                k -= 1;
                if cur[k] < hi {
                    cur[k] += 1;
                    break;
                }
                cur[k] = lo;
            }
        }
    }

    /// Every point, lexicographically.
    pub fn points(&self, t: usize) -> Vec<Vec<i64>> {
        let (lo, hi) = self.range();
        (lo..=hi).flat_map(|f| self.slice(t, f)).collect()
    }

    /// Maps `f` over the box, split by first coordinate across `workers`
    /// threads; results come back in lexicographic order regardless.
    pub(crate) fn par_map<T, F>(&self, t: usize, workers: Option<usize>, f: F) -> Result<Vec<T>>
    where
        T: Send,
        F: Fn(&[i64]) -> Result<T> + Sync,
    {
        if t == 0 {
            return Err(Error::InvalidArgument("t must be at least 1".into()));
        }
        let (lo, hi) = self.range();
        let firsts: Vec<i64> = (lo..=hi).collect();
        let run = || -> Result<Vec<T>> {
            let chunks: Vec<Result<Vec<T>>> =
                firsts.par_iter().map(|&a| self.slice(t, a).iter().map(|p| f(p)).collect()).collect();
            let mut out = Vec::new();
            for c in chunks {
                out.extend(c?);
            }
            Ok(out)
        };
        match workers {
            Some(w) => rayon::ThreadPoolBuilder::new()
                .num_threads(w.max(1))
                .build()
                .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?
                .install(run),
            None => run(),
        }
    }
}

/// `max |n_j|`.
pub fn sup_norm(n: &[i64]) -> u64 {
    n.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EntryClass {
    /// Satisfies the number-field inequality.
    Solution,
    /// The distinguished coefficient polynomial vanishes here.
    ZeroLeadingTerm,
    /// Breaks the growth inequality at or beyond the C5 threshold.
    Violation,
    /// Breaks it below the threshold, where nothing is claimed.
    BelowThreshold,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrowthBreakdown {
    pub mu_g: i64,
    pub c6: i64,
    /// `Σ_j n_j·μ(α_ij)` per term.
    pub term_valuations: Vec<i64>,
    pub rhs: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Entry {
    pub n: Vec<i64>,
    pub class: EntryClass,
    /// Indices `i` (from 1) with `P_i(n) = 0`.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub zero_terms: Vec<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub vanishing_subsums: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub in_a: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub growth: Option<GrowthBreakdown>,
}

impl Entry {
    fn new(n: Vec<i64>, class: EntryClass) -> Self {
        Entry { n, class, zero_terms: Vec::new(), vanishing_subsums: Vec::new(), in_a: None, growth: None }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub check: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<Mode>,
    pub params: BTreeMap<String, String>,
    pub counts: BTreeMap<String, u64>,
    pub entries: Vec<Entry>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub bounds: Vec<BoundReport>,
    pub pass: bool,
}

impl VerifyReport {
    fn new(check: &str, mode: Option<Mode>) -> Self {
        VerifyReport {
            check: check.into(),
            mode,
            params: BTreeMap::new(),
            counts: BTreeMap::new(),
            entries: Vec::new(),
            bounds: Vec::new(),
            pass: true,
        }
    }

    pub fn count(&self, key: &str) -> u64 {
        self.counts.get(key).copied().unwrap_or(0)
    }

    pub fn entries_of(&self, class: EntryClass) -> impl Iterator<Item = &Entry> {
        self.entries.iter().filter(move |e| e.class == class)
    }
}
