//! Multi-recurrence specifications `G(n) = Σ P_i(n)·α_i^n`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactcore::field::{rank, solve, Field};
use crate::exactcore::{parse_expr, MPoly, Rational};
use crate::funcfield::height::coefficient_rows;
use crate::funcfield::RatFunc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FieldTag {
    #[serde(rename = "Q")]
    Q,
    #[serde(rename = "Q(z)")]
    Qz,
}

impl FieldTag {
    pub fn as_str(self) -> &'static str {
        match self {
            FieldTag::Q => "Q",
            FieldTag::Qz => "Q(z)",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    pub poly: MPoly<RatFunc>,
    pub alpha: Vec<RatFunc>,
}

impl Term {
    /// `m_i`: the total degree of `P_i`.
    pub fn degree(&self) -> u32 {
        self.poly.total_degree().unwrap_or(0)
    }

    /// `P_i(n)·α_i^n`.
    pub fn eval(&self, n: &[i64]) -> Result<RatFunc> {
        let p = self.poly.eval(n)?;
        if p.is_zero() {
            return Ok(p);
        }
        self.alpha.iter().zip(n).try_fold(p, |acc, (a, &e)| Ok(acc * a.powi(e)?))
    }
}

/// Coefficients and alphas are stored as rational functions in both
/// fields; under `Q` they are all constants.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiRecSpec {
    pub field: FieldTag,
    pub t: usize,
    pub terms: Vec<Term>,
    pub genus: u64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    field: String,
    t: i64,
    terms: Vec<RawTerm>,
    #[serde(default)]
    genus: Option<i64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTerm {
    poly: Vec<RawMonomial>,
    alpha: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMonomial {
    exps: Vec<i64>,
    coeff: String,
}

fn invalid(field: impl Into<String>, msg: impl Into<String>) -> Error {
    Error::InvalidSpec { field: field.into(), msg: msg.into() }
}

fn parse_entry(field: FieldTag, path: &str, text: &str) -> Result<RatFunc> {
    let f = parse_expr(text).map_err(|e| invalid(path, e.to_string()))?;
    if field == FieldTag::Q && !f.is_constant() {
        return Err(invalid(path, format!("non-constant entry \"{text}\" under field Q")));
    }
    Ok(f)
}

/// Parses and validates a JSON spec document.
pub fn load_spec(document: &str) -> Result<MultiRecSpec> {
    let raw: RawSpec = serde_json::from_str(document).map_err(|e| Error::MalformedDocument(e.to_string()))?;
    let field = match raw.field.as_str() {
        "Q" => FieldTag::Q,
        "Q(z)" => FieldTag::Qz,
        other => return Err(invalid("field", format!("expected \"Q\" or \"Q(z)\", got \"{other}\""))),
    };
    let t = usize::try_from(raw.t).ok().filter(|&t| t >= 1).ok_or_else(|| invalid("t", "must be at least 1"))?;
    if raw.terms.is_empty() {
        return Err(invalid("terms", "at least one term is required"));
    }
    let genus = match raw.genus {
        None => 0,
        Some(g) => u64::try_from(g).map_err(|_| invalid("genus", "must be non-negative"))?,
    };
    let mut terms = Vec::with_capacity(raw.terms.len());
    for (i, rt) in raw.terms.iter().enumerate() {
        if rt.alpha.len() != t {
            return Err(invalid(
                format!("terms[{i}].alpha"),
                format!("dimension mismatch: expected {t} entries, got {}", rt.alpha.len()),
            ));
        }
        let mut alpha = Vec::with_capacity(t);
        for (j, text) in rt.alpha.iter().enumerate() {
            let path = format!("terms[{i}].alpha[{j}]");
            let a = parse_entry(field, &path, text)?;
            if a.is_zero() {
                return Err(invalid(path, "zero alpha"));
            }
            alpha.push(a);
        }
        let mut monomials = Vec::with_capacity(rt.poly.len());
        for (k, m) in rt.poly.iter().enumerate() {
            let path = format!("terms[{i}].poly[{k}]");
            if m.exps.len() != t {
                return Err(invalid(
                    format!("{path}.exps"),
                    format!("dimension mismatch: expected {t} exponents, got {}", m.exps.len()),
                ));
            }
            let exps = m
                .exps
                .iter()
                .map(|&e| u32::try_from(e).map_err(|_| invalid(format!("{path}.exps"), "exponents must be non-negative")))
                .collect::<Result<Vec<u32>>>()?;
            monomials.push((exps, parse_entry(field, &format!("{path}.coeff"), &m.coeff)?));
        }
        let poly = MPoly::from_terms(t, monomials)?;
        if poly.is_zero() {
            return Err(invalid(format!("terms[{i}].poly"), "zero polynomial"));
        }
        terms.push(Term { poly, alpha });
    }
    Ok(MultiRecSpec { field, t, terms, genus })
}

impl MultiRecSpec {
    pub fn r(&self) -> usize {
        self.terms.len()
    }

    /// Serializes back to the document format.
    pub fn to_document(&self) -> String {
        let raw = RawSpec {
            field: self.field.as_str().to_string(),
            t: self.t as i64,
            terms: self
                .terms
                .iter()
                .map(|term| RawTerm {
                    poly: term
                        .poly
                        .terms_desc()
                        .into_iter()
                        .map(|(e, c)| RawMonomial { exps: e.iter().map(|&x| i64::from(x)).collect(), coeff: c.to_string() })
                        .collect(),
                    alpha: term.alpha.iter().map(ToString::to_string).collect(),
                })
                .collect(),
            genus: (self.genus != 0).then_some(self.genus as i64),
        };
        serde_json::to_string_pretty(&raw).expect("serializable")
    }

    /// Alphas as rationals; `None` unless every alpha is constant.
    pub fn rational_alphas(&self) -> Option<Vec<Vec<Rational>>> {
        self.terms.iter().map(|t| t.alpha.iter().map(RatFunc::as_constant).collect()).collect()
    }

    /// Coefficient polynomials over ℚ; `None` unless every coefficient is constant.
    pub fn rational_polys(&self) -> Option<Vec<MPoly<Rational>>> {
        self.terms
            .iter()
            .map(|term| {
                let terms: Option<Vec<_>> = term.poly.terms().map(|(e, c)| Some((e.clone(), c.as_constant()?))).collect();
                MPoly::from_terms(self.t, terms?).ok()
            })
            .collect()
    }

    pub fn require_field(&self, field: FieldTag) -> Result<()> {
        if self.field != field {
            return Err(Error::Precondition(format!("operation needs field {}, spec has {}", field.as_str(), self.field.as_str())));
        }
        Ok(())
    }
}

/// `G(n)` exactly; negative exponents allowed.
pub fn evaluate_g(spec: &MultiRecSpec, n: &[i64]) -> Result<RatFunc> {
    if n.len() != spec.t {
        return Err(Error::DimensionMismatch { expected: spec.t, got: n.len() });
    }
    spec.terms.iter().try_fold(RatFunc::zero(), |acc, term| Ok(acc + term.eval(n)?))
}

/// The rational terms of a field-`Q` spec, prepared for fast evaluation.
#[derive(Clone, Debug)]
pub struct RationalSpec {
    pub polys: Vec<MPoly<Rational>>,
    pub alphas: Vec<Vec<Rational>>,
}

impl RationalSpec {
    pub fn new(spec: &MultiRecSpec) -> Result<Self> {
        let (Some(polys), Some(alphas)) = (spec.rational_polys(), spec.rational_alphas()) else {
            return Err(Error::Precondition("spec has non-constant entries".into()));
        };
        Ok(RationalSpec { polys, alphas })
    }

    pub fn t(&self) -> usize {
        self.alphas.first().map_or(0, Vec::len)
    }

    /// `P_i(n)·α_i^n` as a rational.
    pub fn term(&self, i: usize, n: &[i64]) -> Result<Rational> {
        let p = self.polys[i].eval(n)?;
        if p.is_zero() {
            return Ok(p);
        }
        Ok(self.alphas[i].iter().zip(n).fold(p, |acc, (a, &e)| acc * a.pow_i64(e)))
    }

    pub fn eval(&self, n: &[i64]) -> Result<Rational> {
        (0..self.polys.len()).try_fold(Rational::zero(), |acc, i| Ok(acc + self.term(i, n)?))
    }
}

/// `P = Σ π_l·Q_l` with the `π_l` linearly independent over the constants.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoeffDecomp {
    pub pis: Vec<RatFunc>,
    #[serde(serialize_with = "serialize_mpolys")]
    pub qs: Vec<MPoly<Rational>>,
}

fn serialize_mpolys<S: serde::Serializer>(qs: &[MPoly<Rational>], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(qs.iter().map(ToString::to_string))
}

impl CoeffDecomp {
    /// `r_i`, the dimension of the coefficient span.
    pub fn rank(&self) -> usize {
        self.pis.len()
    }

    pub fn recompose(&self) -> MPoly<RatFunc> {
        let nvars = self.qs.first().map_or(0, MPoly::nvars);
        let mut acc = MPoly::zero(nvars);
        for (pi, q) in self.pis.iter().zip(&self.qs) {
            let lifted = q.map(|c| pi.scale(c));
            acc = acc.add(&lifted).expect("same arity");
        }
        acc
    }
}

/// Picks a basis of the coefficients' ℚ-span from the coefficients
/// themselves, in leading-monomial-first order, and expresses `P` in it.
pub fn decompose_coeffs(term: &Term) -> Result<CoeffDecomp> {
    let poly = &term.poly;
    if poly.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let monomials = poly.terms_desc();
    let coeffs: Vec<&RatFunc> = monomials.iter().map(|(_, c)| *c).collect();
    let rows = coefficient_rows(&coeffs);
    let mut basis: Vec<usize> = Vec::new();
    for k in 0..rows.len() {
        let mut candidate: Vec<Vec<Rational>> = basis.iter().map(|&b| rows[b].clone()).collect();
        candidate.push(rows[k].clone());
        if rank(candidate) > basis.len() {
            basis.push(k);
        }
    }
    // columns are basis vectors: solve A·λ = row_k for each coefficient
    let width = rows[0].len();
    let a: Vec<Vec<Rational>> = (0..width).map(|w| basis.iter().map(|&b| rows[b][w].clone()).collect()).collect();
    let mut qs: Vec<Vec<(Vec<u32>, Rational)>> = vec![Vec::new(); basis.len()];
    for (k, (exps, _)) in monomials.iter().enumerate() {
        let lambda = solve(&a, &rows[k]).expect("coefficient lies in the span");
        for (l, c) in lambda.into_iter().enumerate() {
            qs[l].push(((*exps).clone(), c));
        }
    }
    Ok(CoeffDecomp {
        pis: basis.iter().map(|&b| coeffs[b].clone()).collect(),
        qs: qs.into_iter().map(|t| MPoly::from_terms(poly.nvars(), t)).collect::<Result<_>>()?,
    })
}

/// Lowest common multiple of the coefficient denominators of a `Q` spec.
pub fn denominator_lcm(polys: &[MPoly<Rational>]) -> BigInt {
    polys.iter().flat_map(MPoly::coefficients).fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) const REMARK11: &str = r#"{
        "field": "Q", "t": 4,
        "terms": [
            {"poly": [{"exps": [0,0,0,0], "coeff": "1"}],  "alpha": ["2","1","1","1"]},
            {"poly": [{"exps": [0,0,0,0], "coeff": "-1"}], "alpha": ["1","2","1","1"]},
            {"poly": [{"exps": [0,0,0,0], "coeff": "1"}],  "alpha": ["1","1","3","1"]},
            {"poly": [{"exps": [0,0,0,0], "coeff": "-1"}], "alpha": ["1","1","1","3"]}
        ]}"#;

    fn p(s: &str) -> RatFunc {
        parse_expr(s).unwrap()
    }

    fn one_var_term(coeffs: &[(u32, &str)]) -> Term {
        let poly = MPoly::from_terms(1, coeffs.iter().map(|&(e, c)| (vec![e], p(c)))).unwrap();
        Term { poly, alpha: vec![p("z")] }
    }

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn remark_example_loads_and_vanishes_on_diagonal() {
        let spec = load_spec(REMARK11).unwrap();
        assert_eq!((spec.t, spec.r(), spec.genus), (4, 4, 0));
        assert_eq!(evaluate_g(&spec, &[5, 5, 2, 2]).unwrap(), RatFunc::zero());
        let rs = RationalSpec::new(&spec).unwrap();
        assert_eq!(rs.eval(&[5, 5, 2, 2]).unwrap(), q(0));
        assert_eq!(rs.eval(&[1, 0, 0, 0]).unwrap(), q(1));
        assert_eq!(rs.eval(&[-1, 0, 0, 0]).unwrap(), Rational::new((-1).into(), 2.into()));
    }

    #[test]
    fn evaluation_examples() {
        let spec = load_spec(
            r#"{"field":"Q","t":1,"terms":[
                {"poly":[{"exps":[0],"coeff":"1"}],"alpha":["3"]},
                {"poly":[{"exps":[0],"coeff":"-1"}],"alpha":["2"]}]}"#,
        )
        .unwrap();
        assert_eq!(evaluate_g(&spec, &[3]).unwrap(), RatFunc::from_int(19));
        assert_eq!(evaluate_g(&spec, &[0]).unwrap(), RatFunc::zero());
        let spec = load_spec(
            r#"{"field":"Q(z)","t":2,"terms":[
                {"poly":[{"exps":[0,0],"coeff":"1"}],"alpha":["z","z+1"]},
                {"poly":[{"exps":[0,0],"coeff":"1"}],"alpha":["z-1","z"]}]}"#,
        )
        .unwrap();
        assert_eq!(evaluate_g(&spec, &[1, 1]).unwrap(), p("2*z^2"));
        assert_eq!(evaluate_g(&spec, &[0, 0]).unwrap(), RatFunc::from_int(2));
        assert!(matches!(evaluate_g(&spec, &[1]), Err(Error::DimensionMismatch { expected: 2, got: 1 })));
    }

    #[test]
    fn validation_errors_name_the_field() {
        let zero_alpha = r#"{"field":"Q","t":1,"terms":[{"poly":[{"exps":[0],"coeff":"1"}],"alpha":["0"]}]}"#;
        assert_eq!(load_spec(zero_alpha), Err(invalid("terms[0].alpha[0]", "zero alpha")));
        let short = r#"{"field":"Q","t":2,"terms":[{"poly":[{"exps":[0,0],"coeff":"1"}],"alpha":["2"]}]}"#;
        assert!(matches!(load_spec(short), Err(Error::InvalidSpec { field, msg }) if field == "terms[0].alpha" && msg.contains("dimension")));
        let nonconst = r#"{"field":"Q","t":1,"terms":[{"poly":[{"exps":[0],"coeff":"z"}],"alpha":["2"]}]}"#;
        assert!(matches!(load_spec(nonconst), Err(Error::InvalidSpec { field, .. }) if field == "terms[0].poly[0].coeff"));
        let bad_exps = r#"{"field":"Q","t":1,"terms":[{"poly":[{"exps":[-1],"coeff":"1"}],"alpha":["2"]}]}"#;
        assert!(matches!(load_spec(bad_exps), Err(Error::InvalidSpec { field, .. }) if field == "terms[0].poly[0].exps"));
        let cancel = r#"{"field":"Q","t":1,"terms":[{"poly":[{"exps":[0],"coeff":"1"},{"exps":[0],"coeff":"-1"}],"alpha":["2"]}]}"#;
        assert!(matches!(load_spec(cancel), Err(Error::InvalidSpec { field, .. }) if field == "terms[0].poly"));
        assert!(matches!(load_spec("{"), Err(Error::MalformedDocument(_))));
        assert!(matches!(load_spec(r#"{"field":"R","t":1,"terms":[]}"#), Err(Error::InvalidSpec { field, .. }) if field == "field"));
        assert!(matches!(load_spec(r#"{"field":"Q","t":0,"terms":[]}"#), Err(Error::InvalidSpec { field, .. }) if field == "t"));
    }

    #[test]
    fn document_roundtrip() {
        let spec = load_spec(REMARK11).unwrap();
        assert_eq!(load_spec(&spec.to_document()).unwrap(), spec);
    }

    #[test]
    fn decomposition_examples() {
        let d = decompose_coeffs(&one_var_term(&[(1, "z"), (0, "1")])).unwrap();
        assert_eq!(d.pis, vec![p("z"), p("1")]);
        assert_eq!(d.qs[0].to_string(), "x1");
        assert_eq!(d.qs[1].to_string(), "(1)");

        let d = decompose_coeffs(&one_var_term(&[(1, "2"), (0, "4")])).unwrap();
        assert_eq!(d.pis, vec![p("2")]);
        assert_eq!(d.qs[0].univariate_coeffs().unwrap(), vec![q(2), q(1)]);

        let d = decompose_coeffs(&one_var_term(&[(1, "z"), (0, "2*z")])).unwrap();
        assert_eq!(d.pis, vec![p("z")]);
        assert_eq!(d.qs[0].univariate_coeffs().unwrap(), vec![q(2), q(1)]);
    }

    #[test]
    fn decomposition_reconstructs_and_is_minimal() {
        let term = one_var_term(&[(3, "z/(z+1)"), (2, "1/(z+1)"), (1, "1"), (0, "5")]);
        let d = decompose_coeffs(&term).unwrap();
        // 1 = z/(z+1) + 1/(z+1)
        assert_eq!(d.rank(), 2);
        assert_eq!(d.recompose(), term.poly);
        let again = decompose_coeffs(&Term { poly: d.recompose(), alpha: term.alpha.clone() }).unwrap();
        assert_eq!(again.rank(), 2);
    }
}
