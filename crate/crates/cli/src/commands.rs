use std::fs;

use mrg_core::bounds::{
    a_constants, cor23_bound, ff_c5, ff_c6, ff_c8, nf_params, rem24_bound, tau_report, thm21_bound, BoundReport,
};
use mrg_core::exactcore::{parse_expr, rational_height, rational_height_single};
use mrg_core::funcfield::{ff_height, ff_height_single};
use mrg_core::independence::{c7_threshold, check_g_trivial, pairwise_independent};
use mrg_core::model::load_spec;
use mrg_core::verify::{self, classify_nf, enumerate_nf_solutions, verify_ff_growth, Entry, SearchBox, VerifyReport};
use mrg_core::{FieldTag, MultiRecSpec, Place, PlaceSet, RatFunc, Rational};
use serde_json::{json, Value};

use crate::table::{pairs, render};
use crate::Common;

pub struct Outcome {
    pub json: Value,
    pub text: String,
    pub pass: bool,
}

type CmdResult = Result<Outcome, String>;

fn err<E: ToString>(e: E) -> String {
    e.to_string()
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable report")
}

fn spec_of(c: &Common) -> Result<MultiRecSpec, String> {
    let path = c.spec.as_ref().ok_or("--spec is required")?;
    let text = fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    load_spec(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn epsilon(c: &Common) -> Result<Rational, String> {
    let e: Rational = c.epsilon.parse().map_err(|_| format!("--epsilon: expected p/q, got \"{}\"", c.epsilon))?;
    if e <= Rational::from_integer(0.into()) {
        return Err("--epsilon must be positive".into());
    }
    Ok(e)
}

fn place(c: &Common) -> Result<Place, String> {
    Place::parse(c.place.as_deref().ok_or("--place is required")?).map_err(err)
}

fn exprs(xs: &[String]) -> Result<Vec<RatFunc>, String> {
    xs.iter().map(|s| parse_expr(s).map_err(|e| format!("\"{s}\": {e}"))).collect()
}

fn fmt_vec(n: &[i64]) -> String {
    format!("({})", n.iter().map(i64::to_string).collect::<Vec<_>>().join(", "))
}

fn fmt_sets(sets: &[Vec<usize>]) -> String {
    if sets.is_empty() {
        return "-".into();
    }
    sets.iter()
        .map(|s| format!("{{{}}}", s.iter().map(usize::to_string).collect::<Vec<_>>().join(",")))
        .collect::<Vec<_>>()
        .join(" ")
}

fn log2_text(r: &BoundReport) -> String {
    r.log2_value.map_or("-".into(), |l| format!("{l:.6}"))
}

fn bounds_table(reports: &[BoundReport]) -> String {
    let rows: Vec<Vec<String>> = reports
        .iter()
        .map(|r| vec![r.name.clone(), r.mode.map_or("-".into(), |m| m.to_string()), r.value_string(), log2_text(r)])
        .collect();
    render(&["bound", "mode", "value", "log2"], &rows)
}

pub fn height(xs: &[String], rational: bool) -> CmdResult {
    let h = if rational {
        let qs: Vec<Rational> =
            xs.iter().map(|s| s.parse::<Rational>().map_err(|_| format!("\"{s}\": expected p/q"))).collect::<Result<_, _>>()?;
        if qs.len() == 1 {
            rational_height_single(&qs[0]).to_string()
        } else {
            rational_height(&qs).map_err(err)?.to_string()
        }
    } else {
        let fs = exprs(xs)?;
        if fs.len() == 1 {
            ff_height_single(&fs[0]).to_string()
        } else {
            ff_height(&fs).map_err(err)?.to_string()
        }
    };
    let field = if rational { "Q" } else { "Q(z)" };
    Ok(Outcome { json: json!({"field": field, "inputs": xs, "height": h}), text: format!("H = {h}\n"), pass: true })
}

pub fn indep(c: &Common) -> CmdResult {
    let spec = spec_of(c)?;
    match spec.field {
        FieldTag::Qz => {
            let reports = pairwise_independent(&spec).map_err(err)?;
            let pass = reports.iter().all(|p| p.independent);
            let rows: Vec<Vec<String>> = reports
                .iter()
                .map(|p| {
                    vec![
                        p.i.to_string(),
                        p.j.to_string(),
                        if p.independent { "yes" } else { "no" }.into(),
                        p.witness.as_deref().map_or("-".into(), fmt_vec),
                    ]
                })
                .collect();
            Ok(Outcome {
                json: json!({"field": "Q(z)", "pairs": to_json(&reports), "independent": pass}),
                text: render(&["i", "j", "independent", "witness"], &rows),
                pass,
            })
        }
        FieldTag::Q => {
            let g = check_g_trivial(&spec).map_err(err)?;
            let witness = g.witness.as_ref().map_or("-".into(), |(l, k, z)| format!("alpha_{l}^z = alpha_{k}^z at z = {}", fmt_vec(z)));
            Ok(Outcome {
                json: json!({"field": "Q", "g_trivial": to_json(&g)}),
                text: pairs([("G trivial", if g.trivial { "yes" } else { "no" }.to_string()), ("witness", witness)]),
                pass: g.trivial,
            })
        }
    }
}

pub fn bounds_nf(c: &Common) -> CmdResult {
    let spec = spec_of(c)?;
    let eps = epsilon(c)?;
    let p = nf_params(&spec, c.d, c.s).map_err(err)?;
    let x = &eps / Rational::from_integer((2 * p.d).into());
    let tau = tau_report(&x, &p).map_err(err)?;
    let (a_prime, a) = a_constants(&p);
    let mut reports = vec![thm21_bound(&p, &eps).map_err(err)?, cor23_bound(&p, &eps).map_err(err)?];
    if p.m.iter().all(|&m| m == 0) {
        reports.push(rem24_bound(&p, &eps).map_err(err)?);
    }
    let mut text = pairs([
        ("r", p.r.to_string()),
        ("t", p.t.to_string()),
        ("d", p.d.to_string()),
        ("s", p.s.to_string()),
        ("B", p.b.to_string()),
        ("q", p.q_lcm.to_string()),
        ("alpha_max", p.alpha_max.to_string()),
        ("epsilon", eps.to_string()),
        ("A'", a_prime.to_string()),
        ("A", a.to_string()),
        ("T(eps/2d)", tau.components.get("T").or(tau.components.get("T_upper")).cloned().unwrap_or_default()),
        ("ceil tau(eps/2d)", tau.value_string()),
    ]);
    text.push('\n');
    text.push_str(&bounds_table(&reports));
    Ok(Outcome {
        json: json!({"params": to_json(&p), "A_prime": a_prime.to_string(), "A": a.to_string(), "tau": to_json(&tau), "bounds": to_json(&reports)}),
        text,
        pass: true,
    })
}

pub fn bounds_ff(c: &Common) -> CmdResult {
    let spec = spec_of(c)?;
    let mut reports = vec![ff_c5(&spec, c.mode).map_err(err)?];
    if c.place.is_some() {
        let mu = place(c)?;
        reports.push(ff_c6(&spec, &mu, c.mode).map_err(err)?);
        if spec.t == 1 {
            reports.push(ff_c8(&spec, &mu, c.mode).map_err(err)?);
        }
    }
    let mut text = bounds_table(&reports);
    for r in &reports {
        text.push('\n');
        text.push_str(&format!("{}:\n", r.name));
        text.push_str(&pairs(r.components.iter()));
    }
    Ok(Outcome { json: json!({"bounds": to_json(&reports)}), text, pass: true })
}

fn report_text(r: &VerifyReport, header: &[&str], row: impl Fn(&Entry) -> Vec<String>) -> String {
    let mut text = pairs(
        std::iter::once(("check".to_string(), r.check.clone()))
            .chain(r.mode.map(|m| ("mode".to_string(), m.to_string())))
            .chain(r.params.iter().map(|(k, v)| (k.clone(), v.clone())))
            .chain(r.counts.iter().map(|(k, v)| (k.clone(), v.to_string())))
            .chain(std::iter::once(("pass".to_string(), r.pass.to_string()))),
    );
    if !r.bounds.is_empty() {
        text.push('\n');
        text.push_str(&bounds_table(&r.bounds));
    }
    if !r.entries.is_empty() {
        text.push('\n');
        let rows: Vec<Vec<String>> = r.entries.iter().map(row).collect();
        text.push_str(&render(header, &rows));
    }
    text
}

fn class_name(e: &Entry) -> String {
    serde_json::to_value(e.class).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default()
}

pub fn verify_nf(c: &Common, i0: usize) -> CmdResult {
    let spec = spec_of(c)?;
    let eps = epsilon(c)?;
    let sbox = SearchBox::new(c.box_n, c.nonneg);
    let report = enumerate_nf_solutions(&spec, &eps, sbox, i0, c.workers).map_err(err)?;
    let report = classify_nf(report, &spec).map_err(err)?;
    let text = report_text(&report, &["n", "class", "zero P_i", "vanishing subsums", "in A"], |e| {
        vec![
            fmt_vec(&e.n),
            class_name(e),
            if e.zero_terms.is_empty() { "-".into() } else { format!("{:?}", e.zero_terms) },
            fmt_sets(&e.vanishing_subsums),
            e.in_a.map_or("-".into(), |a| if a { "yes" } else { "no" }.into()),
        ]
    });
    Ok(Outcome { json: to_json(&report), text, pass: report.pass })
}

pub fn verify_ff(c: &Common) -> CmdResult {
    let spec = spec_of(c)?;
    let mu = place(c)?;
    let sbox = SearchBox::new(c.box_n, c.nonneg);
    let report = verify_ff_growth(&spec, &mu, sbox, c.mode, c.workers).map_err(err)?;
    let text = report_text(&report, &["n", "class", "mu(G)", "C6", "sum n_j mu(alpha_ij)", "rhs"], |e| {
        let g = e.growth.as_ref().expect("growth entries carry a breakdown");
        vec![
            fmt_vec(&e.n),
            class_name(e),
            g.mu_g.to_string(),
            g.c6.to_string(),
            fmt_vec(&g.term_valuations),
            g.rhs.to_string(),
        ]
    });
    Ok(Outcome { json: to_json(&report), text, pass: report.pass })
}

pub fn wronskian(c: &Common) -> CmdResult {
    let spec = spec_of(c)?;
    let r = c7_threshold(&spec).map_err(err)?;
    let text = pairs([
        ("q", r.q.to_string()),
        ("Delta(x)", r.delta.clone()),
        ("coefficient roots", format!("{:?}", r.coefficient_roots)),
        ("Delta roots", format!("{:?}", r.delta_roots)),
        ("C11", r.c11.to_string()),
        ("C12", r.c12.to_string()),
        ("C7", r.c7.to_string()),
    ]);
    Ok(Outcome { json: to_json(&r), text, pass: true })
}

fn inequality_text(ch: &verify::InequalityCheck) -> String {
    let mut text = pairs([
        ("S", ch.places.join(", ")),
        ("weighted |S|", ch.weighted_s.to_string()),
        ("binomial", ch.binomial.to_string()),
        ("lhs", ch.lhs.to_string()),
        ("rhs", ch.rhs.to_string()),
        ("pass", ch.pass.to_string()),
    ]);
    if !ch.table.is_empty() {
        text.push('\n');
        let rows: Vec<Vec<String>> = ch
            .table
            .iter()
            .map(|r| vec![r.place.clone(), r.degree.to_string(), r.mu_sum.to_string(), r.min_mu.to_string()])
            .collect();
        text.push_str(&render(&["place", "deg", "mu(sum)", "min mu"], &rows));
    }
    text
}

pub fn check_bm(xs: &[String], genus: u64) -> CmdResult {
    let ch = verify::check_bm(&exprs(xs)?, genus).map_err(err)?;
    Ok(Outcome { json: to_json(&ch), text: inequality_text(&ch), pass: ch.pass })
}

pub fn check_zannier(c: &Common, xs: &[String], r: usize, extra: &[String], genus: u64) -> CmdResult {
    let extra: PlaceSet = extra.iter().map(|s| Place::parse(s)).collect::<Result<_, _>>().map_err(err)?;
    let ch = verify::check_zannier(&exprs(xs)?, r, &extra, c.mode, genus).map_err(err)?;
    let mut json = to_json(&ch);
    json["mode"] = json!(c.mode);
    Ok(Outcome { json, text: format!("mode  {}\n{}", c.mode, inequality_text(&ch)), pass: ch.pass })
}

pub fn check_lemma61(basis: &[String], k: &[i64]) -> CmdResult {
    let ch = verify::check_lemma61(&exprs(basis)?, k).map_err(err)?;
    let rows: Vec<Vec<String>> = basis
        .iter()
        .zip(k)
        .zip(&ch.bounds)
        .map(|((b, ki), bound)| vec![b.clone(), ki.to_string(), bound.to_string()])
        .collect();
    let mut text = pairs([("alpha_0", ch.alpha0.to_string()), ("pass", ch.pass.to_string())]);
    text.push('\n');
    text.push_str(&render(&["basis", "k", "bound"], &rows));
    Ok(Outcome { json: to_json(&ch), text, pass: ch.pass })
}
