//! Stable JSON, CSV and table renderings.
//!
//! Rationals render as canonical `p/q` strings and key order is fixed, so
//! identical inputs give byte-identical output.

use std::fmt::Write as _;

use serde::Serialize;

use crate::bounds::{AmpleVerdict, Ampleness, AuditEntry, BoundResult, Method};
use crate::certificates::{HypothesisReport, Status};
use crate::enumerate::CandidateSet;
use crate::error::Result;
use crate::exactnum::Rational;
use crate::surface::{CSquare, GeneralCandidate};

/// Significant digits in decimal renderings of `epsilon`.
pub const DECIMAL_DIGITS: usize = 12;

/// Header of the bound CSV format.
pub const CSV_HEADER: &str = "n,method,eps_sq_num,eps_sq_den,strict,n_candidates";

#[derive(Serialize)]
struct HomRow<'a> {
    t: u64,
    m: u64,
    k: i64,
    ratio: &'a Rational,
}

#[derive(Serialize)]
struct GenRow<'a> {
    t: u64,
    h: &'a [u64],
    gamma: usize,
    a: u64,
    ratio: &'a Rational,
    c_sq: &'a CSquare,
}

#[derive(Serialize)]
struct SetJson<'a, R> {
    n: u64,
    delta: &'a Rational,
    mu: Option<&'a Rational>,
    candidates: Vec<R>,
    ratios: &'a [Rational],
    limit_sq: &'a Rational,
    truncated: bool,
}

fn set_json<'a, C, R: Serialize>(cs: &'a CandidateSet<C>, rows: Vec<R>) -> SetJson<'a, R> {
    SetJson {
        n: cs.n,
        delta: &cs.delta,
        mu: cs.mu.as_ref(),
        candidates: rows,
        ratios: &cs.ratios,
        limit_sq: &cs.limit_sq,
        truncated: cs.truncated,
    }
}

fn hom_rows(cs: &CandidateSet) -> Vec<HomRow<'_>> {
    cs.candidates
        .iter()
        .map(|c| HomRow { t: c.degree, m: c.m, k: c.k, ratio: &c.ratio })
        .collect()
}

fn gen_rows(cs: &CandidateSet<GeneralCandidate>) -> Vec<GenRow<'_>> {
    cs.candidates
        .iter()
        .map(|c| GenRow { t: c.degree, h: &c.h, gamma: c.gamma, a: c.a, ratio: &c.ratio, c_sq: &c.c_sq })
        .collect()
}

pub fn candidates_json(cs: &CandidateSet) -> serde_json::Value {
    serde_json::to_value(set_json(cs, hom_rows(cs))).expect("serializable")
}

pub fn general_candidates_json(cs: &CandidateSet<GeneralCandidate>) -> serde_json::Value {
    serde_json::to_value(set_json(cs, gen_rows(cs))).expect("serializable")
}

#[derive(Serialize)]
struct BoundJson<'a> {
    n: u64,
    method: Method,
    epsilon_lower_sq: &'a Rational,
    strict: bool,
    exact: bool,
    epsilon_lower_decimal: String,
    n_candidates: usize,
    audit: &'a [AuditEntry],
}

pub fn bound_json(r: &BoundResult) -> Result<serde_json::Value> {
    let j = BoundJson {
        n: r.n,
        method: r.method,
        epsilon_lower_sq: &r.epsilon_lower_sq,
        strict: r.strict,
        exact: r.exact,
        epsilon_lower_decimal: r.epsilon_lower_decimal(DECIMAL_DIGITS)?,
        n_candidates: r.n_candidates,
        audit: &r.audit,
    };
    Ok(serde_json::to_value(j).expect("serializable"))
}

pub fn hypothesis_json(rep: &HypothesisReport) -> serde_json::Value {
    serde_json::to_value(rep).expect("serializable")
}

pub fn ample_json(v: &AmpleVerdict) -> serde_json::Value {
    serde_json::to_value(v).expect("serializable")
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::ThmA => "THM_A",
        Method::ThmB => "THM_B",
        Method::Cor13 => "COR13",
        Method::ExactRank1 => "EXACT_RANK1",
    }
}

/// One CSV line (no trailing newline) matching [`CSV_HEADER`].
pub fn bound_csv_row(r: &BoundResult) -> String {
    format!(
        "{},{},{},{},{},{}",
        r.n,
        method_name(r.method),
        r.epsilon_lower_sq.numer(),
        r.epsilon_lower_sq.denom(),
        r.strict,
        r.n_candidates
    )
}

pub fn bound_table(r: &BoundResult) -> Result<String> {
    let mut out = String::new();
    let rel = if r.strict { ">" } else { ">=" };
    let rel = if r.exact { "=" } else { rel };
    writeln!(
        out,
        "n={} method={} eps^2 {rel} {} (eps {rel} {})",
        r.n,
        method_name(r.method),
        r.epsilon_lower_sq,
        r.epsilon_lower_decimal(DECIMAL_DIGITS)?
    )
    .unwrap();
    for e in &r.audit {
        writeln!(out, "  {}", audit_line(e)).unwrap();
    }
    Ok(out)
}

fn audit_line(e: &AuditEntry) -> String {
    match e {
        AuditEntry::Hypothesis { pattern, required_sq, supplied_sq, raw_sq, provenance, .. } => {
            let raw = if raw_sq != supplied_sq { format!(" (raw {raw_sq})") } else { String::new() };
            format!("hypothesis {pattern}: need {required_sq}, have {supplied_sq}{raw} [{provenance}]")
        }
        AuditEntry::Killed { candidate: c, pattern, degree_sq, bound_sq, provenance, .. } => format!(
            "killed t={} m={} k={} ratio {}: degree^2 {degree_sq} < alpha_0({pattern})^2 >= {bound_sq} [{provenance}]",
            c.t, c.m, c.k, c.ratio
        ),
        AuditEntry::Realized { candidate: c, provenance } => {
            format!("realized t={} m={} k={} ratio {} [{provenance}]", c.t, c.m, c.k, c.ratio)
        }
        AuditEntry::WindowEmpty { m, k } => format!("window empty m={m} k={k}"),
        AuditEntry::Adjunction { t, m, k } => format!("adjunction t={t} m={m} k={k}"),
        AuditEntry::NonIntegralSelfIntersection { t, m, k } => format!("C^2 not integral t={t} m={m} k={k}"),
        AuditEntry::Parity { m, k } => format!("parity m={m} k={k}"),
        AuditEntry::Note { text } => text.clone(),
    }
}

pub fn hypothesis_table(rep: &HypothesisReport) -> String {
    let mut out = String::new();
    writeln!(out, "theorem {:?} n={} mu={}", rep.theorem, rep.n, rep.mu).unwrap();
    writeln!(out, "{:<16} {:>16} {:>16} {:>16} status", "pattern", "required_sq", "supplied_sq", "raw_sq").unwrap();
    for c in &rep.checks {
        let (sup, raw, prov) = match &c.supplied {
            Some(s) => (s.bound_sq.to_string(), s.raw_bound_sq.to_string(), s.certificate.provenance.to_string()),
            None => ("MISSING".into(), "-".into(), String::new()),
        };
        let status = match c.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        };
        writeln!(out, "{:<16} {:>16} {:>16} {:>16} {status} {prov}", c.pattern.to_string(), c.required_sq.to_string(), sup, raw)
            .unwrap();
    }
    out
}

pub fn candidates_table(cs: &CandidateSet) -> String {
    let mut out = String::new();
    set_header(&mut out, cs);
    writeln!(out, "{:>6} {:>4} {:>4} {:>12}", "t", "m", "k", "ratio").unwrap();
    for c in &cs.candidates {
        writeln!(out, "{:>6} {:>4} {:>4} {:>12}", c.degree, c.m, c.k, c.ratio.to_string()).unwrap();
    }
    out
}

pub fn general_candidates_table(cs: &CandidateSet<GeneralCandidate>) -> String {
    let mut out = String::new();
    set_header(&mut out, cs);
    writeln!(out, "{:>6} {:>12} {:>24}", "t", "ratio", "h").unwrap();
    for c in &cs.candidates {
        writeln!(out, "{:>6} {:>12} {:>24}", c.degree, c.ratio.to_string(), format!("{:?}", c.h)).unwrap();
    }
    out
}

fn set_header<C>(out: &mut String, cs: &CandidateSet<C>) {
    let mu = cs.mu.as_ref().map(|m| format!(" mu={m}")).unwrap_or_default();
    let trunc = if cs.truncated { " TRUNCATED" } else { "" };
    writeln!(out, "n={} delta={}{mu} candidates={}{trunc}", cs.n, cs.delta, cs.candidates.len()).unwrap();
}

fn ample_status(v: &AmpleVerdict) -> &'static str {
    match v.status {
        Ampleness::Ample => "AMPLE",
        Ampleness::Unknown => "UNKNOWN",
    }
}

pub fn ample_table(v: &AmpleVerdict) -> String {
    format!("n={} t={} m={} {}: {}", v.n, v.t, v.m, ample_status(v), v.reason)
}

pub const AMPLE_CSV_HEADER: &str = "n,t,m,status";

pub fn ample_csv_row(v: &AmpleVerdict) -> String {
    format!("{},{},{},{}", v.n, v.t, v.m, ample_status(v))
}
