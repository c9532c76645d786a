//! Lower-bound certificates for `alpha` and `alpha_0`.
//!
//! `alpha(m)` is the least `L`-degree of a curve with multiplicities at least
//! `m` at general points, and `alpha_0(m)` the least degree of an
//! irreducible one with exactly those multiplicities. The engine never
//! computes either; it reads asserted lower bounds (built-in facts about
//! `P^2` or user files) and only compares them with required thresholds.
//!
//! Two sound transformations are applied when looking a bound up:
//!
//! * `alpha_0(m) >= alpha(m)` for the same multiplicity pattern, since an
//!   irreducible curve with exact multiplicities is in particular a curve
//!   with at least those multiplicities;
//! * `alpha_0((m^[n-1], m+k)) >= alpha((nm+k)^[n]) / n`, from summing the
//!   `n` conjugates of such a curve under permutations of general points;
//! * `alpha_0((m^[n-1], m+k))^2 >= (m^2 n + 2mk) L^2` for `k != 0`, since two
//!   of those conjugates are distinct irreducible curves and meet
//!   nonnegatively. This one needs no certificate.
//!
//! Bounds are also rounded up to the next attainable degree, a multiple of
//! the surface's degree unit.

use std::fmt;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use serde::{Serialize, Serializer};

use crate::enumerate::admissible_ks;
use crate::error::{Error, LineError, Result};
use crate::exactnum::{isqrt_u64, Rational};
use crate::surface::{CandidateClass, SurfaceData};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum AlphaKind {
    Alpha,
    Alpha0,
}

/// Multiplicity pattern `m^[n]` or `(m^[n-1], m+k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pattern {
    Uniform { m: u64, n: u64 },
    AlmostUniform { m: u64, k: i64, n: u64 },
}

impl Pattern {
    pub fn n(&self) -> u64 {
        match *self {
            Pattern::Uniform { n, .. } | Pattern::AlmostUniform { n, .. } => n,
        }
    }

    /// Pattern of the curve that would carry `c`.
    pub fn of_candidate(c: &CandidateClass) -> Self {
        if c.k == 0 {
            Pattern::Uniform { m: c.m, n: c.n }
        } else {
            Pattern::AlmostUniform { m: c.m, k: c.k, n: c.n }
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Pattern::Uniform { m, n } => write!(f, "{m}^[{n}]"),
            Pattern::AlmostUniform { m, k, n } => write!(f, "({m}^[{}],{})", n - 1, m as i64 + k),
        }
    }
}

impl Serialize for Pattern {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Where an asserted fact comes from.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Provenance {
    /// `alpha(m^[n]) >= m sqrt(n)` for `n >= 10`, `m <= s(s-3)/2`, `s = floor(sqrt(n))`.
    Hr,
    /// `alpha(m^[n]) >= m sqrt(n)` for `n >= 10`, `m <= 20`.
    Ccmo,
    /// A double point and simple general points impose independent conditions.
    DoublePoint,
    /// Two distinct conjugates of an irreducible curve meet nonnegatively,
    /// so `alpha_0((m^[n-1], m+k))^2 >= (m^2 n + 2mk) L^2` for `k != 0`.
    Intersection,
    User { file: String, line: usize },
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Hr => f.write_str("HR"),
            Provenance::Ccmo => f.write_str("CCMO"),
            Provenance::DoublePoint => f.write_str("DOUBLEPOINT"),
            Provenance::Intersection => f.write_str("INTERSECTION"),
            Provenance::User { file, line } => write!(f, "USER({file}:{line})"),
        }
    }
}

impl Serialize for Provenance {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Asserted `alpha(pattern)^2 >= bound_sq` (or `alpha_0`), degrees measured
/// as `C.L`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct AlphaCertificate {
    pub kind: AlphaKind,
    pub pattern: Pattern,
    pub bound_sq: Rational,
    pub provenance: Provenance,
}

/// Asserted existence of an irreducible curve of class `H(C, m, k)` through
/// general points, with `C.L = degree * g`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CurveFact {
    pub pattern: Pattern,
    pub degree: u64,
    pub provenance: Provenance,
}

impl CurveFact {
    pub fn matches(&self, c: &CandidateClass) -> bool {
        self.degree == c.degree && self.pattern == Pattern::of_candidate(c)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Certificate {
    Alpha(AlphaCertificate),
    Curve(CurveFact),
}

/// How a supplied bound was obtained from a stored certificate.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Derivation {
    Direct,
    /// An `alpha` bound read as an `alpha_0` bound for the same pattern.
    AlphaBoundsAlpha0,
    /// `alpha_0((m^[n-1], m+k)) >= alpha((nm+k)^[n]) / n`.
    ConjugateSum { from: Pattern },
    /// Intersection of two distinct conjugates; no stored certificate.
    ConjugatePair,
}

/// The best bound available for one pattern.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Supplied {
    /// Usable squared bound, after rounding up to an attainable degree.
    pub bound_sq: Rational,
    /// Squared bound before rounding.
    pub raw_bound_sq: Rational,
    pub tightened: bool,
    pub certificate: AlphaCertificate,
    pub derivation: Derivation,
}

/// Smallest `s * g` with `(s g)^2 >= b`, i.e. the least attainable degree.
fn attainable_degree(b: &Rational, g: i64) -> BigInt {
    let g_sq = Rational::integer(g * g);
    (b / &g_sq).ceil_sqrt() * g
}

fn tighten(raw: Rational, g: i64, certificate: &AlphaCertificate, derivation: Derivation) -> Supplied {
    let deg = attainable_degree(&raw, g);
    let bound_sq = Rational::integer(&deg * &deg);
    Supplied {
        tightened: bound_sq != raw,
        bound_sq,
        raw_bound_sq: raw,
        certificate: certificate.clone(),
        derivation,
    }
}

/// Larger bound wins; ties keep the earlier, more direct one.
fn strongest(a: Supplied, b: Supplied) -> Supplied {
    if b.bound_sq > a.bound_sq {
        b
    } else {
        a
    }
}

/// Certificates loaded once, then read-only.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CertificateStore {
    alphas: Vec<AlphaCertificate>,
    curves: Vec<CurveFact>,
}

impl CertificateStore {
    pub fn new() -> Self {
        Self::default()
    }

    /// All built-in `P^2` facts that apply to `n` points.
    pub fn builtin_p2(n: u64) -> Self {
        let mut store = Self::new();
        store.extend_alphas(builtin_hr(n));
        store.extend_alphas(builtin_ccmo(n));
        store.extend_alphas(builtin_doublepoint(n));
        store
    }

    pub fn extend_alphas(&mut self, certs: impl IntoIterator<Item = AlphaCertificate>) {
        self.alphas.extend(certs);
    }

    pub fn extend(&mut self, certs: impl IntoIterator<Item = Certificate>) {
        for c in certs {
            match c {
                Certificate::Alpha(a) => self.alphas.push(a),
                Certificate::Curve(cf) => self.curves.push(cf),
            }
        }
    }

    pub fn alphas(&self) -> &[AlphaCertificate] {
        &self.alphas
    }

    pub fn curves(&self) -> &[CurveFact] {
        &self.curves
    }

    pub fn is_empty(&self) -> bool {
        self.alphas.is_empty() && self.curves.is_empty()
    }

    /// Best lower bound on `alpha(pattern)`.
    pub fn best_alpha(&self, pattern: &Pattern, s: &SurfaceData) -> Option<Supplied> {
        self.alphas
            .iter()
            .filter(|c| c.kind == AlphaKind::Alpha && c.pattern == *pattern)
            .map(|c| tighten(c.bound_sq.clone(), s.degree_unit, c, Derivation::Direct))
            .reduce(strongest)
    }

    /// Best lower bound on `alpha_0(pattern)`, using the transformations in
    /// the module docs.
    pub fn best_alpha0(&self, pattern: &Pattern, s: &SurfaceData) -> Option<Supplied> {
        let g = s.degree_unit;
        let mut options: Vec<Supplied> = Vec::new();
        for c in self.alphas.iter().filter(|c| c.pattern == *pattern) {
            let how = match c.kind {
                AlphaKind::Alpha0 => Derivation::Direct,
                AlphaKind::Alpha => Derivation::AlphaBoundsAlpha0,
            };
            options.push(tighten(c.bound_sq.clone(), g, c, how));
        }
        if let Pattern::AlmostUniform { m, k, n } = *pattern {
            let total = m as i64 * n as i64 + k;
            if total >= 1 {
                let from = Pattern::Uniform { m: total as u64, n };
                if let Some(base) = self.best_alpha(&from, s) {
                    // alpha >= sqrt(base), so alpha_0 >= sqrt(base) / n
                    let raw = &base.bound_sq / &Rational::integer(n * n);
                    options.push(tighten(raw, g, &base.certificate, Derivation::ConjugateSum { from }));
                }
            }
            if n >= 2 {
                let (mi, ni) = (m as i64, n as i64);
                let pair = mi * mi * ni + 2 * mi * k;
                if pair > 0 {
                    let cert = AlphaCertificate {
                        kind: AlphaKind::Alpha0,
                        pattern: *pattern,
                        bound_sq: &Rational::integer(pair) * &s.l2_rational(),
                        provenance: Provenance::Intersection,
                    };
                    options.push(tighten(cert.bound_sq.clone(), g, &cert, Derivation::ConjugatePair));
                }
            }
        }
        options.into_iter().reduce(strongest)
    }

    /// A certificate showing no irreducible curve carries `c`: the class has
    /// degree below the certified `alpha_0` of its pattern.
    pub fn kill(&self, c: &CandidateClass, s: &SurfaceData) -> Option<Supplied> {
        let sup = self.best_alpha0(&Pattern::of_candidate(c), s)?;
        let cl = s.degree_value(c.degree);
        (Rational::integer(&cl * &cl) < sup.bound_sq).then_some(sup)
    }

    /// A fact asserting `c` is carried by an irreducible curve.
    pub fn realized(&self, c: &CandidateClass) -> Option<&CurveFact> {
        self.curves.iter().find(|f| f.matches(c))
    }
}

fn floor_sqrt_u64(n: u64) -> u64 {
    isqrt_u64(n)
}

/// `floor(sqrt(n)) (floor(sqrt(n)) - 3) / 2`, or 0 when negative.
pub fn hr_m_max(n: u64) -> u64 {
    let s = floor_sqrt_u64(n);
    if s < 3 {
        0
    } else {
        s * (s - 3) / 2
    }
}

fn uniform_cert(m: u64, n: u64, provenance: Provenance) -> AlphaCertificate {
    AlphaCertificate {
        kind: AlphaKind::Alpha,
        pattern: Pattern::Uniform { m, n },
        bound_sq: Rational::integer(m * m * n),
        provenance,
    }
}

/// `alpha(m^[n])^2 >= m^2 n` for `1 <= m <= floor(sqrt n)(floor(sqrt n) - 3)/2`;
/// empty for `n < 10`.
pub fn builtin_hr(n: u64) -> Vec<AlphaCertificate> {
    if n < 10 {
        return Vec::new();
    }
    (1..=hr_m_max(n)).map(|m| uniform_cert(m, n, Provenance::Hr)).collect()
}

/// `alpha(m^[n])^2 >= m^2 n` for `1 <= m <= 20`; empty for `n < 10`.
pub fn builtin_ccmo(n: u64) -> Vec<AlphaCertificate> {
    if n < 10 {
        return Vec::new();
    }
    (1..=20).map(|m| uniform_cert(m, n, Provenance::Ccmo)).collect()
}

/// `alpha_0((1^[n-1], 2))^2 >= (n+1)^2 / n` for `n >= 16`.
pub fn builtin_doublepoint(n: u64) -> Option<AlphaCertificate> {
    (n >= 16).then(|| AlphaCertificate {
        kind: AlphaKind::Alpha0,
        pattern: Pattern::AlmostUniform { m: 1, k: 1, n },
        bound_sq: Rational::frac(((n + 1) * (n + 1)) as i64, n as i64),
        provenance: Provenance::DoublePoint,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Theorem {
    /// Hypotheses on `alpha` of uniform patterns; strict conclusion.
    A,
    /// Hypotheses on `alpha_0` of uniform and almost uniform patterns.
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HypothesisCheck {
    pub pattern: Pattern,
    pub required_sq: Rational,
    /// `None` when no certificate covers the pattern.
    pub supplied: Option<Supplied>,
    pub status: Status,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HypothesisReport {
    pub theorem: Theorem,
    pub mu: Rational,
    pub n: u64,
    pub checks: Vec<HypothesisCheck>,
}

impl HypothesisReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &HypothesisCheck> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }
}

fn check_row(pattern: Pattern, required_sq: Rational, supplied: Option<Supplied>) -> HypothesisCheck {
    let status = match &supplied {
        Some(sup) if sup.bound_sq >= required_sq => Status::Pass,
        _ => Status::Fail,
    };
    HypothesisCheck { pattern, required_sq, supplied, status }
}

/// Integers `m >= 1` with `m * scale < mu`.
fn ms_below(mu: &Rational, scale: u64) -> impl Iterator<Item = u64> + '_ {
    (1u64..).take_while(move |&m| Rational::integer(m * scale) < *mu)
}

/// Checks the certificate requirements of theorem A or B at `(n, mu)`.
///
/// A: `alpha(m^[n])^2 >= m^2 L^2 (n - 1/mu)` for every integer `1 <= m < mu`.
///
/// B: the same for `alpha_0`, plus
/// `alpha_0((m^[n-1], m+k))^2 >= ((mn+k)/n)^2 L^2 (n - 1/mu)` for every
/// `1 <= m < mu/(n-1)` and nonzero `k` with `k^2 < (n/(n-1)) min(m, m+k)`.
pub fn check_hypotheses(
    theorem: Theorem,
    s: &SurfaceData,
    n: u64,
    mu: &Rational,
    store: &CertificateStore,
) -> Result<HypothesisReport> {
    if *mu < Rational::one() {
        return Err(Error::Domain(format!("mu must be >= 1, got {mu}")));
    }
    match theorem {
        Theorem::A if n < 3 => return Err(Error::Domain("theorem A needs n >= 3".into())),
        Theorem::B if n < 2 => return Err(Error::Domain("theorem B needs n >= 2".into())),
        _ => {}
    }
    let base = s.l2_rational() * (Rational::integer(n) - mu.recip()?);
    let mut checks = Vec::new();
    for m in ms_below(mu, 1) {
        let pattern = Pattern::Uniform { m, n };
        let required = &Rational::integer(m * m) * &base;
        let supplied = match theorem {
            Theorem::A => store.best_alpha(&pattern, s),
            Theorem::B => store.best_alpha0(&pattern, s),
        };
        checks.push(check_row(pattern, required, supplied));
    }
    if theorem == Theorem::B {
        for m in ms_below(mu, n - 1) {
            for k in admissible_ks(n, m) {
                let pattern = Pattern::AlmostUniform { m, k, n };
                let total = Rational::frac(m as i64 * n as i64 + k, n as i64);
                let required = &total.square() * &base;
                checks.push(check_row(pattern, required, store.best_alpha0(&pattern, s)));
            }
        }
    }
    Ok(HypothesisReport { theorem, mu: mu.clone(), n, checks })
}

/// Parses certificate text.
///
/// One certificate per line, whitespace-separated:
///
/// ```text
/// alpha uniform m=1 n=10 bound_sq=10/1
/// alpha0 almost m=1 k=1 n=16 bound_sq=289/16
/// curve uniform m=1 n=5 degree=2
/// ```
///
/// `#` starts a comment. Every malformed line is reported.
pub fn parse_certificates(src: &str, file: &str) -> Result<Vec<Certificate>> {
    let mut out = Vec::new();
    let mut errors = Vec::new();
    for (idx, raw) in src.lines().enumerate() {
        let line_no = idx + 1;
        let text = raw.split('#').next().unwrap_or("").trim();
        if text.is_empty() {
            continue;
        }
        match parse_line(text, file, line_no) {
            Ok(c) => out.push(c),
            Err(message) => errors.push(LineError { line: line_no, message }),
        }
    }
    if errors.is_empty() {
        Ok(out)
    } else {
        Err(Error::CertificateFile { path: PathBuf::from(file), errors })
    }
}

pub fn load_certificates(path: &Path) -> Result<Vec<Certificate>> {
    let src = std::fs::read_to_string(path)
        .map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
    parse_certificates(&src, &path.display().to_string())
}

fn parse_line(text: &str, file: &str, line: usize) -> std::result::Result<Certificate, String> {
    let mut tokens = text.split_whitespace();
    let kind = tokens.next().ok_or("empty line")?;
    let shape = tokens.next().ok_or("missing pattern shape (uniform|almost)")?;
    if !matches!(shape, "uniform" | "almost") {
        return Err(format!("unknown pattern shape {shape:?} (uniform|almost)"));
    }

    let mut fields: Vec<(&str, &str)> = Vec::new();
    for tok in tokens {
        let (k, v) = tok.split_once('=').ok_or_else(|| format!("expected key=value, got {tok:?}"))?;
        if fields.iter().any(|(seen, _)| *seen == k) {
            return Err(format!("duplicate key {k:?}"));
        }
        fields.push((k, v));
    }
    let get = |key: &str| fields.iter().find(|(k, _)| *k == key).map(|(_, v)| *v);
    let int = |key: &str| -> std::result::Result<Option<i64>, String> {
        get(key)
            .map(|v| v.parse::<i64>().map_err(|_| format!("{key} must be an integer, got {v:?}")))
            .transpose()
    };

    let allowed: &[&str] = match kind {
        "alpha" | "alpha0" => &["m", "k", "n", "bound_sq"],
        "curve" => &["m", "k", "n", "degree"],
        other => return Err(format!("unknown certificate kind {other:?} (alpha|alpha0|curve)")),
    };
    if let Some((k, _)) = fields.iter().find(|(k, _)| !allowed.contains(k)) {
        return Err(format!("unknown key {k:?}"));
    }

    let m = int("m")?.ok_or("missing m")?;
    let n = int("n")?.ok_or("missing n")?;
    if m < 1 {
        return Err(format!("m must be >= 1, got {m}"));
    }
    if n < 1 {
        return Err(format!("n must be >= 1, got {n}"));
    }
    let pattern = match shape {
        "uniform" => {
            if get("k").is_some() {
                return Err("uniform patterns take no k".into());
            }
            Pattern::Uniform { m: m as u64, n: n as u64 }
        }
        "almost" => {
            let k = int("k")?.ok_or("almost uniform pattern needs k")?;
            if k == 0 {
                return Err("k = 0 is a uniform pattern".into());
            }
            if n < 2 {
                return Err("almost uniform patterns need n >= 2".into());
            }
            if !(k > -m || (m, k) == (1, -1)) {
                return Err(format!("need k > -m or (m, k) = (1, -1), got m={m}, k={k}"));
            }
            Pattern::AlmostUniform { m: m as u64, k, n: n as u64 }
        }
        other => return Err(format!("unknown pattern shape {other:?} (uniform|almost)")),
    };
    let provenance = Provenance::User { file: file.to_string(), line };

    if kind == "curve" {
        let degree = int("degree")?.ok_or("missing degree")?;
        if degree < 1 {
            return Err(format!("degree must be >= 1, got {degree}"));
        }
        return Ok(Certificate::Curve(CurveFact { pattern, degree: degree as u64, provenance }));
    }

    let bound_sq: Rational = get("bound_sq")
        .ok_or("missing bound_sq")?
        .parse()
        .map_err(|e: Error| e.to_string())?;
    if bound_sq.is_negative() {
        return Err(format!("bound_sq must be >= 0, got {bound_sq}"));
    }
    let kind = if kind == "alpha" { AlphaKind::Alpha } else { AlphaKind::Alpha0 };
    Ok(Certificate::Alpha(AlphaCertificate { kind, pattern, bound_sq, provenance }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> Rational {
        Rational::frac(p, d)
    }

    fn bounds(v: &[AlphaCertificate]) -> Vec<(u64, Rational)> {
        v.iter()
            .map(|c| match c.pattern {
                Pattern::Uniform { m, .. } => (m, c.bound_sq.clone()),
                _ => unreachable!(),
            })
            .collect()
    }

    #[test]
    fn hr_examples() {
        assert_eq!(bounds(&builtin_hr(16)), vec![(1, q(16, 1)), (2, q(64, 1))]);
        let hr100 = builtin_hr(100);
        assert_eq!(hr100.len(), 35);
        assert_eq!(bounds(&hr100).last().unwrap().0, 35);
        assert!(builtin_hr(10).is_empty());
        assert!(builtin_hr(9).is_empty());
    }

    #[test]
    fn ccmo_examples() {
        let c10 = builtin_ccmo(10);
        assert_eq!(bounds(&c10)[0], (1, q(10, 1)));
        assert_eq!(bounds(&builtin_ccmo(16))[19], (20, q(6400, 1)));
        assert!(builtin_ccmo(9).is_empty());
    }

    #[test]
    fn doublepoint_examples() {
        let c = builtin_doublepoint(16).unwrap();
        assert_eq!(c.pattern, Pattern::AlmostUniform { m: 1, k: 1, n: 16 });
        assert_eq!(c.pattern.to_string(), "(1^[15],2)");
        assert_eq!(c.bound_sq, q(289, 16));
        assert_eq!(builtin_doublepoint(25).unwrap().bound_sq, q(676, 25));
        assert!(builtin_doublepoint(15).is_none());
    }

    #[test]
    fn tightening_to_integral_degree() {
        let s = SurfaceData::p2();
        let store = CertificateStore::builtin_p2(10);
        let sup = store.best_alpha(&Pattern::Uniform { m: 1, n: 10 }, &s).unwrap();
        assert_eq!(sup.raw_bound_sq, q(10, 1));
        assert_eq!(sup.bound_sq, q(16, 1));
        assert!(sup.tightened);
        let sup = store.best_alpha(&Pattern::Uniform { m: 2, n: 10 }, &s).unwrap();
        assert_eq!(sup.bound_sq, q(49, 1));
    }

    #[test]
    fn hypotheses_b_ccmo_doublepoint() {
        let s = SurfaceData::p2();
        let store = CertificateStore::builtin_p2(16);
        let mut only = CertificateStore::new();
        only.extend_alphas(builtin_ccmo(16));
        only.extend_alphas(builtin_doublepoint(16));
        let rep = check_hypotheses(Theorem::B, &s, 16, &q(21, 1), &only).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.checks.len(), 21);
        let almost: Vec<_> = rep
            .checks
            .iter()
            .filter(|c| matches!(c.pattern, Pattern::AlmostUniform { .. }))
            .collect();
        assert_eq!(almost.len(), 1);
        assert_eq!(almost[0].pattern, Pattern::AlmostUniform { m: 1, k: 1, n: 16 });
        assert_eq!(almost[0].supplied.as_ref().unwrap().certificate.provenance, Provenance::DoublePoint);
        assert!(check_hypotheses(Theorem::B, &s, 16, &q(21, 1), &store).unwrap().passed());
    }

    #[test]
    fn hypotheses_b_hr() {
        let s = SurfaceData::p2();
        let mut hr = CertificateStore::new();
        hr.extend_alphas(builtin_hr(16));
        let rep = check_hypotheses(Theorem::B, &s, 16, &q(3, 1), &hr).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.checks.len(), 2);
        assert_eq!(rep.checks[0].required_sq, q(47, 3));
        assert_eq!(rep.checks[1].required_sq, q(188, 3));
        assert_eq!(rep.checks[1].supplied.as_ref().unwrap().bound_sq, q(64, 1));
    }

    #[test]
    fn hypotheses_missing_rows_fail() {
        let s = SurfaceData::p2();
        let rep = check_hypotheses(Theorem::B, &s, 16, &q(21, 1), &CertificateStore::new()).unwrap();
        assert!(!rep.passed());
        assert!(rep.failures().all(|c| c.supplied.is_none()));
        // HR alone stops at m = 2; the (1,1) row needs no certificate
        let mut hr = CertificateStore::new();
        hr.extend_alphas(builtin_hr(16));
        let rep = check_hypotheses(Theorem::B, &s, 16, &q(21, 1), &hr).unwrap();
        assert_eq!(rep.failures().count(), 18);
    }

    #[test]
    fn hypotheses_a_errors() {
        let s = SurfaceData::p2();
        let store = CertificateStore::new();
        assert!(check_hypotheses(Theorem::A, &s, 2, &q(3, 1), &store).is_err());
        assert!(check_hypotheses(Theorem::B, &s, 5, &q(1, 2), &store).is_err());
        // mu = 1: no rows at all
        let rep = check_hypotheses(Theorem::A, &s, 10, &q(1, 1), &store).unwrap();
        assert!(rep.checks.is_empty() && rep.passed());
    }

    #[test]
    fn theorem_a_ignores_alpha0() {
        let s = SurfaceData::p2();
        let mut store = CertificateStore::new();
        store.extend_alphas([AlphaCertificate {
            kind: AlphaKind::Alpha0,
            pattern: Pattern::Uniform { m: 1, n: 10 },
            bound_sq: q(100, 1),
            provenance: Provenance::Hr,
        }]);
        let rep = check_hypotheses(Theorem::A, &s, 10, &q(2, 1), &store).unwrap();
        assert!(!rep.passed());
        let rep = check_hypotheses(Theorem::B, &s, 10, &q(2, 1), &store).unwrap();
        assert!(rep.passed());
    }

    #[test]
    fn conjugate_sum_transformer() {
        let s = SurfaceData::p2();
        let mut store = CertificateStore::new();
        // alpha(17^[16]) >= 17*4 = 68 gives alpha_0((1^[15],2)) >= 68/16 -> 5
        store.extend_alphas(builtin_ccmo(16));
        let sup = store.best_alpha0(&Pattern::AlmostUniform { m: 1, k: 1, n: 16 }, &s).unwrap();
        assert_eq!(sup.derivation, Derivation::ConjugateSum { from: Pattern::Uniform { m: 17, n: 16 } });
        assert_eq!(sup.raw_bound_sq, q(4624, 256));
        assert_eq!(sup.bound_sq, q(25, 1));
    }

    #[test]
    fn parse_examples() {
        let src = "# sample\nalpha uniform m=1 n=10 bound_sq=10/1\nalpha0 almost m=1 k=1 n=16 bound_sq=289/16  # dp\n\ncurve uniform m=1 n=5 degree=2\n";
        let certs = parse_certificates(src, "f.txt").unwrap();
        assert_eq!(certs.len(), 3);
        match &certs[0] {
            Certificate::Alpha(a) => {
                assert_eq!(a.kind, AlphaKind::Alpha);
                assert_eq!(a.pattern, Pattern::Uniform { m: 1, n: 10 });
                assert_eq!(a.bound_sq, q(10, 1));
                assert_eq!(a.provenance, Provenance::User { file: "f.txt".into(), line: 2 });
            }
            _ => panic!(),
        }
        match &certs[1] {
            Certificate::Alpha(a) => {
                assert_eq!(a.kind, AlphaKind::Alpha0);
                assert_eq!(a.pattern, Pattern::AlmostUniform { m: 1, k: 1, n: 16 });
            }
            _ => panic!(),
        }
        assert!(matches!(&certs[2], Certificate::Curve(c) if c.degree == 2));
    }

    #[test]
    fn parse_errors_list_every_line() {
        let src = "alpha uniform m=0 n=10 bound_sq=1\nalpha uniform m=1 n=10 bound_sq=1\nbeta uniform m=1 n=3\nalpha almost m=1 n=4 bound_sq=2\nalpha uniform m=1 n=4 bound_sq=-2\nalpha uniform m=1 m=2 n=4 bound_sq=1\n";
        match parse_certificates(src, "bad.txt") {
            Err(Error::CertificateFile { errors, .. }) => {
                let lines: Vec<usize> = errors.iter().map(|e| e.line).collect();
                assert_eq!(lines, vec![1, 3, 4, 5, 6]);
                assert!(errors[0].message.contains("m must be >= 1"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn store_monotone() {
        let s = SurfaceData::p2();
        let mut store = CertificateStore::new();
        let mut last_pass = 0;
        for c in builtin_ccmo(16).into_iter().chain(builtin_doublepoint(16)).chain(builtin_hr(16)) {
            store.extend_alphas([c]);
            let rep = check_hypotheses(Theorem::B, &s, 16, &q(21, 1), &store).unwrap();
            let passes = rep.checks.iter().filter(|c| c.status == Status::Pass).count();
            assert!(passes >= last_pass);
            last_pass = passes;
        }
        assert_eq!(last_pass, 21);
    }
}
