//! Certified lower bounds on homogeneous Seshadri constants.
//!
//! Every bound is an exact rational lower bound on `epsilon^2`, together
//! with an audit trail naming, for each obstruction class that could have
//! pushed the constant lower, the certificate that rules it out.

use std::cmp::Ordering;

use serde::Serialize;

use crate::certificates::{
    check_hypotheses, hr_m_max, CertificateStore, Derivation, HypothesisReport, Pattern, Provenance,
    Status, Theorem,
};
use crate::enumerate::{enumerate_homogeneous, CandidateSet, Rejection};
use crate::error::{Error, Result};
use crate::exactnum::{cmp_sq, Rational};
use crate::surface::{exact_epsilon_rank1, CandidateClass, EnumParams, Mode, SurfaceData};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Method {
    ThmA,
    ThmB,
    Cor13,
    ExactRank1,
}

/// Candidate class as it appears in reports.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CandidateRef {
    pub t: u64,
    pub m: u64,
    pub k: i64,
    pub ratio: Rational,
}

impl From<&CandidateClass> for CandidateRef {
    fn from(c: &CandidateClass) -> Self {
        CandidateRef { t: c.degree, m: c.m, k: c.k, ratio: c.ratio.clone() }
    }
}

/// One line of a bound's audit trail.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AuditEntry {
    /// A hypothesis row and the certificate meeting it.
    Hypothesis {
        pattern: Pattern,
        required_sq: Rational,
        supplied_sq: Rational,
        raw_sq: Rational,
        provenance: Provenance,
        derivation: Derivation,
    },
    /// The class has degree below a certified `alpha_0`, so no irreducible
    /// curve carries it.
    Killed {
        candidate: CandidateRef,
        pattern: Pattern,
        degree_sq: Rational,
        bound_sq: Rational,
        provenance: Provenance,
        derivation: Derivation,
    },
    /// The class is asserted to be carried by an irreducible curve.
    Realized { candidate: CandidateRef, provenance: Provenance },
    WindowEmpty { m: u64, k: i64 },
    Adjunction { t: u64, m: u64, k: i64 },
    NonIntegralSelfIntersection { t: u64, m: u64, k: i64 },
    Parity { m: u64, k: i64 },
    Note { text: String },
}

impl From<&Rejection> for AuditEntry {
    fn from(r: &Rejection) -> Self {
        match *r {
            Rejection::WindowEmpty { m, k } => AuditEntry::WindowEmpty { m, k },
            Rejection::Adjunction { degree, m, k } => AuditEntry::Adjunction { t: degree, m, k },
            Rejection::NonIntegralSelfIntersection { degree, m, k } => {
                AuditEntry::NonIntegralSelfIntersection { t: degree, m, k }
            }
            Rejection::Parity { m, k } => AuditEntry::Parity { m, k },
        }
    }
}

fn note(text: impl Into<String>) -> AuditEntry {
    AuditEntry::Note { text: text.into() }
}

/// A certified lower bound on `epsilon(X, L, n)^2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundResult {
    pub n: u64,
    pub method: Method,
    pub epsilon_lower_sq: Rational,
    /// `epsilon^2 > epsilon_lower_sq` rather than `>=`.
    pub strict: bool,
    /// `epsilon^2 == epsilon_lower_sq`.
    pub exact: bool,
    /// Number of obstruction classes examined for the audit.
    pub n_candidates: usize,
    pub audit: Vec<AuditEntry>,
}

impl BoundResult {
    /// Decimal rendering of the bound on `epsilon` itself.
    pub fn epsilon_lower_decimal(&self, sig: usize) -> Result<String> {
        self.epsilon_lower_sq.sqrt_decimal(sig)
    }
}

/// `(L^2/n)(1 - 1/(n mu))`, which equals `L^2 / (n + delta)` at
/// `delta = (mu - 1/n)^-1`.
pub fn thm_b_value(l2: i64, n: u64, mu: &Rational) -> Rational {
    let n_r = Rational::integer(n);
    let l2_r = Rational::integer(l2);
    &(&l2_r / &n_r) * &(Rational::one() - (&n_r * mu).recip().expect("n mu >= 1"))
}

/// `(L^2/n)(1 - 1/((n-2) mu))`.
pub fn thm_a_value(l2: i64, n: u64, mu: &Rational) -> Rational {
    let n_r = Rational::integer(n);
    let l2_r = Rational::integer(l2);
    let d = &Rational::integer(n - 2) * mu;
    &(&l2_r / &n_r) * &(Rational::one() - d.recip().expect("(n-2) mu >= 1"))
}

fn hypothesis_entries(rep: &HypothesisReport) -> Vec<AuditEntry> {
    rep.checks
        .iter()
        .filter_map(|c| {
            let sup = c.supplied.as_ref()?;
            Some(AuditEntry::Hypothesis {
                pattern: c.pattern,
                required_sq: c.required_sq.clone(),
                supplied_sq: sup.bound_sq.clone(),
                raw_sq: sup.raw_bound_sq.clone(),
                provenance: sup.certificate.provenance.clone(),
                derivation: sup.derivation.clone(),
            })
        })
        .collect()
}

fn require_pass(rep: HypothesisReport) -> Result<HypothesisReport> {
    if rep.checks.iter().all(|c| c.status == Status::Pass) {
        Ok(rep)
    } else {
        Err(Error::HypothesesFailed(Box::new(rep)))
    }
}

/// Runs every candidate of `cs` past the store. Returns the audit entries
/// and the candidates nothing rules out.
fn audit_candidates(
    s: &SurfaceData,
    cs: &CandidateSet,
    store: &CertificateStore,
) -> (Vec<AuditEntry>, Vec<CandidateClass>) {
    let mut audit = Vec::new();
    let mut open = Vec::new();
    for c in &cs.candidates {
        if let Some(sup) = store.kill(c, s) {
            let cl = s.degree_value(c.degree);
            audit.push(AuditEntry::Killed {
                candidate: c.into(),
                pattern: Pattern::of_candidate(c),
                degree_sq: Rational::integer(&cl * &cl),
                bound_sq: sup.bound_sq,
                provenance: sup.certificate.provenance,
                derivation: sup.derivation,
            });
        } else {
            open.push(c.clone());
        }
    }
    audit.extend(cs.rejections.iter().map(AuditEntry::from));
    (audit, open)
}

fn unresolved(n: u64, open: &[CandidateClass]) -> Error {
    Error::Unresolved {
        n,
        candidates: open
            .iter()
            .map(|c| format!("(t={}, m={}, k={}, ratio {})", c.degree, c.m, c.k, c.ratio))
            .collect(),
    }
}

fn require_homogeneous_mode(s: &SurfaceData) -> Result<()> {
    if s.mode == Mode::Interval {
        return Err(Error::Unsupported("theorem bounds need P2 or RANK1 mode".into()));
    }
    Ok(())
}

/// `epsilon^2 > (L^2/n)(1 - 1/((n-2) mu))` from lower bounds on `alpha(m^[n])`
/// for `1 <= m < mu`.
///
/// The audit enumerates obstructions at `mu' = mu (n-1)/(n+1)`, whose
/// threshold strictly exceeds the claimed bound, and kills them with `alpha`
/// bounds read through the conjugate-sum transformer.
pub fn bound_thm_a(s: &SurfaceData, n: u64, mu: &Rational, store: &CertificateStore) -> Result<BoundResult> {
    require_homogeneous_mode(s)?;
    let rep = require_pass(check_hypotheses(Theorem::A, s, n, mu, store)?)?;
    let mut audit = hypothesis_entries(&rep);
    let mut n_candidates = 0;

    let mu_prime = mu * &Rational::frac(n as i64 - 1, n as i64 + 1);
    if mu_prime >= Rational::one() {
        let cs = enumerate_homogeneous(s, n, &EnumParams::from_mu(n, mu_prime.clone())?)?;
        n_candidates = cs.candidates.len();
        let (entries, open) = audit_candidates(s, &cs, store);
        if !open.is_empty() {
            return Err(unresolved(n, &open));
        }
        audit.push(note(format!(
            "obstructions enumerated at mu' = {mu_prime}, threshold {}",
            thm_b_value(s.l2, n, &mu_prime)
        )));
        audit.extend(entries);
    } else {
        audit.push(note(format!("mu' = {mu_prime} < 1: no obstruction enumeration needed")));
    }
    audit.push(note("strict inequality"));
    Ok(BoundResult {
        n,
        method: Method::ThmA,
        epsilon_lower_sq: thm_a_value(s.l2, n, mu),
        strict: true,
        exact: false,
        n_candidates,
        audit,
    })
}

/// `epsilon^2 >= (L^2/n)(1 - 1/(n mu))` from lower bounds on `alpha_0` of
/// uniform and almost uniform patterns.
///
/// Every obstruction class at `delta = (mu - 1/n)^-1` is listed in the audit
/// with the certificate that kills it; a class nothing kills is an error.
pub fn bound_thm_b(s: &SurfaceData, n: u64, mu: &Rational, store: &CertificateStore) -> Result<BoundResult> {
    require_homogeneous_mode(s)?;
    let rep = require_pass(check_hypotheses(Theorem::B, s, n, mu, store)?)?;
    let mut audit = hypothesis_entries(&rep);
    let cs = enumerate_homogeneous(s, n, &EnumParams::from_mu(n, mu.clone())?)?;
    let (entries, open) = audit_candidates(s, &cs, store);
    if !open.is_empty() {
        return Err(unresolved(n, &open));
    }
    audit.extend(entries);
    Ok(BoundResult {
        n,
        method: Method::ThmB,
        epsilon_lower_sq: thm_b_value(s.l2, n, mu),
        strict: false,
        exact: false,
        n_candidates: cs.candidates.len(),
        audit,
    })
}

/// `mu` for which the built-in uniform facts cover theorem B on `P^2`.
pub fn hr_mu(n: u64) -> Rational {
    Rational::integer(1 + hr_m_max(n))
}

/// The explicit bound for `P^2` and `n >= 16`: the better of theorem B with
/// the HR facts at `mu = 1 + s(s-3)/2` and with CCMO and the double-point
/// fact at `mu = 21`.
pub fn cor13_bound(n: u64) -> Result<BoundResult> {
    if n < 16 {
        return Err(Error::Domain(format!(
            "the explicit P2 bound requires n >= 16, got {n}; use --mu with certificates"
        )));
    }
    let mu_hr = hr_mu(n);
    let mu_ccmo = Rational::integer(21);
    let hr = thm_b_value(1, n, &mu_hr);
    let ccmo = thm_b_value(1, n, &mu_ccmo);
    let (best, winner) = match hr.cmp(&ccmo) {
        Ordering::Greater => (hr.clone(), "HR"),
        Ordering::Less => (ccmo.clone(), "CCMO"),
        Ordering::Equal => (hr.clone(), "HR and CCMO"),
    };
    let audit = vec![
        note(format!("HR term: theorem B at mu = {mu_hr} gives {hr}")),
        note(format!("CCMO term: theorem B at mu = 21 with DOUBLEPOINT gives {ccmo}")),
        note(format!("{winner} term is the maximum")),
    ];
    Ok(BoundResult {
        n,
        method: Method::Cor13,
        epsilon_lower_sq: best,
        strict: false,
        exact: false,
        n_candidates: 0,
        audit,
    })
}

/// Exact constant on a rank-one surface from an asserted irreducible curve.
///
/// Each curve fact for `n` points is checked to be an obstruction class the
/// enumeration produces at some `delta > 0`; the smallest ratio among them is
/// then the constant.
pub fn exact_rank1(s: &SurfaceData, n: u64, store: &CertificateStore) -> Result<BoundResult> {
    if !s.rank1 {
        return Err(Error::Unsupported("exact values need a rank-one surface".into()));
    }
    let limit = Rational::frac(s.l2, n as i64);
    let mut best: Option<(Rational, CandidateClass, Provenance)> = None;
    let mut audit = Vec::new();
    for fact in store.curves().iter().filter(|f| f.pattern.n() == n) {
        let (m, k) = match fact.pattern {
            Pattern::Uniform { m, .. } => (m, 0),
            Pattern::AlmostUniform { m, k, .. } => (m, k),
        };
        let c = CandidateClass::new(s, n, fact.degree, m, k)?;
        if cmp_sq(&c.ratio, &limit)? != Ordering::Less {
            audit.push(note(format!(
                "{} of degree {} is not abnormal: ratio {} is not below sqrt({limit})",
                fact.pattern, fact.degree, c.ratio
            )));
            continue;
        }
        // any delta with L^2/(n + delta) > ratio^2 makes the pairing negative
        let gap = &s.l2_rational() / &c.ratio.square() - Rational::integer(n);
        let mut delta = &gap / &Rational::integer(2);
        if n >= 2 {
            delta = delta.min(Rational::frac(n as i64, n as i64 - 1));
        }
        let cs = enumerate_homogeneous(s, n, &EnumParams::from_delta(n, delta.clone())?)?;
        if !cs.candidates.contains(&c) {
            return Err(Error::Domain(format!(
                "{} of degree {} is not an obstruction class at delta = {delta}",
                fact.pattern, fact.degree
            )));
        }
        audit.push(AuditEntry::Realized { candidate: (&c).into(), provenance: fact.provenance.clone() });
        let eps = exact_epsilon_rank1(s, &c)?;
        if best.as_ref().is_none_or(|(b, _, _)| eps < *b) {
            best = Some((eps, c, fact.provenance.clone()));
        }
    }
    let Some((eps, _, _)) = best else {
        return Err(Error::Domain(format!("no abnormal curve fact supplied for n = {n}")));
    };
    Ok(BoundResult {
        n,
        method: Method::ExactRank1,
        epsilon_lower_sq: eps.square(),
        strict: false,
        exact: true,
        n_candidates: audit.iter().filter(|e| matches!(e, AuditEntry::Realized { .. })).count(),
        audit,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Ampleness {
    Ample,
    /// The criterion does not apply; nothing is claimed either way.
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct AmpleVerdict {
    pub n: u64,
    pub t: u64,
    pub m: u64,
    pub status: Ampleness,
    pub reason: String,
}

/// Sufficient criterion for `tH - m(E_1 + ... + E_n)` to be ample on the
/// blowup of `P^2` at `n >= 16` general points: `t^2 > m^2 n` and
/// `m^2 < s(s-3)/2 + 1 - 1/n` with `s = floor(sqrt n)`.
pub fn ample_check(n: u64, t: u64, m: u64) -> Result<AmpleVerdict> {
    if t == 0 || m == 0 {
        return Err(Error::Domain("t and m must be positive".into()));
    }
    let verdict = |status, reason: String| AmpleVerdict { n, t, m, status, reason };
    if n < 16 {
        return Ok(verdict(Ampleness::Unknown, "criterion requires n >= 16".into()));
    }
    let (t2, m2n) = (t as u128 * t as u128, m as u128 * m as u128 * n as u128);
    if t2 <= m2n {
        return Ok(verdict(Ampleness::Unknown, format!("t^2 = {t2} is not greater than m^2 n = {m2n}")));
    }
    let cap = Rational::integer(hr_m_max(n) + 1) - Rational::frac(1, n as i64);
    let m2 = Rational::integer(m * m);
    if m2 >= cap {
        return Ok(verdict(Ampleness::Unknown, format!("m^2 = {m2} is not below {cap}")));
    }
    Ok(verdict(Ampleness::Ample, format!("{t2} > {m2n} and {m2} < {cap}")))
}

/// Riemann-Roch count: curves of degree `a` (in units of `L`) with
/// multiplicity `m` at `n` points exist when
/// `a(a L^2 - L.K)/2 + p_a >= n m(m+1)/2`.
pub fn ah_condition(s: &SurfaceData, n: u64, m: u64, alpha_deg: u64) -> bool {
    let a = alpha_deg as i128;
    let lhs = a * (a * s.l2 as i128 - s.lk as i128) + 2 * s.pa as i128;
    let rhs = n as i128 * m as i128 * (m as i128 + 1);
    lhs >= rhs
}
