//! Finite obstruction sets for `F(delta)`.
//!
//! For `delta > 0` only finitely many numerical classes can carry an
//! `F(delta)`-abnormal curve on a blowup at general points. This module
//! lists them:
//!
//! * [`enumerate_homogeneous`] for unit weights, where every obstruction is
//!   almost uniform `H(C, m, k)` and `m`, `k`, `C.L` are confined to small
//!   windows;
//! * [`enumerate_general`] for arbitrary weights, where the multiplicity
//!   vector is bounded in norm and the degree by the index theorem.
//!
//! The sorted set of ratios `C.L / sum(l_i h_i)` of the surviving classes is
//! the list of values a Seshadri constant below `sqrt(L^2 / (l^2 + delta))`
//! could take.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactnum::{cmp_sq, exact_sqrt, is_even, isqrt_floor, Rational};
use crate::surface::{weighted_sum, CandidateClass, EnumParams, GeneralCandidate, SurfaceData, WeightVector};

/// Why an `(m, k)` slot produced no candidate, or why a degree was dropped.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rejection {
    /// No admissible degree lies in the window.
    WindowEmpty { m: u64, k: i64 },
    /// The class would have negative arithmetic genus.
    Adjunction { degree: u64, m: u64, k: i64 },
    /// `C^2 = (C.L)^2 / L^2` would not be an integer.
    NonIntegralSelfIntersection { degree: u64, m: u64, k: i64 },
    /// Ruled out by the parity of `C^2` on a square-`L^2` rank-one surface.
    Parity { m: u64, k: i64 },
}

/// An obstruction set together with its ratio set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateSet<C = CandidateClass> {
    pub n: u64,
    pub delta: Rational,
    /// Present for homogeneous enumeration only.
    pub mu: Option<Rational>,
    pub candidates: Vec<C>,
    /// Sorted ascending, no duplicates.
    pub ratios: Vec<Rational>,
    /// `L^2 / l^2`, the square of the only possible accumulation point.
    pub limit_sq: Rational,
    pub truncated: bool,
    pub rejections: Vec<Rejection>,
}

impl<C> CandidateSet<C> {
    pub fn is_empty(&self) -> bool {
        self.candidates.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumOptions {
    /// Use the parity shortcut for `k != 0` when `L^2` is a square.
    pub parity_fast_path: bool,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions { parity_fast_path: true }
    }
}

/// Bound on `sum h_i^2` explored by [`enumerate_general`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumCap {
    pub max_norm_sq: u64,
}

impl Default for EnumCap {
    fn default() -> Self {
        EnumCap { max_norm_sq: 1_000_000 }
    }
}

/// Homogeneous obstruction set at `delta = (mu - 1/n)^-1`.
pub fn enumerate_homogeneous(s: &SurfaceData, n: u64, p: &EnumParams) -> Result<CandidateSet> {
    enumerate_homogeneous_with(s, n, p, EnumOptions::default())
}

pub fn enumerate_homogeneous_with(
    s: &SurfaceData,
    n: u64,
    p: &EnumParams,
    opts: EnumOptions,
) -> Result<CandidateSet> {
    if !s.determines_c_sq() {
        return Err(Error::Unsupported(
            "homogeneous enumeration needs P2 or RANK1 mode; use enumerate_general".into(),
        ));
    }
    if n == 0 {
        return Err(Error::Domain("n must be >= 1".into()));
    }
    if p.n() != n {
        return Err(Error::Domain(format!("parameters were built for n = {}, not {n}", p.n())));
    }
    if !p.delta().is_positive() {
        return Err(Error::Domain("delta must be positive".into()));
    }
    let ctx = HomCtx::new(s, n, p);
    let m_max = ctx.m_max();
    let fast = opts.parity_fast_path && s.rank1 && exact_sqrt(&BigInt::from(s.l2)).is_some();

    let per_m: Vec<Slot> = (1..=m_max)
        .into_par_iter()
        .map(|m| ctx.examine_m(m, fast))
        .collect::<Result<_>>()?;

    let mut out = Slot::default();
    for slot in per_m {
        out.candidates.extend(slot.candidates);
        out.rejections.extend(slot.rejections);
    }
    // (m, k) = (1, -1) is not covered by the m(n-1) < mu gate, whose
    // derivation needs m + k > 0; the pairing test alone decides it.
    if n >= 2 {
        ctx.examine(1, -1, None, &mut out);
    }
    Ok(finish(n, p.delta().clone(), Some(p.mu().clone()), ctx.limit_sq(), out.candidates, out.rejections, false))
}

#[derive(Default)]
struct Slot {
    candidates: Vec<CandidateClass>,
    rejections: Vec<Rejection>,
}

struct HomCtx<'a> {
    s: &'a SurfaceData,
    n: u64,
    mu: Rational,
    /// `L^2 / (n + delta)`; admissible degrees have `(C.L)^2 < (mn+k)^2` times this.
    pairing_sq: Rational,
}

impl<'a> HomCtx<'a> {
    fn new(s: &'a SurfaceData, n: u64, p: &EnumParams) -> Self {
        let pairing_sq = s.l2_rational() / (Rational::integer(n) + p.delta());
        HomCtx { s, n, mu: p.mu().clone(), pairing_sq }
    }

    fn limit_sq(&self) -> Rational {
        Rational::frac(self.s.l2, self.n as i64)
    }

    /// Largest integer `m` with `m < mu`.
    fn m_max(&self) -> u64 {
        (self.mu.ceil() - 1u32).to_u64().unwrap_or(0)
    }

    fn k_gate(&self, m: u64) -> bool {
        self.n >= 2 && Rational::integer(m * (self.n - 1)) < self.mu
    }

    fn examine_m(&self, m: u64, fast: bool) -> Result<Slot> {
        let mut slot = Slot::default();
        self.examine(m, 0, None, &mut slot);
        if !self.k_gate(m) {
            return Ok(slot);
        }
        let ks = admissible_ks(self.n, m);
        if fast && m < self.n {
            let hit = parity_filter(self.s, self.n, m)?;
            for k in ks {
                match &hit {
                    Some(h) if h.k == k => match h.degree {
                        Some(t) => self.examine(m, k, Some(t), &mut slot),
                        None => slot.rejections.push(Rejection::Parity { m, k }),
                    },
                    _ => slot.rejections.push(Rejection::Parity { m, k }),
                }
            }
        } else {
            for k in ks {
                self.examine(m, k, None, &mut slot);
            }
        }
        Ok(slot)
    }

    /// Scans the degree window of `(m, k)`, or only `only_degree` if given.
    fn examine(&self, m: u64, k: i64, only_degree: Option<u64>, out: &mut Slot) {
        let s = self.s;
        let n = self.n as i64;
        let mi = m as i64;
        let l2 = BigInt::from(s.l2);
        let g = BigInt::from(s.degree_unit);

        // lower bound on (C.L)^2 from C^2 >= sum h_i^2 - a and distinctness of
        // the n conjugate curves
        let lower_core: i64 = if k == 0 {
            mi * mi * n - mi
        } else if (mi, k) == (1, -1) {
            n - 2
        } else {
            let extra = (k * k - mi).max(k * k - mi - k).max(0);
            mi * mi * n + 2 * mi * k + extra
        };
        let lower = Rational::integer(BigInt::from(lower_core) * &l2);
        let total = mi * n + k;
        let upper = &Rational::integer(total * total) * &self.pairing_sq;

        let t_min = {
            let root = lower.ceil_sqrt();
            let t = (&root + &g - 1u32) / &g;
            t.to_u64().unwrap_or(u64::MAX).max(1)
        };

        let degrees: Box<dyn Iterator<Item = u64>> = match only_degree {
            Some(t) => Box::new(std::iter::once(t)),
            None => Box::new(t_min..),
        };

        let mut found_any = false;
        for t in degrees {
            let cl = s.degree_value(t);
            let cl_sq = Rational::integer(&cl * &cl);
            if cl_sq >= upper {
                break;
            }
            if cl_sq < lower {
                continue;
            }
            found_any = true;
            if !(&cl * &cl % &l2).is_zero() {
                out.rejections.push(Rejection::NonIntegralSelfIntersection { degree: t, m, k });
                continue;
            }
            if !adjunction_ok(s, self.n, &cl, m, k) {
                out.rejections.push(Rejection::Adjunction { degree: t, m, k });
                continue;
            }
            out.candidates.push(CandidateClass::new(s, self.n, t, m, k).expect("window guarantees validity"));
        }
        if !found_any {
            out.rejections.push(Rejection::WindowEmpty { m, k });
        }
    }
}

/// Nonzero `k > -m` with `k^2 < (n/(n-1)) min(m, m+k)`.
pub fn admissible_ks(n: u64, m: u64) -> Vec<i64> {
    if n < 2 {
        return Vec::new();
    }
    let (n, m) = (n as i64, m as i64);
    let kmax = isqrt_floor(&BigInt::from(2 * m)).to_i64().unwrap_or(0) + 1;
    ((-m + 1)..=kmax)
        .filter(|&k| k != 0 && k * k * (n - 1) < n * m.min(m + k))
        .collect()
}

/// Genus of `H(C, m, k)` is nonnegative:
/// `C.(C+K) - (m+k)^2 - (n-1)m^2 + mn + k >= -2`, with `C^2` and `C.K`
/// expressed through `C.L` on a rank-one surface.
fn adjunction_ok(s: &SurfaceData, n: u64, cl: &BigInt, m: u64, k: i64) -> bool {
    let (n, m) = (n as i64, m as i64);
    let rest = -(m + k) * (m + k) - (n - 1) * m * m + m * n + k + 2;
    let lhs = cl * cl + cl * s.lk + BigInt::from(s.l2) * rest;
    lhs >= BigInt::zero()
}

fn finish<C: Clone + HasRatio + Ord>(
    n: u64,
    delta: Rational,
    mu: Option<Rational>,
    limit_sq: Rational,
    mut candidates: Vec<C>,
    mut rejections: Vec<Rejection>,
    truncated: bool,
) -> CandidateSet<C> {
    candidates.sort_by(|a, b| a.ratio().cmp(b.ratio()).then_with(|| a.cmp(b)));
    candidates.dedup();
    rejections.sort();
    let mut ratios: Vec<Rational> = candidates.iter().map(|c| c.ratio().clone()).collect();
    ratios.dedup();
    CandidateSet { n, delta, mu, candidates, ratios, limit_sq, truncated, rejections }
}

trait HasRatio {
    fn ratio(&self) -> &Rational;
}

impl HasRatio for CandidateClass {
    fn ratio(&self) -> &Rational {
        &self.ratio
    }
}

impl HasRatio for GeneralCandidate {
    fn ratio(&self) -> &Rational {
        &self.ratio
    }
}

impl PartialOrd for GeneralCandidate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GeneralCandidate {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ratio
            .cmp(&other.ratio)
            .then_with(|| self.h.cmp(&other.h))
            .then_with(|| self.degree.cmp(&other.degree))
    }
}

/// The one value `sqrt(C^2)` can take for an abnormal `H(C, m, k)` with
/// `k != 0` and `m < n`, and the `k` it forces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityHit {
    /// `sqrt(C^2)`, the unique integer in `(m sqrt(n) - 1, m sqrt(n) + 1)`
    /// with the parity of `m^2 n`.
    pub root: BigInt,
    /// `k = (root^2 - m^2 n) / (2m)`.
    pub k: i64,
    /// `C.L` in units of `g`, when integral.
    pub degree: Option<u64>,
}

/// Parity shortcut for rank-one surfaces with `L^2 = r^2`.
///
/// When `C^2 = 2mk + m^2 n` is forced, `C^2` has the parity of `m^2 n`, and
/// exactly one integer of that parity lies strictly within 1 of `m sqrt(n)`.
/// Returns `None` when that integer forces no nonzero integral `k`.
pub fn parity_filter(s: &SurfaceData, n: u64, m: u64) -> Result<Option<ParityHit>> {
    if !s.rank1 {
        return Err(Error::Unsupported("parity shortcut needs a rank-one surface".into()));
    }
    let r = exact_sqrt(&BigInt::from(s.l2))
        .ok_or_else(|| Error::Unsupported(format!("L^2 = {} is not a perfect square", s.l2)))?;
    if m == 0 || m >= n {
        return Err(Error::Domain(format!("parity shortcut needs 0 < m < n, got m={m}, n={n}")));
    }
    let target = BigInt::from(m) * BigInt::from(m) * BigInt::from(n);
    let root = match exact_sqrt(&target) {
        Some(sq) => sq,
        None => {
            let lo = isqrt_floor(&target);
            if is_even(&lo) == is_even(&target) {
                lo
            } else {
                lo + 1
            }
        }
    };
    let diff = &root * &root - &target;
    let two_m = BigInt::from(2 * m);
    if diff.is_zero() || !(&diff % &two_m).is_zero() {
        return Ok(None);
    }
    let k = (diff / two_m).to_i64().expect("small k");
    let cl = &root * &r;
    let g = BigInt::from(s.degree_unit);
    let degree = if (&cl % &g).is_zero() { (cl / g).to_u64() } else { None };
    Ok(Some(ParityHit { root, k, degree }))
}

/// Obstruction set for arbitrary weights.
///
/// Multiplicity vectors are enumerated up to the norm bound
/// `sum h_i^2 < (1 + l^2/delta)^2`, capped at `cap.max_norm_sq`; the result
/// is flagged `truncated` when the cap cuts the bound. Within blocks of equal
/// weights only nonincreasing vectors are listed.
pub fn enumerate_general(
    s: &SurfaceData,
    w: &WeightVector,
    delta: &Rational,
    cap: EnumCap,
) -> Result<CandidateSet<GeneralCandidate>> {
    if !delta.is_positive() {
        return Err(Error::Domain(format!("delta must be positive, got {delta}")));
    }
    let n = w.n();
    let l2 = s.l2_rational();
    let norm_bound = (Rational::one() + w.norm_sq() / delta).square();
    // largest integer strictly below the bound
    let max_norm = (norm_bound.ceil() - 1u32).to_u64().unwrap_or(u64::MAX);
    let truncated = max_norm > cap.max_norm_sq;
    let max_norm = max_norm.min(cap.max_norm_sq);
    let pairing_sq = &l2 / &(w.norm_sq() + delta);

    let blocks = equal_weight_blocks(w);
    let mut vectors = Vec::new();
    let mut h = vec![0u64; n];
    collect_vectors(&blocks, 0, 0, max_norm, &mut h, &mut vectors);

    let g = BigInt::from(s.degree_unit);
    let l2_int = BigInt::from(s.l2);
    let mut candidates: Vec<GeneralCandidate> = vectors
        .par_iter()
        .flat_map_iter(|h| {
            let mut found = Vec::new();
            let gamma = h.iter().filter(|&&x| x > 0).count() as u64;
            let Some(a) = h.iter().copied().filter(|&x| x > 0).min() else {
                return found;
            };
            let h2: u64 = h.iter().map(|x| x * x).sum();
            if Rational::integer(h2 * gamma) >= norm_bound {
                return found;
            }
            let weighted = weighted_sum(w, h);
            if !weighted.is_positive() {
                return found;
            }
            let upper = &weighted.square() * &pairing_sq;
            let lower = Rational::integer(BigInt::from(h2 as i64 - a as i64) * &l2_int);
            let root = lower.ceil_sqrt();
            let t_min = ((&root + &g - 1u32) / &g).to_u64().unwrap_or(u64::MAX).max(1);
            for t in t_min.. {
                let cl = s.degree_value(t);
                let cl_sq = Rational::integer(&cl * &cl);
                if cl_sq >= upper {
                    break;
                }
                if s.determines_c_sq() && !(&cl * &cl % &l2_int).is_zero() {
                    continue;
                }
                found.push(GeneralCandidate::new(s, w, t, h.clone()).expect("valid by construction"));
            }
            found
        })
        .collect();
    candidates.sort();
    Ok(finish(n as u64, delta.clone(), None, &l2 / w.norm_sq(), candidates, Vec::new(), truncated))
}

/// Index ranges of maximal runs of equal consecutive weights, plus singleton
/// ranges for everything else.
fn equal_weight_blocks(w: &WeightVector) -> Vec<(usize, usize)> {
    let ws = w.weights();
    let mut blocks = Vec::new();
    let mut start = 0;
    for i in 1..=ws.len() {
        if i == ws.len() || ws[i] != ws[start] {
            blocks.push((start, i));
            start = i;
        }
    }
    blocks
}

fn collect_vectors(
    blocks: &[(usize, usize)],
    pos: usize,
    used: u64,
    max_norm: u64,
    h: &mut Vec<u64>,
    out: &mut Vec<Vec<u64>>,
) {
    if pos == h.len() {
        if used > 0 {
            out.push(h.clone());
        }
        return;
    }
    let block_start = blocks.iter().find(|(a, b)| *a <= pos && pos < *b).map(|b| b.0).unwrap_or(pos);
    let ceiling = if pos > block_start { h[pos - 1] } else { u64::MAX };
    let mut x = 0u64;
    while x <= ceiling && used + x * x <= max_norm {
        h[pos] = x;
        collect_vectors(blocks, pos + 1, used + x * x, max_norm, h, out);
        x += 1;
    }
    h[pos] = 0;
}

/// The ratio set of `cs`.
pub fn o_values<C>(cs: &CandidateSet<C>) -> Vec<Rational> {
    cs.ratios.clone()
}

/// Result of asking for the next possible Seshadri value above `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Threshold {
    /// Smallest candidate ratio above `b`.
    Next(Rational),
    /// No candidate above `b`: the bound jumps to `sqrt(bound_sq)`.
    Limit { bound_sq: Rational },
}

/// Once `epsilon > b` is known, the constant is at least the next candidate
/// ratio above `b`, or at least `sqrt(L^2/(n+delta))` if there is none.
pub fn next_threshold(s: &SurfaceData, n: u64, p: &EnumParams, b: &Rational) -> Result<Threshold> {
    let limit = Rational::frac(s.l2, n as i64);
    if cmp_sq(b, &limit)? != Ordering::Less {
        return Err(Error::Domain(format!("b = {b} is not below sqrt(L^2/n) = sqrt({limit})")));
    }
    let cs = enumerate_homogeneous(s, n, p)?;
    Ok(match cs.ratios.iter().find(|r| *r > b) {
        Some(r) => Threshold::Next(r.clone()),
        None => Threshold::Limit {
            bound_sq: s.l2_rational() / (Rational::integer(n) + p.delta()),
        },
    })
}
