//! Numerical model of a polarized surface `(X, L)` blown up at general points.
//!
//! Curves are never represented; a class on the blowup is the data
//! `(C.L, multiplicities)` together with whatever `C^2` the surface model
//! pins down.

use std::cmp::Ordering;
use std::path::Path;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{cmp_sq, Rational};

/// How much of the intersection form of `X` the engine may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Mode {
    /// The projective plane with `L` a line.
    P2,
    /// Numerical classes are multiples of one ample class, so `C^2` and
    /// `C.K` follow from `C.L`.
    Rank1,
    /// Only the index theorem is available: `C^2` is known to lie in an
    /// interval.
    Interval,
}

/// The surface data `(L^2, L.K, p_a, g)` plus the rank-one flag.
///
/// `degree_unit` is a positive `g` with every `C.L` a multiple of `g`; degrees
/// elsewhere in the crate are counted in units of `g`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SurfaceData {
    #[serde(rename = "L2")]
    pub l2: i64,
    #[serde(rename = "LK")]
    pub lk: i64,
    pub pa: i64,
    pub degree_unit: i64,
    pub rank1: bool,
    pub mode: Mode,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSurface {
    preset: Option<String>,
    #[serde(rename = "L2")]
    l2: Option<i64>,
    #[serde(rename = "LK")]
    lk: Option<i64>,
    pa: Option<i64>,
    degree_unit: Option<i64>,
    rank1: Option<bool>,
    mode: Option<Mode>,
}

impl SurfaceData {
    pub fn new(l2: i64, lk: i64, pa: i64, degree_unit: i64, rank1: bool, mode: Mode) -> Result<Self> {
        if l2 < 1 {
            return Err(Error::Config(format!("L2 must be >= 1, got {l2}")));
        }
        if degree_unit < 1 {
            return Err(Error::Config(format!("degree_unit must be >= 1, got {degree_unit}")));
        }
        match mode {
            Mode::P2 if (l2, lk, pa, degree_unit, rank1) != (1, -3, 0, 1, true) => {
                return Err(Error::Config(
                    "P2 mode requires L2 = 1, LK = -3, pa = 0, degree_unit = 1, rank1 = true".into(),
                ))
            }
            Mode::Rank1 if !rank1 => {
                return Err(Error::Config("RANK1 mode requires rank1 = true".into()))
            }
            _ => {}
        }
        Ok(SurfaceData { l2, lk, pa, degree_unit, rank1, mode })
    }

    /// `(P^2, line)`.
    pub fn p2() -> Self {
        SurfaceData { l2: 1, lk: -3, pa: 0, degree_unit: 1, rank1: true, mode: Mode::P2 }
    }

    pub fn preset(name: &str) -> Result<Self> {
        match name.to_ascii_lowercase().as_str() {
            "p2" => Ok(Self::p2()),
            other => Err(Error::Config(format!("unknown surface preset {other:?}"))),
        }
    }

    /// Parses a TOML block with keys `L2, LK, pa, degree_unit, rank1, mode`,
    /// or `preset = "p2"`.
    pub fn from_toml_str(src: &str) -> Result<Self> {
        let raw: RawSurface = toml::from_str(src).map_err(|e| Error::Config(e.to_string()))?;
        if let Some(p) = raw.preset {
            return Self::preset(&p);
        }
        let need = |v: Option<i64>, key: &str| v.ok_or_else(|| Error::Config(format!("missing key {key}")));
        let rank1 = raw.rank1.ok_or_else(|| Error::Config("missing key rank1".into()))?;
        let mode = raw
            .mode
            .unwrap_or(if rank1 { Mode::Rank1 } else { Mode::Interval });
        Self::new(
            need(raw.l2, "L2")?,
            need(raw.lk, "LK")?,
            need(raw.pa, "pa")?,
            raw.degree_unit.unwrap_or(1),
            rank1,
            mode,
        )
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let src = std::fs::read_to_string(path)
            .map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
        Self::from_toml_str(&src)
    }

    /// `C^2` and `C.K` are functions of `C.L`.
    pub fn determines_c_sq(&self) -> bool {
        matches!(self.mode, Mode::P2 | Mode::Rank1)
    }

    pub fn l2_rational(&self) -> Rational {
        Rational::integer(self.l2)
    }

    /// `C.L` for a class of the given degree.
    pub fn degree_value(&self, degree: u64) -> BigInt {
        BigInt::from(degree) * self.degree_unit
    }

    /// `C^2 = (C.L)^2 / L^2` in rank-one modes.
    pub fn c_sq_of_degree(&self, degree: u64) -> Option<Rational> {
        self.determines_c_sq().then(|| {
            let d = self.degree_value(degree);
            Rational::new(&d * &d, BigInt::from(self.l2)).expect("L2 >= 1")
        })
    }
}

/// Weights `l_1..l_n` of the Seshadri problem, with `l^2 = sum l_i^2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightVector {
    weights: Vec<Rational>,
    norm_sq: Rational,
}

impl WeightVector {
    pub fn new(weights: Vec<Rational>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::Domain("weight vector must have n >= 1 entries".into()));
        }
        if weights.iter().any(Rational::is_negative) {
            return Err(Error::Domain("weights must be nonnegative".into()));
        }
        let norm_sq: Rational = weights.iter().map(Rational::square).sum();
        if norm_sq.is_zero() {
            return Err(Error::Domain("weights must not all be zero".into()));
        }
        Ok(WeightVector { weights, norm_sq })
    }

    /// `(1, ..., 1)` of length `n`.
    pub fn homogeneous(n: usize) -> Result<Self> {
        Self::new(vec![Rational::one(); n])
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn norm_sq(&self) -> &Rational {
        &self.norm_sq
    }

    pub fn is_homogeneous(&self) -> bool {
        self.weights.iter().all(|w| *w == Rational::one())
    }

    fn common_weight(&self) -> Option<&Rational> {
        let first = &self.weights[0];
        self.weights.iter().all(|w| w == first).then_some(first)
    }
}

/// `delta = F(delta)^2` and `mu`, tied by `delta = (mu - 1/n)^-1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EnumParams {
    n: u64,
    delta: Rational,
    mu: Rational,
}

impl EnumParams {
    pub fn from_mu(n: u64, mu: Rational) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("n must be >= 1".into()));
        }
        if mu < Rational::one() {
            return Err(Error::Domain(format!("mu must be >= 1, got {mu}")));
        }
        let delta = (&mu - Rational::frac(1, n as i64)).recip()?;
        Ok(EnumParams { n, delta, mu })
    }

    pub fn from_delta(n: u64, delta: Rational) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("n must be >= 1".into()));
        }
        if !delta.is_positive() {
            return Err(Error::Domain(format!("delta must be positive, got {delta}")));
        }
        let mu = delta.recip()? + Rational::frac(1, n as i64);
        if mu < Rational::one() {
            return Err(Error::Domain(format!(
                "delta = {delta} gives mu = {mu} < 1 (need delta <= n/(n-1))"
            )));
        }
        Ok(EnumParams { n, delta, mu })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn delta(&self) -> &Rational {
        &self.delta
    }

    pub fn mu(&self) -> &Rational {
        &self.mu
    }
}

/// Almost uniform class `H(C, m, k) = C - m(E_1 + ... + E_n) - k E_i`.
///
/// The index `i` is not stored: for general points every choice is
/// equivalent.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CandidateClass {
    pub degree: u64,
    pub m: u64,
    pub k: i64,
    pub n: u64,
    pub ratio: Rational,
    pub c_sq: Option<Rational>,
}

impl CandidateClass {
    pub fn new(s: &SurfaceData, n: u64, degree: u64, m: u64, k: i64) -> Result<Self> {
        if n == 0 || degree == 0 || m == 0 {
            return Err(Error::Domain("n, degree and m must be positive".into()));
        }
        if n == 1 && k != 0 {
            return Err(Error::Domain("k must be 0 when n = 1".into()));
        }
        let mi = m as i64;
        if !(k > -mi || (mi, k) == (1, -1)) {
            return Err(Error::Domain(format!("need k > -m or (m, k) = (1, -1); got m={m}, k={k}")));
        }
        let total = mi * n as i64 + k;
        let ratio = Rational::new(s.degree_value(degree), BigInt::from(total))?;
        Ok(CandidateClass { degree, m, k, n, ratio, c_sq: s.c_sq_of_degree(degree) })
    }

    /// `m n + k`, the total multiplicity.
    pub fn multiplicity_sum(&self) -> i64 {
        self.m as i64 * self.n as i64 + self.k
    }

    /// Multiplicity vector with the odd entry last.
    pub fn multiplicities(&self) -> Vec<u64> {
        let mut h = vec![self.m; self.n as usize];
        *h.last_mut().expect("n >= 1") = (self.m as i64 + self.k) as u64;
        h
    }
}

/// Value of `C^2` for a general-weight candidate.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(untagged)]
pub enum CSquare {
    Exact(Rational),
    /// Any integer in `[lo, hi]` is consistent with the inequalities.
    Interval { lo: Rational, hi: Rational },
}

/// `C - h_1 E_1 - ... - h_n E_n` for arbitrary weights.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneralCandidate {
    pub degree: u64,
    pub h: Vec<u64>,
    pub gamma: usize,
    pub a: u64,
    pub ratio: Rational,
    pub c_sq: CSquare,
}

impl GeneralCandidate {
    pub fn new(s: &SurfaceData, w: &WeightVector, degree: u64, h: Vec<u64>) -> Result<Self> {
        if h.len() != w.n() {
            return Err(Error::Domain(format!("h has {} entries, weights have {}", h.len(), w.n())));
        }
        if degree == 0 {
            return Err(Error::Domain("degree must be positive".into()));
        }
        let gamma = h.iter().filter(|&&x| x > 0).count();
        let a = h.iter().copied().filter(|&x| x > 0).min().ok_or_else(|| {
            Error::Domain("multiplicity vector is zero; not a curve class".into())
        })?;
        let weighted = weighted_sum(w, &h);
        if !weighted.is_positive() {
            return Err(Error::Domain("weighted multiplicity sum is zero".into()));
        }
        let ratio = Rational::integer(s.degree_value(degree)) / weighted;
        let c_sq = match s.c_sq_of_degree(degree) {
            Some(c) => CSquare::Exact(c),
            None => {
                let d = s.degree_value(degree);
                let h2: u64 = h.iter().map(|x| x * x).sum();
                CSquare::Interval {
                    lo: Rational::integer(h2 as i64 - a as i64),
                    hi: Rational::new(&d * &d, BigInt::from(s.l2))?,
                }
            }
        };
        Ok(GeneralCandidate { degree, h, gamma, a, ratio, c_sq })
    }
}

pub(crate) fn weighted_sum(w: &WeightVector, h: &[u64]) -> Rational {
    w.weights()
        .iter()
        .zip(h)
        .filter(|(_, &x)| x > 0)
        .map(|(l, &x)| l * &Rational::integer(x))
        .sum()
}

/// A class that can be tested against `F(delta)`.
pub trait TestClass {
    fn degree(&self) -> u64;
    /// `sum l_i h_i` for the given weights.
    fn weighted_multiplicity(&self, w: &WeightVector) -> Result<Rational>;
}

impl TestClass for CandidateClass {
    fn degree(&self) -> u64 {
        self.degree
    }

    fn weighted_multiplicity(&self, w: &WeightVector) -> Result<Rational> {
        if w.n() as u64 != self.n {
            return Err(Error::Domain(format!("class has n = {}, weights n = {}", self.n, w.n())));
        }
        let l = w.common_weight().ok_or_else(|| {
            Error::Unsupported("almost uniform classes need equal weights".into())
        })?;
        Ok(l * &Rational::integer(self.multiplicity_sum()))
    }
}

impl TestClass for GeneralCandidate {
    fn degree(&self) -> u64 {
        self.degree
    }

    fn weighted_multiplicity(&self, w: &WeightVector) -> Result<Rational> {
        if w.n() != self.h.len() {
            return Err(Error::Domain(format!("class has n = {}, weights n = {}", self.h.len(), w.n())));
        }
        Ok(weighted_sum(w, &self.h))
    }
}

/// Sign of `F(delta) . H`: `Less` means the class meets `F(delta)` negatively.
///
/// Computed as the comparison of `C.L / sum(l_i h_i)` with
/// `sqrt(L^2 / (l^2 + delta))`.
pub fn f_delta_pairing(
    s: &SurfaceData,
    w: &WeightVector,
    delta: &Rational,
    c: &impl TestClass,
) -> Result<Ordering> {
    let ratio = nef_threshold_upper(s, w, c)?;
    let limit = s.l2_rational() / (w.norm_sq() + delta);
    cmp_sq(&ratio, &limit)
}

/// `C.L / sum(l_i h_i)`: if the class is carried by an abnormal curve, no
/// `F_s` with larger `s` is nef.
pub fn nef_threshold_upper(s: &SurfaceData, w: &WeightVector, c: &impl TestClass) -> Result<Rational> {
    let denom = c.weighted_multiplicity(w)?;
    if !denom.is_positive() {
        return Err(Error::Domain("weighted multiplicity must be positive".into()));
    }
    Ok(Rational::integer(s.degree_value(c.degree())) / denom)
}

/// On a rank-one surface a single abnormal class pins the homogeneous
/// Seshadri constant: it equals the class's ratio.
///
/// The caller vouches that `c` is carried by an irreducible curve through
/// general points and that it is abnormal.
pub fn exact_epsilon_rank1(s: &SurfaceData, c: &CandidateClass) -> Result<Rational> {
    if !s.rank1 {
        return Err(Error::Unsupported(
            "exact value needs every divisor to be numerically a multiple of L".into(),
        ));
    }
    Ok(c.ratio.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> Rational {
        Rational::frac(p, d)
    }

    fn hom(n: usize) -> WeightVector {
        WeightVector::homogeneous(n).unwrap()
    }

    #[test]
    fn pairing_examples() {
        let p2 = SurfaceData::p2();
        let conic = CandidateClass::new(&p2, 5, 2, 1, 0).unwrap();
        assert_eq!(f_delta_pairing(&p2, &hom(5), &q(1, 20), &conic).unwrap(), Ordering::Less);

        let conic4 = CandidateClass::new(&p2, 4, 2, 1, 0).unwrap();
        for d in [q(1, 1000), q(1, 2), q(3, 1)] {
            assert_ne!(f_delta_pairing(&p2, &hom(4), &d, &conic4).unwrap(), Ordering::Less);
        }

        let cubic = CandidateClass::new(&p2, 10, 3, 1, 0).unwrap();
        assert_eq!(f_delta_pairing(&p2, &hom(10), &q(1, 10), &cubic).unwrap(), Ordering::Less);
    }

    #[test]
    fn nef_threshold_examples() {
        let p2 = SurfaceData::p2();
        let line = CandidateClass::new(&p2, 2, 1, 1, 0).unwrap();
        assert_eq!(nef_threshold_upper(&p2, &hom(2), &line).unwrap(), q(1, 2));
        let conic = CandidateClass::new(&p2, 5, 2, 1, 0).unwrap();
        assert_eq!(nef_threshold_upper(&p2, &hom(5), &conic).unwrap(), q(2, 5));
        let cubic = CandidateClass::new(&p2, 9, 3, 1, 0).unwrap();
        assert_eq!(nef_threshold_upper(&p2, &hom(9), &cubic).unwrap(), q(1, 3));
    }

    #[test]
    fn nef_threshold_rejects_zero_weighting() {
        let p2 = SurfaceData::p2();
        let w = WeightVector::new(vec![q(1, 1), q(0, 1)]).unwrap();
        let c = GeneralCandidate::new(&p2, &w, 1, vec![0, 1]);
        assert!(c.is_err());
    }

    #[test]
    fn zero_multiplicity_vector_rejected() {
        let p2 = SurfaceData::p2();
        assert!(GeneralCandidate::new(&p2, &hom(3), 2, vec![0, 0, 0]).is_err());
    }

    #[test]
    fn exact_rank1_examples() {
        let p2 = SurfaceData::p2();
        let conic = CandidateClass::new(&p2, 5, 2, 1, 0).unwrap();
        assert_eq!(exact_epsilon_rank1(&p2, &conic).unwrap(), q(2, 5));
        let line = CandidateClass::new(&p2, 2, 1, 1, 0).unwrap();
        assert_eq!(exact_epsilon_rank1(&p2, &line).unwrap(), q(1, 2));
        let s = SurfaceData::new(2, 0, 0, 1, false, Mode::Interval).unwrap();
        let c = CandidateClass::new(&s, 5, 2, 1, 0).unwrap();
        assert!(matches!(exact_epsilon_rank1(&s, &c), Err(Error::Unsupported(_))));
    }

    #[test]
    fn candidate_invariants() {
        let p2 = SurfaceData::p2();
        assert!(CandidateClass::new(&p2, 1, 1, 1, 1).is_err());
        assert!(CandidateClass::new(&p2, 5, 1, 2, -2).is_err());
        assert!(CandidateClass::new(&p2, 5, 1, 1, -1).is_ok());
        assert!(CandidateClass::new(&p2, 5, 1, 2, -1).is_ok());
        let c = CandidateClass::new(&p2, 5, 3, 1, 2).unwrap();
        assert_eq!(c.ratio, q(3, 7));
        assert_eq!(c.multiplicities(), vec![1, 1, 1, 1, 3]);
        assert_eq!(c.c_sq, Some(q(9, 1)));
    }

    #[test]
    fn surface_config_parsing() {
        let s = SurfaceData::from_toml_str("preset = \"p2\"").unwrap();
        assert_eq!(s, SurfaceData::p2());
        let s = SurfaceData::from_toml_str(
            "L2 = 2\nLK = -4\npa = 0\ndegree_unit = 1\nrank1 = false\nmode = \"INTERVAL\"\n",
        )
        .unwrap();
        assert_eq!(s.mode, Mode::Interval);
        assert!(!s.determines_c_sq());
        // P2 mode with wrong data
        assert!(SurfaceData::from_toml_str(
            "L2 = 2\nLK = -3\npa = 0\ndegree_unit = 1\nrank1 = true\nmode = \"P2\"\n"
        )
        .is_err());
        assert!(SurfaceData::from_toml_str("L2 = 1\nLK = -3\n").is_err());
        assert!(SurfaceData::from_toml_str("L2 = 0\nLK = -3\npa = 0\nrank1 = true").is_err());
    }

    #[test]
    fn params_link() {
        let p = EnumParams::from_mu(10, q(21, 1)).unwrap();
        assert_eq!(p.delta(), &q(10, 209));
        let p = EnumParams::from_delta(2, q(2, 3)).unwrap();
        assert_eq!(p.mu(), &q(2, 1));
        assert!(EnumParams::from_delta(2, q(3, 1)).is_err());
        assert!(EnumParams::from_delta(2, q(0, 1)).is_err());
        assert!(EnumParams::from_mu(2, q(1, 2)).is_err());
    }

    #[test]
    fn weights() {
        assert!(hom(3).is_homogeneous());
        let w = WeightVector::new(vec![q(1, 2), q(1, 2)]).unwrap();
        assert!(!w.is_homogeneous());
        assert_eq!(w.norm_sq(), &q(1, 2));
        assert!(WeightVector::new(vec![q(0, 1)]).is_err());
        assert!(WeightVector::new(vec![q(-1, 1), q(2, 1)]).is_err());
    }

    #[test]
    fn pairing_monotone_in_delta() {
        // the cubic through nine points is orthogonal to F(0)
        let p2 = SurfaceData::p2();
        let c9 = CandidateClass::new(&p2, 9, 3, 1, 0).unwrap();
        assert_eq!(f_delta_pairing(&p2, &hom(9), &q(0, 1), &c9).unwrap(), Ordering::Equal);
        assert_eq!(f_delta_pairing(&p2, &hom(9), &q(1, 100), &c9).unwrap(), Ordering::Greater);

        // through ten points it is negative exactly for delta < 10/9
        let w = hom(10);
        let c = CandidateClass::new(&p2, 10, 3, 1, 0).unwrap();
        let mut was_nonnegative = false;
        for i in 1..=80 {
            let d = q(i, 40);
            let neg = f_delta_pairing(&p2, &w, &d, &c).unwrap() == Ordering::Less;
            assert!(!was_nonnegative || !neg);
            assert_eq!(neg, d < q(10, 9));
            was_nonnegative |= !neg;
        }
        assert!(was_nonnegative);
    }
}
