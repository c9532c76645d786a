mod common;

use std::cmp::Ordering;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use seshadri::bounds::{bound_thm_b, cor13_bound, hr_mu};
use seshadri::certificates::{builtin_ccmo, builtin_doublepoint, builtin_hr, CertificateStore};
use seshadri::enumerate::{enumerate_general, enumerate_homogeneous_with, EnumCap, EnumOptions};
use seshadri::{cmp_sq, enumerate_homogeneous, CandidateSet, EnumParams, Rational, SurfaceData, WeightVector};

use common::{brute_force, Mu};

fn q(p: i64, d: i64) -> Rational {
    Rational::frac(p, d)
}

fn hom(n: u64, mu: Rational) -> CandidateSet {
    enumerate_homogeneous(&SurfaceData::p2(), n, &EnumParams::from_mu(n, mu).unwrap()).unwrap()
}

fn triples(cs: &CandidateSet) -> Vec<(u64, u64, i64)> {
    let mut v: Vec<_> = cs.candidates.iter().map(|c| (c.degree, c.m, c.k)).collect();
    v.sort();
    v
}

#[test]
fn matches_brute_force_on_integer_mu() {
    for n in 2..=30u64 {
        for mu in [1, 2, 3, 4, 5, 8, 13, 21, 25] {
            let cs = hom(n, Rational::integer(mu));
            let oracle = brute_force(n as i128, Mu { p: mu as i128, q: 1 });
            assert_eq!(triples(&cs), oracle, "n={n} mu={mu}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn matches_brute_force_on_fractional_mu(n in 2u64..=30, p in 1i64..=200, d in 1i64..=9) {
        prop_assume!(p >= d);
        let cs = hom(n, q(p, d));
        let oracle = brute_force(n as i128, Mu { p: p as i128, q: d as i128 });
        prop_assert_eq!(triples(&cs), oracle);
    }

    #[test]
    fn ratios_lie_below_the_threshold(n in 2u64..=40, p in 1i64..=120, d in 1i64..=5) {
        prop_assume!(p >= d);
        let params = EnumParams::from_mu(n, q(p, d)).unwrap();
        let cs = enumerate_homogeneous(&SurfaceData::p2(), n, &params).unwrap();
        let lim = Rational::one() / (Rational::integer(n) + params.delta());
        for r in &cs.ratios {
            prop_assert_eq!(cmp_sq(r, &lim).unwrap(), Ordering::Less);
        }
        prop_assert!(cs.ratios.windows(2).all(|w| w[0] < w[1]));
    }
}

#[test]
fn nesting_along_random_delta_chains() {
    let s = SurfaceData::p2();
    let mut rng = StdRng::seed_from_u64(7);
    for n in [5u64, 10, 12, 17] {
        let max = n as i64 * 1000 / (n as i64 - 1);
        let mut ds: Vec<i64> = (0..20).map(|_| rng.gen_range(20..=max)).collect();
        ds.sort_unstable_by(|a, b| b.cmp(a));
        ds.dedup();
        let sets: Vec<CandidateSet> = ds
            .iter()
            .map(|&d| enumerate_homogeneous(&s, n, &EnumParams::from_delta(n, q(d, 1000)).unwrap()).unwrap())
            .collect();
        for pair in sets.windows(2) {
            let (big, small) = (&pair[0], &pair[1]);
            assert!(big.candidates.iter().all(|c| small.candidates.contains(c)));
            if let Some(top) = big.ratios.last() {
                for r in small.ratios.iter().filter(|r| !big.ratios.contains(r)) {
                    assert!(r > top, "n={n}: new ratio {r} not above {top}");
                }
            }
        }
    }
}

#[test]
fn parity_shortcut_changes_nothing() {
    let s = SurfaceData::p2();
    for n in 2..=50u64 {
        let big = ((n - 1) * (n - 1) + 1) as i64;
        for mu in [q(2, 1), q(3, 1), q(5, 1), q(21, 1), q(big, 1)] {
            let p = EnumParams::from_mu(n, mu).unwrap();
            let fast = enumerate_homogeneous_with(&s, n, &p, EnumOptions { parity_fast_path: true }).unwrap();
            let slow = enumerate_homogeneous_with(&s, n, &p, EnumOptions { parity_fast_path: false }).unwrap();
            assert_eq!(fast.candidates, slow.candidates, "n={n}");
            assert_eq!(fast.ratios, slow.ratios);
        }
    }
}

#[test]
fn small_m_almost_uniform_classes_have_minus_k_squared_self_intersection() {
    // for 0 < m < n and k != 0: k^2 <= m and t^2 = 2mk + m^2 n
    for n in 2..=30u64 {
        for mu in [2, 5, 21, 60] {
            for c in hom(n, Rational::integer(mu)).candidates {
                if c.k == 0 || c.m >= n {
                    continue;
                }
                let (m, k, t) = (c.m as i64, c.k, c.degree as i64);
                assert!(k * k <= m, "n={n} {c:?}");
                assert_eq!(t * t, 2 * m * k + m * m * n as i64, "n={n} {c:?}");
            }
        }
    }
}

#[test]
fn general_enumeration_covers_homogeneous() {
    let s = SurfaceData::p2();
    for n in 2..=6usize {
        for mu in [q(2, 1), q(3, 1), q(5, 2)] {
            let p = EnumParams::from_mu(n as u64, mu).unwrap();
            let homog = enumerate_homogeneous(&s, n as u64, &p).unwrap();
            let w = WeightVector::homogeneous(n).unwrap();
            let gen = enumerate_general(&s, &w, p.delta(), EnumCap::default()).unwrap();
            assert!(!gen.truncated);
            for c in &homog.candidates {
                let mut h = c.multiplicities();
                h.sort_unstable_by(|a, b| b.cmp(a));
                assert!(
                    gen.candidates.iter().any(|g| g.degree == c.degree && g.h == h && g.ratio == c.ratio),
                    "n={n}: {c:?} missing from general enumeration"
                );
            }
            for r in &homog.ratios {
                assert!(gen.ratios.contains(r));
            }
        }
    }
}

fn hr_store(n: u64) -> CertificateStore {
    let mut st = CertificateStore::new();
    st.extend_alphas(builtin_hr(n));
    st
}

fn ccmo_store(n: u64) -> CertificateStore {
    let mut st = CertificateStore::new();
    st.extend_alphas(builtin_ccmo(n));
    st.extend_alphas(builtin_doublepoint(n));
    st
}

#[test]
fn explicit_bound_is_the_theorem_instantiated() {
    let s = SurfaceData::p2();
    for n in (16..=1000u64).step_by(3).chain([16, 17, 100, 1000]) {
        let hr = bound_thm_b(&s, n, &hr_mu(n), &hr_store(n)).unwrap();
        let cc = bound_thm_b(&s, n, &q(21, 1), &ccmo_store(n)).unwrap();
        let best = hr.epsilon_lower_sq.clone().max(cc.epsilon_lower_sq.clone());
        assert_eq!(cor13_bound(n).unwrap().epsilon_lower_sq, best, "n={n}");
    }
}

#[test]
fn theorem_b_is_sound_and_increasing_in_mu() {
    let s = SurfaceData::p2();
    for n in [16u64, 20, 30, 50] {
        let mut st = ccmo_store(n);
        st.extend_alphas(builtin_hr(n));
        let mut last: Option<Rational> = None;
        let mut proved = 0;
        for mu in 1..=21 {
            let Ok(r) = bound_thm_b(&s, n, &Rational::integer(mu), &st) else {
                last = None;
                continue;
            };
            proved += 1;
            assert!(r.epsilon_lower_sq < q(1, n as i64));
            if let Some(prev) = &last {
                assert!(r.epsilon_lower_sq > *prev);
            }
            last = Some(r.epsilon_lower_sq);
        }
        assert!(proved >= 2, "n={n}: only {proved} values of mu certified");
    }
}

#[test]
fn adding_certificates_never_breaks_a_bound() {
    let s = SurfaceData::p2();
    let n = 20;
    let base = ccmo_store(n);
    let before = bound_thm_b(&s, n, &q(21, 1), &base).unwrap();
    let mut more = base.clone();
    more.extend_alphas(builtin_hr(n));
    let after = bound_thm_b(&s, n, &q(21, 1), &more).unwrap();
    assert_eq!(before.epsilon_lower_sq, after.epsilon_lower_sq);
}
