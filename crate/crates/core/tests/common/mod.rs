//! Independent reference implementations used by the integration tests.
//!
//! Everything here is plain `i128` arithmetic over the projective plane
//! (`L^2 = 1`, `L.K = -3`), written without the library's pruning so the
//! two can be compared.

#![allow(dead_code)]

/// `mu = p / q`.
#[derive(Debug, Clone, Copy)]
pub struct Mu {
    pub p: i128,
    pub q: i128,
}

/// Smallest `x >= 0` with `x^2 * den >= num`.
fn ceil_sqrt_frac(num: i128, den: i128) -> i128 {
    let mut x = ((num as f64 / den as f64).sqrt() as i128 - 2).max(0);
    while x * x * den < num {
        x += 1;
    }
    x
}

/// Brute-force obstruction set `(t, m, k)` for `P^2`, `n >= 2` points at
/// `delta = (mu - 1/n)^-1`.
///
/// Loops over `1 <= m <= ceil(mu)`, `|k| <= ceil(sqrt(2 mu)) + 1`,
/// `1 <= t <= ceil(mu sqrt n) + 2` and checks every raw inequality: the
/// multiplicity conditions, the degree windows, genus, the caps on `m`, and
/// the sign of the pairing with `F(delta)`.
///
/// `(m, k) = (1, -1)` uses the window `n - 2 <= t^2` (one point dropped) and
/// is exempt from the caps on `m`, which are only derived for `m + k > 0`.
pub fn brute_force(n: i128, mu: Mu) -> Vec<(u64, u64, i64)> {
    assert!(n >= 2);
    let Mu { p, q } = mu;
    let m_hi = (p + q - 1) / q;
    let k_hi = ceil_sqrt_frac(2 * p, q) + 1;
    let t_hi = ceil_sqrt_frac(p * p * n, q * q) + 2;
    let mut out = Vec::new();
    for m in 1..=m_hi {
        for k in -k_hi..=k_hi {
            for t in 1..=t_hi {
                if admissible(n, p, q, t, m, k) {
                    out.push((t as u64, m as u64, k as i64));
                }
            }
        }
    }
    out.sort();
    out
}

fn admissible(n: i128, p: i128, q: i128, t: i128, m: i128, k: i128) -> bool {
    let special = m == 1 && k == -1;
    // multiplicity conditions
    let mult_ok = special || (k > -m && k * k * (n - 1) < n * m.min(m + k));
    if !mult_ok {
        return false;
    }
    // caps: m < mu, and m (n - 1) < mu unless k = 0
    if !special {
        if m * q >= p {
            return false;
        }
        if k != 0 && m * (n - 1) * q >= p {
            return false;
        }
    }
    let t2 = t * t;
    // degree windows
    if special {
        if t2 < n - 2 {
            return false;
        }
    } else if k == 0 {
        if !(m * m * n - m <= t2 && t2 < m * m * n) {
            return false;
        }
    } else {
        let extra = (k * k - m).max(k * k - m - k).max(0);
        // t^2 < m^2 n + 2mk + k^2/n
        if !(m * m * n + 2 * m * k + extra <= t2 && t2 * n < (m * n + k) * (m * n + k)) {
            return false;
        }
    }
    // genus
    if t2 - 3 * t - (m + k) * (m + k) - (n - 1) * m * m + m * n + k < -2 {
        return false;
    }
    // t^2 (n + delta) < (mn + k)^2 with n + delta = n^2 p / (np - q)
    t2 * n * n * p < (m * n + k) * (m * n + k) * (n * p - q)
}

/// `floor(sqrt(x))` by bisection.
pub fn isqrt(x: u64) -> u64 {
    let (mut lo, mut hi) = (0u64, 1u64 << 32);
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if mid.checked_mul(mid).is_some_and(|v| v <= x) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Reduced fraction.
pub fn reduce(num: i128, den: i128) -> (i128, i128) {
    fn gcd(a: i128, b: i128) -> i128 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a % b)
        }
    }
    let g = gcd(num, den);
    (num / g, den / g)
}

/// The explicit `P^2` bound on `epsilon(n)^2` for `n >= 16`, as a reduced
/// fraction: the larger of `(1/n)(1 - 1/(n f))` for `f = 1 + s(s-3)/2` and
/// `f = 21`, where `s = floor(sqrt n)`.
pub fn explicit_p2_bound(n: u64) -> (i128, i128) {
    let s = isqrt(n) as i128;
    let n = n as i128;
    let term = |f: i128| reduce(n * f - 1, n * n * f);
    let a = term(1 + s * (s - 3) / 2);
    let b = term(21);
    if a.0 * b.1 >= b.0 * a.1 {
        a
    } else {
        b
    }
}
