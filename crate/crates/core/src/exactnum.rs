//! Exact arithmetic kernel.
//!
//! [`Rational`] is a reduced fraction of arbitrary-precision integers. Every
//! threshold in this crate has the shape `sqrt(A/B)` for rationals `A`, `B`,
//! so instead of evaluating square roots we compare squares with
//! [`cmp_sq`]. No floating point is used anywhere in this module.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact rational number, always stored in lowest terms with a positive
/// denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `numer/denom`, failing on a zero denominator.
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(Error::Domain("zero denominator".into()));
        }
        Ok(Rational(BigRational::new(numer.into(), denom)))
    }

    /// `p/q` for machine integers. Panics when `q == 0`.
    pub fn frac(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn square(&self) -> Self {
        Rational(&self.0 * &self.0)
    }

    /// Multiplicative inverse; zero has none.
    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Domain("reciprocal of zero".into()));
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn ceil(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// Largest integer `s` with `s^2 <= self`. Requires `self >= 0`.
    pub fn floor_sqrt(&self) -> Result<BigInt> {
        if self.is_negative() {
            return Err(Error::Domain(format!("square root of negative {self}")));
        }
        Ok(isqrt_floor(&self.floor()))
    }

    /// Smallest integer `s >= 0` with `s^2 >= self`. Negative inputs give 0.
    pub fn ceil_sqrt(&self) -> BigInt {
        if !self.is_positive() {
            return BigInt::zero();
        }
        let s = isqrt_floor(&self.floor());
        if Rational::integer(s.clone() * &s) >= *self {
            s
        } else {
            s + 1
        }
    }

    /// Decimal rendering of `sqrt(self)` with `sig` significant digits,
    /// rounded half-up from the exact value.
    pub fn sqrt_decimal(&self, sig: usize) -> Result<String> {
        if self.is_negative() {
            return Err(Error::Domain(format!("square root of negative {self}")));
        }
        let sig = sig.max(1);
        if self.is_zero() {
            return Ok(format_scaled(&BigInt::zero(), sig as i64 - 1, sig));
        }
        let ten = BigInt::from(10);
        let lo = Rational::integer(num_traits::pow(ten.clone(), 2 * (sig - 1)));
        let hi = Rational::integer(num_traits::pow(ten.clone(), 2 * sig));
        // exponent e with 10^(sig-1) <= sqrt(self) * 10^e < 10^sig
        let digits = |x: &BigInt| x.to_string().trim_start_matches('-').len() as i64;
        let mut e = (sig as i64 - 1) - (digits(self.numer()) - digits(self.denom())) / 2;
        let hundred = Rational::integer(100);
        let scaled = |e: i64| -> Rational {
            if e >= 0 {
                self * &Rational::integer(num_traits::pow(ten.clone(), 2 * e as usize))
            } else {
                self / &Rational::integer(num_traits::pow(ten.clone(), 2 * (-e) as usize))
            }
        };
        let mut x = scaled(e);
        while x < lo {
            e += 1;
            x = &x * &hundred;
        }
        while x >= hi {
            e -= 1;
            x = &x / &hundred;
        }
        let mut j = isqrt_floor(&x.floor());
        let half_up = Rational::integer(j.clone()) + Rational::frac(1, 2);
        if x >= half_up.square() {
            j += 1;
        }
        if j == num_traits::pow(ten.clone(), sig) {
            j = num_traits::pow(ten, sig - 1);
            e -= 1;
        }
        Ok(format_scaled(&j, e, sig))
    }
}

/// Renders `j * 10^(-e)` where `j` has `sig` digits.
fn format_scaled(j: &BigInt, e: i64, sig: usize) -> String {
    let mut digits = j.to_string();
    if digits.len() < sig {
        digits = format!("{}{}", "0".repeat(sig - digits.len()), digits);
    }
    if e <= 0 {
        return format!("{}{}", digits, "0".repeat((-e) as usize));
    }
    let e = e as usize;
    if e >= digits.len() {
        format!("0.{}{}", "0".repeat(e - digits.len()), digits)
    } else {
        let (int, frac) = digits.split_at(digits.len() - e);
        format!("{int}.{frac}")
    }
}

/// Largest `s` with `s^2 <= x`. Negative input is treated as 0.
pub fn isqrt_floor(x: &BigInt) -> BigInt {
    if x.is_positive() {
        x.sqrt()
    } else {
        BigInt::zero()
    }
}

/// `isqrt_floor` on machine integers.
pub fn isqrt_u64(x: u64) -> u64 {
    x.sqrt()
}

/// Whether `x` is a perfect square; returns its root if so.
pub fn exact_sqrt(x: &BigInt) -> Option<BigInt> {
    if x.is_negative() {
        return None;
    }
    let s = isqrt_floor(x);
    (&s * &s == *x).then_some(s)
}

/// Orders `a` against `sqrt(r)` without materializing the root.
///
/// Requires `r >= 0`. A negative `a` is below every root except when both
/// are zero.
pub fn cmp_sq(a: &Rational, r: &Rational) -> Result<Ordering> {
    if r.is_negative() {
        return Err(Error::Domain(format!("cmp_sq: radicand {r} is negative")));
    }
    if a.is_negative() {
        return Ok(Ordering::Less);
    }
    // a^2 vs r, i.e. an^2 * rd vs rn * ad^2
    let lhs = a.numer() * a.numer() * r.denom();
    let rhs = r.numer() * a.denom() * a.denom();
    Ok(lhs.cmp(&rhs))
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("invalid rational {s:?}; expected p or p/q"));
        match s.split_once('/') {
            Some((p, q)) => {
                let p: BigInt = p.trim().parse().map_err(|_| bad())?;
                let q: BigInt = q.trim().parse().map_err(|_| bad())?;
                Rational::new(p, q)
            }
            None => Ok(Rational::integer(s.parse::<BigInt>().map_err(|_| bad())?)),
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::integer(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::integer(n)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
// Division by zero panics, as for the underlying integer types.
forward_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

/// `true` when `x` is even.
pub(crate) fn is_even(x: &BigInt) -> bool {
    x.is_even()
}
