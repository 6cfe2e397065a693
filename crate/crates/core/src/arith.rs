//! Exact integer and rational arithmetic.
//!
//! Everything above this layer works on unbounded integers and reduced
//! fractions. Nothing here touches floating point.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Signed integer of unbounded magnitude.
pub type Integer = BigInt;
/// Nonnegative integer of unbounded magnitude.
pub type Natural = BigUint;

/// Greatest common divisor, with `gcd(0, 0) = 0`.
pub fn gcd(a: &Natural, b: &Natural) -> Natural {
    a.gcd(b)
}

pub fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `floor(sqrt(n))`.
pub fn isqrt(n: &Natural) -> Natural {
    n.sqrt()
}

pub fn isqrt_u64(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r.checked_mul(r).is_none_or(|sq| sq > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|sq| sq <= n) {
        r += 1;
    }
    r
}

/// Returns `a` when `n = a²` with `a` odd, and `None` for negatives,
/// non-squares and even squares.
pub fn as_odd_square_root(n: &Integer) -> Option<Natural> {
    let n = n.to_biguint()?;
    let root = isqrt(&n);
    if &root * &root == n && root.is_odd() {
        Some(root)
    } else {
        None
    }
}

/// Deterministic trial division up to `isqrt(n)`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let limit = isqrt_u64(n);
    (3..=limit).step_by(2).all(|d| n % d != 0)
}

/// Primes in `lo..=hi`, ascending.
pub fn primes_between(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|&n| is_prime(n)).collect()
}

/// Prime factorisation by trial division, ascending primes.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Exact fraction, always stored reduced with a positive denominator.
///
/// Equality is structural because of the canonical form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(num: impl Into<Integer>, den: impl Into<Integer>) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(num.into(), den)))
    }

    pub fn from_integer(n: impl Into<Integer>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &Integer {
        self.0.numer()
    }

    pub fn denom(&self) -> &Integer {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// Reciprocal; `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        (!self.is_zero()).then(|| Rational(self.0.recip()))
    }

    pub fn floor(&self) -> Integer {
        self.0.floor().to_integer()
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Truncated decimal rendering with exactly `digits` fractional digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        let scale = BigInt::from(10u32).pow(digits as u32);
        let scaled = (self.numer().abs() * &scale) / self.denom();
        render_scaled(self.is_negative(), &scaled.magnitude().clone(), digits)
    }
}

/// Renders `value / 10^digits` in fixed-point form.
pub(crate) fn render_scaled(negative: bool, scaled: &Natural, digits: usize) -> String {
    let mut s = scaled.to_str_radix(10);
    if s.len() <= digits {
        s = format!("{}{}", "0".repeat(digits + 1 - s.len()), s);
    }
    let (int, frac) = s.split_at(s.len() - digits);
    let sign = if negative && !scaled.is_zero() { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

/// `|a - b|`.
pub fn rat_sub_abs(a: &Rational, b: &Rational) -> Rational {
    (a - b).abs()
}

/// Shorthand for `Rational::new`.
pub fn rat_make(num: impl Into<Integer>, den: impl Into<Integer>) -> Result<Rational> {
    Rational::new(num, den)
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl<'a> $tr<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational($tr::$method(&self.0, &rhs.0))
            }
        }
        impl $tr for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($tr::$method(self.0, rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Rational {
    /// Exact division; `None` when `rhs` is zero.
    pub fn checked_div(&self, rhs: &Rational) -> Option<Rational> {
        (!rhs.is_zero()).then(|| Rational(&self.0 / &rhs.0))
    }

    pub fn cmp_abs(&self, other: &Rational) -> Ordering {
        self.0.abs().cmp(&other.0.abs())
    }

    pub fn sign(&self) -> Sign {
        self.numer().sign()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn n(v: u64) -> Natural {
        Natural::from(v)
    }

    fn r(a: i64, b: i64) -> Rational {
        Rational::new(a, b).unwrap()
    }

    #[test]
    fn gcd_cases() {
        assert_eq!(gcd(&n(0), &n(7)), n(7));
        assert_eq!(gcd(&n(4), &n(6)), n(2));
        assert_eq!(gcd(&n(2), &n(5)), n(1));
        assert_eq!(gcd(&n(0), &n(0)), n(0));
        assert_eq!(gcd_u64(0, 0), 0);
        assert_eq!(gcd_u64(12, 18), 6);
    }

    #[test]
    fn make_reduces() {
        assert_eq!(r(8, 16), r(1, 2));
        assert_eq!(r(8, 16).numer(), &BigInt::from(1));
        assert_eq!(r(4, 5).to_string(), "4/5");
        assert_eq!(r(-3, -6).to_string(), "1/2");
        assert_eq!(r(3, -6).to_string(), "-1/2");
        assert_eq!(r(0, -9).to_string(), "0/1");
        assert!(matches!(rat_make(7, 0), Err(Error::ZeroDenominator)));
    }

    #[test]
    fn sub_abs_cases() {
        assert_eq!(rat_sub_abs(&r(4, 7), &r(1, 2)), r(1, 14));
        assert_eq!(rat_sub_abs(&r(4, 5), &r(4, 5)), Rational::zero());
        assert_eq!(rat_sub_abs(&r(4, 13), &r(1, 3)), r(1, 39));
    }

    #[test]
    fn isqrt_cases() {
        assert_eq!(isqrt(&n(0)), n(0));
        assert_eq!(isqrt(&n(49)), n(7));
        assert_eq!(isqrt(&n(50)), n(7));
        assert_eq!(isqrt_u64(u64::MAX), 4294967295);
    }

    #[test]
    fn isqrt_exhaustive() {
        for v in 0..=1_000_000u64 {
            let s = isqrt_u64(v);
            assert!(s * s <= v && v < (s + 1) * (s + 1), "{v}");
        }
        for v in (0..=1_000_000u64).step_by(997) {
            assert_eq!(isqrt(&n(v)), n(isqrt_u64(v)));
        }
    }

    #[test]
    fn odd_square_cases() {
        assert_eq!(as_odd_square_root(&BigInt::from(9)), Some(n(3)));
        assert_eq!(as_odd_square_root(&BigInt::from(16)), None);
        assert_eq!(as_odd_square_root(&BigInt::from(-7)), None);
        assert_eq!(as_odd_square_root(&BigInt::from(0)), None);
    }

    #[test]
    fn odd_square_exhaustive() {
        let mut odd_squares = std::collections::HashSet::new();
        let mut a = 1u64;
        while a * a <= 100_000 {
            odd_squares.insert(a * a);
            a += 2;
        }
        for v in 0..=100_000u64 {
            let got = as_odd_square_root(&BigInt::from(v));
            match got {
                Some(root) => {
                    assert!(odd_squares.contains(&v));
                    assert_eq!(&root * &root, n(v));
                    assert!(root.is_odd());
                }
                None => assert!(!odd_squares.contains(&v), "{v}"),
            }
        }
    }

    #[test]
    fn primes_and_factors() {
        assert_eq!(primes_between(1, 30), vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(primes_between(1, 1000).len(), 168);
        assert!(!is_prime(0) && !is_prime(1) && !is_prime(91));
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factorize(1), vec![]);
        assert_eq!(factorize(9973), vec![(9973, 1)]);
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(r(6, 5).to_decimal(3), "1.200");
        assert_eq!(r(1, 3).to_decimal(5), "0.33333");
        assert_eq!(r(-1, 8).to_decimal(2), "-0.12");
        assert_eq!(r(7, 1).to_decimal(0), "7");
        assert_eq!(Rational::zero().to_decimal(2), "0.00");
    }

    proptest! {
        #[test]
        fn sub_abs_symmetric(a in -1000i64..1000, b in 1i64..1000, c in -1000i64..1000, d in 1i64..1000) {
            let x = r(a, b);
            let y = r(c, d);
            let ab = rat_sub_abs(&x, &y);
            prop_assert_eq!(&ab, &rat_sub_abs(&y, &x));
            prop_assert!(!ab.is_negative());
            prop_assert_eq!(ab.is_zero(), x == y);
        }

        #[test]
        fn always_reduced(a in -10_000i64..10_000, b in -10_000i64..10_000) {
            prop_assume!(b != 0);
            let x = r(a, b);
            prop_assert!(x.denom() > &BigInt::zero());
            prop_assert!(x.numer().gcd(x.denom()).is_one());
        }
    }
}
