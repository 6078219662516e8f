//! Arbitrary-precision rational numbers with the exact helpers the rest of
//! the crate relies on: prime factorization of positive rationals and
//! continued-fraction recovery of rationals from floats.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Exact rational number. Always stored reduced with a positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ArithError {
    #[error("value is not positive")]
    NonPositive,
    #[error("prime factor of {0} exceeds the configured bound {1}")]
    FactorTooLarge(String, u64),
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
    #[error("division by zero")]
    DivisionByZero,
}

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_bigint(num: BigInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Rational(BigRational::new(num, den))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn from_integer(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
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

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.denom().is_one()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }

    pub fn pow(&self, exp: i32) -> Self {
        if exp == 0 {
            return Rational::one();
        }
        let mut base = if exp > 0 {
            self.clone()
        } else {
            self.recip().expect("zero base with negative exponent")
        };
        let mut result = Rational::one();
        let mut e = exp.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        result
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn cmp_value(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Rational {
    type Err = ArithError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let parse_int = |t: &str| BigInt::from_str(t.trim()).map_err(|_| ArithError::Parse(s.to_string()));
        match s.split_once('/') {
            Some((num, den)) => {
                let den = parse_int(den)?;
                if den.is_zero() {
                    return Err(ArithError::Parse(s.to_string()));
                }
                Ok(Rational::from_bigint(parse_int(num)?, den))
            }
            None => Ok(Rational::from_bigint(parse_int(s)?, BigInt::one())),
        }
    }
}

// Canonical wire form is always "p/q", including integers ("3/1").
impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&format!("{}/{}", self.0.numer(), self.0.denom()))
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Rational::from_str(&s).map_err(|e| D::Error::custom(e.to_string()))
    }
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
    };
}

impl_binop!(Add, add);
impl_binop!(Sub, sub);
impl_binop!(Mul, mul);

impl Div for &Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        Rational(&self.0 / &rhs.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

/// Default bound on prime factors accepted by [`prime_factor_rational`].
pub const DEFAULT_FACTOR_BOUND: u64 = 1 << 31;

/// Factor a positive rational exactly into prime powers, `a = prod p^(e_p)`.
/// Denominator primes contribute negative exponents.
pub fn prime_factor_rational(a: &Rational, bound: u64) -> Result<BTreeMap<u64, i64>, ArithError> {
    if !a.is_positive() {
        return Err(ArithError::NonPositive);
    }
    let mut factors: BTreeMap<u64, i64> = BTreeMap::new();
    factor_into(a.numer().magnitude(), 1, bound, &mut factors)?;
    factor_into(a.denom().magnitude(), -1, bound, &mut factors)?;
    factors.retain(|_, e| *e != 0);
    Ok(factors)
}

fn factor_into(
    n: &BigUint,
    sign: i64,
    bound: u64,
    out: &mut BTreeMap<u64, i64>,
) -> Result<(), ArithError> {
    let mut n = n.clone();
    if n.is_zero() {
        return Err(ArithError::NonPositive);
    }
    let mut p: u64 = 2;
    while n > BigUint::one() {
        if p > bound || (p > 2 && p.saturating_mul(p) > bound.saturating_mul(bound)) {
            return Err(ArithError::FactorTooLarge(n.to_string(), bound));
        }
        let bp = BigUint::from(p);
        if &bp * &bp > n {
            // remaining cofactor is prime
            let q = n
                .to_u64()
                .filter(|q| *q <= bound)
                .ok_or_else(|| ArithError::FactorTooLarge(n.to_string(), bound))?;
            *out.entry(q).or_insert(0) += sign;
            return Ok(());
        }
        while (&n % &bp).is_zero() {
            n /= &bp;
            *out.entry(p).or_insert(0) += sign;
        }
        p = if p == 2 { 3 } else { p + 2 };
    }
    Ok(())
}

/// Outcome of [`rationalize_float`].
#[derive(Debug, Clone, PartialEq)]
pub enum Rationalized {
    Rational(Rational),
    NotRational,
}

/// Recover `x` as `p/q` with `q <= max_denominator` and `|x - p/q| <= eps`,
/// walking the continued-fraction convergents (and the final semiconvergent).
pub fn rationalize_float(x: f64, max_denominator: u64, eps: f64) -> Rationalized {
    if !x.is_finite() || max_denominator == 0 {
        return Rationalized::NotRational;
    }
    let close = |r: &Rational| (x - r.to_f64()).abs() <= eps;

    // Convergents p_k/q_k of the continued fraction of x.
    let (mut p_prev, mut q_prev) = (BigInt::one(), BigInt::zero());
    let (mut p_cur, mut q_cur) = (BigInt::from(x.floor() as i64), BigInt::one());
    let mut rem = x - x.floor();
    let max_q = BigInt::from(max_denominator);

    for _ in 0..64 {
        let conv = Rational::from_bigint(p_cur.clone(), q_cur.clone());
        if close(&conv) {
            return Rationalized::Rational(conv);
        }
        if rem.abs() < 1e-18 {
            break;
        }
        let inv = 1.0 / rem;
        if !inv.is_finite() || inv >= 9.0e15 {
            break;
        }
        let a = BigInt::from(inv.floor() as i64);
        rem = inv - inv.floor();
        let p_next = &a * &p_cur + &p_prev;
        let q_next = &a * &q_cur + &q_prev;
        if q_next > max_q {
            // Largest semiconvergent still within the denominator bound.
            let k = (&max_q - &q_prev) / &q_cur;
            if k.is_positive() {
                let p_semi = &k * &p_cur + &p_prev;
                let q_semi = &k * &q_cur + &q_prev;
                let semi = Rational::from_bigint(p_semi, q_semi);
                if close(&semi) {
                    return Rationalized::Rational(semi);
                }
            }
            return Rationalized::NotRational;
        }
        p_prev = std::mem::replace(&mut p_cur, p_next);
        q_prev = std::mem::replace(&mut q_cur, q_next);
    }
    Rationalized::NotRational
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn factor_simple() {
        let f = prime_factor_rational(&r(12, 1), DEFAULT_FACTOR_BOUND).unwrap();
        assert_eq!(f, BTreeMap::from([(2, 2), (3, 1)]));
    }

    #[test]
    fn factor_one_is_empty() {
        let f = prime_factor_rational(&r(1, 1), DEFAULT_FACTOR_BOUND).unwrap();
        assert!(f.is_empty());
    }

    #[test]
    fn factor_nine_eighths() {
        let f = prime_factor_rational(&r(9, 8), DEFAULT_FACTOR_BOUND).unwrap();
        assert_eq!(f, BTreeMap::from([(2, -3), (3, 2)]));
    }

    #[test]
    fn factor_rejects_nonpositive() {
        assert_eq!(
            prime_factor_rational(&r(-3, 1), DEFAULT_FACTOR_BOUND),
            Err(ArithError::NonPositive)
        );
        assert_eq!(
            prime_factor_rational(&Rational::zero(), DEFAULT_FACTOR_BOUND),
            Err(ArithError::NonPositive)
        );
    }

    #[test]
    fn factor_too_large() {
        let big = Rational::from_integer((1i64 << 33) + 9); // prime-ish cofactor beyond a tiny bound
        assert!(matches!(
            prime_factor_rational(&big, 100),
            Err(ArithError::FactorTooLarge(_, 100))
        ));
    }

    #[test]
    fn rationalize_half() {
        assert_eq!(
            rationalize_float(0.5, 1_000_000, 1e-9),
            Rationalized::Rational(r(1, 2))
        );
    }

    #[test]
    fn rationalize_third() {
        assert_eq!(
            rationalize_float(0.3333333333333333, 1_000_000, 1e-9),
            Rationalized::Rational(r(1, 3))
        );
    }

    // Oracle: scan all denominators q <= bound and take the best |x - p/q|.
    fn best_by_enumeration(x: f64, max_q: u64) -> f64 {
        let mut best = f64::INFINITY;
        for q in 1..=max_q {
            let p = (x * q as f64).round();
            let err = (x - p / q as f64).abs();
            if err < best {
                best = err;
            }
        }
        best
    }

    #[test]
    fn pi_is_not_rational_at_1e12() {
        let x = 3.14159265358979_f64;
        // independent oracle: no q <= 10^4 approximates within 1e-12
        assert!(best_by_enumeration(x, 10_000) > 1e-12);
        assert_eq!(rationalize_float(x, 10_000, 1e-12), Rationalized::NotRational);
    }

    #[test]
    fn sqrt2_within_default_eps_is_found() {
        // quadratic irrationals admit q<=1e6 approximations within 1e-9;
        // the heuristic accepts them, which is why float verdicts stay flagged
        match rationalize_float(std::f64::consts::SQRT_2, 1_000_000, 1e-9) {
            Rationalized::Rational(r) => {
                assert!((r.to_f64() - std::f64::consts::SQRT_2).abs() <= 1e-9)
            }
            Rationalized::NotRational => panic!("expected a q<=1e6 approximation"),
        }
    }

    #[test]
    fn sqrt2_rejected_at_1e12() {
        assert_eq!(
            rationalize_float(std::f64::consts::SQRT_2, 1_000_000, 1e-12),
            Rationalized::NotRational
        );
    }

    #[test]
    fn parse_display_round_trip() {
        for s in ["3/2", "-7/3", "5", "0"] {
            let v: Rational = s.parse().unwrap();
            let again: Rational = v.to_string().parse().unwrap();
            assert_eq!(v, again);
        }
    }
}
