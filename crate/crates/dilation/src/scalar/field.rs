//! Field abstractions shared by the exact and floating-point backends.
//!
//! All linear algebra in this crate is generic over [`Field`]. The exact
//! backend certifies its verdicts; the float backend flags everything it
//! reports as numerically indicated.

use std::fmt;

use crate::scalar::rational::{rationalize_float, Rational, Rationalized};

/// Configuration for heuristic rationality detection on the float backend.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RationalityCfg {
    pub eps: f64,
    pub max_denominator: u64,
}

impl Default for RationalityCfg {
    fn default() -> Self {
        RationalityCfg {
            eps: 1e-9,
            max_denominator: 1_000_000,
        }
    }
}

/// Scalar type usable as matrix entries in Gauss elimination.
pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;
    fn is_zero(&self) -> bool;
    fn from_rational(r: &Rational) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(n))
    }

    /// `Some(magnitude)` enables partial pivoting; `None` selects the first
    /// nonzero entry (deterministic exact mode).
    fn pivot_weight(&self) -> Option<f64> {
        None
    }

    /// Whether elimination should treat this entry as zero at the given row
    /// scale. Exact fields use exact zero; floats use `eps * max(1, scale)`.
    fn is_negligible(&self, _scale: f64) -> bool {
        self.is_zero()
    }

    /// Crude magnitude for row scaling and diagnostics.
    fn approx_abs(&self) -> f64;
}

/// Real scalars: the entries of input matrices and torus coordinates.
pub trait RealField: Field {
    /// Exact rational identification. `None` if symbolic or floating.
    fn as_rational(&self) -> Option<Rational>;

    /// Rationality test honoring the backend: exact identification for the
    /// exact backend, bounded continued fractions for floats.
    fn detect_rational(&self, cfg: &RationalityCfg) -> Option<Rational>;

    fn to_f64(&self) -> f64;

    /// True when arithmetic in this field is exact (verdicts certifiable).
    fn is_exact() -> bool;

    fn is_positive(&self) -> bool {
        self.to_f64() > 0.0
    }
}

/// Complex scalars with access to their real/imaginary parts.
pub trait ComplexField: Field {
    type Real: RealField;

    fn from_parts(re: Self::Real, im: Self::Real) -> Self;
    fn re(&self) -> Self::Real;
    fn im(&self) -> Self::Real;
    fn conj(&self) -> Self;

    fn from_real(re: Self::Real) -> Self {
        Self::from_parts(re, Self::Real::zero())
    }

    fn i() -> Self {
        Self::from_parts(Self::Real::zero(), Self::Real::one())
    }

    fn is_real(&self) -> bool {
        self.im().is_negligible(self.approx_abs().max(1.0))
    }

    /// Deterministic total order key for reproducible block ordering.
    fn sort_key(&self) -> (f64, f64, String) {
        (self.re().to_f64(), self.im().to_f64(), format!("{self}"))
    }
}

impl Field for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        self.recip()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn approx_abs(&self) -> f64 {
        self.to_f64().abs()
    }
}

impl RealField for Rational {
    fn as_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
    fn detect_rational(&self, _cfg: &RationalityCfg) -> Option<Rational> {
        Some(self.clone())
    }
    fn to_f64(&self) -> f64 {
        Rational::to_f64(self)
    }
    fn is_exact() -> bool {
        true
    }
    fn is_positive(&self) -> bool {
        Rational::is_positive(self)
    }
}

/// 64-bit real with a tolerance; comparisons use `|a-b| <= eps*max(1,|a|,|b|)`.
#[derive(Clone, Copy, Debug)]
pub struct RealFloat {
    pub value: f64,
    pub eps: f64,
}

pub const DEFAULT_F64_EPS: f64 = 1e-9;

impl RealFloat {
    pub fn new(value: f64, eps: f64) -> Self {
        RealFloat { value, eps }
    }

    pub fn with_default_eps(value: f64) -> Self {
        RealFloat {
            value,
            eps: DEFAULT_F64_EPS,
        }
    }

    fn merged_eps(&self, rhs: &Self) -> f64 {
        self.eps.max(rhs.eps)
    }
}

impl PartialEq for RealFloat {
    fn eq(&self, other: &Self) -> bool {
        let tol = self.merged_eps(other) * 1.0_f64.max(self.value.abs()).max(other.value.abs());
        (self.value - other.value).abs() <= tol
    }
}

impl fmt::Display for RealFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Field for RealFloat {
    fn zero() -> Self {
        RealFloat::with_default_eps(0.0)
    }
    fn one() -> Self {
        RealFloat::with_default_eps(1.0)
    }
    fn add(&self, rhs: &Self) -> Self {
        RealFloat::new(self.value + rhs.value, self.merged_eps(rhs))
    }
    fn sub(&self, rhs: &Self) -> Self {
        RealFloat::new(self.value - rhs.value, self.merged_eps(rhs))
    }
    fn mul(&self, rhs: &Self) -> Self {
        RealFloat::new(self.value * rhs.value, self.merged_eps(rhs))
    }
    fn neg(&self) -> Self {
        RealFloat::new(-self.value, self.eps)
    }
    fn inv(&self) -> Option<Self> {
        if Field::is_zero(self) {
            None
        } else {
            Some(RealFloat::new(1.0 / self.value, self.eps))
        }
    }
    fn is_zero(&self) -> bool {
        self.value.abs() <= self.eps
    }
    fn from_rational(r: &Rational) -> Self {
        RealFloat::with_default_eps(r.to_f64())
    }
    fn pivot_weight(&self) -> Option<f64> {
        Some(self.value.abs())
    }
    fn is_negligible(&self, scale: f64) -> bool {
        self.value.abs() <= self.eps * 1.0_f64.max(scale)
    }
    fn approx_abs(&self) -> f64 {
        self.value.abs()
    }
}

impl RealField for RealFloat {
    fn as_rational(&self) -> Option<Rational> {
        None
    }
    fn detect_rational(&self, cfg: &RationalityCfg) -> Option<Rational> {
        match rationalize_float(self.value, cfg.max_denominator, cfg.eps) {
            Rationalized::Rational(r) => Some(r),
            Rationalized::NotRational => None,
        }
    }
    fn to_f64(&self) -> f64 {
        self.value
    }
    fn is_exact() -> bool {
        false
    }
}
