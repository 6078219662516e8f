//! Generic complex scalars over a real field. `Complex<Rational>` is the
//! Gaussian rational field; `Complex<SymReal>` extends it with a formal
//! transcendental; `Complex<RealFloat>` is the float backend.

use std::fmt;
use std::str::FromStr;

use crate::scalar::field::{ComplexField, Field, RealField, RealFloat};
use crate::scalar::rational::{ArithError, Rational};
use crate::scalar::symbolic::SymReal;

#[derive(Clone, PartialEq, Debug)]
pub struct Complex<F> {
    pub re: F,
    pub im: F,
}

/// Exact complex entries of the Gaussian rational field.
pub type GaussianRational = Complex<Rational>;
/// Exact complex entries allowing one formal transcendental.
pub type SymComplex = Complex<SymReal>;
/// Floating complex entries with tolerance.
pub type ComplexFloat = Complex<RealFloat>;

impl<F: RealField> Complex<F> {
    pub fn new(re: F, im: F) -> Self {
        Complex { re, im }
    }

    pub fn real(re: F) -> Self {
        Complex {
            re,
            im: F::zero(),
        }
    }
}

impl<F: RealField> fmt::Display for Complex<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let re_zero = Field::is_zero(&self.re);
        let im_zero = Field::is_zero(&self.im);
        if im_zero {
            return write!(f, "{}", self.re);
        }
        let im_one = self.im == F::one();
        let im_neg_one = self.im == F::one().neg();
        let im_part = if im_one {
            "i".to_string()
        } else if im_neg_one {
            "-i".to_string()
        } else {
            format!("{}*i", self.im)
        };
        if re_zero {
            write!(f, "{im_part}")
        } else if im_part.starts_with('-') {
            write!(f, "{}{}", self.re, im_part)
        } else {
            write!(f, "{}+{}", self.re, im_part)
        }
    }
}

impl<F: RealField> Field for Complex<F> {
    fn zero() -> Self {
        Complex {
            re: F::zero(),
            im: F::zero(),
        }
    }
    fn one() -> Self {
        Complex {
            re: F::one(),
            im: F::zero(),
        }
    }
    fn add(&self, rhs: &Self) -> Self {
        Complex {
            re: self.re.add(&rhs.re),
            im: self.im.add(&rhs.im),
        }
    }
    fn sub(&self, rhs: &Self) -> Self {
        Complex {
            re: self.re.sub(&rhs.re),
            im: self.im.sub(&rhs.im),
        }
    }
    fn mul(&self, rhs: &Self) -> Self {
        Complex {
            re: self.re.mul(&rhs.re).sub(&self.im.mul(&rhs.im)),
            im: self.re.mul(&rhs.im).add(&self.im.mul(&rhs.re)),
        }
    }
    fn neg(&self) -> Self {
        Complex {
            re: self.re.neg(),
            im: self.im.neg(),
        }
    }
    fn inv(&self) -> Option<Self> {
        let norm = self.re.mul(&self.re).add(&self.im.mul(&self.im));
        let ninv = norm.inv()?;
        Some(Complex {
            re: self.re.mul(&ninv),
            im: self.im.neg().mul(&ninv),
        })
    }
    fn is_zero(&self) -> bool {
        Field::is_zero(&self.re) && Field::is_zero(&self.im)
    }
    fn from_rational(r: &Rational) -> Self {
        Complex {
            re: F::from_rational(r),
            im: F::zero(),
        }
    }
    fn pivot_weight(&self) -> Option<f64> {
        match (self.re.pivot_weight(), self.im.pivot_weight()) {
            (Some(a), Some(b)) => Some(a.hypot(b)),
            _ => None,
        }
    }
    fn is_negligible(&self, scale: f64) -> bool {
        self.re.is_negligible(scale) && self.im.is_negligible(scale)
    }
    fn approx_abs(&self) -> f64 {
        self.re.approx_abs().hypot(self.im.approx_abs())
    }
}

impl<F: RealField> ComplexField for Complex<F> {
    type Real = F;

    fn from_parts(re: F, im: F) -> Self {
        Complex { re, im }
    }
    fn re(&self) -> F {
        self.re.clone()
    }
    fn im(&self) -> F {
        self.im.clone()
    }
    fn conj(&self) -> Self {
        Complex {
            re: self.re.clone(),
            im: self.im.neg(),
        }
    }
}

/// Parse a complex eigenvalue such as `"2"`, `"i"`, `"-i"`, `"1+2i"`,
/// `"3/2-i"`, or `"pi*i"`. The trailing `i` marks the imaginary term.
impl FromStr for SymComplex {
    type Err = ArithError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || ArithError::Parse(s.to_string());
        if compact.is_empty() {
            return Err(bad());
        }
        // split at top-level +/- into terms; classify by trailing 'i'
        let mut terms: Vec<String> = Vec::new();
        let mut cur = String::new();
        let mut depth = 0usize;
        for (i, c) in compact.chars().enumerate() {
            match c {
                '(' => depth += 1,
                ')' => depth = depth.saturating_sub(1),
                '+' | '-' if i > 0 && depth == 0 => {
                    let prev = compact.as_bytes()[i - 1] as char;
                    if prev != '/' && prev != '*' && prev != '+' && prev != '-' {
                        terms.push(std::mem::take(&mut cur));
                    }
                }
                _ => {}
            }
            cur.push(c);
        }
        terms.push(cur);

        let mut re = SymReal::zero();
        let mut im = SymReal::zero();
        for t in terms {
            if let Some(body) = t.strip_suffix('i') {
                let body = body.strip_suffix('*').unwrap_or(body);
                let coeff: SymReal = match body {
                    "" | "+" => SymReal::one(),
                    "-" => SymReal::one().neg(),
                    other => other.parse().map_err(|_| bad())?,
                };
                im = im.add(&coeff);
            } else {
                let v: SymReal = t.parse().map_err(|_| bad())?;
                re = re.add(&v);
            }
        }
        Ok(Complex { re, im })
    }
}

impl ComplexFloat {
    pub fn from_f64(re: f64, im: f64, eps: f64) -> Self {
        Complex {
            re: RealFloat::new(re, eps),
            im: RealFloat::new(im, eps),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::symbolic::Symbol;

    #[test]
    fn parse_eigenvalues() {
        let i: SymComplex = "i".parse().unwrap();
        assert_eq!(i, SymComplex::i());
        let v: SymComplex = "1+2i".parse().unwrap();
        assert_eq!(v.re.rational_value(), Some(Rational::new(1, 1)));
        assert_eq!(v.im.rational_value(), Some(Rational::new(2, 1)));
        let w: SymComplex = "-i".parse().unwrap();
        assert_eq!(w, SymComplex::i().neg());
        let p: SymComplex = "pi*i".parse().unwrap();
        assert_eq!(p.im, SymReal::symbol(Symbol::Pi));
        assert!(Field::is_zero(&p.re));
        let m: SymComplex = "3/2-i".parse().unwrap();
        assert_eq!(m.re.rational_value(), Some(Rational::new(3, 2)));
        assert_eq!(m.im.rational_value(), Some(Rational::new(-1, 1)));
    }

    #[test]
    fn display_round_trip() {
        for s in ["2", "i", "-i", "1+2*i", "pi*i", "3/2-i"] {
            let v: SymComplex = s.parse().unwrap();
            let again: SymComplex = v.to_string().parse().unwrap();
            assert_eq!(v, again, "round trip {s}");
        }
    }

    #[test]
    fn gaussian_field_ops() {
        let a = GaussianRational::new(Rational::new(1, 2), Rational::new(3, 1));
        let inv = a.inv().unwrap();
        assert_eq!(a.mul(&inv), GaussianRational::one());
        assert_eq!(a.conj().conj(), a);
    }
}
