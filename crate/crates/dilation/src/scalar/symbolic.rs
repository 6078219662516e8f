//! Exact real scalars of the form p(t)/q(t), where t is a single formal
//! transcendental (pi or log of a prime) and p, q have rational coefficients.
//!
//! Zero testing reduces to polynomial identity, which is sound because each
//! supported symbol is transcendental over the rationals. Values that mix two
//! different symbols cannot be combined; the bundle loader rejects such
//! inputs up front.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::scalar::field::{Field, RationalityCfg, RealField};
use crate::scalar::poly::Poly;
use crate::scalar::rational::{ArithError, Rational};

/// A formal transcendental constant.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum Symbol {
    Pi,
    LogPrime(u64),
}

impl Symbol {
    pub fn name(&self) -> String {
        match self {
            Symbol::Pi => "pi".to_string(),
            Symbol::LogPrime(p) => format!("log({p})"),
        }
    }

    pub fn value(&self) -> f64 {
        match self {
            Symbol::Pi => std::f64::consts::PI,
            Symbol::LogPrime(p) => (*p as f64).ln(),
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// Exact real scalar: rational function in at most one [`Symbol`].
///
/// Canonical form: gcd(num, den) = 1, den monic and nonzero, and
/// `sym = None` exactly when the value is rational.
#[derive(Clone, PartialEq, Debug)]
pub struct SymReal {
    sym: Option<Symbol>,
    num: Poly,
    den: Poly,
}

impl SymReal {
    pub fn from_rational(r: Rational) -> Self {
        SymReal {
            sym: None,
            num: Poly::constant(r),
            den: Poly::constant(Rational::one()),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(n))
    }

    /// The bare symbol `t`.
    pub fn symbol(sym: Symbol) -> Self {
        SymReal {
            sym: Some(sym),
            num: Poly::monomial(Rational::one(), 1),
            den: Poly::constant(Rational::one()),
        }
    }

    /// `coeff * t`.
    pub fn symbol_multiple(sym: Symbol, coeff: Rational) -> Self {
        SymReal::normalize(Some(sym), Poly::monomial(coeff, 1), Poly::constant(Rational::one()))
    }

    pub fn from_parts(sym: Option<Symbol>, num: Poly, den: Poly) -> Self {
        SymReal::normalize(sym, num, den)
    }

    fn normalize(sym: Option<Symbol>, num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator in symbolic scalar");
        if num.is_zero() {
            return SymReal {
                sym: None,
                num: Poly::zero(),
                den: Poly::constant(Rational::one()),
            };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        };
        let lead = den.leading();
        let inv = lead.recip().expect("nonzero denominator");
        let num = num.scale(&inv);
        let den = den.scale(&inv);
        let sym = if num.is_constant() && den.is_constant() {
            None
        } else {
            assert!(sym.is_some(), "non-constant symbolic value without a symbol");
            sym
        };
        SymReal { sym, num, den }
    }

    fn unify(a: Option<Symbol>, b: Option<Symbol>) -> Option<Symbol> {
        match (a, b) {
            (None, x) | (x, None) => x,
            (Some(s), Some(t)) if s == t => Some(s),
            (Some(s), Some(t)) => panic!(
                "cannot combine values over different transcendentals ({s} vs {t}); \
                 use the float backend for mixed inputs"
            ),
        }
    }

    pub fn sym(&self) -> Option<Symbol> {
        self.sym
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    /// Whether the value lies in Q (exact).
    pub fn is_rational(&self) -> bool {
        self.sym.is_none()
    }

    /// Numerator and denominator both polynomial-degree zero.
    pub fn rational_value(&self) -> Option<Rational> {
        match (self.num.as_constant(), self.den.as_constant()) {
            (Some(n), Some(d)) => Some(&n / &d),
            _ => None,
        }
    }

    /// True when the denominator is a rational constant (value is a
    /// polynomial in the symbol). Such values convert to multivariate
    /// polynomials for fraction-free rank computations.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }
}

impl fmt::Display for SymReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = self.sym.map(|s| s.name()).unwrap_or_else(|| "t".to_string());
        if self.den.as_constant().map(|c| c.is_one()).unwrap_or(false) {
            return write!(f, "{}", self.num.render(&name));
        }
        let num = if self.num.num_terms() > 1 {
            format!("({})", self.num.render(&name))
        } else {
            self.num.render(&name)
        };
        let bare_den = self.den.num_terms() == 1
            && (self.den.is_constant() || self.den.leading().is_one());
        let den = if bare_den {
            self.den.render(&name)
        } else {
            format!("({})", self.den.render(&name))
        };
        write!(f, "{num}/{den}")
    }
}

impl Field for SymReal {
    fn zero() -> Self {
        SymReal::from_rational(Rational::zero())
    }
    fn one() -> Self {
        SymReal::from_rational(Rational::one())
    }
    fn add(&self, rhs: &Self) -> Self {
        let sym = SymReal::unify(self.sym, rhs.sym);
        let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
        SymReal::normalize(sym, num, self.den.mul(&rhs.den))
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }
    fn mul(&self, rhs: &Self) -> Self {
        let sym = SymReal::unify(self.sym, rhs.sym);
        SymReal::normalize(sym, self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }
    fn neg(&self) -> Self {
        SymReal {
            sym: self.sym,
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
    fn inv(&self) -> Option<Self> {
        if Field::is_zero(self) {
            None
        } else {
            Some(SymReal::normalize(self.sym, self.den.clone(), self.num.clone()))
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn from_rational(r: &Rational) -> Self {
        SymReal::from_rational(r.clone())
    }
    fn approx_abs(&self) -> f64 {
        self.to_f64().abs()
    }
}

impl RealField for SymReal {
    fn as_rational(&self) -> Option<Rational> {
        self.rational_value()
    }
    fn detect_rational(&self, _cfg: &RationalityCfg) -> Option<Rational> {
        self.rational_value()
    }
    fn to_f64(&self) -> f64 {
        let x = self.sym.map(|s| s.value()).unwrap_or(0.0);
        self.num.eval_f64(x) / self.den.eval_f64(x)
    }
    fn is_exact() -> bool {
        true
    }
    fn is_positive(&self) -> bool {
        if let Some(r) = self.rational_value() {
            r.is_positive()
        } else {
            self.to_f64() > 0.0
        }
    }
}

/// Parse an exact real entry. Grammar (whitespace-insensitive):
///
/// ```text
/// entry  ::= term (('+' | '-') term)*
/// term   ::= rational | [rational '*'?] symbol
/// symbol ::= 'pi' | 'log(' integer ')'
/// rational ::= ['-'] digits ['/' digits]
/// ```
///
/// Examples: `"3/2"`, `"pi"`, `"-pi"`, `"3*pi"`, `"1/2*pi"`, `"1+2*pi"`.
impl FromStr for SymReal {
    type Err = ArithError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(ArithError::Parse(s.to_string()));
        }
        // split into signed terms at top level (not inside "log(..)")
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

        let mut acc = SymReal::zero();
        for t in terms {
            acc = acc.add(&parse_term(&t).ok_or_else(|| ArithError::Parse(s.to_string()))?);
        }
        Ok(acc)
    }
}

fn parse_term(t: &str) -> Option<SymReal> {
    let (sign, body) = match t.strip_prefix('-') {
        Some(rest) => (-1i64, rest),
        None => (1, t.strip_prefix('+').unwrap_or(t)),
    };
    if body.is_empty() {
        return None;
    }
    let apply_sign = |v: SymReal| {
        if sign < 0 {
            v.neg()
        } else {
            v
        }
    };
    if let Some((sym, rest)) = take_symbol(body) {
        if !rest.is_empty() {
            return None;
        }
        return Some(apply_sign(SymReal::symbol(sym)));
    }
    // coefficient, optionally followed by '*'? symbol
    let split = body
        .char_indices()
        .find(|(_, c)| !(c.is_ascii_digit() || *c == '/'))
        .map(|(i, _)| i);
    match split {
        None => {
            let r: Rational = body.parse().ok()?;
            Some(apply_sign(SymReal::from_rational(r)))
        }
        Some(i) => {
            let coeff: Rational = body[..i].parse().ok()?;
            let rest = body[i..].strip_prefix('*').unwrap_or(&body[i..]);
            let (sym, tail) = take_symbol(rest)?;
            if !tail.is_empty() {
                return None;
            }
            Some(apply_sign(SymReal::symbol_multiple(sym, coeff)))
        }
    }
}

fn take_symbol(s: &str) -> Option<(Symbol, &str)> {
    if let Some(rest) = s.strip_prefix("pi") {
        return Some((Symbol::Pi, rest));
    }
    if let Some(rest) = s.strip_prefix("log(") {
        let close = rest.find(')')?;
        let p: u64 = rest[..close].parse().ok()?;
        return Some((Symbol::LogPrime(p), &rest[close + 1..]));
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> SymReal {
        SymReal::from_rational(Rational::new(n, d))
    }

    #[test]
    fn one_over_pi_display() {
        let pi = SymReal::symbol(Symbol::Pi);
        let inv = pi.inv().unwrap();
        assert_eq!(inv.to_string(), "1/pi");
        assert!(!inv.is_rational());
    }

    #[test]
    fn rationality_detected_after_cancellation() {
        let pi = SymReal::symbol(Symbol::Pi);
        let two_pi = pi.mul(&q(2, 1));
        let ratio = two_pi.mul(&pi.inv().unwrap());
        assert_eq!(ratio.rational_value(), Some(Rational::new(2, 1)));
        assert!(ratio.is_rational());
    }

    #[test]
    fn parse_forms() {
        for (s, expect) in [
            ("3/2", q(3, 2)),
            ("pi", SymReal::symbol(Symbol::Pi)),
            ("-pi", SymReal::symbol(Symbol::Pi).neg()),
            ("2*pi", SymReal::symbol_multiple(Symbol::Pi, Rational::new(2, 1))),
            ("1/2*pi", SymReal::symbol_multiple(Symbol::Pi, Rational::new(1, 2))),
            (
                "1+2*pi",
                q(1, 1).add(&SymReal::symbol_multiple(Symbol::Pi, Rational::new(2, 1))),
            ),
            ("1-pi", q(1, 1).sub(&SymReal::symbol(Symbol::Pi))),
            ("log(2)", SymReal::symbol(Symbol::LogPrime(2))),
        ] {
            let parsed: SymReal = s.parse().unwrap();
            assert_eq!(parsed, expect, "parsing {s}");
        }
    }

    #[test]
    fn zero_test_is_exact() {
        let pi = SymReal::symbol(Symbol::Pi);
        let v = pi.mul(&q(3, 1)).sub(&pi.add(&pi).add(&pi));
        assert!(Field::is_zero(&v));
    }

    #[test]
    #[should_panic(expected = "different transcendentals")]
    fn mixing_symbols_panics() {
        let pi = SymReal::symbol(Symbol::Pi);
        let l2 = SymReal::symbol(Symbol::LogPrime(2));
        let _ = pi.add(&l2);
    }

    #[test]
    fn eval_matches_f64() {
        let v: SymReal = "1+2*pi".parse().unwrap();
        assert!((v.to_f64() - (1.0 + 2.0 * std::f64::consts::PI)).abs() < 1e-12);
    }
}
