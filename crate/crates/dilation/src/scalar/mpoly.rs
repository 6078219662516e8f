//! Sparse multivariate polynomials over the rationals, with exact division.
//! Used by fraction-free elimination to decide ranks of matrices whose
//! entries combine several formal transcendentals.

use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::rational::Rational;
use crate::scalar::symbolic::Symbol;

/// Variables for multivariate polynomials: formal symbols plus coordinate
/// variables (used when expanding rank polynomials in a witness vector).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Var {
    Sym(Symbol),
    Coord(usize),
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Sym(s) => write!(f, "{s}"),
            Var::Coord(i) => write!(f, "x{}", i + 1),
        }
    }
}

type Monomial = BTreeMap<Var, u32>;

#[derive(Clone, PartialEq, Debug)]
pub struct MPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::new(), c);
        }
        MPoly { terms }
    }

    pub fn one() -> Self {
        MPoly::constant(Rational::one())
    }

    pub fn var(v: Var) -> Self {
        MPoly::linear_var(v, Rational::one())
    }

    pub fn linear(sym: Symbol, coeff: Rational) -> Self {
        MPoly::linear_var(Var::Sym(sym), coeff)
    }

    pub fn linear_var(v: Var, coeff: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(Monomial::from([(v, 1)]), coeff);
        }
        MPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self
                .terms
                .iter()
                .next()
                .filter(|(m, _)| m.is_empty())
                .map(|(_, c)| c.clone()),
            _ => None,
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.values().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            match terms.get_mut(m) {
                Some(e) => {
                    *e = &*e + c;
                    if e.is_zero() {
                        terms.remove(m);
                    }
                }
                None => {
                    terms.insert(m.clone(), c.clone());
                }
            }
        }
        MPoly { terms }
    }

    pub fn neg(&self) -> Self {
        MPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut terms: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let mut m = ma.clone();
                for (v, e) in mb {
                    *m.entry(*v).or_insert(0) += e;
                }
                let c = ca * cb;
                match terms.get_mut(&m) {
                    Some(t) => {
                        *t = &*t + &c;
                        if t.is_zero() {
                            terms.remove(&m);
                        }
                    }
                    None => {
                        terms.insert(m, c);
                    }
                }
            }
        }
        MPoly { terms }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(m, t)| (m.clone(), t * c)).collect(),
        }
    }

    fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// The terms as (monic monomial, coefficient) pairs, in internal order.
    pub fn terms_decomposed(&self) -> Vec<(MPoly, Rational)> {
        self.terms
            .iter()
            .map(|(m, c)| {
                (
                    MPoly {
                        terms: BTreeMap::from([(m.clone(), Rational::one())]),
                    },
                    c.clone(),
                )
            })
            .collect()
    }

    /// Exact division, `None` if `div` does not divide `self` exactly.
    /// Sufficient for Bareiss elimination, where divisions are always exact.
    pub fn exact_div(&self, div: &Self) -> Option<Self> {
        assert!(!div.is_zero(), "division by zero polynomial");
        if let Some(c) = div.as_constant() {
            return Some(self.scale(&c.recip().unwrap()));
        }
        let mut rem = self.clone();
        let mut quot = MPoly::zero();
        let (dm, dc) = div.leading().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let dinv = dc.recip().unwrap();
        while !rem.is_zero() {
            let (rm, rc) = rem.leading().map(|(m, c)| (m.clone(), c.clone())).unwrap();
            // rm / dm
            let mut qm = Monomial::new();
            for (v, e) in &rm {
                let de = dm.get(v).copied().unwrap_or(0);
                if *e < de {
                    return None;
                }
                if *e > de {
                    qm.insert(*v, e - de);
                }
            }
            for (v, de) in &dm {
                if rm.get(v).copied().unwrap_or(0) < *de {
                    return None;
                }
            }
            let qc = &rc * &dinv;
            let term = MPoly {
                terms: BTreeMap::from([(qm, qc)]),
            };
            rem = rem.sub(&term.mul(div));
            quot = quot.add(&term);
        }
        Some(quot)
    }

    /// Convert an exact real whose denominator is a rational constant.
    pub fn from_sym_real(v: &crate::scalar::symbolic::SymReal) -> Option<MPoly> {
        let den = v.denominator().as_constant()?;
        let scale = den.recip()?;
        let num = v.numerator();
        let mut acc = MPoly::zero();
        for k in 0..=num.degree() {
            let c = num.coeff(k);
            if c.is_zero() {
                continue;
            }
            let term = match (k, v.sym()) {
                (0, _) => MPoly::constant(&c * &scale),
                (_, Some(sym)) => {
                    let mut m = MPoly::constant(&c * &scale);
                    let x = MPoly::linear(sym, Rational::one());
                    for _ in 0..k {
                        m = m.mul(&x);
                    }
                    m
                }
                (_, None) => return None,
            };
            acc = acc.add(&term);
        }
        Some(acc)
    }

    pub fn eval_f64(&self, coord: &dyn Fn(usize) -> f64) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut acc = c.to_f64();
                for (v, e) in m {
                    let base = match v {
                        Var::Sym(s) => s.value(),
                        Var::Coord(i) => coord(*i),
                    };
                    acc *= base.powi(*e as i32);
                }
                acc
            })
            .sum()
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let mut body = String::new();
            for (v, e) in m {
                if !body.is_empty() {
                    body.push('*');
                }
                if *e == 1 {
                    body.push_str(&v.to_string());
                } else {
                    body.push_str(&format!("{v}^{e}"));
                }
            }
            let piece = if body.is_empty() {
                format!("{}", c.abs())
            } else if c.abs().is_one() {
                body
            } else {
                format!("{}*{}", c.abs(), body)
            };
            if first {
                if c.is_negative() {
                    write!(f, "-{piece}")?;
                } else {
                    write!(f, "{piece}")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - {piece}")?;
            } else {
                write!(f, " + {piece}")?;
            }
        }
        Ok(())
    }
}
