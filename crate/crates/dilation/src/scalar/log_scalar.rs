//! Elements of Q + sum_p Q*log(p) over the prime-log basis. These carry the
//! diagonal parts of exact matrix logarithms; unique factorization makes the
//! prime logs linearly independent over Q, so zero testing is componentwise.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::scalar::mpoly::MPoly;
use crate::scalar::rational::{prime_factor_rational, ArithError, Rational};
use crate::scalar::symbolic::{SymReal, Symbol};

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct LogScalar {
    #[serde(rename = "const")]
    pub constant: Rational,
    /// prime -> rational coefficient of log(prime); keys serialized as strings
    pub logs: BTreeMap<u64, Rational>,
}

impl LogScalar {
    pub fn zero() -> Self {
        LogScalar {
            constant: Rational::zero(),
            logs: BTreeMap::new(),
        }
    }

    pub fn from_rational(constant: Rational) -> Self {
        LogScalar {
            constant,
            logs: BTreeMap::new(),
        }
    }

    /// Exact log of a positive rational via prime factorization.
    pub fn log_of_rational(a: &Rational, factor_bound: u64) -> Result<Self, ArithError> {
        let factors = prime_factor_rational(a, factor_bound)?;
        Ok(LogScalar {
            constant: Rational::zero(),
            logs: factors
                .into_iter()
                .map(|(p, e)| (p, Rational::from_integer(e)))
                .collect(),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.logs.values().all(Rational::is_zero)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut logs = self.logs.clone();
        for (p, c) in &rhs.logs {
            let entry = logs.entry(*p).or_insert_with(Rational::zero);
            *entry = &*entry + c;
        }
        logs.retain(|_, c| !c.is_zero());
        LogScalar {
            constant: &self.constant + &rhs.constant,
            logs,
        }
    }

    pub fn neg(&self) -> Self {
        LogScalar {
            constant: -&self.constant,
            logs: self.logs.iter().map(|(p, c)| (*p, -c)).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return LogScalar::zero();
        }
        LogScalar {
            constant: &self.constant * c,
            logs: self.logs.iter().map(|(p, e)| (*p, e * c)).collect(),
        }
    }

    pub fn eval_f64(&self) -> f64 {
        self.constant.to_f64()
            + self
                .logs
                .iter()
                .map(|(p, c)| c.to_f64() * (*p as f64).ln())
                .sum::<f64>()
    }

    /// Exact exponential when the constant vanishes and all exponents are
    /// integers: `exp(sum e_p log p) = prod p^{e_p}`.
    pub fn exp_rational(&self) -> Option<Rational> {
        if !self.constant.is_zero() {
            return None;
        }
        let mut acc = Rational::one();
        for (p, e) in &self.logs {
            if !e.is_integer() {
                return None;
            }
            let exp = i32::try_from(e.numer().to_string().parse::<i64>().ok()?).ok()?;
            acc = &acc * &Rational::from_integer(*p as i64).pow(exp);
        }
        Some(acc)
    }

    /// Degree-one multivariate polynomial over the symbols {log p}.
    pub fn to_mpoly(&self) -> MPoly {
        let mut m = MPoly::constant(self.constant.clone());
        for (p, c) in &self.logs {
            m = m.add(&MPoly::linear(Symbol::LogPrime(*p), c.clone()));
        }
        m
    }

    /// Convert into a single-symbol exact real if at most one prime occurs
    /// and the constant part is compatible.
    pub fn to_sym_real(&self) -> Option<SymReal> {
        let nonzero: Vec<_> = self.logs.iter().filter(|(_, c)| !c.is_zero()).collect();
        match nonzero.len() {
            0 => Some(SymReal::from_rational(self.constant.clone())),
            1 => {
                let (p, c) = nonzero[0];
                Some(
                    crate::scalar::field::Field::add(
                        &SymReal::from_rational(self.constant.clone()),
                        &SymReal::symbol_multiple(Symbol::LogPrime(*p), c.clone()),
                    ),
                )
            }
            _ => None,
        }
    }
}

impl fmt::Display for LogScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        if !self.constant.is_zero() {
            write!(f, "{}", self.constant)?;
            first = false;
        }
        for (p, c) in &self.logs {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_one() {
                    write!(f, "log({p})")?;
                } else {
                    write!(f, "{c}*log({p})")?;
                }
            } else if c.is_negative() {
                if (-c).is_one() {
                    write!(f, " - log({p})")?;
                } else {
                    write!(f, " - {}*log({p})", -c)?;
                }
            } else if c.is_one() {
                write!(f, " + log({p})")?;
            } else {
                write!(f, " + {c}*log({p})")?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational::DEFAULT_FACTOR_BOUND;
    use rand::{Rng, SeedableRng};

    #[test]
    fn log_of_12() {
        let l = LogScalar::log_of_rational(&Rational::new(12, 1), DEFAULT_FACTOR_BOUND).unwrap();
        assert_eq!(l.to_string(), "2*log(2) + log(3)");
        assert_eq!(l.exp_rational(), Some(Rational::new(12, 1)));
    }

    #[test]
    fn log_of_nine_eighths_round_trip() {
        let a = Rational::new(9, 8);
        let l = LogScalar::log_of_rational(&a, DEFAULT_FACTOR_BOUND).unwrap();
        assert_eq!(l.exp_rational(), Some(a.clone()));
        assert!((l.eval_f64() - a.to_f64().ln()).abs() < 1e-12);
    }

    #[test]
    fn additive_homomorphism() {
        let b = DEFAULT_FACTOR_BOUND;
        let l6 = LogScalar::log_of_rational(&Rational::new(6, 1), b).unwrap();
        let l2 = LogScalar::log_of_rational(&Rational::new(2, 1), b).unwrap();
        let l3 = LogScalar::log_of_rational(&Rational::new(3, 1), b).unwrap();
        assert_eq!(l2.add(&l3), l6);
    }

    // A nonzero element of Q + sum Q log p never evaluates near zero: sampled
    // over primes <= 100 and small coefficients, the float value stays above
    // 1e-12 in magnitude.
    #[test]
    fn nonzero_elements_evaluate_away_from_zero() {
        const PRIMES: &[u64] = &[
            2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79,
            83, 89, 97,
        ];
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let mut v = LogScalar::from_rational(Rational::new(
                rng.gen_range(-10..=10),
                rng.gen_range(1..=10),
            ));
            for _ in 0..rng.gen_range(0..4) {
                let p = PRIMES[rng.gen_range(0..PRIMES.len())];
                let c = Rational::new(rng.gen_range(-10..=10), rng.gen_range(1..=10));
                v = v.add(&LogScalar {
                    constant: Rational::zero(),
                    logs: BTreeMap::from([(p, c)]),
                });
            }
            if v.is_zero() {
                continue;
            }
            assert!(
                v.eval_f64().abs() > 1e-12,
                "{} evaluated too close to zero",
                v
            );
        }
    }

    #[test]
    fn serde_shape() {
        let l = LogScalar::log_of_rational(&Rational::new(2, 1), DEFAULT_FACTOR_BOUND).unwrap();
        let json = serde_json::to_string(&l).unwrap();
        assert_eq!(json, r#"{"const":"0/1","logs":{"2":"1/1"}}"#);
        let back: LogScalar = serde_json::from_str(&json).unwrap();
        assert_eq!(back, l);
    }
}
