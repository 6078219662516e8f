//! Scalar arithmetic: exact rationals, Gaussian rationals, single-symbol
//! symbolic reals, prime-log combinations, and tolerance-carrying floats.

pub mod complex;
pub mod field;
pub mod log_scalar;
pub mod mpoly;
pub mod poly;
pub mod rational;
pub mod symbolic;

pub use complex::{Complex, ComplexFloat, GaussianRational, SymComplex};
pub use field::{ComplexField, Field, RationalityCfg, RealField, RealFloat, DEFAULT_F64_EPS};
pub use log_scalar::LogScalar;
pub use mpoly::{MPoly, Var};
pub use rational::{
    prime_factor_rational, rationalize_float, ArithError, Rational, Rationalized,
    DEFAULT_FACTOR_BOUND,
};
pub use symbolic::{SymReal, Symbol};

#[cfg(test)]
mod field_axiom_tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-50i64..=50, 1i64..=20).prop_map(|(n, d)| Rational::new(n, d))
    }

    fn arb_gaussian() -> impl Strategy<Value = GaussianRational> {
        (arb_rational(), arb_rational()).prop_map(|(re, im)| GaussianRational::new(re, im))
    }

    proptest! {
        #[test]
        fn rational_field_axioms(a in arb_rational(), b in arb_rational(), c in arb_rational()) {
            prop_assert_eq!(Field::add(&a, &b), Field::add(&b, &a));
            prop_assert_eq!(Field::add(&Field::add(&a, &b), &c), Field::add(&a, &Field::add(&b, &c)));
            prop_assert_eq!(Field::mul(&Field::mul(&a, &b), &c), Field::mul(&a, &Field::mul(&b, &c)));
            prop_assert_eq!(
                Field::mul(&a, &Field::add(&b, &c)),
                Field::add(&Field::mul(&a, &b), &Field::mul(&a, &c))
            );
            if !Field::is_zero(&a) {
                prop_assert_eq!(Field::mul(&a, &Field::inv(&a).unwrap()), Rational::one());
            }
        }

        #[test]
        fn gaussian_field_axioms(a in arb_gaussian(), b in arb_gaussian(), c in arb_gaussian()) {
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(
                a.mul(&b.add(&c)),
                a.mul(&b).add(&a.mul(&c))
            );
            if !a.is_zero() {
                prop_assert_eq!(a.mul(&a.inv().unwrap()), GaussianRational::one());
            }
            // conjugation is an involution and a ring homomorphism
            prop_assert_eq!(a.conj().conj(), a.clone());
            prop_assert_eq!(a.mul(&b).conj(), a.conj().mul(&b.conj()));
        }

        #[test]
        fn rationalize_round_trip(p in -10_000i64..=10_000, q in 1i64..=10_000) {
            let r = Rational::new(p, q);
            let x = r.to_f64();
            prop_assert_eq!(
                rationalize_float(x, 10_000, 1e-9),
                Rationalized::Rational(r)
            );
        }
    }
}
