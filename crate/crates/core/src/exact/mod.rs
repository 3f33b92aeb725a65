//! Exact scalars: rationals, quadratic irrationals and certified signs.

mod algebraic;
mod interval;
pub mod poly;
mod quadratic;
pub mod rational;
mod scalar;
pub mod surd;

use thiserror::Error;

pub use algebraic::AlgebraicNumber;
pub use interval::CertifiedInterval;
pub use quadratic::{solve_quadratic_exact, QuadraticRoots};
pub use scalar::{det3, Scalar, Sign, Vec3};
pub use surd::{certified_sign, SurdExpr};

pub type Rational = num_rational::BigRational;

/// A 3-space point with rational coordinates.
pub type Point3 = Vec3<Rational>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("cannot parse {0:?} as a rational number")]
    Parse(String),
    #[error("negative radicand {0}")]
    NegativeRadicand(String),
    #[error("radicand mismatch: {left} vs {right}")]
    RadicandMismatch { left: String, right: String },
    #[error("division by zero")]
    DivisionByZero,
}

/// Lifts a point with algebraic coordinates into the multi-radical ring.
pub fn to_surd_point(p: &Vec3<AlgebraicNumber>) -> Vec3<SurdExpr> {
    p.map(|c| SurdExpr::from(c))
}

/// Lifts a rational point into any scalar type.
pub fn lift_point<T: Scalar>(p: &Point3) -> Vec3<T> {
    p.map(T::from_rational)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rational::rat;

    fn rvec() -> impl Strategy<Value = Point3> {
        proptest::array::uniform3((-50i64..=50, 1i64..=9))
            .prop_map(|c| Vec3::new(rat(c[0].0, c[0].1), rat(c[1].0, c[1].1), rat(c[2].0, c[2].1)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(2000))]
        #[test]
        fn det3_is_alternating_and_multilinear(u in rvec(), u2 in rvec(), v in rvec(), w in rvec()) {
            prop_assert_eq!(det3(&v, &u, &w), -det3(&u, &v, &w));
            prop_assert_eq!(det3(&u, &w, &v), -det3(&u, &v, &w));
            prop_assert_eq!(det3(&u.plus(&u2), &v, &w), det3(&u, &v, &w) + det3(&u2, &v, &w));
        }

        #[test]
        fn certified_sign_agrees_with_wide_intervals(a in -40i64..40, b in -40i64..40, d in 2i64..60, c in -40i64..40, e in 2i64..60) {
            let x = AlgebraicNumber::new(rat(a, 3), rat(b, 7), rat(d, 1)).unwrap();
            let y = AlgebraicNumber::new(rat(c, 5), rat(1, 1), rat(e, 1)).unwrap();
            let expr = SurdExpr::from(&x).mul(&SurdExpr::from(&y)).sub(&SurdExpr::from(&y));
            let iv = expr.interval(512);
            if let Some(s) = iv.certain_sign() {
                prop_assert_eq!(certified_sign(&expr), s);
            }
        }
    }
}
