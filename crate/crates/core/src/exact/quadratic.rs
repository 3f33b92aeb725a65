use num_traits::Zero;

use super::{AlgebraicNumber, Rational, Sign};

/// Real roots of `A·x² + B·x + C = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuadraticRoots {
    /// Two distinct roots over the radicand `B² − 4AC`, ascending.
    Two(AlgebraicNumber, AlgebraicNumber),
    Double(AlgebraicNumber),
    /// Linear case `A = 0, B ≠ 0`.
    Single(AlgebraicNumber),
    None,
    /// `A = B = C = 0`: every x is a root.
    IdenticallyZero,
}

impl QuadraticRoots {
    pub fn roots(&self) -> Vec<AlgebraicNumber> {
        match self {
            QuadraticRoots::Two(a, b) => vec![a.clone(), b.clone()],
            QuadraticRoots::Double(a) | QuadraticRoots::Single(a) => vec![a.clone()],
            QuadraticRoots::None | QuadraticRoots::IdenticallyZero => Vec::new(),
        }
    }
}

pub fn solve_quadratic_exact(a: &Rational, b: &Rational, c: &Rational) -> QuadraticRoots {
    if a.is_zero() {
        if b.is_zero() {
            return if c.is_zero() {
                QuadraticRoots::IdenticallyZero
            } else {
                QuadraticRoots::None
            };
        }
        return QuadraticRoots::Single(AlgebraicNumber::from_rational(-c / b));
    }
    let disc = b * b - Rational::from_integer(4.into()) * a * c;
    let two_a = Rational::from_integer(2.into()) * a;
    let center = -b / &two_a;
    match Sign::of_rational(&disc) {
        Sign::Negative => QuadraticRoots::None,
        Sign::Zero => QuadraticRoots::Double(AlgebraicNumber::from_rational(center)),
        Sign::Positive => {
            let half = Rational::from_integer(1.into()) / &two_a;
            let r1 = AlgebraicNumber::new(center.clone(), -&half, disc.clone()).expect("disc > 0");
            let r2 = AlgebraicNumber::new(center, half, disc).expect("disc > 0");
            if r1.cmp_same_field(&r2).expect("same radicand").is_le() {
                QuadraticRoots::Two(r1, r2)
            } else {
                QuadraticRoots::Two(r2, r1)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};
    use proptest::prelude::*;

    #[test]
    fn difference_of_squares() {
        match solve_quadratic_exact(&int(1), &int(0), &int(-4)) {
            QuadraticRoots::Two(a, b) => {
                assert_eq!(a, AlgebraicNumber::from_int(-2));
                assert_eq!(b, AlgebraicNumber::from_int(2));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn degenerate_cases() {
        assert_eq!(solve_quadratic_exact(&int(0), &int(0), &int(0)), QuadraticRoots::IdenticallyZero);
        assert_eq!(solve_quadratic_exact(&int(1), &int(-2), &int(2)), QuadraticRoots::None);
        assert_eq!(solve_quadratic_exact(&int(0), &int(0), &int(3)), QuadraticRoots::None);
        assert_eq!(
            solve_quadratic_exact(&int(0), &int(2), &int(3)),
            QuadraticRoots::Single(AlgebraicNumber::from_rational(rat(-3, 2)))
        );
        assert_eq!(
            solve_quadratic_exact(&int(1), &int(-2), &int(1)),
            QuadraticRoots::Double(AlgebraicNumber::from_int(1))
        );
    }

    #[test]
    fn irrational_roots_are_ordered() {
        // x² − 2 = 0
        let QuadraticRoots::Two(lo, hi) = solve_quadratic_exact(&int(1), &int(0), &int(-2)) else {
            panic!()
        };
        assert_eq!(lo.sign(), Sign::Negative);
        assert_eq!(hi.sign(), Sign::Positive);
        assert_eq!(&hi * &hi, AlgebraicNumber::from_int(2));
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-60i64..=60, 1i64..=12).prop_map(|(n, d)| rat(n, d))
    }

    proptest! {
        #[test]
        fn roots_back_substitute_exactly(a in small_rational(), b in small_rational(), c in small_rational()) {
            prop_assume!(!a.is_zero());
            for x in solve_quadratic_exact(&a, &b, &c).roots() {
                let ax = AlgebraicNumber::from_rational(a.clone());
                let bx = AlgebraicNumber::from_rational(b.clone());
                let cx = AlgebraicNumber::from_rational(c.clone());
                let value = &(&(&ax * &(&x * &x)) + &(&bx * &x)) + &cx;
                prop_assert!(value.is_zero());
            }
        }
    }
}
