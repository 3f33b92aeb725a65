use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{exact_rational_sqrt, strip_small_squares, to_decimal_string};
use super::{CertifiedInterval, ExactError, Rational, Sign};

/// An element `a + b·√d` of a real quadratic field, `a, b, d` rational.
///
/// The representation is normalized on construction: rational values are
/// stored as `(a, 0, 0)`; otherwise `d` is a positive integer with no square
/// factor built from small primes and is not a perfect square. Arithmetic
/// between two irrational values requires identical radicands; mixing
/// radicands goes through [`SurdExpr`](super::SurdExpr).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "AlgebraicRepr", into = "AlgebraicRepr")]
pub struct AlgebraicNumber {
    a: Rational,
    b: Rational,
    d: Rational,
}

#[derive(Serialize, Deserialize)]
struct AlgebraicRepr {
    #[serde(with = "super::rational::serde_rational")]
    a: Rational,
    #[serde(with = "super::rational::serde_rational")]
    b: Rational,
    #[serde(with = "super::rational::serde_rational")]
    d: Rational,
}

impl TryFrom<AlgebraicRepr> for AlgebraicNumber {
    type Error = ExactError;
    fn try_from(r: AlgebraicRepr) -> Result<Self, ExactError> {
        AlgebraicNumber::new(r.a, r.b, r.d)
    }
}

impl From<AlgebraicNumber> for AlgebraicRepr {
    fn from(x: AlgebraicNumber) -> Self {
        AlgebraicRepr {
            a: x.a,
            b: x.b,
            d: x.d,
        }
    }
}

impl AlgebraicNumber {
    pub fn new(a: Rational, b: Rational, d: Rational) -> Result<Self, ExactError> {
        if d.is_negative() {
            return Err(ExactError::NegativeRadicand(d.to_string()));
        }
        Ok(Self::normalized(a, b, d))
    }

    fn normalized(a: Rational, b: Rational, d: Rational) -> Self {
        if b.is_zero() || d.is_zero() {
            return Self::from_rational(a);
        }
        if let Some(root) = exact_rational_sqrt(&d) {
            return Self::from_rational(a + b * root);
        }
        // √(p/q) = √(p·q) / q, then pull out small square factors.
        let pq = d.numer() * d.denom();
        let (outside, inside) = strip_small_squares(&pq);
        let b = b * Rational::new(outside, d.denom().clone());
        AlgebraicNumber {
            a,
            b,
            d: Rational::from_integer(inside),
        }
    }

    pub fn from_rational(a: Rational) -> Self {
        AlgebraicNumber {
            a,
            b: Rational::zero(),
            d: Rational::zero(),
        }
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_rational(Rational::from_integer(v.into()))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// `√d` itself.
    pub fn sqrt_of(d: Rational) -> Result<Self, ExactError> {
        Self::new(Rational::zero(), Rational::one(), d)
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn radicand(&self) -> &Rational {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.a)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn conjugate(&self) -> Self {
        AlgebraicNumber {
            a: self.a.clone(),
            b: -&self.b,
            d: self.d.clone(),
        }
    }

    /// Field norm `a² − b²d`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * &self.d
    }

    fn common_radicand(&self, other: &Self) -> Result<Rational, ExactError> {
        match (self.is_rational(), other.is_rational()) {
            (true, true) => Ok(Rational::zero()),
            (false, true) => Ok(self.d.clone()),
            (true, false) => Ok(other.d.clone()),
            (false, false) if self.d == other.d => Ok(self.d.clone()),
            _ => Err(ExactError::RadicandMismatch {
                left: self.d.to_string(),
                right: other.d.to_string(),
            }),
        }
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self, ExactError> {
        let d = self.common_radicand(o)?;
        Ok(Self::normalized(&self.a + &o.a, &self.b + &o.b, d))
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self, ExactError> {
        let d = self.common_radicand(o)?;
        Ok(Self::normalized(&self.a - &o.a, &self.b - &o.b, d))
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self, ExactError> {
        let d = self.common_radicand(o)?;
        let a = &self.a * &o.a + &self.b * &o.b * &d;
        let b = &self.a * &o.b + &self.b * &o.a;
        Ok(Self::normalized(a, b, d))
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self, ExactError> {
        if o.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        self.common_radicand(o)?;
        let n = o.norm();
        let num = self.checked_mul(&o.conjugate())?;
        Ok(Self::normalized(&num.a / &n, &num.b / &n, num.d))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::normalized(&self.a * r, &self.b * r, self.d.clone())
    }

    /// Exact sign, decided symbolically.
    pub fn sign(&self) -> Sign {
        let sa = Sign::of_rational(&self.a);
        let sb = Sign::of_rational(&self.b);
        match (sa, sb) {
            (_, Sign::Zero) => sa,
            (Sign::Zero, _) => sb,
            _ if sa == sb => sa,
            // a and b√d have opposite signs: compare a² with b²d.
            _ => sa.times(Sign::of_rational(&self.norm())),
        }
    }

    pub fn cmp_same_field(&self, o: &Self) -> Result<Ordering, ExactError> {
        Ok(self.checked_sub(o)?.sign().to_ordering())
    }

    pub fn interval(&self, precision_bits: u32) -> CertifiedInterval {
        let a = CertifiedInterval::point(&self.a, precision_bits);
        if self.is_rational() {
            return a;
        }
        let b = CertifiedInterval::point(&self.b, precision_bits);
        a.add(&b.mul(&CertifiedInterval::sqrt(&self.d, precision_bits)))
    }

    pub fn to_f64(&self) -> f64 {
        self.interval(96).midpoint_f64()
    }

    /// Decimal rendering with `digits` significant digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        if let Some(r) = self.as_rational() {
            return to_decimal_string(r, digits);
        }
        let iv = self.interval(digits as u32 * 4 + 64);
        let mid = (iv.lo() + iv.hi()) / Rational::from_integer(2.into());
        to_decimal_string(&mid, digits)
    }
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "{}*sqrt({})", self.b, self.d)
        } else {
            write!(f, "{} + {}*sqrt({})", self.a, self.b, self.d)
        }
    }
}

impl From<Rational> for AlgebraicNumber {
    fn from(r: Rational) -> Self {
        AlgebraicNumber::from_rational(r)
    }
}

macro_rules! forward_op {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&AlgebraicNumber> for &AlgebraicNumber {
            type Output = AlgebraicNumber;
            /// Panics when both operands are irrational over different radicands.
            fn $method(self, o: &AlgebraicNumber) -> AlgebraicNumber {
                self.$checked(o).expect(concat!("AlgebraicNumber::", stringify!($method)))
            }
        }
        impl $trait<AlgebraicNumber> for AlgebraicNumber {
            type Output = AlgebraicNumber;
            fn $method(self, o: AlgebraicNumber) -> AlgebraicNumber {
                (&self).$method(&o)
            }
        }
    };
}

forward_op!(Add, add, checked_add);
forward_op!(Sub, sub, checked_sub);
forward_op!(Mul, mul, checked_mul);
forward_op!(Div, div, checked_div);

impl Neg for &AlgebraicNumber {
    type Output = AlgebraicNumber;
    fn neg(self) -> AlgebraicNumber {
        AlgebraicNumber {
            a: -&self.a,
            b: -&self.b,
            d: self.d.clone(),
        }
    }
}

impl Neg for AlgebraicNumber {
    type Output = AlgebraicNumber;
    fn neg(self) -> AlgebraicNumber {
        -&self
    }
}
