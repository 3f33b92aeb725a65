use std::fmt;

use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::Rational;

/// Exact sign of a quantity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of_rational(r: &Rational) -> Sign {
        if r.is_zero() {
            Sign::Zero
        } else if r.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    pub fn from_i32(v: i32) -> Sign {
        match v.signum() {
            -1 => Sign::Negative,
            0 => Sign::Zero,
            _ => Sign::Positive,
        }
    }

    pub fn to_i32(self) -> i32 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn flip(self) -> Sign {
        Sign::from_i32(-self.to_i32())
    }

    pub fn times(self, other: Sign) -> Sign {
        Sign::from_i32(self.to_i32() * other.to_i32())
    }

    pub fn to_ordering(self) -> std::cmp::Ordering {
        self.to_i32().cmp(&0)
    }
}

/// Ring operations with an exact sign, the minimum the geometric kernel needs.
///
/// Implemented by [`Rational`] (plain exact arithmetic) and by
/// [`SurdExpr`](super::SurdExpr) (several square roots at once, signs
/// resolved through the certified interval ladder).
pub trait Scalar: Clone + fmt::Debug + Send + Sync + 'static {
    fn from_rational(r: &Rational) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn sign(&self) -> Sign;
    fn approx(&self) -> f64;

    fn from_int(v: i64) -> Self {
        Self::from_rational(&Rational::from_integer(v.into()))
    }

    fn is_zero_exact(&self) -> bool {
        self.sign() == Sign::Zero
    }

    /// Exact comparison through the sign of the difference.
    fn cmp_exact(&self, other: &Self) -> std::cmp::Ordering {
        self.minus(other).sign().to_ordering()
    }
}

impl Scalar for Rational {
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn sign(&self) -> Sign {
        Sign::of_rational(self)
    }
    fn approx(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

/// A 3-vector over any [`Scalar`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vec3<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T> Vec3<T> {
    pub const fn new(x: T, y: T, z: T) -> Self {
        Vec3 { x, y, z }
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Vec3<U> {
        Vec3::new(f(&self.x), f(&self.y), f(&self.z))
    }

    pub fn coords(&self) -> [&T; 3] {
        [&self.x, &self.y, &self.z]
    }
}

impl<T: Scalar> Vec3<T> {
    pub fn zero() -> Self {
        Vec3::new(T::from_int(0), T::from_int(0), T::from_int(0))
    }

    pub fn plus(&self, o: &Self) -> Self {
        Vec3::new(self.x.plus(&o.x), self.y.plus(&o.y), self.z.plus(&o.z))
    }

    pub fn minus(&self, o: &Self) -> Self {
        Vec3::new(self.x.minus(&o.x), self.y.minus(&o.y), self.z.minus(&o.z))
    }

    pub fn scale(&self, s: &T) -> Self {
        Vec3::new(self.x.times(s), self.y.times(s), self.z.times(s))
    }

    pub fn dot(&self, o: &Self) -> T {
        self.x
            .times(&o.x)
            .plus(&self.y.times(&o.y))
            .plus(&self.z.times(&o.z))
    }

    pub fn cross(&self, o: &Self) -> Self {
        Vec3::new(
            self.y.times(&o.z).minus(&self.z.times(&o.y)),
            self.z.times(&o.x).minus(&self.x.times(&o.z)),
            self.x.times(&o.y).minus(&self.y.times(&o.x)),
        )
    }

    pub fn norm_sq(&self) -> T {
        self.dot(self)
    }

    pub fn is_zero_exact(&self) -> bool {
        self.x.is_zero_exact() && self.y.is_zero_exact() && self.z.is_zero_exact()
    }

    pub fn approx(&self) -> [f64; 3] {
        [self.x.approx(), self.y.approx(), self.z.approx()]
    }

    pub fn lift<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Vec3<U> {
        self.map(f)
    }
}

impl Vec3<Rational> {
    pub fn from_ints(x: i64, y: i64, z: i64) -> Self {
        Vec3::new(
            Rational::from_integer(x.into()),
            Rational::from_integer(y.into()),
            Rational::from_integer(z.into()),
        )
    }
}

impl<T: fmt::Display> fmt::Display for Vec3<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

/// Determinant of the 3×3 matrix with columns `u`, `v`, `w`.
pub fn det3<T: Scalar>(u: &Vec3<T>, v: &Vec3<T>, w: &Vec3<T>) -> T {
    u.dot(&v.cross(w))
}
