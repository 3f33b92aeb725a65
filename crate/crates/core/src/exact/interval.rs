use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::bigint_sign;
use super::{Rational, Sign};

/// `mantissa · 2^exponent`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Dyadic {
    mantissa: BigInt,
    exponent: i64,
}

impl Dyadic {
    fn zero() -> Self {
        Dyadic {
            mantissa: BigInt::zero(),
            exponent: 0,
        }
    }

    /// Rounds `r` to `bits` significant bits, downward or upward.
    fn from_rational(r: &Rational, bits: u32, up: bool) -> Self {
        if r.is_zero() {
            return Dyadic::zero();
        }
        let (n, d) = (r.numer(), r.denom());
        if d.is_one() && n.bits() <= bits as u64 {
            return Dyadic {
                mantissa: n.clone(),
                exponent: 0,
            };
        }
        // floor(n·2^s / d) has about `bits` significant bits.
        let s = bits as i64 - (n.bits() as i64 - d.bits() as i64);
        let num = if s >= 0 { n << s as usize } else { n.clone() };
        let den = if s >= 0 { d.clone() } else { d << (-s) as usize };
        let (q, rem) = num.div_mod_floor(&den);
        let mantissa = if up && !rem.is_zero() { q + 1 } else { q };
        Dyadic {
            mantissa,
            exponent: -s,
        }
        .normalized()
    }

    fn normalized(mut self) -> Self {
        if self.mantissa.is_zero() {
            return Dyadic::zero();
        }
        let tz = self.mantissa.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.mantissa >>= tz as usize;
            self.exponent += tz as i64;
        }
        self
    }

    /// Rounds to at most `bits` significant bits.
    fn round(self, bits: u32, up: bool) -> Self {
        let len = self.mantissa.bits();
        if len <= bits as u64 {
            return self;
        }
        let drop = (len - bits as u64) as usize;
        let floor = &self.mantissa >> drop;
        let exact = (&floor << drop) == self.mantissa;
        let mantissa = if up && !exact { floor + 1 } else { floor };
        Dyadic {
            mantissa,
            exponent: self.exponent + drop as i64,
        }
        .normalized()
    }

    fn to_rational(&self) -> Rational {
        if self.exponent >= 0 {
            Rational::from_integer(&self.mantissa << self.exponent as usize)
        } else {
            Rational::new(self.mantissa.clone(), BigInt::one() << (-self.exponent) as usize)
        }
    }

    fn align(&self, o: &Self) -> (BigInt, BigInt, i64) {
        let e = self.exponent.min(o.exponent);
        (
            &self.mantissa << (self.exponent - e) as usize,
            &o.mantissa << (o.exponent - e) as usize,
            e,
        )
    }

    fn add(&self, o: &Self) -> Self {
        let (a, b, e) = self.align(o);
        Dyadic {
            mantissa: a + b,
            exponent: e,
        }
        .normalized()
    }

    fn neg(&self) -> Self {
        Dyadic {
            mantissa: -&self.mantissa,
            exponent: self.exponent,
        }
    }

    fn mul(&self, o: &Self) -> Self {
        Dyadic {
            mantissa: &self.mantissa * &o.mantissa,
            exponent: self.exponent + o.exponent,
        }
        .normalized()
    }

    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        let (a, b, _) = self.align(o);
        a.cmp(&b)
    }

    fn sign(&self) -> Sign {
        Sign::from_i32(bigint_sign(&self.mantissa))
    }

    fn to_f64(&self) -> f64 {
        let len = self.mantissa.bits() as i64;
        let shift = (len - 60).max(0);
        let m = (&self.mantissa >> shift as usize).to_f64().unwrap_or(f64::NAN);
        m * 2f64.powi((self.exponent + shift) as i32)
    }
}

/// A closed interval with dyadic endpoints guaranteed to contain an exact
/// value. Endpoints are rounded outward to `precision_bits` significant bits
/// after every operation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifiedInterval {
    lo: Dyadic,
    hi: Dyadic,
    precision_bits: u32,
}

impl CertifiedInterval {
    pub fn point(r: &Rational, precision_bits: u32) -> Self {
        CertifiedInterval {
            lo: Dyadic::from_rational(r, precision_bits, false),
            hi: Dyadic::from_rational(r, precision_bits, true),
            precision_bits,
        }
    }

    fn from_bounds(lo: Dyadic, hi: Dyadic, precision_bits: u32) -> Self {
        CertifiedInterval {
            lo: lo.round(precision_bits, false),
            hi: hi.round(precision_bits, true),
            precision_bits,
        }
    }

    /// Encloses `√r` for a non-negative rational `r`.
    pub fn sqrt(r: &Rational, precision_bits: u32) -> Self {
        assert!(!r.is_negative(), "square root of a negative rational");
        if r.is_zero() {
            return CertifiedInterval::point(r, precision_bits);
        }
        // floor(√(r·4^k)) / 2^k ≤ √r ≤ (floor(...) + 1) / 2^k
        let k = precision_bits as i64 + (r.denom().bits() as i64 + 1) / 2 + 2
            - (r.numer().bits() as i64 - r.denom().bits() as i64) / 2;
        let k = k.max(0) as usize;
        let (scaled, rem) = (r.numer() << (2 * k)).div_mod_floor(r.denom());
        let root = scaled.sqrt();
        let exact = rem.is_zero() && &root * &root == scaled;
        let lo = Dyadic {
            mantissa: root.clone(),
            exponent: -(k as i64),
        }
        .normalized();
        let hi = if exact {
            lo.clone()
        } else {
            Dyadic {
                mantissa: root + 1,
                exponent: -(k as i64),
            }
            .normalized()
        };
        CertifiedInterval::from_bounds(lo, hi, precision_bits)
    }

    pub fn lo(&self) -> Rational {
        self.lo.to_rational()
    }

    pub fn hi(&self) -> Rational {
        self.hi.to_rational()
    }

    pub fn precision_bits(&self) -> u32 {
        self.precision_bits
    }

    pub fn width(&self) -> Rational {
        self.hi() - self.lo()
    }

    pub fn midpoint_f64(&self) -> f64 {
        (self.lo.to_f64() + self.hi.to_f64()) / 2.0
    }

    /// The sign when the interval excludes zero (or is exactly the point zero).
    pub fn certain_sign(&self) -> Option<Sign> {
        match (self.lo.sign(), self.hi.sign()) {
            (Sign::Positive, _) => Some(Sign::Positive),
            (_, Sign::Negative) => Some(Sign::Negative),
            (Sign::Zero, Sign::Zero) => Some(Sign::Zero),
            _ => None,
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let p = self.precision_bits.max(o.precision_bits);
        CertifiedInterval::from_bounds(self.lo.add(&o.lo), self.hi.add(&o.hi), p)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        CertifiedInterval {
            lo: self.hi.neg(),
            hi: self.lo.neg(),
            precision_bits: self.precision_bits,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let p = self.precision_bits.max(o.precision_bits);
        let c = [
            self.lo.mul(&o.lo),
            self.lo.mul(&o.hi),
            self.hi.mul(&o.lo),
            self.hi.mul(&o.hi),
        ];
        let lo = c.iter().min_by(|a, b| a.cmp(b)).unwrap().clone();
        let hi = c.iter().max_by(|a, b| a.cmp(b)).unwrap().clone();
        CertifiedInterval::from_bounds(lo, hi, p)
    }

    pub fn contains(&self, r: &Rational) -> bool {
        &self.lo() <= r && r <= &self.hi()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};

    #[test]
    fn sqrt_two_encloses_and_is_tight() {
        let iv = CertifiedInterval::sqrt(&int(2), 128);
        assert!(iv.lo() * iv.lo() <= int(2));
        assert!(iv.hi() * iv.hi() >= int(2));
        assert!(iv.width() < rat(1, 1 << 60));
        assert_eq!(iv.certain_sign(), Some(Sign::Positive));
    }

    #[test]
    fn perfect_square_is_a_point() {
        let iv = CertifiedInterval::sqrt(&rat(9, 4), 64);
        assert_eq!(iv.lo(), iv.hi());
        assert_eq!(iv.lo(), rat(3, 2));
    }

    #[test]
    fn third_rounds_outward() {
        let third = rat(1, 3);
        let iv = CertifiedInterval::point(&third, 32);
        assert!(iv.contains(&third));
        assert!(iv.lo() < iv.hi());
    }

    #[test]
    fn arithmetic_encloses() {
        let a = CertifiedInterval::sqrt(&int(2), 80);
        let b = CertifiedInterval::sqrt(&int(3), 80);
        let p = a.mul(&b).sub(&CertifiedInterval::sqrt(&int(6), 80));
        assert!(p.contains(&int(0)));
        assert_eq!(p.certain_sign(), None);
        let q = a.sub(&CertifiedInterval::point(&int(1), 80));
        assert_eq!(q.certain_sign(), Some(Sign::Positive));
    }
}
