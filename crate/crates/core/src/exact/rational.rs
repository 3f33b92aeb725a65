//! Parsing, printing and small number-theoretic helpers for [`Rational`].

use num_bigint::{BigInt, Sign as BigSign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{ExactError, Rational};

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"`, an integer, or a decimal literal such as `"-1.1"` or
/// `"2.5e-3"` into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational, ExactError> {
    let s = text.trim();
    let bad = || ExactError::Parse(text.to_string());
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|_| bad())?;
        let d: BigInt = den.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }

    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let e: i64 = s[pos + 1..].parse().map_err(|_| bad())?;
            (&s[..pos], e)
        }
        None => (s, 0),
    };
    let (negative, body) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("{whole}{frac}").parse().map_err(|_| bad())?;
    let scale = exponent - frac.len() as i64;
    let ten = BigInt::from(10);
    let mut value = if scale >= 0 {
        Rational::from_integer(digits * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(digits, num_traits::pow(ten, (-scale) as usize))
    };
    if negative {
        value = -value;
    }
    Ok(value)
}

/// Canonical text form: `"p/q"`, or `"p"` for integers.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Integer square root of a non-negative integer if it is a perfect square.
pub fn exact_isqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let root = n.sqrt();
    (&root * &root == *n).then_some(root)
}

/// Square root of a rational when it is itself rational.
pub fn exact_rational_sqrt(r: &Rational) -> Option<Rational> {
    let n = exact_isqrt(r.numer())?;
    let d = exact_isqrt(r.denom())?;
    Some(Rational::new(n, d))
}

/// Splits a positive integer `n` as `k² · m`, removing every square factor
/// built from primes below 1024. `m` is not guaranteed squarefree.
pub fn strip_small_squares(n: &BigInt) -> (BigInt, BigInt) {
    debug_assert!(n.is_positive());
    if let Some(root) = exact_isqrt(n) {
        return (root, BigInt::one());
    }
    let mut outside = BigInt::one();
    let mut inside = n.clone();
    let mut p = 2u32;
    while p < 1024 {
        let pp = BigInt::from(p * p);
        while inside.is_multiple_of(&pp) {
            inside /= &pp;
            outside *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if let Some(root) = exact_isqrt(&inside) {
        return (outside * root, BigInt::one());
    }
    (outside, inside)
}

/// Decimal rendering with `digits` significant digits (round half away from
/// zero). Plain notation for moderate exponents, scientific otherwise.
pub fn to_decimal_string(r: &Rational, digits: usize) -> String {
    let digits = digits.max(1);
    if r.is_zero() {
        return "0".to_string();
    }
    let negative = r.is_negative();
    let x = r.abs();
    let ten = BigInt::from(10);
    let mut exp = (x.numer().bits() as i64 - x.denom().bits() as i64) * 30103 / 100000;
    // Fix up exp so that 10^exp <= x < 10^(exp+1).
    loop {
        let lower = pow10(exp);
        if x < lower {
            exp -= 1;
            continue;
        }
        if x >= pow10(exp + 1) {
            exp += 1;
            continue;
        }
        break;
    }
    let shift = digits as i64 - 1 - exp;
    let scaled = &x * pow10(shift);
    let mut mantissa = (scaled + rat(1, 2)).floor().to_integer();
    if mantissa >= num_traits::pow(ten.clone(), digits) {
        mantissa /= &ten;
        exp += 1;
    }
    let mut s = mantissa.to_string();
    while s.len() < digits {
        s.insert(0, '0');
    }
    let body = if (-6..digits as i64).contains(&exp) {
        if exp >= 0 {
            let split = (exp + 1) as usize;
            let (a, b) = s.split_at(split);
            let b = b.trim_end_matches('0');
            if b.is_empty() {
                a.to_string()
            } else {
                format!("{a}.{b}")
            }
        } else {
            let zeros = "0".repeat((-exp - 1) as usize);
            format!("0.{zeros}{}", s.trim_end_matches('0'))
        }
    } else {
        let (a, b) = s.split_at(1);
        let b = b.trim_end_matches('0');
        if b.is_empty() {
            format!("{a}e{exp}")
        } else {
            format!("{a}.{b}e{exp}")
        }
    };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

fn pow10(e: i64) -> Rational {
    let ten = BigInt::from(10);
    if e >= 0 {
        Rational::from_integer(num_traits::pow(ten, e as usize))
    } else {
        Rational::new(BigInt::one(), num_traits::pow(ten, (-e) as usize))
    }
}

/// Best rational approximation of an `f64` with a power-of-two denominator
/// `2^bits`; exact for dyadic inputs up to that resolution.
pub fn from_f64_dyadic(value: f64, bits: u32) -> Rational {
    let scaled = (value * 2f64.powi(bits as i32)).round();
    let num = BigInt::from(scaled as i128);
    Rational::new(num, BigInt::one() << bits)
}

/// Largest power of two (possibly negative exponent) not exceeding `r > 0`.
pub fn power_of_two_below(r: &Rational) -> Rational {
    assert!(r.is_positive());
    let mut e = r.numer().bits() as i64 - r.denom().bits() as i64;
    let two = |e: i64| {
        if e >= 0 {
            Rational::from_integer(BigInt::one() << e as usize)
        } else {
            Rational::new(BigInt::one(), BigInt::one() << (-e) as usize)
        }
    };
    while two(e) > *r {
        e -= 1;
    }
    while two(e + 1) <= *r {
        e += 1;
    }
    two(e)
}

pub(crate) fn bigint_sign(n: &BigInt) -> i32 {
    match n.sign() {
        BigSign::Minus => -1,
        BigSign::NoSign => 0,
        BigSign::Plus => 1,
    }
}

/// Serde adapter: a `Rational` as its `"p/q"` string.
pub mod serde_rational {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("0.1").unwrap(), rat(1, 10));
        assert_eq!(parse_rational("-1.1").unwrap(), rat(-11, 10));
        assert_eq!(parse_rational("-3.3").unwrap(), rat(-33, 10));
        assert_eq!(parse_rational("12").unwrap(), int(12));
        assert_eq!(parse_rational("2.5e-3").unwrap(), rat(1, 400));
        assert_eq!(parse_rational(".5").unwrap(), rat(1, 2));
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "abc", "1/0", "1.2.3", "--1", "."] {
            assert!(parse_rational(s).is_err(), "{s}");
        }
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(to_decimal_string(&rat(1, 3), 5), "0.33333");
        assert_eq!(to_decimal_string(&rat(-2, 3), 3), "-0.667");
        assert_eq!(to_decimal_string(&int(10), 15), "10");
        assert_eq!(to_decimal_string(&rat(-171, 20), 15), "-8.55");
        assert_eq!(to_decimal_string(&rat(1, 1_000_000_000), 3), "1e-9");
        assert_eq!(to_decimal_string(&rat(999_999, 1_000_000), 3), "1");
        assert_eq!(to_decimal_string(&rat(1, 3), 30).len(), 32);
    }

    #[test]
    fn square_stripping() {
        let (k, m) = strip_small_squares(&BigInt::from(72));
        assert_eq!((k, m), (BigInt::from(6), BigInt::from(2)));
        let (k, m) = strip_small_squares(&BigInt::from(49));
        assert_eq!((k, m), (BigInt::from(7), BigInt::one()));
    }

    #[test]
    fn powers_of_two() {
        assert_eq!(power_of_two_below(&rat(3, 1)), int(2));
        assert_eq!(power_of_two_below(&rat(1, 3)), rat(1, 4));
        assert_eq!(power_of_two_below(&rat(1, 4)), rat(1, 4));
    }
}
