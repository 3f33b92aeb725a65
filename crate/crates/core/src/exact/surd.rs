//! Expressions in several square roots and their certified signs.
//!
//! A [`SurdExpr`] is a multilinear polynomial with rational coefficients in
//! symbols `√m`, each `m` a positive non-square integer. This ring contains
//! every product and difference of [`AlgebraicNumber`]s regardless of their
//! radicands, which is what the cross-quadrisecant predicates need.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{AlgebraicNumber, CertifiedInterval, Rational, Scalar, Sign};

/// Starting precision of the interval ladder.
pub const START_PRECISION_BITS: u32 = 128;
/// Last precision tried before the exact fallback.
pub const MAX_PRECISION_BITS: u32 = 2048;

type Monomial = Vec<BigInt>;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SurdExpr {
    terms: BTreeMap<Monomial, Rational>,
}

impl SurdExpr {
    pub fn constant(r: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(Vec::new(), r);
        }
        SurdExpr { terms }
    }

    /// `√m` for a positive integer `m` (perfect squares fold to rationals).
    pub fn sqrt_int(m: BigInt) -> Self {
        SurdExpr::from(&AlgebraicNumber::sqrt_of(Rational::from_integer(m)).expect("non-negative"))
    }

    pub fn is_structurally_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_rational(&self) -> bool {
        self.terms.keys().all(|k| k.is_empty())
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.is_rational() {
            Some(self.terms.get(&Vec::new()).cloned().unwrap_or_else(Rational::zero))
        } else {
            None
        }
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn radicals(&self) -> BTreeSet<BigInt> {
        self.terms.keys().flat_map(|k| k.iter().cloned()).collect()
    }

    fn insert_term(&mut self, key: Monomial, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &o.terms {
            out.insert_term(k.clone(), v.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        SurdExpr {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), -v)).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return SurdExpr::default();
        }
        SurdExpr {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * r)).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = SurdExpr::default();
        for (k1, v1) in &self.terms {
            for (k2, v2) in &o.terms {
                let (key, factor) = multiply_monomials(k1, k2);
                out.insert_term(key, v1 * v2 * factor);
            }
        }
        out
    }

    /// Splits `self = e0 + e1·√m` with `e0`, `e1` free of `√m`.
    pub fn split(&self, m: &BigInt) -> (SurdExpr, SurdExpr) {
        let mut e0 = SurdExpr::default();
        let mut e1 = SurdExpr::default();
        for (k, v) in &self.terms {
            match k.iter().position(|x| x == m) {
                Some(pos) => {
                    let mut rest = k.clone();
                    rest.remove(pos);
                    e1.insert_term(rest, v.clone());
                }
                None => e0.insert_term(k.clone(), v.clone()),
            }
        }
        (e0, e1)
    }

    pub fn interval(&self, precision_bits: u32) -> CertifiedInterval {
        let mut roots: HashMap<&BigInt, CertifiedInterval> = HashMap::new();
        let mut acc = CertifiedInterval::point(&Rational::zero(), precision_bits);
        for (k, v) in &self.terms {
            let mut term = CertifiedInterval::point(v, precision_bits);
            for m in k {
                let r = roots.entry(m).or_insert_with(|| {
                    CertifiedInterval::sqrt(&Rational::from_integer(m.clone()), precision_bits)
                });
                term = term.mul(r);
            }
            acc = acc.add(&term);
        }
        acc
    }

    pub fn to_f64(&self) -> f64 {
        if let Some(r) = self.as_rational() {
            return r.to_f64().unwrap_or(f64::NAN);
        }
        self.interval(96).midpoint_f64()
    }

    /// Exact sign. Intervals from 128 to 2048 bits first, then the exact
    /// reduction `sign(e0 + e1√m)` from the signs of `e0`, `e1` and
    /// `e0² − m·e1²`, each of which has one radical fewer.
    pub fn certified_sign(&self) -> Sign {
        if let Some(r) = self.as_rational() {
            return Sign::of_rational(&r);
        }
        let mut bits = START_PRECISION_BITS;
        while bits <= MAX_PRECISION_BITS {
            if let Some(s) = self.interval(bits).certain_sign() {
                return s;
            }
            bits *= 2;
        }
        self.exact_sign()
    }

    fn exact_sign(&self) -> Sign {
        let Some(m) = self.radicals().into_iter().next_back() else {
            return Sign::of_rational(&self.as_rational().unwrap());
        };
        let (e0, e1) = self.split(&m);
        let s0 = e0.certified_sign();
        let s1 = e1.certified_sign();
        match (s0, s1) {
            (_, Sign::Zero) => s0,
            (Sign::Zero, _) => s1,
            _ if s0 == s1 => s0,
            _ => {
                let m_r = Rational::from_integer(m);
                let diff = e0.mul(&e0).sub(&e1.mul(&e1).scale(&m_r));
                s0.times(diff.certified_sign())
            }
        }
    }
}

fn multiply_monomials(a: &[BigInt], b: &[BigInt]) -> (Monomial, Rational) {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut factor = BigInt::from(1);
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j].clone());
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                factor *= &a[i];
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    (out, Rational::from_integer(factor))
}

impl From<&AlgebraicNumber> for SurdExpr {
    fn from(x: &AlgebraicNumber) -> Self {
        let mut e = SurdExpr::constant(x.a().clone());
        if !x.is_rational() {
            let m = x.radicand().to_integer();
            e.insert_term(vec![m], x.b().clone());
        }
        e
    }
}

impl From<Rational> for SurdExpr {
    fn from(r: Rational) -> Self {
        SurdExpr::constant(r)
    }
}

impl Scalar for SurdExpr {
    fn from_rational(r: &Rational) -> Self {
        SurdExpr::constant(r.clone())
    }
    fn plus(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn minus(&self, other: &Self) -> Self {
        self.sub(other)
    }
    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn negated(&self) -> Self {
        self.neg()
    }
    fn sign(&self) -> Sign {
        self.certified_sign()
    }
    fn approx(&self) -> f64 {
        self.to_f64()
    }
}

/// Exact sign of a single algebraic number (symbolic, no intervals needed).
pub fn sign_of(x: &AlgebraicNumber) -> Sign {
    x.sign()
}

/// Exact sign of `x − y` for algebraic numbers over any radicands.
pub fn sign_of_difference(x: &AlgebraicNumber, y: &AlgebraicNumber) -> Sign {
    if let Ok(d) = x.checked_sub(y) {
        return d.sign();
    }
    SurdExpr::from(x).sub(&SurdExpr::from(y)).certified_sign()
}

/// Exact sign of `x·y − z·w` for algebraic numbers over any radicands.
pub fn sign_of_product_difference(
    x: &AlgebraicNumber,
    y: &AlgebraicNumber,
    z: &AlgebraicNumber,
    w: &AlgebraicNumber,
) -> Sign {
    let l = SurdExpr::from(x).mul(&SurdExpr::from(y));
    let r = SurdExpr::from(z).mul(&SurdExpr::from(w));
    l.sub(&r).certified_sign()
}

/// Exact sign of any expression: the public face of the certified ladder.
pub fn certified_sign(e: &SurdExpr) -> Sign {
    e.certified_sign()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::int;

    fn s(m: i64) -> SurdExpr {
        SurdExpr::sqrt_int(BigInt::from(m))
    }

    #[test]
    fn sqrt_two_minus_one_positive() {
        assert_eq!(s(2).sub(&SurdExpr::constant(int(1))).certified_sign(), Sign::Positive);
    }

    #[test]
    fn same_radicand_difference_is_zero() {
        let x = SurdExpr::constant(int(1)).add(&s(2));
        assert_eq!(x.sub(&x).certified_sign(), Sign::Zero);
        assert!(x.sub(&x).is_structurally_zero());
    }

    #[test]
    fn composite_field_fallback_detects_zero() {
        // √2·√3 − √6 is structurally nonzero: the exact fallback must fire.
        let e = s(2).mul(&s(3)).sub(&s(6));
        assert!(!e.is_structurally_zero());
        assert_eq!(e.interval(MAX_PRECISION_BITS).certain_sign(), None);
        assert_eq!(e.certified_sign(), Sign::Zero);
        // Independent check by squaring: (√2√3)² = 6 = (√6)².
        let lhs = s(2).mul(&s(3));
        assert_eq!(lhs.mul(&lhs), SurdExpr::constant(int(6)));
    }

    #[test]
    fn nested_cancellation() {
        // (√2 + √3)² − 5 − 2√6 = 0
        let t = s(2).add(&s(3));
        let e = t.mul(&t).sub(&SurdExpr::constant(int(5))).sub(&s(6).scale(&int(2)));
        assert_eq!(e.certified_sign(), Sign::Zero);
        let e2 = e.add(&SurdExpr::constant(Rational::new(1.into(), BigInt::from(10).pow(40))));
        assert_eq!(e2.certified_sign(), Sign::Positive);
    }

    #[test]
    fn tiny_nonzero_differences_are_resolved() {
        // √(10^40 + 1) − 10^20 ≈ 5·10^-21, positive.
        let big = BigInt::from(10).pow(40) + 1;
        let e = SurdExpr::sqrt_int(big).sub(&SurdExpr::constant(Rational::from_integer(BigInt::from(10).pow(20))));
        assert_eq!(e.certified_sign(), Sign::Positive);
    }

    #[test]
    fn products_over_distinct_radicands() {
        let x = AlgebraicNumber::sqrt_of(int(2)).unwrap();
        let y = AlgebraicNumber::sqrt_of(int(3)).unwrap();
        let z = AlgebraicNumber::sqrt_of(int(6)).unwrap();
        let one = AlgebraicNumber::one();
        assert_eq!(sign_of_product_difference(&x, &y, &z, &one), Sign::Zero);
        assert_eq!(sign_of_difference(&y, &x), Sign::Positive);
    }
}
