//! Dense univariate polynomials over the rationals and Sturm root counting.

use num_traits::{Signed, Zero};

use super::{Rational, Sign};

/// Coefficients in ascending degree order, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

/// A point on the extended real line for sign evaluation.
#[derive(Clone, Debug)]
pub enum ExtendedPoint {
    NegInfinity,
    Finite(Rational),
    PosInfinity,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        use num_traits::ToPrimitive;
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = Rational::zero();
        Poly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) + o.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.scale(&Rational::from_integer((-1).into())))
    }

    pub fn scale(&self, s: &Rational) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer((i as i64).into()))
                .collect(),
        )
    }

    /// Quotient and remainder of Euclidean division by a nonzero polynomial.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let dd = divisor.coeffs.len() - 1;
        let lead = divisor.leading().unwrap().clone();
        let mut r = self.coeffs.clone();
        let mut q = vec![Rational::zero(); r.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let shift = r.len() - 1 - dd;
            let factor = r.last().unwrap() / &lead;
            for (i, c) in divisor.coeffs.iter().enumerate() {
                r[i + shift] -= &factor * c;
            }
            q[shift] = factor;
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        (Poly::new(q), Poly::new(r))
    }

    pub fn rem(&self, divisor: &Poly) -> Poly {
        self.div_rem(divisor).1
    }

    pub fn sign_at(&self, at: &ExtendedPoint) -> Sign {
        match at {
            ExtendedPoint::Finite(x) => Sign::of_rational(&self.eval(x)),
            ExtendedPoint::PosInfinity => self.leading().map_or(Sign::Zero, Sign::of_rational),
            ExtendedPoint::NegInfinity => match self.leading() {
                None => Sign::Zero,
                Some(l) => {
                    let s = Sign::of_rational(l);
                    if self.coeffs.len().is_multiple_of(2) {
                        s.flip()
                    } else {
                        s
                    }
                }
            },
        }
    }

    /// Sturm chain `p, p', −rem(p, p'), …`.
    pub fn sturm_chain(&self) -> Vec<Poly> {
        let mut chain = vec![self.clone()];
        if self.is_zero() {
            return chain;
        }
        let mut next = self.derivative();
        while !next.is_zero() {
            let r = chain.last().unwrap().rem(&next);
            chain.push(next);
            next = r.scale(&Rational::from_integer((-1).into()));
        }
        chain
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`.
    pub fn count_roots(&self, a: &ExtendedPoint, b: &ExtendedPoint) -> usize {
        let mut chain = self.sturm_chain();
        // Dividing by the gcd keeps the count right when an endpoint is a
        // repeated root.
        if let Some(g) = chain.last().filter(|g| g.degree().is_some_and(|d| d > 0)).cloned() {
            chain = chain.iter().map(|p| p.div_rem(&g).0).collect();
        }
        let changes = |at: &ExtendedPoint| {
            let signs: Vec<Sign> = chain
                .iter()
                .map(|p| p.sign_at(at))
                .filter(|s| *s != Sign::Zero)
                .collect();
            signs.windows(2).filter(|w| w[0] != w[1]).count()
        };
        changes(a).saturating_sub(changes(b))
    }

    /// True when the polynomial is strictly positive on the closed interval
    /// `[a, b]` (endpoints may be infinite, meaning the limit behaviour).
    pub fn positive_on(&self, a: &ExtendedPoint, b: &ExtendedPoint) -> bool {
        if self.is_zero() {
            return false;
        }
        if self.sign_at(a) != Sign::Positive || self.sign_at(b) != Sign::Positive {
            return false;
        }
        self.count_roots(a, b) == 0
    }

    pub fn max_abs_coeff(&self) -> Rational {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_else(Rational::zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::int;

    fn p(c: &[i64]) -> Poly {
        Poly::new(c.iter().map(|&v| int(v)).collect())
    }

    #[test]
    fn counts_roots_of_cubic() {
        // (x-1)(x-2)(x-3) = x³ - 6x² + 11x - 6
        let f = p(&[-6, 11, -6, 1]);
        let all = f.count_roots(&ExtendedPoint::NegInfinity, &ExtendedPoint::PosInfinity);
        assert_eq!(all, 3);
        let some = f.count_roots(&ExtendedPoint::Finite(int(0)), &ExtendedPoint::Finite(int(2)));
        assert_eq!(some, 2);
    }

    #[test]
    fn positivity() {
        let f = p(&[1, 0, 1]); // x² + 1
        assert!(f.positive_on(&ExtendedPoint::NegInfinity, &ExtendedPoint::PosInfinity));
        let g = p(&[-1, 0, 1]); // x² - 1
        assert!(!g.positive_on(&ExtendedPoint::Finite(int(-2)), &ExtendedPoint::Finite(int(2))));
        assert!(g.positive_on(&ExtendedPoint::Finite(int(2)), &ExtendedPoint::PosInfinity));
    }

    #[test]
    fn odd_degree_at_negative_infinity() {
        let f = p(&[0, 1]);
        assert_eq!(f.sign_at(&ExtendedPoint::NegInfinity), Sign::Negative);
    }

    #[test]
    fn repeated_root_at_endpoint() {
        // x²(x − 3): the double root at 0 sits on the interval boundary.
        let f = p(&[0, 0, -3, 1]);
        let fin = |v| ExtendedPoint::Finite(int(v));
        assert_eq!(f.count_roots(&fin(-1), &fin(0)), 1);
        assert_eq!(f.count_roots(&fin(0), &fin(2)), 0);
        assert_eq!(f.count_roots(&fin(0), &fin(3)), 1);
        assert_eq!(f.count_roots(&ExtendedPoint::NegInfinity, &ExtendedPoint::PosInfinity), 2);
        let (q, r) = f.div_rem(&p(&[0, 1]));
        assert_eq!((q, r), (p(&[0, -3, 1]), Poly::zero()));
    }
}
