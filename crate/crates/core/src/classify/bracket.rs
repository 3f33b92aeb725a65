//! Kauffman bracket state sum and the Jones polynomial.

use rayon::prelude::*;

use crate::exact::Rational;

use super::{ClassifyError, KnotDiagram, LaurentPolynomial};

/// Largest crossing count accepted by the state sum.
pub const DEFAULT_MAX_CROSSINGS: usize = 24;

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Number of loops after smoothing crossing `i` by `A` when bit `i` of
/// `state` is clear and by `B` otherwise.
fn loops(pd: &[[usize; 4]], arcs: usize, state: u64, parent: &mut Vec<usize>) -> usize {
    parent.clear();
    parent.extend(0..arcs);
    let mut components = arcs;
    let mut join = |parent: &mut Vec<usize>, a: usize, b: usize| {
        let (ra, rb) = (find(parent, a - 1), find(parent, b - 1));
        if ra != rb {
            parent[ra] = rb;
            components -= 1;
        }
    };
    for (i, x) in pd.iter().enumerate() {
        if state >> i & 1 == 0 {
            join(parent, x[0], x[1]);
            join(parent, x[2], x[3]);
        } else {
            join(parent, x[0], x[3]);
            join(parent, x[1], x[2]);
        }
    }
    components
}

/// `⟨D⟩` in the variable `A`, normalized so the crossingless circle is 1.
pub fn kauffman_bracket(d: &KnotDiagram, max_crossings: usize) -> Result<LaurentPolynomial, ClassifyError> {
    let c = d.crossing_count();
    if c > max_crossings.min(63) {
        return Err(ClassifyError::CrossingCap { count: c, cap: max_crossings });
    }
    if c == 0 {
        return Ok(LaurentPolynomial::one());
    }
    let pd = d.pd_code();
    let arcs = d.arc_count;
    // counts[a][l]: states with `a` A-smoothings and `l` loops.
    let width = c + 2;
    let counts = (0..1u64 << c)
        .into_par_iter()
        .fold(
            || (vec![0u64; (c + 1) * width], Vec::with_capacity(arcs)),
            |(mut acc, mut parent), state| {
                let l = loops(&pd, arcs, state, &mut parent);
                let a = c - state.count_ones() as usize;
                acc[a * width + l] += 1;
                (acc, parent)
            },
        )
        .map(|(acc, _)| acc)
        .reduce(
            || vec![0u64; (c + 1) * width],
            |mut x, y| {
                x.iter_mut().zip(y).for_each(|(a, b)| *a += b);
                x
            },
        );
    let loop_value = LaurentPolynomial::from_terms(&[(2, -1), (-2, -1)]);
    let mut powers = vec![LaurentPolynomial::one()];
    for k in 1..width {
        powers.push(powers[k - 1].mul(&loop_value));
    }
    let mut out = LaurentPolynomial::zero();
    for a in 0..=c {
        for l in 1..width {
            let n = counts[a * width + l];
            if n > 0 {
                let exp = a as i64 - (c - a) as i64;
                let term = powers[l - 1].mul(&LaurentPolynomial::monomial(Rational::from_integer(n.into()), exp));
                out = out.add(&term);
            }
        }
    }
    Ok(out)
}

/// `(−A³)^(−w)·⟨D⟩` with `A = t^(−1/4)`.
pub fn jones_from_bracket(bracket: &LaurentPolynomial, writhe: i64) -> LaurentPolynomial {
    let sign = if writhe % 2 == 0 { 1 } else { -1 };
    let factor = LaurentPolynomial::from_terms(&[(-3 * writhe, sign)]);
    let in_a = bracket.mul(&factor);
    in_a
        .compose_power(-1)
        .divide_exponents(4)
        .expect("normalized bracket of a knot diagram has exponents divisible by 4")
}

pub fn jones_polynomial(d: &KnotDiagram, max_crossings: usize) -> Result<LaurentPolynomial, ClassifyError> {
    Ok(jones_from_bracket(&kauffman_bracket(d, max_crossings)?, d.writhe()))
}
