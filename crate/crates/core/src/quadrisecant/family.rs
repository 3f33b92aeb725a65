//! The ruled surface of lines meeting three edge lines.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::exact::poly::Poly;
use crate::exact::{det3, AlgebraicNumber, CertifiedInterval, Point3, Rational, Sign, Vec3};
use crate::knot::PolygonalKnot;

use super::QuadrisecantError;

/// Shape of the surface swept by the transversals of three edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    /// Both key determinants vanish: the edges are consecutive and no
    /// transversal can be a quadrisecant.
    AdjacentCollapse,
    /// One key determinant vanishes: the family sweeps part of a plane.
    Planar,
    Quadric,
}

/// Lines through `V_i + p·v_i`, `V_j + q·v_j`, `V_k + r·v_k` where
///
/// ```text
/// p(x) = a1/(1−x) + b1,   q(x) = a2·(x−1)/x + b2,   r(x) = a3·x + b3
/// ```
///
/// and the points satisfy `(1−x)·P_i + x·P_j = P_k`. Coefficients are
/// stored as numerators over the common denominator `Det(v_i, v_j, v_k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransversalFamily {
    pub edges: [usize; 3],
    pub det: Rational,
    /// `[a1, b1, a2, b2, a3, b3]` times `det`.
    pub numerators: [Rational; 6],
    base: [Point3; 3],
    dirs: [Point3; 3],
}

/// One member of a [`TransversalFamily`].
#[derive(Clone, Debug)]
pub struct FamilyLine {
    pub params: [Rational; 3],
    pub points: [Point3; 3],
}

impl TransversalFamily {
    /// The family for edges `i, j, k` of `knot`, without the `(b′)` check.
    pub fn raw(knot: &PolygonalKnot, i: usize, j: usize, k: usize) -> Self {
        let (vi, vj, vk) = (knot.edge(i), knot.edge(j), knot.edge(k));
        let (pi, pj, pk) = (knot.vertex(i), knot.vertex(j), knot.vertex(k));
        let numerators = [
            det3(&pk.minus(pj), &vj, &vk),
            det3(&pj.minus(pi), &vj, &vk),
            det3(&vi, &pi.minus(pk), &vk),
            det3(&vi, &pk.minus(pj), &vk),
            det3(&vi, &vj, &pj.minus(pi)),
            det3(&vi, &vj, &pi.minus(pk)),
        ];
        TransversalFamily {
            edges: [i, j, k],
            det: det3(&vi, &vj, &vk),
            numerators,
            base: [pi.clone(), pj.clone(), pk.clone()],
            dirs: [vi, vj, vk],
        }
    }

    pub fn coefficient(&self, idx: usize) -> Rational {
        &self.numerators[idx] / &self.det
    }

    pub fn kind(&self) -> FamilyKind {
        match (self.numerators[0].is_zero(), self.numerators[4].is_zero()) {
            (true, true) => FamilyKind::AdjacentCollapse,
            (false, false) => FamilyKind::Quadric,
            _ => FamilyKind::Planar,
        }
    }

    pub fn params_at(&self, x: &Rational) -> Option<[Rational; 3]> {
        let one = Rational::one();
        if x.is_zero() || *x == one {
            return None;
        }
        let c = |i| self.coefficient(i);
        let p = c(0) / (&one - x) + c(1);
        let q = c(2) * (x - &one) / x + c(3);
        let r = c(4) * x + c(5);
        Some([p, q, r])
    }

    /// The member line at a rational parameter `x ∉ {0, 1}`.
    pub fn line_at(&self, x: &Rational) -> Option<FamilyLine> {
        let params = self.params_at(x)?;
        let points = [0, 1, 2].map(|t| self.base[t].plus(&self.dirs[t].scale(&params[t])));
        Some(FamilyLine { params, points })
    }

    pub fn params_at_algebraic(&self, x: &AlgebraicNumber) -> Option<[AlgebraicNumber; 3]> {
        let one = AlgebraicNumber::one();
        if x.is_zero() || *x == one {
            return None;
        }
        let c = |i| AlgebraicNumber::from_rational(self.coefficient(i));
        let p = &(&c(0) / &(&one - x)) + &c(1);
        let q = &(&(&c(2) * &(x - &one)) / x) + &c(3);
        let r = &(&c(4) * x) + &c(5);
        Some([p, q, r])
    }

    /// `false` only when a certified enclosure proves that one of `p`, `q`,
    /// `r` at `x` lies outside `[0, 1)`. Cheap rejection ahead of exact
    /// back-substitution.
    pub fn may_be_admissible(&self, x: &AlgebraicNumber) -> bool {
        const BITS: u32 = 128;
        let iv = |r: &Rational| CertifiedInterval::point(r, BITS);
        let c = |i| iv(&self.coefficient(i));
        let one = iv(&Rational::one());
        let xi = x.interval(BITS);
        let t = one.sub(&xi);
        // v·d with d of certain sign s: v < 0 iff s·(v·d) < 0, v ≥ 1 iff s·((v−1)·d) ≥ 0.
        let outside = |vd: CertifiedInterval, v1d: CertifiedInterval, d: &CertifiedInterval| {
            let Some(s) = d.certain_sign().filter(|s| *s != Sign::Zero) else {
                return false;
            };
            let flip = |i: CertifiedInterval| if s == Sign::Negative { i.neg() } else { i };
            flip(vd).certain_sign() == Some(Sign::Negative)
                || matches!(flip(v1d).certain_sign(), Some(Sign::Positive) | Some(Sign::Zero))
        };
        // p·(1−x) = a1 + b1·(1−x)
        let pt = c(0).add(&c(1).mul(&t));
        if outside(pt.clone(), pt.sub(&t), &t) {
            return false;
        }
        // q·x = a2·(x−1) + b2·x
        let qx = c(2).mul(&xi.sub(&one)).add(&c(3).mul(&xi));
        if outside(qx.clone(), qx.sub(&xi), &xi) {
            return false;
        }
        let r = c(4).mul(&xi).add(&c(5));
        !outside(r.clone(), r.sub(&one), &one)
    }

    /// Components of `x(1−x)·(P_j − P_i)`, a direction of the member line,
    /// as polynomials in `x`.
    pub fn direction_polys(&self) -> [Poly; 3] {
        let c = |i| self.coefficient(i);
        let r = |v: i64| Rational::from_integer(v.into());
        let x_1mx = Poly::new(vec![r(0), r(1), r(-1)]);
        let one_mx_sq = Poly::new(vec![r(1), r(-2), r(1)]);
        let x = Poly::new(vec![r(0), r(1)]);
        // q·x(1−x) = −a2(1−x)² + b2·x(1−x);  p·x(1−x) = a1·x + b1·x(1−x)
        let qj = one_mx_sq.scale(&-c(2)).add(&x_1mx.scale(&c(3)));
        let pi = x.scale(&c(0)).add(&x_1mx.scale(&c(1)));
        let base = self.base[1].minus(&self.base[0]);
        let comp = |b: &Rational, vj: &Rational, vi: &Rational| {
            x_1mx.scale(b).add(&qj.scale(vj)).sub(&pi.scale(vi))
        };
        [
            comp(&base.x, &self.dirs[1].x, &self.dirs[0].x),
            comp(&base.y, &self.dirs[1].y, &self.dirs[0].y),
            comp(&base.z, &self.dirs[1].z, &self.dirs[0].z),
        ]
    }

    /// Values of `x` where one of `p`, `q`, `r` crosses 0 or 1, plus the
    /// excluded points 0 and 1: the admissible set is a union of intervals
    /// between consecutive critical values.
    pub fn critical_values(&self) -> Vec<Rational> {
        let one = Rational::one();
        let c = |i| self.coefficient(i);
        let mut out = vec![Rational::zero(), one.clone()];
        for target in [Rational::zero(), one.clone()] {
            // a1/(1−x) + b1 = t  ⇒  x = 1 − a1/(t − b1)
            if !c(0).is_zero() && target != c(1) {
                out.push(&one - c(0) / (&target - c(1)));
            }
            // a2(x−1)/x + b2 = t  ⇒  x = a2 / (a2 + b2 − t)
            let den = c(2) + c(3) - &target;
            if !c(2).is_zero() && !den.is_zero() {
                out.push(c(2) / den);
            }
            if !c(4).is_zero() {
                out.push((&target - c(5)) / c(4));
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// Whether all three parameters lie in `[0, 1)` at `x`.
    pub fn admissible_at(&self, x: &Rational) -> bool {
        self.params_at(x)
            .is_some_and(|ps| ps.iter().all(|p| !p.is_negative() && *p < Rational::one()))
    }
}

/// The transversal family of three edges, rejecting linearly dependent
/// edge vectors.
pub fn transversal_family(
    knot: &PolygonalKnot,
    triple: [usize; 3],
) -> Result<TransversalFamily, QuadrisecantError> {
    let [i, j, k] = triple;
    let fam = TransversalFamily::raw(knot, i, j, k);
    if fam.det.is_zero() {
        return Err(QuadrisecantError::DependentEdges { triple });
    }
    Ok(fam)
}

/// `A, B, C` of the quadratic in `x` for edges `i < j < k < l`, scaled by
/// `(Det(v_i,v_j,v_k)·Det(v_i,v_j,v_l))²` so they are polynomials in the
/// vertex coordinates.
pub(crate) fn homogeneous_coefficients(
    f: &TransversalFamily,
    g: &TransversalFamily,
) -> [Rational; 3] {
    let (d1, d2) = (&f.det, &g.det);
    let [na1, nb1, na2, nb2, _, _] = &f.numerators;
    let [nc1, nd1, nc2, nd2, _, _] = &g.numerators;
    // With e1 = b1 − d1, e2 = b2 − d2, g = c1 − e1 the quadratic is
    // A = −g(a2+e2) + c1c2,  B = (a2+e2)(g−a1) + a2·g − c1c2,  C = −a2(g−a1).
    let gg = d1 * (nc1 + nd1) - d2 * nb1;
    let h = d2 * (na2 + nb2) - d1 * nd2;
    let gp = &gg - d2 * na1;
    let cc = d1 * d1 * nc1 * nc2;
    let a = -(&gg * &h) + &cc;
    let b = &h * &gp + d2 * na2 * &gg - &cc;
    let c = -(d2 * na2 * &gp);
    [a, b, c]
}

pub(crate) fn point_on(base: &Point3, dir: &Point3, t: &AlgebraicNumber) -> Vec3<AlgebraicNumber> {
    let lift = |v: &Rational| AlgebraicNumber::from_rational(v.clone());
    Vec3::new(
        &lift(&base.x) + &(&lift(&dir.x) * t),
        &lift(&base.y) + &(&lift(&dir.y) * t),
        &lift(&base.z) + &(&lift(&dir.z) * t),
    )
}
