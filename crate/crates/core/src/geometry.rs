//! Exact segment predicates over any [`Scalar`].

use serde::Serialize;

use crate::exact::{det3, Scalar, Sign, Vec3};

/// How two closed segments meet. Loci are decimal approximations for
/// reporting; the classification itself is exact.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Contact {
    Point { at: [f64; 3] },
    Overlap { from: [f64; 3], to: [f64; 3] },
}

impl Contact {
    pub fn is_overlap(&self) -> bool {
        matches!(self, Contact::Overlap { .. })
    }
}

fn lerp_approx<T: Scalar>(a: &Vec3<T>, u: &Vec3<T>, num: &T, den: &T) -> [f64; 3] {
    let t = num.approx() / den.approx();
    let a = a.approx();
    let u = u.approx();
    [a[0] + t * u[0], a[1] + t * u[1], a[2] + t * u[2]]
}

/// `0 ≤ num ≤ den` for `den > 0`.
fn in_unit<T: Scalar>(num: &T, den: &T) -> bool {
    num.sign() != Sign::Negative && den.minus(num).sign() != Sign::Negative
}

/// Exact contact test between the closed segments `ab` and `cd`.
pub fn segment_contact<T: Scalar>(
    a: &Vec3<T>,
    b: &Vec3<T>,
    c: &Vec3<T>,
    d: &Vec3<T>,
) -> Option<Contact> {
    let u = b.minus(a);
    let v = d.minus(c);
    let w = c.minus(a);
    if det3(&u, &v, &w).sign() != Sign::Zero {
        return None;
    }
    let n = u.cross(&v);
    if !n.is_zero_exact() {
        let den = n.norm_sq();
        let s_num = w.cross(&v).dot(&n);
        let t_num = w.cross(&u).dot(&n);
        if in_unit(&s_num, &den) && in_unit(&t_num, &den) {
            return Some(Contact::Point {
                at: lerp_approx(a, &u, &s_num, &den),
            });
        }
        return None;
    }
    if !w.cross(&u).is_zero_exact() {
        return None;
    }
    // Collinear: compare projections onto u, scaled by |u|².
    let uu = u.norm_sq();
    let c0 = w.dot(&u);
    let c1 = d.minus(a).dot(&u);
    let (lo_c, hi_c) = if c0.cmp_exact(&c1).is_le() { (c0, c1) } else { (c1, c0) };
    let zero = T::from_int(0);
    let lo = if lo_c.cmp_exact(&zero).is_ge() { lo_c } else { zero };
    let hi = if hi_c.cmp_exact(&uu).is_le() { hi_c } else { uu.clone() };
    match lo.cmp_exact(&hi) {
        std::cmp::Ordering::Greater => None,
        std::cmp::Ordering::Equal => Some(Contact::Point {
            at: lerp_approx(a, &u, &lo, &uu),
        }),
        std::cmp::Ordering::Less => Some(Contact::Overlap {
            from: lerp_approx(a, &u, &lo, &uu),
            to: lerp_approx(a, &u, &hi, &uu),
        }),
    }
}

/// Contact between consecutive segments `ab`, `bc` other than at `b` itself:
/// they overlap iff they are collinear and fold back onto each other.
pub fn adjacent_fold<T: Scalar>(a: &Vec3<T>, b: &Vec3<T>, c: &Vec3<T>) -> Option<Contact> {
    let u = b.minus(a);
    let v = c.minus(b);
    if !u.cross(&v).is_zero_exact() || v.dot(&u).sign() != Sign::Negative {
        return None;
    }
    // Overlap runs from b back to whichever of a, c is nearer.
    let back = if u.norm_sq().cmp_exact(&v.norm_sq()).is_le() { a } else { c };
    Some(Contact::Overlap {
        from: b.approx(),
        to: back.approx(),
    })
}

/// Twice the signed area of the planar triangle `pqr`.
pub fn orient2d<T: Scalar>(p: &[T; 2], q: &[T; 2], r: &[T; 2]) -> Sign {
    let a = q[0].minus(&p[0]).times(&r[1].minus(&p[1]));
    let b = q[1].minus(&p[1]).times(&r[0].minus(&p[0]));
    a.minus(&b).sign()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{Point3, Rational};

    fn p(x: i64, y: i64, z: i64) -> Point3 {
        Vec3::from_ints(x, y, z)
    }

    #[test]
    fn crossing_in_plane() {
        let c = segment_contact(&p(0, 0, 0), &p(2, 2, 0), &p(0, 2, 0), &p(2, 0, 0));
        assert_eq!(c, Some(Contact::Point { at: [1.0, 1.0, 0.0] }));
    }

    #[test]
    fn skew_segments_miss() {
        assert_eq!(segment_contact(&p(0, 0, 0), &p(2, 0, 0), &p(1, -1, 1), &p(1, 1, 1)), None);
    }

    #[test]
    fn endpoint_touch() {
        let c = segment_contact(&p(0, 0, 0), &p(2, 0, 0), &p(2, 0, 0), &p(3, 5, 0));
        assert!(matches!(c, Some(Contact::Point { .. })));
    }

    #[test]
    fn collinear_cases() {
        let o = segment_contact(&p(0, 0, 0), &p(4, 0, 0), &p(5, 0, 0), &p(1, 0, 0));
        assert_eq!(o, Some(Contact::Overlap { from: [1.0, 0.0, 0.0], to: [4.0, 0.0, 0.0] }));
        let t = segment_contact(&p(0, 0, 0), &p(4, 0, 0), &p(4, 0, 0), &p(6, 0, 0));
        assert_eq!(t, Some(Contact::Point { at: [4.0, 0.0, 0.0] }));
        assert_eq!(segment_contact(&p(0, 0, 0), &p(4, 0, 0), &p(5, 0, 0), &p(6, 0, 0)), None);
        assert_eq!(segment_contact(&p(0, 0, 0), &p(4, 0, 0), &p(0, 1, 0), &p(4, 1, 0)), None);
    }

    #[test]
    fn folds() {
        assert!(adjacent_fold(&p(0, 0, 0), &p(4, 0, 0), &p(1, 0, 0)).is_some());
        assert!(adjacent_fold(&p(0, 0, 0), &p(4, 0, 0), &p(6, 0, 0)).is_none());
        assert!(adjacent_fold(&p(0, 0, 0), &p(4, 0, 0), &p(4, 1, 0)).is_none());
    }

    #[test]
    fn orientation() {
        let r = |x: i64, y: i64| [Rational::from_integer(x.into()), Rational::from_integer(y.into())];
        assert_eq!(orient2d(&r(0, 0), &r(1, 0), &r(0, 1)), Sign::Positive);
        assert_eq!(orient2d(&r(0, 0), &r(1, 0), &r(2, 0)), Sign::Zero);
    }
}
