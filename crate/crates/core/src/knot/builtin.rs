//! The hexagonal unknot, the 14-edge unknot and their construction stages.

use std::fmt;
use std::str::FromStr;

use crate::exact::rational::rat;
use crate::exact::{Point3, Rational, Vec3};

use super::{KnotError, PolygonalKnot};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BuiltinKnot {
    K6,
    K14,
    K0,
    K6TriangleStage,
    K14Remark,
}

impl BuiltinKnot {
    pub const ALL: [BuiltinKnot; 5] = [
        BuiltinKnot::K6,
        BuiltinKnot::K14,
        BuiltinKnot::K0,
        BuiltinKnot::K6TriangleStage,
        BuiltinKnot::K14Remark,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BuiltinKnot::K6 => "k6",
            BuiltinKnot::K14 => "k14",
            BuiltinKnot::K0 => "k0",
            BuiltinKnot::K6TriangleStage => "k6_triangle_stage",
            BuiltinKnot::K14Remark => "k14_remark",
        }
    }

    pub fn valid_names() -> String {
        BuiltinKnot::ALL.map(|b| b.name()).join(", ")
    }

    pub fn knot(self) -> PolygonalKnot {
        let named = |vs: Vec<Point3>| PolygonalKnot::new(self.name(), vs).expect("builtin is valid");
        match self {
            BuiltinKnot::K6 => named(k6_vertices()),
            BuiltinKnot::K6TriangleStage => named(ints(&[
                (0, 0, 0),
                (1, 0, 0),
                (2, 0, 1),
                (3, 0, 0),
                (4, 0, 0),
                (2, 3, 0),
            ])),
            BuiltinKnot::K0 => named(k0_vertices()),
            BuiltinKnot::K14 => k14_from_primary(&named(k0_vertices())).with_name(self.name()),
            BuiltinKnot::K14Remark => {
                let mut v = k0_vertices();
                v[9] = point(K14_REMARK_V10);
                v[11] = point(K14_REMARK_V12);
                k14_from_primary(&named(v)).with_name(self.name())
            }
        }
    }
}

impl fmt::Display for BuiltinKnot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BuiltinKnot {
    type Err = KnotError;
    fn from_str(s: &str) -> Result<Self, KnotError> {
        let key = s.trim().to_ascii_lowercase().replace('-', "_");
        BuiltinKnot::ALL
            .into_iter()
            .find(|b| b.name() == key)
            .ok_or_else(|| KnotError::UnknownBuiltin {
                name: s.to_string(),
                valid: BuiltinKnot::valid_names(),
            })
    }
}

pub fn builtin_knot(name: &str) -> Result<PolygonalKnot, KnotError> {
    Ok(name.parse::<BuiltinKnot>()?.knot())
}

type Coord = ((i64, i64), (i64, i64), (i64, i64));

fn point(c: Coord) -> Point3 {
    Vec3::new(rat(c.0 .0, c.0 .1), rat(c.1 .0, c.1 .1), rat(c.2 .0, c.2 .1))
}

fn ints(c: &[(i64, i64, i64)]) -> Vec<Point3> {
    c.iter().map(|&(x, y, z)| Vec3::from_ints(x, y, z)).collect()
}

fn k6_vertices() -> Vec<Point3> {
    [
        ((-1, 5), (-3, 10), (0, 1)),
        ((4, 5), (0, 1), (-1, 5)),
        ((2, 1), (0, 1), (1, 1)),
        ((13, 4), (0, 1), (-1, 4)),
        ((17, 4), (-3, 8), (0, 1)),
        ((2, 1), (3, 1), (0, 1)),
    ]
    .into_iter()
    .map(point)
    .collect()
}

fn k0_vertices() -> Vec<Point3> {
    ints(&[
        (0, 0, 0),
        (0, 0, -4),
        (8, -2, -4),
        (6, -3, -6),
        (0, 0, -6),
        (0, 0, -8),
        (10, -1, -8),
        (10, -1, 1),
        (6, 1, 0),
        (8, 0, -1),
        (6, -1, 0),
        (12, -2, -3),
        (12, 0, 0),
        (6, 2, 0),
    ])
}

/// Replacement `V10` and `V12` that make the four quadrisecants disjoint.
pub const K14_REMARK_V10: Coord = ((8, 1), (0, 1), (-11, 10));
pub const K14_REMARK_V12: Coord = ((12, 1), (-2, 1), (-33, 10));

/// The published coordinate table of the 14-edge unknot, kept as an
/// independent cross-check of [`k14_from_primary`].
pub const K14_TABLE: [Coord; 14] = [
    ((-3, 5), (-1, 5), (0, 1)),
    ((-19, 25), (11, 50), (-99, 25)),
    ((228, 25), (-66, 25), (-112, 25)),
    ((143, 20), (-121, 40), (-109, 20)),
    ((-13, 10), (11, 20), (-61, 10)),
    ((-1, 1), (1, 10), (-171, 20)),
    ((10, 1), (-1, 1), (-8, 1)),
    ((10, 1), (-1, 1), (1, 1)),
    ((28, 5), (6, 5), (-1, 10)),
    ((81, 10), (1, 20), (-21, 20)),
    ((59, 10), (-21, 20), (1, 20)),
    ((12, 1), (-11, 5), (-33, 10)),
    ((12, 1), (1, 5), (3, 10)),
    ((6, 1), (2, 1), (0, 1)),
];

pub fn k14_table_vertices() -> Vec<Point3> {
    K14_TABLE.into_iter().map(point).collect()
}

/// Shrinks `V3V4`, drops `V6` along the z-axis and extends seven edges
/// of a 14-vertex primary knot.
pub fn k14_from_primary(k0: &PolygonalKnot) -> PolygonalKnot {
    assert_eq!(k0.len(), 14, "primary knot has 14 vertices");
    let v = |i: usize| k0.vertex(i - 1).clone();
    let r = rat;
    let add = |a: &Point3, b: &Point3, s: Rational| a.plus(&b.scale(&s));
    let d3 = r(1, 5);
    let d4 = r(1, 4);
    let d6 = r(1, 2);
    let e1 = r(1, 10);
    let e2 = r(1, 10);
    let e3 = r(1, 5);
    let e4 = r(1, 10);
    let e5 = r(1, 5);
    let e6 = r(1, 10);
    let e9 = r(1, 10);
    let e10 = r(1, 20);
    let e11 = r(1, 20);
    let e12 = r(1, 10);
    let e13 = r(1, 10);

    let v34 = v(3).minus(&v(4));
    let u3 = add(&v(3), &v34, -d3);
    let u4 = add(&v(4), &v34, d4);
    let u6 = v(6).minus(&Vec3::new(r(0, 1), r(0, 1), d6));
    let w6 = add(&u6, &u6.minus(&v(7)), e6);
    let w4 = add(&u4, &u4.minus(&v(5)), e4);
    let w5 = add(&v(5), &u4.minus(&v(5)), -e5);
    let w2 = add(&v(2), &v(2).minus(&u3), e2);
    let w3 = add(&u3, &v(2).minus(&u3), -e3);
    let w1 = add(&v(1), &v(1).minus(&v(14)), e1);
    let w9 = add(&v(9), &v(9).minus(&v(8)), e9);
    let w10 = add(&v(10), &v(10).minus(&v(11)), e10);
    let w11 = add(&v(11), &v(10).minus(&v(11)), -e11);
    let w12 = add(&v(12), &v(12).minus(&v(13)), e12);
    let w13 = add(&v(13), &v(12).minus(&v(13)), -e13);
    let vs = vec![
        w1,
        w2,
        w3,
        w4,
        w5,
        w6,
        v(7),
        v(8),
        w9,
        w10,
        w11,
        w12,
        w13,
        v(14),
    ];
    PolygonalKnot::new(format!("{}-extended", k0.name()), vs).expect("extension keeps edges nonzero")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k6_w3() {
        let k = builtin_knot("k6").unwrap();
        assert_eq!(k.vertex(2), &Vec3::from_ints(2, 0, 1));
    }

    #[test]
    fn k14_formulas_match_table() {
        let k = builtin_knot("k14").unwrap();
        assert_eq!(k.vertices(), k14_table_vertices().as_slice());
        assert_eq!(k.vertex(6), &Vec3::from_ints(10, -1, -8));
        assert_eq!(k.vertex(4), &Vec3::new(rat(-13, 10), rat(11, 20), rat(-61, 10)));
    }

    #[test]
    fn names_parse() {
        assert_eq!("K6".parse::<BuiltinKnot>().unwrap(), BuiltinKnot::K6);
        assert_eq!("k6-triangle-stage".parse::<BuiltinKnot>().unwrap(), BuiltinKnot::K6TriangleStage);
        let err = builtin_knot("bogus").unwrap_err().to_string();
        assert!(err.contains("k14"), "{err}");
    }

    #[test]
    fn remark_variant_differs_only_downstream_of_v10_v12() {
        let a = builtin_knot("k14").unwrap();
        let b = builtin_knot("k14_remark").unwrap();
        for i in [0, 1, 2, 3, 4, 5, 6, 7, 8, 13] {
            assert_eq!(a.vertex(i), b.vertex(i), "W{}", i + 1);
        }
        assert_ne!(a.vertex(9), b.vertex(9));
    }
}
