use proptest::prelude::*;

use quadlab_core::approximation::approximate;
use quadlab_core::classify::{classify_knot, ClassifyOptions};
use quadlab_core::exact::rational::rat;
use quadlab_core::exact::{lift_point, to_surd_point, AlgebraicNumber, Point3, SurdExpr, Vec3};
use quadlab_core::knot::{builtin_knot, random_generic_knot, AffineMap, PolygonalKnot};
use quadlab_core::quadrisecant::{find_all_quadrisecants, Quadrisecant};

fn small_rat() -> impl Strategy<Value = quadlab_core::exact::Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn point() -> impl Strategy<Value = Point3> {
    (small_rat(), small_rat(), small_rat()).prop_map(|(x, y, z)| Vec3::new(x, y, z))
}

fn invertible_map() -> impl Strategy<Value = AffineMap> {
    (point(), point(), point(), point())
        .prop_map(|(a, b, c, t)| AffineMap {
            rows: [a, b, c],
            translation: t,
        })
        .prop_filter("singular", |m| m.is_invertible())
}

fn knot_seed() -> impl Strategy<Value = (usize, u64)> {
    (5usize..=7, 0u64..10_000)
}

/// Sorted `(edge, parameter)` pairs of a quadrisecant.
fn signature(q: &Quadrisecant) -> Vec<(usize, AlgebraicNumber)> {
    let mut s: Vec<_> = q.secants.iter().map(|r| (r.edge, r.parameter.clone())).collect();
    s.sort_by_key(|(e, _)| *e);
    s
}

fn assert_collinear(q: &Quadrisecant) {
    let p: Vec<Vec3<SurdExpr>> = q.secants.iter().map(|s| to_surd_point(&s.point)).collect();
    let d = p[1].minus(&p[0]);
    for k in [2, 3] {
        assert!(d.cross(&p[k].minus(&p[0])).is_zero_exact(), "points are not collinear");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn reversal_mirrors_parameters((n, seed) in knot_seed()) {
        let k = random_generic_knot(n, seed);
        let fwd = find_all_quadrisecants(&k).unwrap();
        let back = find_all_quadrisecants(&k.reversed()).unwrap();
        prop_assert_eq!(fwd.len(), back.len());
        let one = AlgebraicNumber::one();
        let mut expected: Vec<_> = back
            .iter()
            .map(|q| {
                let mut s: Vec<_> =
                    signature(q).into_iter().map(|(e, p)| (n - 1 - e, &one - &p)).collect();
                s.sort_by_key(|(e, _)| *e);
                s
            })
            .collect();
        let mut got: Vec<_> = fwd.iter().map(signature).collect();
        let order = |a: &Vec<(usize, AlgebraicNumber)>, b: &Vec<(usize, AlgebraicNumber)>| {
            let key = |s: &Vec<(usize, AlgebraicNumber)>| (s.iter().map(|(e, _)| *e).collect::<Vec<_>>(), s[0].1.to_f64());
            key(a).partial_cmp(&key(b)).unwrap()
        };
        expected.sort_by(order);
        got.sort_by(order);
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn returned_lines_are_collinear((n, seed) in knot_seed()) {
        for q in find_all_quadrisecants(&random_generic_knot(n, seed)).unwrap() {
            assert_collinear(&q);
        }
    }

    #[test]
    fn general_position_ignores_labeling((n, seed) in knot_seed(), shift in 0usize..8, m in invertible_map()) {
        let k = random_generic_knot(n, seed);
        prop_assert!(k.check_general_position().passed);
        prop_assert!(k.rotated(shift).check_general_position().passed);
        prop_assert!(k.reversed().check_general_position().passed);
        prop_assert!(k.rotated(shift).is_simple().simple);
        prop_assert!(m.apply_knot(&k).unwrap().check_general_position().passed);
    }

    #[test]
    fn mirror_inverts_jones((n, seed) in (6usize..=7, 0u64..10_000)) {
        let k = random_generic_knot(n, seed);
        let m = k.map_vertices(|p| Vec3::new(p.x.clone(), p.y.clone(), -p.z.clone())).unwrap();
        let opts = ClassifyOptions::default();
        let (a, b) = (classify_knot(&k, &opts).unwrap(), classify_knot(&m, &opts).unwrap());
        prop_assert_eq!(a.jones.mirror(), b.jones);
        prop_assert_eq!(a.verdict.mirror(), b.verdict);
    }

    #[test]
    fn approximation_vertices_lie_on_their_edges((n, seed) in knot_seed()) {
        let k = random_generic_knot(n, seed);
        let a = approximate(&k).unwrap();
        for (v, src) in a.polygon.vertices.iter().zip(&a.polygon.provenance) {
            let r = &src.record;
            let base: Vec3<SurdExpr> = lift_point(k.vertex(r.edge));
            let dir: Vec3<SurdExpr> = lift_point(&k.edge(r.edge));
            let on_edge = base.plus(&dir.scale(&SurdExpr::from(&r.parameter)));
            prop_assert!(on_edge.minus(&to_surd_point(v)).is_zero_exact());
        }
    }
}

#[test]
fn k14_lines_are_collinear() {
    let k: PolygonalKnot = builtin_knot("k14").unwrap();
    let qs = find_all_quadrisecants(&k).unwrap();
    assert_eq!(qs.len(), 4);
    qs.iter().for_each(assert_collinear);
}
