use super::*;
use crate::exact::rational::{int, rat};
use crate::exact::Point3;
use crate::knot::{builtin_knot, random_generic_knot};
use num_traits::ToPrimitive;

fn ip(x: i64, y: i64, z: i64) -> Vec3<AlgebraicNumber> {
    Vec3::new(AlgebraicNumber::from_int(x), AlgebraicNumber::from_int(y), AlgebraicNumber::from_int(z))
}

#[test]
fn k6_has_exactly_the_axis() {
    let k = builtin_knot("k6").unwrap();
    let qs = find_all_quadrisecants(&k).unwrap();
    assert_eq!(qs.len(), 1);
    let q = &qs[0];
    assert_eq!(q.quadruple(), EdgeQuadruple::new(1, 2, 4, 5).unwrap());
    let pts: Vec<_> = q.secants.iter().map(|s| s.point.clone()).collect();
    assert_eq!(pts, vec![ip(1, 0, 0), ip(3, 0, 0), ip(4, 0, 0), ip(0, 0, 0)]);
    assert!(q.is_rational());
}

#[test]
fn k6_other_quadruples_are_empty() {
    let k = builtin_knot("k6").unwrap();
    let n = k.len();
    for i in 0..n {
        for j in i + 1..n {
            for kk in j + 1..n {
                for l in kk + 1..n {
                    let quad = EdgeQuadruple::new(i, j, kk, l).unwrap();
                    let QuadrupleOutcome::Lines(ls) = solve_quadruple(&k, &quad).unwrap() else {
                        panic!("degenerate {quad:?}")
                    };
                    let expect = usize::from(quad == EdgeQuadruple::new(1, 2, 4, 5).unwrap());
                    assert_eq!(ls.len(), expect, "{quad:?}");
                }
            }
        }
    }
}

#[test]
fn k14_has_four() {
    let qs = find_all_quadrisecants(&builtin_knot("k14").unwrap()).unwrap();
    assert_eq!(qs.len(), 4);
    assert!(qs.iter().all(Quadrisecant::verify_collinear));
}

#[test]
fn remark_variant_separates_the_crossing_pair() {
    let k = builtin_knot("k14_remark").unwrap();
    let qs = find_all_quadrisecants(&k).unwrap();
    assert_eq!(qs.len(), 4);
    // Pairwise disjoint: no shared secant point and no line crossing.
    for a in 0..4 {
        for b in a + 1..4 {
            let pa = to_surd_point(&qs[a].line.anchor);
            let da = to_surd_point(&qs[a].line.direction);
            let pb = to_surd_point(&qs[b].line.anchor);
            let db = to_surd_point(&qs[b].line.direction);
            let coplanar = crate::exact::det3(&da, &db, &pb.minus(&pa)).certified_sign() == Sign::Zero;
            assert!(!coplanar, "lines {a} and {b} meet");
        }
    }
    let on_w7w8: Vec<_> = qs
        .iter()
        .flat_map(|q| q.secants.iter())
        .filter(|s| s.edge == 6)
        .map(|s| s.point.clone())
        .collect();
    let v15 = ip(10, -1, -2);
    let v15p = Vec3::new(
        AlgebraicNumber::from_int(10),
        AlgebraicNumber::from_int(-1),
        AlgebraicNumber::from_rational(rat(-11, 5)),
    );
    assert!(on_w7w8.contains(&v15), "{on_w7w8:?}");
    assert!(on_w7w8.contains(&v15p), "{on_w7w8:?}");
}

#[test]
fn planar_parallel_pairs_are_infinite() {
    // Two pairs of parallel edges in the plane z = 0.
    let k = PolygonalKnot::from_ints(
        "planar",
        &[(0, 0, 0), (4, 0, 0), (4, 1, 0), (0, 1, 0), (0, 2, 0), (4, 2, 0), (4, 3, 0), (-1, 3, 0)],
    );
    let quad = EdgeQuadruple::new(0, 2, 4, 6).unwrap();
    assert_eq!(quadruple_coefficients(&k, &quad).unwrap(), [int(0), int(0), int(0)]);
    match solve_quadruple(&k, &quad).unwrap() {
        QuadrupleOutcome::Degenerate(r) => assert_eq!(r.kind, DegeneracyKind::InfiniteSolutions),
        other => panic!("{other:?}"),
    }
}

#[test]
fn excluded_roots_give_no_line() {
    let k = builtin_knot("k6").unwrap();
    let f = transversal_family(&k, [0, 2, 4]).unwrap();
    assert!(f.params_at(&int(0)).is_none());
    assert!(f.params_at(&int(1)).is_none());
}

fn coeffs_f64(fam: &TransversalFamily) -> [f64; 6] {
    std::array::from_fn(|i| fam.coefficient(i).to_f64().unwrap())
}

/// Floating-point residual of the q-consistency after fixing y from the
/// p-equation: vanishes exactly at transversals of all four lines.
fn residual(f: &[f64; 6], g: &[f64; 6], x: f64) -> f64 {
    let p = f[0] / (1.0 - x) + f[1];
    let q = f[2] * (x - 1.0) / x + f[3];
    let u = (p - g[1]) / g[0];
    let y = 1.0 - 1.0 / u;
    q - (g[2] * (y - 1.0) / y + g[3])
}

#[test]
fn coefficients_match_numeric_elimination() {
    for seed in 0..12u64 {
        let k = random_generic_knot(6, seed);
        let quad = EdgeQuadruple::new(0, 1, 3, 4).unwrap();
        let f = coeffs_f64(&transversal_family(&k, [0, 1, 3]).unwrap());
        let g = coeffs_f64(&transversal_family(&k, [0, 1, 4]).unwrap());
        let [a, b, c] = quadruple_coefficients(&k, &quad).unwrap();
        let exact: Vec<f64> = solve_quadratic_exact(&a, &b, &c).roots().iter().map(|r| r.to_f64()).collect();
        // Scan x = tan θ and bisect sign changes where the residual is continuous.
        let steps = 40_000;
        let xs: Vec<f64> = (1..steps)
            .map(|t| (std::f64::consts::PI * (t as f64 / steps as f64 - 0.5)).tan())
            .collect();
        let mut found = Vec::new();
        for w in xs.windows(2) {
            let (mut lo, mut hi) = (w[0], w[1]);
            let (rl, rh) = (residual(&f, &g, lo), residual(&f, &g, hi));
            if !(rl.is_finite() && rh.is_finite()) || rl.signum() == rh.signum() {
                continue;
            }
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if residual(&f, &g, mid).signum() == rl.signum() {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let root = 0.5 * (lo + hi);
            if residual(&f, &g, root).abs() < 1e-6 {
                found.push(root);
            }
        }
        for r in &found {
            assert!(
                exact.iter().any(|e| (e - r).abs() <= 1e-9 * e.abs().max(1.0)),
                "seed {seed}: numeric root {r} not in {exact:?}"
            );
        }
        for e in &exact {
            if residual(&f, &g, *e).abs() < 1e-6 && e.abs() < 1e6 {
                assert!(
                    found.iter().any(|r| (e - r).abs() <= 1e-9 * e.abs().max(1.0)),
                    "seed {seed}: exact root {e} missed by scan {found:?}"
                );
            }
        }
    }
}

#[test]
fn family_kinds() {
    // Consecutive edges i, i+1, i+2: both key determinants vanish.
    let k = random_generic_knot(7, 3);
    assert_eq!(transversal_family(&k, [0, 1, 2]).unwrap().kind(), FamilyKind::AdjacentCollapse);
    assert_eq!(transversal_family(&k, [0, 1, 4]).unwrap().kind(), FamilyKind::Planar);
    assert_eq!(transversal_family(&k, [0, 2, 4]).unwrap().kind(), FamilyKind::Quadric);
}

#[test]
fn k0_family_contains_l2() {
    // Edges V3V4, V7V8 and V13V14 (0-based 2, 6, 12) all meet the line L2
    // through V3, V4, V13 and V15 = (10, −1, −2).
    let k = builtin_knot("k0").unwrap();
    let fam = transversal_family(&k, [2, 6, 12]).unwrap();
    assert_eq!(fam.kind(), FamilyKind::Planar);
    // p = 0 puts the first point at V3.
    let x = int(1) + fam.coefficient(0) / fam.coefficient(1);
    let line = fam.line_at(&x).unwrap();
    assert_eq!(line.params, [int(0), rat(2, 3), int(0)]);
    let v15: Point3 = Vec3::from_ints(10, -1, -2);
    assert_eq!(line.points[1], v15);
}

#[test]
fn concurrent_edges_are_planar_or_collapsed() {
    // Three edges whose lines pass through the origin.
    let k = PolygonalKnot::from_ints(
        "star",
        &[(1, 0, 0), (2, 0, 0), (0, 5, 1), (0, 1, 0), (0, 2, 0), (3, 3, 7), (0, 0, 1), (0, 0, 2), (4, -2, 9)],
    );
    let fam = transversal_family(&k, [0, 3, 6]).unwrap();
    assert_ne!(fam.kind(), FamilyKind::Quadric);
}

#[test]
fn dependent_triple_rejected() {
    let k = PolygonalKnot::from_ints("planar", &[(0, 0, 0), (4, 0, 0), (4, 1, 0), (0, 1, 0)]);
    assert!(matches!(
        transversal_family(&k, [0, 1, 2]),
        Err(QuadrisecantError::DependentEdges { .. })
    ));
}

#[test]
fn csv_and_json_views() {
    let qs = find_all_quadrisecants(&builtin_knot("k6").unwrap()).unwrap();
    let csv = quadrisecants_csv(&qs, 15);
    assert!(csv.contains("1,2,0.166666666666667,1,0,0"), "{csv}");
    let view = QuadrisecantView::from(&qs[0]);
    assert_eq!(view.edges, [2, 3, 5, 6]);
    let json = serde_json::to_string(&view).unwrap();
    assert!(json.contains(r#""radicand":"0""#), "{json}");
}
