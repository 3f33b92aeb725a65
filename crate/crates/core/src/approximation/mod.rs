//! The quadrisecant approximation `K̂` of a knot and its self-intersections.

use serde::Serialize;

use crate::exact::{to_surd_point, AlgebraicNumber, Point3, SurdExpr, Vec3};
use crate::geometry::Contact;
use crate::knot::{all_contacts, general_position, PolygonalKnot};
use crate::quadrisecant::{
    cmp_secants, find_all_quadrisecants, Quadrisecant, QuadrisecantError, SecantRecord,
};

/// A point of `W` together with the quadrisecants passing through it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SecantPoint {
    pub record: SecantRecord,
    /// Indices into the quadrisecant list.
    pub sources: Vec<usize>,
}

/// `W` sorted along the knot.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SecantPointSequence {
    pub points: Vec<SecantPoint>,
    /// Number of records before merging coincident points.
    pub raw_count: usize,
}

impl SecantPointSequence {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

pub fn collect_secant_points(quads: &[Quadrisecant]) -> SecantPointSequence {
    let mut tagged: Vec<(SecantRecord, usize)> = quads
        .iter()
        .enumerate()
        .flat_map(|(n, q)| q.secants.iter().map(move |s| (s.clone(), n)))
        .collect();
    let raw_count = tagged.len();
    tagged.sort_by(|a, b| cmp_secants(&a.0, &b.0).then(a.1.cmp(&b.1)));
    let mut points: Vec<SecantPoint> = Vec::new();
    for (rec, src) in tagged {
        match points.last_mut() {
            Some(last) if cmp_secants(&last.record, &rec).is_eq() => last.sources.push(src),
            _ => points.push(SecantPoint {
                record: rec,
                sources: vec![src],
            }),
        }
    }
    SecantPointSequence { points, raw_count }
}

/// The closed polyline through `W` in knot order, or the knot itself when
/// `W` is empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproximationPolygon {
    pub vertices: Vec<Vec3<AlgebraicNumber>>,
    /// Source secant point per vertex; empty when `K̂ = K`.
    pub provenance: Vec<SecantPoint>,
    /// Fewer than three vertices.
    pub degenerate: bool,
}

impl ApproximationPolygon {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.provenance.is_empty()
    }

    pub fn is_rational(&self) -> bool {
        self.vertices
            .iter()
            .all(|v| v.x.is_rational() && v.y.is_rational() && v.z.is_rational())
    }

    pub fn surd_vertices(&self) -> Vec<Vec3<SurdExpr>> {
        self.vertices.iter().map(to_surd_point).collect()
    }

    pub fn approx_vertices(&self) -> Vec<[f64; 3]> {
        self.vertices.iter().map(|v| [v.x.to_f64(), v.y.to_f64(), v.z.to_f64()]).collect()
    }

    /// The polygon as a rational knot, when every coordinate is rational
    /// and it has at least three distinct consecutive vertices.
    pub fn to_rational_knot(&self, name: &str) -> Option<PolygonalKnot> {
        let vs: Option<Vec<Point3>> = self
            .vertices
            .iter()
            .map(|v| {
                Some(Vec3::new(
                    v.x.as_rational()?.clone(),
                    v.y.as_rational()?.clone(),
                    v.z.as_rational()?.clone(),
                ))
            })
            .collect();
        PolygonalKnot::new(name, vs?).ok()
    }
}

pub fn build_approximation(knot: &PolygonalKnot, w: &SecantPointSequence) -> ApproximationPolygon {
    if w.is_empty() {
        return ApproximationPolygon {
            vertices: knot
                .vertices()
                .iter()
                .map(|v| v.map(|c| AlgebraicNumber::from_rational(c.clone())))
                .collect(),
            provenance: Vec::new(),
            degenerate: false,
        };
    }
    ApproximationPolygon {
        vertices: w.points.iter().map(|p| p.record.point.clone()).collect(),
        provenance: w.points.clone(),
        degenerate: w.len() < 3,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SegmentCrossing {
    /// Segment `s` runs from vertex `s` to vertex `s + 1` of `K̂` (0-based).
    pub segments: (usize, usize),
    pub contact: Contact,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SelfIntersectionReport {
    pub crossings: Vec<SegmentCrossing>,
    pub is_embedded: bool,
}

impl SelfIntersectionReport {
    pub fn overlap_count(&self) -> usize {
        self.crossings.iter().filter(|c| c.contact.is_overlap()).count()
    }
}

pub fn find_self_intersections(p: &ApproximationPolygon) -> SelfIntersectionReport {
    let crossings: Vec<SegmentCrossing> = match p.len() {
        0 | 1 => Vec::new(),
        2 => {
            let a = p.vertices[0].map(AlgebraicNumber::to_f64);
            let b = p.vertices[1].map(AlgebraicNumber::to_f64);
            vec![SegmentCrossing {
                segments: (0, 1),
                contact: Contact::Overlap {
                    from: [a.x, a.y, a.z],
                    to: [b.x, b.y, b.z],
                },
            }]
        }
        _ => all_contacts(&p.surd_vertices())
            .into_iter()
            .map(|w| SegmentCrossing {
                segments: w.edges,
                contact: w.contact,
            })
            .collect(),
    };
    let is_embedded = crossings.is_empty() && !p.degenerate;
    SelfIntersectionReport { crossings, is_embedded }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum QuadsetComparison {
    Equal { count: usize },
    Differs {
        /// Indices of lines of `K` missing from `K̂`.
        only_in_knot: Vec<usize>,
        /// Indices of lines of `K̂` missing from `K`.
        only_in_approximation: Vec<usize>,
    },
    NotComparable { reason: String },
}

/// Compares the quadrisecant lines of `K` and `K̂` as unordered sets.
pub fn compare_quadrisecant_sets(
    knot: &PolygonalKnot,
    knot_quads: &[Quadrisecant],
    approx: &ApproximationPolygon,
    embedding: &SelfIntersectionReport,
) -> QuadsetComparison {
    let not = |reason: &str| QuadsetComparison::NotComparable {
        reason: reason.to_string(),
    };
    if !embedding.is_embedded {
        return not("the approximation is not embedded");
    }
    if approx.is_identity() {
        return QuadsetComparison::Equal {
            count: knot_quads.len(),
        };
    }
    if approx.len() < 4 {
        return not("the approximation has fewer than 4 edges");
    }
    let gp = general_position(&approx.surd_vertices());
    if !gp.passed {
        return not(&format!(
            "the approximation fails general position ({} coplanar vertex quadruples, {} dependent edge triples)",
            gp.coplanar_violations.len(),
            gp.dependent_violations.len()
        ));
    }
    let Some(hat) = approx.to_rational_knot(&format!("{}-hat", knot.name())) else {
        return not("the approximation has irrational vertices");
    };
    let hat_quads = match find_all_quadrisecants(&hat) {
        Ok(q) => q,
        Err(e) => return not(&format!("quadrisecants of the approximation: {e}")),
    };
    let missing = |a: &[Quadrisecant], b: &[Quadrisecant]| -> Vec<usize> {
        (0..a.len()).filter(|&i| !b.iter().any(|q| q.same_line(&a[i]))).collect()
    };
    let only_in_knot = missing(knot_quads, &hat_quads);
    let only_in_approximation = missing(&hat_quads, knot_quads);
    if only_in_knot.is_empty() && only_in_approximation.is_empty() {
        QuadsetComparison::Equal {
            count: knot_quads.len(),
        }
    } else {
        QuadsetComparison::Differs {
            only_in_knot,
            only_in_approximation,
        }
    }
}

/// Quadrisecants, `W`, `K̂` and its self-intersections in one pass.
#[derive(Clone, Debug)]
pub struct Approximation {
    pub quadrisecants: Vec<Quadrisecant>,
    pub secant_points: SecantPointSequence,
    pub polygon: ApproximationPolygon,
    pub self_intersections: SelfIntersectionReport,
}

pub fn approximate(knot: &PolygonalKnot) -> Result<Approximation, QuadrisecantError> {
    let quadrisecants = find_all_quadrisecants(knot)?;
    let secant_points = collect_secant_points(&quadrisecants);
    let polygon = build_approximation(knot, &secant_points);
    let self_intersections = find_self_intersections(&polygon);
    Ok(Approximation {
        quadrisecants,
        secant_points,
        polygon,
        self_intersections,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Sign;
    use crate::knot::builtin_knot;

    fn ip(x: i64, y: i64, z: i64) -> Vec3<AlgebraicNumber> {
        Vec3::new(AlgebraicNumber::from_int(x), AlgebraicNumber::from_int(y), AlgebraicNumber::from_int(z))
    }

    #[test]
    fn k6_secant_points_in_knot_order() {
        let k = builtin_knot("k6").unwrap();
        let a = approximate(&k).unwrap();
        let pts: Vec<_> = a.secant_points.points.iter().map(|p| (p.record.edge, p.record.point.clone())).collect();
        assert_eq!(
            pts,
            vec![(1, ip(1, 0, 0)), (2, ip(3, 0, 0)), (4, ip(4, 0, 0)), (5, ip(0, 0, 0))]
        );
        for v in &a.polygon.vertices {
            assert!(v.y.is_zero() && v.z.is_zero());
        }
        assert!(!a.self_intersections.is_embedded);
        assert!(a.self_intersections.overlap_count() > 0);
    }

    #[test]
    fn k14_hat_is_embedded_with_one_merged_point() {
        let k = builtin_knot("k14").unwrap();
        let a = approximate(&k).unwrap();
        assert_eq!(a.secant_points.raw_count, 16);
        assert_eq!(a.polygon.len(), 15);
        let merged: Vec<_> = a.secant_points.points.iter().filter(|p| p.sources.len() == 2).collect();
        assert_eq!(merged.len(), 1);
        assert_eq!(merged[0].record.point, ip(10, -1, -2));
        assert!(a.self_intersections.is_embedded, "{:?}", a.self_intersections);
    }

    #[test]
    fn provenance_points_lie_on_their_edges() {
        let k = builtin_knot("k14").unwrap();
        let a = approximate(&k).unwrap();
        for (v, src) in a.polygon.vertices.iter().zip(&a.polygon.provenance) {
            let rec = &src.record;
            let base = k.vertex(rec.edge).map(|c| AlgebraicNumber::from_rational(c.clone()));
            let dir = k.edge(rec.edge).map(|c| AlgebraicNumber::from_rational(c.clone()));
            let expect = Vec3::new(
                &base.x + &(&dir.x * &rec.parameter),
                &base.y + &(&dir.y * &rec.parameter),
                &base.z + &(&dir.z * &rec.parameter),
            );
            assert_eq!(v, &expect);
            assert_ne!(rec.parameter.sign(), Sign::Negative);
        }
    }

    #[test]
    fn no_quadrisecants_means_identity() {
        let k = PolygonalKnot::from_ints("square", &[(0, 0, 0), (4, 0, 1), (4, 4, 0), (0, 4, 1)]);
        let a = approximate(&k).unwrap();
        assert!(a.quadrisecants.is_empty());
        assert!(a.polygon.is_identity());
        assert_eq!(a.polygon.len(), 4);
        assert!(a.self_intersections.is_embedded);
        let cmp = compare_quadrisecant_sets(&k, &a.quadrisecants, &a.polygon, &a.self_intersections);
        assert_eq!(cmp, QuadsetComparison::Equal { count: 0 });
    }

    #[test]
    fn shared_point_merges_sources() {
        let k = builtin_knot("k14").unwrap();
        let qs = find_all_quadrisecants(&k).unwrap();
        let w = collect_secant_points(&qs);
        assert_eq!(w.points.iter().map(|p| p.sources.len()).sum::<usize>(), 16);
    }

    #[test]
    fn k6_comparison_not_comparable() {
        let k = builtin_knot("k6").unwrap();
        let a = approximate(&k).unwrap();
        let cmp = compare_quadrisecant_sets(&k, &a.quadrisecants, &a.polygon, &a.self_intersections);
        assert!(matches!(cmp, QuadsetComparison::NotComparable { .. }));
    }

    #[test]
    fn planar_square_is_embedded() {
        let k = PolygonalKnot::from_ints("sq", &[(0, 0, 0), (1, 0, 0), (1, 1, 0), (0, 1, 0)]);
        let p = build_approximation(&k, &SecantPointSequence::default());
        assert!(find_self_intersections(&p).is_embedded);
    }
}
