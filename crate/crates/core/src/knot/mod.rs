//! Polygonal knots: the data model, general position and simplicity.

mod builtin;
mod io;
mod random;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::exact::{det3, ExactError, Point3, Rational, Scalar, Sign, Vec3};
use crate::geometry::{adjacent_fold, segment_contact, Contact};

pub use builtin::{
    builtin_knot, k14_from_primary, k14_table_vertices, BuiltinKnot, K14_REMARK_V10, K14_REMARK_V12, K14_TABLE,
};
pub use io::{load_knot, save_knot, KnotFile};
pub use random::random_generic_knot;

#[derive(Debug, Error)]
pub enum KnotError {
    #[error("a knot needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("vertices {index} and {next} coincide (zero-length edge)")]
    ZeroEdge { index: usize, next: usize },
    #[error("vertex {vertex}: {source}")]
    Coordinate { vertex: usize, source: ExactError },
    #[error("malformed knot JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("unknown builtin knot {name:?}; valid names: {valid}")]
    UnknownBuiltin { name: String, valid: String },
}

/// A closed polygon `V_0 … V_{n-1}` in 3-space with rational vertices.
/// Indices are 0-based and taken mod `n`; edge `i` runs from `V_i` to `V_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolygonalKnot {
    name: String,
    vertices: Vec<Point3>,
}

impl PolygonalKnot {
    pub fn new(name: impl Into<String>, vertices: Vec<Point3>) -> Result<Self, KnotError> {
        let n = vertices.len();
        if n < 3 {
            return Err(KnotError::TooFewVertices(n));
        }
        for i in 0..n {
            if vertices[i] == vertices[(i + 1) % n] {
                return Err(KnotError::ZeroEdge {
                    index: i,
                    next: (i + 1) % n,
                });
            }
        }
        Ok(PolygonalKnot {
            name: name.into(),
            vertices,
        })
    }

    /// Builds a knot from integer coordinates; panics on invalid input.
    pub fn from_ints(name: &str, coords: &[(i64, i64, i64)]) -> Self {
        let vs = coords.iter().map(|&(x, y, z)| Vec3::from_ints(x, y, z)).collect();
        PolygonalKnot::new(name, vs).expect("valid polygon")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn vertices(&self) -> &[Point3] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<Point3> {
        self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex(&self, i: usize) -> &Point3 {
        &self.vertices[i % self.len()]
    }

    /// Edge vector `v_i = V_{i+1} − V_i`.
    pub fn edge(&self, i: usize) -> Point3 {
        self.vertex(i + 1).minus(self.vertex(i))
    }

    pub fn edges(&self) -> Vec<Point3> {
        (0..self.len()).map(|i| self.edge(i)).collect()
    }

    pub fn are_adjacent(&self, i: usize, j: usize) -> bool {
        let n = self.len();
        (i + 1) % n == j % n || (j + 1) % n == i % n
    }

    /// Applies `f` to every vertex, keeping the name.
    pub fn map_vertices(&self, f: impl Fn(&Point3) -> Point3) -> Result<Self, KnotError> {
        PolygonalKnot::new(self.name.clone(), self.vertices.iter().map(f).collect())
    }

    /// The same polygon traversed backwards from `V_0`.
    pub fn reversed(&self) -> Self {
        let mut vs = self.vertices.clone();
        vs.reverse();
        vs.rotate_right(1);
        PolygonalKnot {
            name: self.name.clone(),
            vertices: vs,
        }
    }

    /// Relabels so that old vertex `k` becomes vertex 0.
    pub fn rotated(&self, k: usize) -> Self {
        let mut vs = self.vertices.clone();
        vs.rotate_left(k % self.len());
        PolygonalKnot {
            name: self.name.clone(),
            vertices: vs,
        }
    }

    pub fn check_general_position(&self) -> GeneralPositionReport {
        general_position(&self.vertices)
    }

    pub fn is_simple(&self) -> SimplicityReport {
        simplicity(&self.vertices)
    }

    /// Minimum distance between non-adjacent edges (floating point).
    pub fn min_nonadjacent_distance(&self) -> f64 {
        let pts: Vec<[f64; 3]> = self.vertices.iter().map(|v| v.approx()).collect();
        min_nonadjacent_distance_f64(&pts)
    }

    pub fn approx_vertices(&self) -> Vec<[f64; 3]> {
        self.vertices.iter().map(|v| v.approx()).collect()
    }
}

/// Failures of the genericity conditions. Indices are 0-based: vertex
/// indices for coplanar quadruples, edge indices for dependent triples.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GeneralPositionReport {
    pub coplanar_violations: Vec<[usize; 4]>,
    pub dependent_violations: Vec<[usize; 3]>,
    pub passed: bool,
}

/// The 4×4 coplanarity determinant of four points, i.e. the alternating
/// sum `Det(Vj,Vk,Vl) − Det(Vi,Vk,Vl) + Det(Vi,Vj,Vl) − Det(Vi,Vj,Vk)`.
pub fn coplanarity<T: Scalar>(a: &Vec3<T>, b: &Vec3<T>, c: &Vec3<T>, d: &Vec3<T>) -> T {
    det3(&b.minus(a), &c.minus(a), &d.minus(a))
}

pub fn general_position<T: Scalar>(vertices: &[Vec3<T>]) -> GeneralPositionReport {
    let n = vertices.len();
    let edges: Vec<Vec3<T>> = (0..n).map(|i| vertices[(i + 1) % n].minus(&vertices[i])).collect();
    let coplanar_violations: Vec<[usize; 4]> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let mut out = Vec::new();
            for j in i + 1..n {
                let vj = vertices[j].minus(&vertices[i]);
                for k in j + 1..n {
                    let vk = vertices[k].minus(&vertices[i]);
                    let cross = vj.cross(&vk);
                    for l in k + 1..n {
                        let vl = vertices[l].minus(&vertices[i]);
                        if vl.dot(&cross).sign() == Sign::Zero {
                            out.push([i, j, k, l]);
                        }
                    }
                }
            }
            out
        })
        .collect();
    let dependent_violations: Vec<[usize; 3]> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let mut out = Vec::new();
            for j in i + 1..n {
                let cross = edges[i].cross(&edges[j]);
                for k in j + 1..n {
                    if edges[k].dot(&cross).sign() == Sign::Zero {
                        out.push([i, j, k]);
                    }
                }
            }
            out
        })
        .collect();
    let passed = coplanar_violations.is_empty() && dependent_violations.is_empty();
    GeneralPositionReport {
        coplanar_violations,
        dependent_violations,
        passed,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimplicityWitness {
    pub edges: (usize, usize),
    pub contact: Contact,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimplicityReport {
    pub simple: bool,
    pub witness: Option<SimplicityWitness>,
}

/// Every non-adjacent contact, plus adjacent edges folding back onto
/// each other, in lexicographic edge-pair order.
pub fn all_contacts<T: Scalar>(vertices: &[Vec3<T>]) -> Vec<SimplicityWitness> {
    let n = vertices.len();
    let seg = |i: usize| (&vertices[i], &vertices[(i + 1) % n]);
    (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let mut out = Vec::new();
            for j in i + 1..n {
                let (a, b) = seg(i);
                let (c, d) = seg(j);
                let contact = if j == i + 1 {
                    adjacent_fold(a, b, d)
                } else if i == 0 && j == n - 1 {
                    adjacent_fold(c, a, b)
                } else {
                    segment_contact(a, b, c, d)
                };
                if let Some(contact) = contact {
                    out.push(SimplicityWitness {
                        edges: (i, j),
                        contact,
                    });
                }
            }
            out
        })
        .collect()
}

pub fn simplicity<T: Scalar>(vertices: &[Vec3<T>]) -> SimplicityReport {
    let witness = all_contacts(vertices).into_iter().next();
    SimplicityReport {
        simple: witness.is_none(),
        witness,
    }
}

/// Closest distance between segments `p0p1` and `q0q1` in floating point.
pub fn segment_distance_f64(p0: [f64; 3], p1: [f64; 3], q0: [f64; 3], q1: [f64; 3]) -> f64 {
    let sub = |a: [f64; 3], b: [f64; 3]| [a[0] - b[0], a[1] - b[1], a[2] - b[2]];
    let dot = |a: [f64; 3], b: [f64; 3]| a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    let d1 = sub(p1, p0);
    let d2 = sub(q1, q0);
    let r = sub(p0, q0);
    let (a, e, f) = (dot(d1, d1), dot(d2, d2), dot(d2, r));
    let (mut s, mut t);
    if a <= f64::EPSILON && e <= f64::EPSILON {
        return dot(r, r).sqrt();
    }
    if a <= f64::EPSILON {
        s = 0.0;
        t = (f / e).clamp(0.0, 1.0);
    } else {
        let c = dot(d1, r);
        if e <= f64::EPSILON {
            t = 0.0;
            s = (-c / a).clamp(0.0, 1.0);
        } else {
            let b = dot(d1, d2);
            let denom = a * e - b * b;
            s = if denom > 0.0 { ((b * f - c * e) / denom).clamp(0.0, 1.0) } else { 0.0 };
            t = (b * s + f) / e;
            if t < 0.0 {
                t = 0.0;
                s = (-c / a).clamp(0.0, 1.0);
            } else if t > 1.0 {
                t = 1.0;
                s = ((b - c) / a).clamp(0.0, 1.0);
            }
        }
    }
    let cp = [p0[0] + d1[0] * s, p0[1] + d1[1] * s, p0[2] + d1[2] * s];
    let cq = [q0[0] + d2[0] * t, q0[1] + d2[1] * t, q0[2] + d2[2] * t];
    let d = sub(cp, cq);
    dot(d, d).sqrt()
}

pub fn min_nonadjacent_distance_f64(pts: &[[f64; 3]]) -> f64 {
    let n = pts.len();
    let mut best = f64::INFINITY;
    for i in 0..n {
        for j in i + 2..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            let d = segment_distance_f64(pts[i], pts[(i + 1) % n], pts[j], pts[(j + 1) % n]);
            best = best.min(d);
        }
    }
    best
}

/// A rational affine map `x ↦ M·x + t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMap {
    pub rows: [Point3; 3],
    pub translation: Point3,
}

impl AffineMap {
    pub fn identity() -> Self {
        AffineMap {
            rows: [
                Vec3::from_ints(1, 0, 0),
                Vec3::from_ints(0, 1, 0),
                Vec3::from_ints(0, 0, 1),
            ],
            translation: Vec3::from_ints(0, 0, 0),
        }
    }

    pub fn linear(&self, p: &Point3) -> Point3 {
        Vec3::new(self.rows[0].dot(p), self.rows[1].dot(p), self.rows[2].dot(p))
    }

    pub fn apply(&self, p: &Point3) -> Point3 {
        self.linear(p).plus(&self.translation)
    }

    pub fn determinant(&self) -> Rational {
        det3(&self.rows[0], &self.rows[1], &self.rows[2])
    }

    pub fn is_invertible(&self) -> bool {
        self.determinant() != Rational::from_integer(0.into())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AffineMap) -> AffineMap {
        let cols = [
            Vec3::new(other.rows[0].x.clone(), other.rows[1].x.clone(), other.rows[2].x.clone()),
            Vec3::new(other.rows[0].y.clone(), other.rows[1].y.clone(), other.rows[2].y.clone()),
            Vec3::new(other.rows[0].z.clone(), other.rows[1].z.clone(), other.rows[2].z.clone()),
        ];
        let row = |r: &Point3| Vec3::new(r.dot(&cols[0]), r.dot(&cols[1]), r.dot(&cols[2]));
        AffineMap {
            rows: [row(&self.rows[0]), row(&self.rows[1]), row(&self.rows[2])],
            translation: self.apply(&other.translation),
        }
    }

    pub fn translation_by(t: Point3) -> Self {
        AffineMap {
            translation: t,
            ..AffineMap::identity()
        }
    }

    /// `x ↦ diag(d)·x`.
    pub fn diagonal(d: [Rational; 3]) -> Self {
        let z = || Rational::from_integer(0.into());
        let [a, b, c] = d;
        AffineMap {
            rows: [Vec3::new(a, z(), z()), Vec3::new(z(), b, z()), Vec3::new(z(), z(), c)],
            translation: Vec3::new(z(), z(), z()),
        }
    }

    /// The linear map sending the standard basis to `cols`.
    pub fn from_columns(cols: [&Point3; 3]) -> Self {
        let [a, b, c] = cols;
        AffineMap {
            rows: [
                Vec3::new(a.x.clone(), b.x.clone(), c.x.clone()),
                Vec3::new(a.y.clone(), b.y.clone(), c.y.clone()),
                Vec3::new(a.z.clone(), b.z.clone(), c.z.clone()),
            ],
            translation: Vec3::from_ints(0, 0, 0),
        }
    }

    pub fn inverse(&self) -> Option<AffineMap> {
        let det = self.determinant();
        if det == Rational::from_integer(0.into()) {
            return None;
        }
        let [r0, r1, r2] = &self.rows;
        // Rows of the inverse are the cofactor columns over det.
        let c0 = r1.cross(r2);
        let c1 = r2.cross(r0);
        let c2 = r0.cross(r1);
        let inv = AffineMap::from_columns([&c0, &c1, &c2]);
        let rows = inv.rows.map(|r| r.map(|v| v / &det));
        let lin = AffineMap {
            rows,
            translation: Vec3::from_ints(0, 0, 0),
        };
        let t = lin.linear(&self.translation).map(|v| -v);
        Some(AffineMap { translation: t, ..lin })
    }

    pub fn apply_knot(&self, k: &PolygonalKnot) -> Result<PolygonalKnot, KnotError> {
        k.map_vertices(|p| self.apply(p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    #[test]
    fn k14_general_position_passes() {
        let k = builtin_knot("k14").unwrap();
        let rep = k.check_general_position();
        assert!(rep.passed, "{rep:?}");
    }

    #[test]
    fn k0_fails_on_z_axis_quadruple() {
        let k = builtin_knot("k0").unwrap();
        let rep = k.check_general_position();
        assert!(!rep.passed);
        // V1, V2, V5, V6 in 1-based labels.
        assert!(rep.coplanar_violations.contains(&[0, 1, 4, 5]));
        let v = k.vertices();
        assert_eq!(coplanarity(&v[0], &v[1], &v[4], &v[5]), rat(0, 1));
    }

    #[test]
    fn lifted_square_fails_coplanarity() {
        let k = PolygonalKnot::from_ints("sq", &[(0, 0, 0), (2, 0, 0), (2, 2, 0), (1, 1, 3), (0, 2, 0)]);
        let rep = k.check_general_position();
        assert!(rep.coplanar_violations.contains(&[0, 1, 2, 4]));
    }

    #[test]
    fn k6_and_k14_are_simple() {
        assert!(builtin_knot("k6").unwrap().is_simple().simple);
        assert!(builtin_knot("k14").unwrap().is_simple().simple);
    }

    #[test]
    fn self_crossing_polyline_is_not_simple() {
        let k = PolygonalKnot::from_ints("bow", &[(0, 0, 0), (2, 2, 0), (2, 0, 0), (0, 2, 0)]);
        let rep = k.is_simple();
        assert!(!rep.simple);
        assert_eq!(rep.witness.unwrap().edges, (0, 2));
    }

    #[test]
    fn fold_back_is_not_simple() {
        let k = PolygonalKnot::from_ints("fold", &[(0, 0, 0), (4, 0, 0), (2, 0, 0), (1, 3, 0)]);
        assert_eq!(k.is_simple().witness.unwrap().edges, (0, 1));
    }

    #[test]
    fn zero_edges_rejected() {
        let v = vec![Vec3::from_ints(0, 0, 0), Vec3::from_ints(0, 0, 0), Vec3::from_ints(1, 0, 0)];
        assert!(matches!(PolygonalKnot::new("z", v), Err(KnotError::ZeroEdge { .. })));
    }

    #[test]
    fn reversal_and_rotation() {
        let k = builtin_knot("k6").unwrap();
        let r = k.reversed();
        assert_eq!(r.vertex(0), k.vertex(0));
        assert_eq!(r.vertex(1), k.vertex(5));
        assert_eq!(k.rotated(2).vertex(0), k.vertex(2));
    }

    #[test]
    fn affine_composition() {
        let mut m = AffineMap::identity();
        m.rows[0] = Vec3::from_ints(2, 1, 0);
        m.translation = Vec3::from_ints(1, 2, 3);
        let p = Vec3::from_ints(1, 1, 1);
        assert_eq!(m.compose(&m).apply(&p), m.apply(&m.apply(&p)));
    }

    #[test]
    fn affine_inverse() {
        let mut m = AffineMap::identity();
        m.rows = [Vec3::from_ints(2, 1, 0), Vec3::from_ints(0, 3, -1), Vec3::from_ints(1, 0, 5)];
        m.translation = Vec3::new(rat(1, 2), rat(-3, 1), rat(7, 5));
        let inv = m.inverse().unwrap();
        assert_eq!(inv.compose(&m), AffineMap::identity());
        assert_eq!(m.compose(&inv), AffineMap::identity());
        m.rows[2] = Vec3::from_ints(2, 4, -1);
        assert!(m.inverse().is_none());
    }

    #[test]
    fn segment_distance() {
        let d = segment_distance_f64([0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.5, 1.0, 1.0], [0.5, -1.0, 1.0]);
        assert!((d - 1.0).abs() < 1e-12);
    }
}
