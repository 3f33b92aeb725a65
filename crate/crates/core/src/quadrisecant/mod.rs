//! Exact enumeration of the lines meeting four edges of a polygonal knot.

mod export;
mod family;

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::exact::surd::sign_of_difference;
use crate::exact::{
    solve_quadratic_exact, to_surd_point, AlgebraicNumber, QuadraticRoots, Rational, Sign, SurdExpr, Vec3,
};
use crate::knot::PolygonalKnot;

pub use export::{quadrisecants_csv, QuadrisecantView, SecantView};
pub use family::{transversal_family, FamilyKind, FamilyLine, TransversalFamily};
use family::{homogeneous_coefficients, point_on};

/// Four edge indices `i < j < k < l` (0-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct EdgeQuadruple {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub l: usize,
}

impl EdgeQuadruple {
    pub fn new(i: usize, j: usize, k: usize, l: usize) -> Option<Self> {
        (i < j && j < k && k < l).then_some(EdgeQuadruple { i, j, k, l })
    }

    pub fn edges(&self) -> [usize; 4] {
        [self.i, self.j, self.k, self.l]
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuadrisecantError {
    #[error("quadrisecant search needs at least 4 edges, got {0}")]
    TooFewEdges(usize),
    #[error("edge {quad:?} out of range for a knot with {n} edges")]
    OutOfRange { quad: EdgeQuadruple, n: usize },
    #[error("edge vectors {triple:?} are linearly dependent")]
    DependentEdges { triple: [usize; 3] },
    #[error("guard determinant {which} vanishes for edges {quad:?} (four coplanar vertices)")]
    GuardDeterminantZero { quad: EdgeQuadruple, which: &'static str },
    #[error("edges {:?} admit infinitely many transversals", .0.quadruple)]
    InfiniteFamily(DegeneracyReport),
    #[error("a line meets the knot in {} points on edges {edges:?}", edges.len())]
    QuintisecantDetected { edges: Vec<usize> },
}

/// One intersection of a quadrisecant with an edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SecantRecord {
    pub edge: usize,
    /// In `[0, 1)`: the point is `V_edge + parameter · v_edge`.
    pub parameter: AlgebraicNumber,
    pub point: Vec3<AlgebraicNumber>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Line {
    pub anchor: Vec3<AlgebraicNumber>,
    pub direction: Vec3<AlgebraicNumber>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quadrisecant {
    pub secants: [SecantRecord; 4],
    pub line: Line,
    pub x_root: AlgebraicNumber,
    /// Square-free radicand of the field holding all coordinates (0 if rational).
    pub radicand: Rational,
}

impl Quadrisecant {
    pub fn quadruple(&self) -> EdgeQuadruple {
        let e = self.secants.each_ref().map(|s| s.edge);
        EdgeQuadruple::new(e[0], e[1], e[2], e[3]).expect("edges are increasing")
    }

    pub fn is_rational(&self) -> bool {
        self.x_root.is_rational()
    }

    /// Exact re-check that the four points lie on one line.
    pub fn verify_collinear(&self) -> bool {
        let pts: Vec<Vec3<SurdExpr>> = self.secants.iter().map(|s| to_surd_point(&s.point)).collect();
        let d = pts[3].minus(&pts[0]);
        !d.is_zero_exact() && (1..3).all(|t| pts[t].minus(&pts[0]).cross(&d).is_zero_exact())
    }

    pub fn same_line(&self, other: &Quadrisecant) -> bool {
        let a = to_surd_point(&self.line.anchor);
        let d = to_surd_point(&self.line.direction);
        let b = to_surd_point(&other.line.anchor);
        let e = to_surd_point(&other.line.direction);
        d.cross(&e).is_zero_exact() && b.minus(&a).cross(&d).is_zero_exact()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DegeneracyKind {
    AdjacentCollapse,
    PlanarRuledSurface,
    QuadricFamily,
    InfiniteSolutions,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegeneracyReport {
    pub kind: DegeneracyKind,
    pub quadruple: EdgeQuadruple,
    /// Shape of the surface swept by transversals of the first three edges.
    pub surface: DegeneracyKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuadrupleOutcome {
    Lines(Vec<Quadrisecant>),
    Degenerate(DegeneracyReport),
}

fn check_quad(knot: &PolygonalKnot, quad: &EdgeQuadruple) -> Result<(), QuadrisecantError> {
    let n = knot.len();
    if n < 4 {
        return Err(QuadrisecantError::TooFewEdges(n));
    }
    if quad.l >= n {
        return Err(QuadrisecantError::OutOfRange { quad: *quad, n });
    }
    Ok(())
}

/// Coefficients of `A·x² + B·x + C = 0` for an edge quadruple, scaled to
/// be polynomial in the coordinates (the roots are unaffected). All three
/// vanish when the edges admit infinitely many transversals.
pub fn quadruple_coefficients(
    knot: &PolygonalKnot,
    quad: &EdgeQuadruple,
) -> Result<[Rational; 3], QuadrisecantError> {
    check_quad(knot, quad)?;
    let f = TransversalFamily::raw(knot, quad.i, quad.j, quad.k);
    let g = TransversalFamily::raw(knot, quad.i, quad.j, quad.l);
    let coeffs = homogeneous_coefficients(&f, &g);
    if coeffs.iter().any(|c| !num_traits::Zero::is_zero(c)) {
        guard(&f, &g, quad)?;
    }
    Ok(coeffs)
}

fn guard(f: &TransversalFamily, g: &TransversalFamily, quad: &EdgeQuadruple) -> Result<(), QuadrisecantError> {
    use num_traits::Zero;
    if f.numerators[2].is_zero() {
        return Err(QuadrisecantError::GuardDeterminantZero {
            quad: *quad,
            which: "Det(v_i, V_i - V_k, v_k)",
        });
    }
    if g.numerators[0].is_zero() {
        return Err(QuadrisecantError::GuardDeterminantZero {
            quad: *quad,
            which: "Det(V_l - V_j, v_j, v_l)",
        });
    }
    Ok(())
}

fn surface_kind(f: &TransversalFamily) -> DegeneracyKind {
    match f.kind() {
        FamilyKind::AdjacentCollapse => DegeneracyKind::AdjacentCollapse,
        FamilyKind::Planar => DegeneracyKind::PlanarRuledSurface,
        FamilyKind::Quadric => DegeneracyKind::QuadricFamily,
    }
}

fn in_unit_interval(t: &AlgebraicNumber) -> bool {
    t.sign() != Sign::Negative && (t - &AlgebraicNumber::one()).sign() == Sign::Negative
}

/// All quadrisecants through the four given edges (at most two).
pub fn solve_quadruple(knot: &PolygonalKnot, quad: &EdgeQuadruple) -> Result<QuadrupleOutcome, QuadrisecantError> {
    check_quad(knot, quad)?;
    let f = TransversalFamily::raw(knot, quad.i, quad.j, quad.k);
    let g = TransversalFamily::raw(knot, quad.i, quad.j, quad.l);
    solve_with_families(knot, quad, &f, &g)
}

fn solve_with_families(
    knot: &PolygonalKnot,
    quad: &EdgeQuadruple,
    f: &TransversalFamily,
    g: &TransversalFamily,
) -> Result<QuadrupleOutcome, QuadrisecantError> {
    use num_traits::Zero;
    let [a, b, c] = homogeneous_coefficients(f, g);
    let roots = solve_quadratic_exact(&a, &b, &c);
    if roots == QuadraticRoots::IdenticallyZero {
        return Ok(QuadrupleOutcome::Degenerate(DegeneracyReport {
            kind: DegeneracyKind::InfiniteSolutions,
            quadruple: *quad,
            surface: surface_kind(f),
        }));
    }
    for (fam, triple) in [(f, [quad.i, quad.j, quad.k]), (g, [quad.i, quad.j, quad.l])] {
        if fam.det.is_zero() {
            return Err(QuadrisecantError::DependentEdges { triple });
        }
    }
    guard(f, g, quad)?;
    let mut lines = Vec::new();
    for x in roots.roots() {
        if let Some(q) = recover(knot, quad, f, g, &x) {
            lines.push(q);
        }
    }
    Ok(QuadrupleOutcome::Lines(lines))
}

/// Back-substitutes a root `x` into the parameter formulas; `None` when the
/// candidate is spurious or misses one of the half-open edges.
fn recover(
    knot: &PolygonalKnot,
    quad: &EdgeQuadruple,
    f: &TransversalFamily,
    g: &TransversalFamily,
    x: &AlgebraicNumber,
) -> Option<Quadrisecant> {
    if !f.may_be_admissible(x) {
        return None;
    }
    let one = AlgebraicNumber::one();
    let [p, q, r] = f.params_at_algebraic(x)?;
    let lift = |v: Rational| AlgebraicNumber::from_rational(v);
    let (c1, d1) = (lift(g.coefficient(0)), lift(g.coefficient(1)));
    let (c2, d2) = (lift(g.coefficient(2)), lift(g.coefficient(3)));
    let (c3, d3) = (lift(g.coefficient(4)), lift(g.coefficient(5)));
    // p = c1/(1−y) + d1 fixes y; c1 ≠ 0 is guaranteed, c2 is not.
    let u = &(&p - &d1) / &c1;
    if u.is_zero() {
        return None;
    }
    let y = &one - &(&one / &u);
    if y.is_zero() {
        return None;
    }
    let q_from_y = &(&(&c2 * &(&y - &one)) / &y) + &d2;
    if q_from_y != q {
        return None;
    }
    let s = &(&c3 * &y) + &d3;
    let params = [p, q, r, s];
    if !params.iter().all(in_unit_interval) {
        return None;
    }
    let edges = quad.edges();
    let secants: [SecantRecord; 4] = std::array::from_fn(|t| {
        let e = edges[t];
        SecantRecord {
            edge: e,
            point: point_on(knot.vertex(e), &knot.edge(e), &params[t]),
            parameter: params[t].clone(),
        }
    });
    let line = Line {
        anchor: secants[0].point.clone(),
        direction: Vec3::new(
            &secants[3].point.x - &secants[0].point.x,
            &secants[3].point.y - &secants[0].point.y,
            &secants[3].point.z - &secants[0].point.z,
        ),
    };
    let quadrisecant = Quadrisecant {
        secants,
        line,
        radicand: x.radicand().clone(),
        x_root: x.clone(),
    };
    quadrisecant.verify_collinear().then_some(quadrisecant)
}

/// Total order on secant records: edge index, then exact parameter.
pub fn cmp_secants(a: &SecantRecord, b: &SecantRecord) -> Ordering {
    a.edge
        .cmp(&b.edge)
        .then_with(|| sign_of_difference(&a.parameter, &b.parameter).to_ordering())
}

fn cmp_quadrisecants(a: &Quadrisecant, b: &Quadrisecant) -> Ordering {
    a.secants
        .iter()
        .zip(&b.secants)
        .map(|(s, t)| cmp_secants(s, t))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

/// Every quadrisecant of `knot`, canonically ordered. The knot should pass
/// the general position check; violations surface as errors.
pub fn find_all_quadrisecants(knot: &PolygonalKnot) -> Result<Vec<Quadrisecant>, QuadrisecantError> {
    let n = knot.len();
    if n < 4 {
        return Err(QuadrisecantError::TooFewEdges(n));
    }
    let per_i: Vec<Result<Vec<Quadrisecant>, QuadrisecantError>> = (0..n)
        .into_par_iter()
        .map(|i| {
            // Families for (i, j, k), indexed [j][k].
            let fams: Vec<Vec<Option<TransversalFamily>>> = (0..n)
                .map(|j| {
                    (0..n)
                        .map(|k| (i < j && j < k).then(|| TransversalFamily::raw(knot, i, j, k)))
                        .collect()
                })
                .collect();
            let mut found = Vec::new();
            for j in i + 1..n {
                for k in j + 1..n {
                    for l in k + 1..n {
                        let quad = EdgeQuadruple { i, j, k, l };
                        let f = fams[j][k].as_ref().expect("i < j < k");
                        let g = fams[j][l].as_ref().expect("i < j < l");
                        match solve_with_families(knot, &quad, f, g)? {
                            QuadrupleOutcome::Lines(ls) => found.extend(ls),
                            QuadrupleOutcome::Degenerate(rep) => {
                                return Err(QuadrisecantError::InfiniteFamily(rep))
                            }
                        }
                    }
                }
            }
            Ok(found)
        })
        .collect();
    let mut all = Vec::new();
    for r in per_i {
        all.extend(r?);
    }
    merge_lines(&mut all)?;
    all.sort_by(cmp_quadrisecants);
    Ok(all)
}

/// Two quadruples producing the same line means the line meets at least
/// five edges.
fn merge_lines(all: &mut [Quadrisecant]) -> Result<(), QuadrisecantError> {
    for a in 0..all.len() {
        for b in a + 1..all.len() {
            if all[a].same_line(&all[b]) {
                let mut edges: Vec<usize> = all[a]
                    .secants
                    .iter()
                    .chain(all[b].secants.iter())
                    .map(|s| s.edge)
                    .collect();
                edges.sort_unstable();
                edges.dedup();
                return Err(QuadrisecantError::QuintisecantDetected { edges });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests;
