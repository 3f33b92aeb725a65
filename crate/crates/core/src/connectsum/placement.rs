//! Shrinking a guest knot into a thin slab at a point of a host.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::classify::{project_to_diagram, ClassifyError};
use crate::exact::poly::{ExtendedPoint, Poly};
use crate::exact::rational::int;
use crate::exact::{lift_point, Point3, Rational, Vec3};
use crate::knot::{AffineMap, PolygonalKnot};
use crate::quadrisecant::TransversalFamily;

use super::{ConnectSumError, SHRINK_CAP};

/// A regular projection direction for `k`, sampled with `seed`.
pub fn find_regular_projection(k: &PolygonalKnot, seed: u64) -> Result<Point3, ConnectSumError> {
    let vs: Vec<Vec3<Rational>> = k.vertices().iter().map(lift_point).collect();
    match project_to_diagram(&vs, None, seed) {
        Ok(d) => Ok(d.direction),
        Err(ClassifyError::NotEmbedded(w)) => Err(ConnectSumError::NotEmbedded(w)),
        Err(e) => Err(ConnectSumError::Projection(e)),
    }
}

/// Right-handed orthogonal frame `(e1, e2, d)`.
fn frame(d: &Point3) -> (Point3, Point3) {
    let axes = [Vec3::from_ints(1, 0, 0), Vec3::from_ints(0, 1, 0), Vec3::from_ints(0, 0, 1)];
    let e1 = axes
        .iter()
        .map(|a| d.cross(a))
        .find(|c| !c.is_zero_exact())
        .expect("nonzero direction");
    let e2 = d.cross(&e1);
    (e1, e2)
}

/// The vertex whose projection is lexicographically smallest in the frame
/// of `direction` (lowest index on ties). Such a point is always a vertex
/// of the convex hull of the projected vertices.
pub fn hull_vertex(k: &PolygonalKnot, direction: &Point3) -> usize {
    let (e1, e2) = frame(direction);
    let key = |v: &Point3| (v.dot(&e1), v.dot(&e2));
    (0..k.len()).min_by(|&a, &b| key(k.vertex(a)).cmp(&key(k.vertex(b)))).unwrap()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PlacementCondition {
    /// The projection plane maps to a horizontal plane.
    A,
    /// `V ↦ P` and the image lies in the ε-ball about `P`.
    B,
    /// The image meets the wall only at `P`.
    C,
    /// Every line meeting three edges has slope below δ.
    D,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlacementCheck {
    pub violated: Option<PlacementCondition>,
    pub witness: Option<String>,
}

impl PlacementCheck {
    pub fn passed(&self) -> bool {
        self.violated.is_none()
    }

    fn fail(c: PlacementCondition, witness: String) -> Self {
        PlacementCheck {
            violated: Some(c),
            witness: Some(witness),
        }
    }
}

/// A verified affine placement of a guest knot at `anchor`.
///
/// `δ` bounds the slope `|dz| / |(dx, dy)|` rather than the angle; the two
/// agree to first order and the slope keeps every test polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Placement {
    pub direction: Point3,
    pub hull_vertex: usize,
    /// Horizontal normal of the wall plane through `anchor`, pointing to the
    /// side that receives the guest.
    pub wall_normal: Point3,
    pub anchor: Point3,
    pub epsilon: Rational,
    pub delta: Rational,
    pub scale: Rational,
    pub contraction: Rational,
    pub contraction_steps: usize,
    pub transform: AffineMap,
}

impl Placement {
    pub fn apply(&self, k: &PolygonalKnot) -> PolygonalKnot {
        self.transform.apply_knot(k).expect("invertible map keeps edges nonzero")
    }
}

/// Slope certificate: `δ²(Dx² + Dy²) − Dz²`.
fn slope_margin(d: &[Poly; 3], delta_sq: &Rational) -> Poly {
    let [x, y, z] = d;
    x.mul(x).add(&y.mul(y)).scale(delta_sq).sub(&z.mul(z))
}

fn linear_poly(base: &Rational, dir: &Rational) -> Poly {
    Poly::new(vec![base.clone(), dir.clone()])
}

/// First line meeting three edges of `k` whose slope is not below `delta`,
/// described in words; `None` when every such line is flatter.
pub fn steep_transversal(k: &PolygonalKnot, delta: &Rational) -> Option<String> {
    let n = k.len();
    let dsq = delta * delta;
    let zero = ExtendedPoint::Finite(Rational::zero());
    let one = ExtendedPoint::Finite(Rational::one());
    // Lines through a vertex and a point of a non-incident edge.
    for w in 0..n {
        for e in 0..n {
            if e == w || (e + 1) % n == w {
                continue;
            }
            let (a, v, p) = (k.vertex(e), k.edge(e), k.vertex(w));
            let d = [
                linear_poly(&(&a.x - &p.x), &v.x),
                linear_poly(&(&a.y - &p.y), &v.y),
                linear_poly(&(&a.z - &p.z), &v.z),
            ];
            if !slope_margin(&d, &dsq).positive_on(&zero, &one) {
                return Some(format!("line through vertex {w} and edge {e}"));
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for l in j + 1..n {
                if n == 3 {
                    continue;
                }
                let fam = TransversalFamily::raw(k, i, j, l);
                if fam.det.is_zero() {
                    return Some(format!("edges {i}, {j}, {l} are linearly dependent"));
                }
                if !family_is_flat(&fam, &dsq) {
                    return Some(format!("transversal of edges {i}, {j}, {l}"));
                }
            }
        }
    }
    None
}

fn family_is_flat(fam: &TransversalFamily, dsq: &Rational) -> bool {
    let dirs = fam.direction_polys();
    let f = slope_margin(&dirs, dsq);
    let crit = fam.critical_values();
    let mut bounds = vec![ExtendedPoint::NegInfinity];
    bounds.extend(crit.iter().cloned().map(ExtendedPoint::Finite));
    bounds.push(ExtendedPoint::PosInfinity);
    for w in bounds.windows(2) {
        let (lo, hi) = (&w[0], &w[1]);
        let mid = match (lo, hi) {
            (ExtendedPoint::NegInfinity, ExtendedPoint::Finite(h)) => h - Rational::one(),
            (ExtendedPoint::Finite(l), ExtendedPoint::PosInfinity) => l + Rational::one(),
            (ExtendedPoint::Finite(l), ExtendedPoint::Finite(h)) => (l + h) / int(2),
            _ => Rational::zero(),
        };
        if !fam.admissible_at(&mid) {
            continue;
        }
        if f.is_zero() || f.eval(&mid).is_negative() || f.eval(&mid).is_zero() {
            return false;
        }
        // No root strictly inside the interval.
        let mut roots = f.count_roots(lo, hi);
        if let ExtendedPoint::Finite(h) = hi {
            if f.eval(h).is_zero() {
                roots -= 1;
            }
        }
        if roots > 0 {
            return false;
        }
        // Finite endpoints with a well-defined member line must be flat too;
        // where the direction vanishes the limit line passes through a
        // vertex and is covered by the vertex checks.
        for end in [lo, hi] {
            if let ExtendedPoint::Finite(x) = end {
                let dir_zero = dirs.iter().all(|p| p.eval(x).is_zero());
                if !dir_zero && !f.eval(x).is_positive() {
                    return false;
                }
            }
        }
    }
    true
}

/// Checks the four placement conditions for the image of `k`.
pub fn verify_placement(pl: &Placement, k: &PolygonalKnot) -> PlacementCheck {
    use PlacementCondition::*;
    if !pl.transform.is_invertible() {
        return PlacementCheck::fail(A, "transform is singular".into());
    }
    let (e1, e2) = frame(&pl.direction);
    for e in [&e1, &e2] {
        if !pl.transform.linear(e).z.is_zero() {
            return PlacementCheck::fail(A, "projection plane is not mapped to a horizontal plane".into());
        }
    }
    let image = pl.apply(k);
    let v = pl.hull_vertex;
    if image.vertex(v) != &pl.anchor {
        return PlacementCheck::fail(B, format!("vertex {v} is not mapped to the anchor"));
    }
    let eps_sq = &pl.epsilon * &pl.epsilon;
    for (i, p) in image.vertices().iter().enumerate() {
        if p.minus(&pl.anchor).norm_sq() >= eps_sq {
            return PlacementCheck::fail(B, format!("vertex {i} leaves the epsilon-ball"));
        }
    }
    for (i, p) in image.vertices().iter().enumerate() {
        if i != v && !p.minus(&pl.anchor).dot(&pl.wall_normal).is_positive() {
            return PlacementCheck::fail(C, format!("vertex {i} is not strictly on the guest side of the wall"));
        }
    }
    if let Some(w) = steep_transversal(&image, &pl.delta) {
        return PlacementCheck::fail(D, w);
    }
    PlacementCheck {
        violated: None,
        witness: None,
    }
}

/// Builds `T = translate(P) ∘ diag(c, c, c·s) ∘ B ∘ A ∘ translate(−V)`:
/// `A` takes the projection frame to the coordinate axes, `B` turns a
/// strict supporting line of the projected hull at `V` into the wall, `c`
/// fits the image into the ε-ball and `s` is halved until condition (d)
/// holds.
#[allow(clippy::too_many_arguments)]
pub fn build_affine_placement(
    k: &PolygonalKnot,
    direction: &Point3,
    hull_vertex: usize,
    wall_normal: &Point3,
    anchor: &Point3,
    epsilon: &Rational,
    delta: &Rational,
) -> Result<Placement, ConnectSumError> {
    if !wall_normal.z.is_zero() || wall_normal.is_zero_exact() {
        return Err(ConnectSumError::InvalidWall);
    }
    if !epsilon.is_positive() || !delta.is_positive() {
        return Err(ConnectSumError::NonPositiveParameter);
    }
    let (e1, e2) = frame(direction);
    let a = AffineMap::from_columns([&e1, &e2, direction]).inverse().expect("orthogonal frame");
    let origin = k.vertex(hull_vertex).clone();
    let q: Vec<Point3> = k.vertices().iter().map(|p| a.apply(&p.minus(&origin))).collect();

    // Strict supporting functional (1, λ) at the lexicographic minimum.
    let mut lambda = Rational::one();
    for (i, p) in q.iter().enumerate() {
        if i == hull_vertex {
            continue;
        }
        if p.x.is_negative() || (p.x.is_zero() && !p.y.is_positive()) {
            return Err(ConnectSumError::NotHullVertex(hull_vertex));
        }
        if p.x.is_positive() && p.y.is_negative() {
            let bound = &p.x / (int(-2) * &p.y);
            if bound < lambda {
                lambda = bound;
            }
        }
    }
    let n = wall_normal;
    let sigma = Vec3::new(-n.y.clone(), n.x.clone(), Rational::zero());
    let nn = n.norm_sq();
    // B(x, y) = (x + λy)·n/|n|² + (−λx + y)·σ/|σ|², z unchanged.
    let col_x = n.scale(&(Rational::one() / &nn)).minus(&sigma.scale(&(&lambda / &nn)));
    let col_y = n.scale(&(&lambda / &nn)).plus(&sigma.scale(&(Rational::one() / &nn)));
    let b = AffineMap::from_columns([&col_x, &col_y, &Vec3::from_ints(0, 0, 1)]);
    let ba = b.compose(&a);

    let radius_sq = k
        .vertices()
        .iter()
        .map(|p| ba.linear(&p.minus(&origin)).norm_sq())
        .max()
        .unwrap_or_else(Rational::zero);
    let mut scale = Rational::one();
    let eps_sq = epsilon * epsilon;
    while &scale * &scale * &radius_sq >= eps_sq {
        scale /= int(2);
    }
    while int(4) * &scale * &scale * &radius_sq < eps_sq {
        scale *= int(2);
    }

    let mut contraction = Rational::one();
    for step in 0..=SHRINK_CAP {
        let diag = AffineMap::diagonal([scale.clone(), scale.clone(), &scale * &contraction]);
        let transform = AffineMap::translation_by(anchor.clone())
            .compose(&diag)
            .compose(&ba)
            .compose(&AffineMap::translation_by(origin.map(|c| -c)));
        let pl = Placement {
            direction: direction.clone(),
            hull_vertex,
            wall_normal: wall_normal.clone(),
            anchor: anchor.clone(),
            epsilon: epsilon.clone(),
            delta: delta.clone(),
            scale: scale.clone(),
            contraction: contraction.clone(),
            contraction_steps: step,
            transform,
        };
        let check = verify_placement(&pl, k);
        match check.violated {
            None => return Ok(pl),
            Some(PlacementCondition::D) => contraction /= int(2),
            Some(c) => {
                return Err(ConnectSumError::PlacementFailed {
                    condition: c,
                    witness: check.witness.unwrap_or_default(),
                })
            }
        }
    }
    Err(ConnectSumError::PlacementDiverged { iterations: SHRINK_CAP })
}
