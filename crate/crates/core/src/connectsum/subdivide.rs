use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::approximation::approximate;
use crate::exact::rational::{format_rational, from_f64_dyadic, int, power_of_two_below, rat};
use crate::exact::{Point3, Rational};
use crate::knot::{segment_distance_f64, PolygonalKnot};

use super::{perturb_generic, ConnectSumError, PerturbRecord, SHRINK_CAP};

/// Sample points per edge for the Hausdorff estimate.
const HAUSDORFF_SAMPLES: usize = 64;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SubdivisionReport {
    pub input_edges: usize,
    pub output_edges: usize,
    pub gadget_edges: Vec<usize>,
    /// Vertex split in two when the number of edges is odd.
    pub corner_split: Option<usize>,
    pub height: String,
    pub attempts: usize,
    pub perturbation: PerturbRecord,
    pub hausdorff: f64,
    pub tolerance: f64,
}

fn norm(p: &Point3) -> f64 {
    let [x, y, z] = p.approx();
    (x * x + y * y + z * z).sqrt()
}

fn positive_dyadic(v: f64) -> Rational {
    let r = from_f64_dyadic(v, 60);
    if r.is_positive() {
        r
    } else {
        rat(1, 1 << 60)
    }
}

/// The vertices of `K` after putting a tent on every gadget edge, with
/// tent height `h·|u|/4` and neighbour extensions of length `h·|u|/10`.
fn gadget_vertices(k: &PolygonalKnot, gadget: &[bool], h: f64) -> Vec<Point3> {
    let n = k.len();
    let v = |i: usize| k.vertex(i % n);
    let len = |e: usize| norm(&k.edge(e % n));
    // Moves vertex `j` away from `from` along their line.
    let extend = |j: usize, from: usize, gadget_edge: usize| {
        let d = v(j).minus(v(from));
        let kappa = positive_dyadic(h * len(gadget_edge) / (10.0 * norm(&d)));
        v(j).plus(&d.scale(&kappa))
    };
    let mut out = Vec::new();
    for j in 0..n {
        let prev = (j + n - 1) % n;
        let (in_gadget, out_gadget) = (gadget[prev], gadget[j]);
        if in_gadget {
            out.push(extend(j, j + 1, prev));
        }
        if out_gadget {
            out.push(extend(j, prev, j));
            let (a, u) = (v(j), k.edge(j));
            let normal = a.minus(v(prev)).cross(&u);
            let s = positive_dyadic(h * len(j) / (4.0 * norm(&normal)));
            let v2 = a.plus(&u.scale(&rat(1, 4)));
            let v3 = a.plus(&u.scale(&rat(1, 2))).plus(&normal.scale(&s));
            let v4 = a.plus(&u.scale(&rat(3, 4)));
            out.push(v2.plus(&v2.minus(&v3).scale(&rat(1, 5))));
            out.push(v3.clone());
            out.push(v4.plus(&v4.minus(&v3).scale(&rat(1, 4))));
        }
    }
    out
}

fn sample(pts: &[[f64; 3]]) -> Vec<[f64; 3]> {
    let n = pts.len();
    let mut out = Vec::with_capacity(n * HAUSDORFF_SAMPLES);
    for i in 0..n {
        let (a, b) = (pts[i], pts[(i + 1) % n]);
        for s in 0..HAUSDORFF_SAMPLES {
            let t = s as f64 / HAUSDORFF_SAMPLES as f64;
            out.push([a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]), a[2] + t * (b[2] - a[2])]);
        }
    }
    out
}

fn one_sided(from: &[[f64; 3]], to: &[[f64; 3]]) -> f64 {
    let m = to.len();
    sample(from)
        .into_iter()
        .map(|p| {
            (0..m)
                .map(|i| segment_distance_f64(p, p, to[i], to[(i + 1) % m]))
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max)
}

/// Sampled Hausdorff distance between two closed polylines.
pub fn hausdorff_estimate(a: &[[f64; 3]], b: &[[f64; 3]]) -> f64 {
    one_sided(a, b).max(one_sided(b, a))
}

/// Replaces every other edge of `k` (both edges at vertex 0 when the count
/// is odd) by the four-edge tent of the hexagonal unknot, so that each
/// such edge carries a quadrisecant and the approximation follows `k`.
/// The tent is flattened until the result is generic and its
/// approximation is embedded and within a quarter of the minimum
/// non-adjacent edge distance of `k`.
pub fn subdivide_for_trefoil_sum(
    k: &PolygonalKnot,
    seed: u64,
) -> Result<(PolygonalKnot, SubdivisionReport), ConnectSumError> {
    let n = k.len();
    if n < 4 {
        return Err(ConnectSumError::TooFewEdges { needed: 4, got: n });
    }
    if let Some(w) = k.is_simple().witness {
        return Err(ConnectSumError::NotEmbedded(format!("edges {} and {} meet", w.edges.0, w.edges.1)));
    }
    let gadget: Vec<bool> = (0..n).map(|e| e % 2 == 0).collect();
    let gadget_edges: Vec<usize> = (0..n).filter(|&e| gadget[e]).collect();
    let corner_split = (n % 2 == 1).then_some(0);
    let tolerance = k.min_nonadjacent_distance() / 4.0;
    let base = k.approx_vertices();

    let mut h = 1.0;
    let mut last_failure = String::new();
    for attempt in 1..=SHRINK_CAP {
        let vs = gadget_vertices(k, &gadget, h);
        let outcome = (|| -> Result<Result<(PolygonalKnot, PerturbRecord, f64), String>, ConnectSumError> {
            let Ok(raw) = PolygonalKnot::new(format!("{}_subdivided", k.name()), vs) else {
                return Ok(Err("degenerate edge".into()));
            };
            if !raw.is_simple().simple {
                return Ok(Err("subdivision is not embedded".into()));
            }
            let (knot, pert) = match perturb_generic(&raw, &Rational::zero(), seed) {
                Ok(r) => r,
                Err(_) => {
                    let gap = from_f64_dyadic(raw.min_nonadjacent_distance(), 80);
                    if !gap.is_positive() {
                        return Ok(Err("subdivision is not embedded".into()));
                    }
                    perturb_generic(&raw, &power_of_two_below(&(gap / int(64))), seed.wrapping_add(attempt as u64))?
                }
            };
            let approx = approximate(&knot)?;
            if !approx.self_intersections.is_embedded {
                return Ok(Err("approximation is not embedded".into()));
            }
            let d = hausdorff_estimate(&approx.polygon.approx_vertices(), &base);
            if d >= tolerance {
                return Ok(Err(format!("approximation is {d:.3e} from the knot, tolerance {tolerance:.3e}")));
            }
            Ok(Ok((knot, pert, d)))
        })();
        match outcome {
            Ok(Ok((knot, perturbation, hausdorff))) => {
                let report = SubdivisionReport {
                    input_edges: n,
                    output_edges: knot.len(),
                    gadget_edges,
                    corner_split,
                    height: format_rational(&from_f64_dyadic(h, 64)),
                    attempts: attempt,
                    perturbation,
                    hausdorff,
                    tolerance,
                };
                return Ok((knot, report));
            }
            Ok(Err(why)) => last_failure = why,
            Err(e) => last_failure = e.to_string(),
        }
        h /= 2.0;
    }
    Err(ConnectSumError::ShrinkLoopExhausted {
        iterations: SHRINK_CAP,
        last_failure,
        transcript: None,
    })
}
