//! Fixed inputs shared by the benchmarks.

use quadlab_core::knot::{builtin_knot, random_generic_knot, PolygonalKnot};

/// The published knots plus two seeded random polygons.
pub fn workloads() -> Vec<PolygonalKnot> {
    let mut out: Vec<PolygonalKnot> = ["k6", "k14"].iter().map(|n| builtin_knot(n).unwrap()).collect();
    out.push(random_generic_knot(8, 7));
    out.push(random_generic_knot(12, 7));
    out
}
