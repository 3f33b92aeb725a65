use serde::Serialize;

use crate::exact::{Point3, Rational, Sign};
use crate::geometry::{orient2d, segment_contact};
use crate::knot::PolygonalKnot;

use super::ConnectSumError;

/// How the wedge point is resolved: the guest arc runs from `p1` to `p2`,
/// backwards when `reversed` is set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionChoice {
    pub p1: Point3,
    pub p2: Point3,
    pub reversed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResolutionSummary {
    pub p1: [String; 3],
    pub p2: [String; 3],
    pub reversed: bool,
}

impl From<&ResolutionChoice> for ResolutionSummary {
    fn from(r: &ResolutionChoice) -> Self {
        use crate::exact::rational::format_rational;
        let f = |p: &Point3| [format_rational(&p.x), format_rational(&p.y), format_rational(&p.z)];
        ResolutionSummary {
            p1: f(&r.p1),
            p2: f(&r.p2),
            reversed: r.reversed,
        }
    }
}

fn xy(p: &Point3) -> [Rational; 2] {
    [p.x.clone(), p.y.clone()]
}

/// Whether the closed planar segments `ab` and `cd` share a point.
fn segments_meet_2d(a: &Point3, b: &Point3, c: &Point3, d: &Point3) -> bool {
    let (a, b, c, d) = (xy(a), xy(b), xy(c), xy(d));
    let o1 = orient2d(&a, &b, &c);
    let o2 = orient2d(&a, &b, &d);
    let o3 = orient2d(&c, &d, &a);
    let o4 = orient2d(&c, &d, &b);
    let within = |p: &[Rational; 2], q: &[Rational; 2], r: &[Rational; 2]| {
        (0..2).all(|i| r[i] >= p[i].clone().min(q[i].clone()) && r[i] <= p[i].clone().max(q[i].clone()))
    };
    if o1 != o2 && o3 != o4 && o1 != Sign::Zero && o2 != Sign::Zero && o3 != Sign::Zero && o4 != Sign::Zero {
        return true;
    }
    (o1 == Sign::Zero && within(&a, &b, &c))
        || (o2 == Sign::Zero && within(&a, &b, &d))
        || (o3 == Sign::Zero && within(&c, &d, &a))
        || (o4 == Sign::Zero && within(&c, &d, &b))
}

/// Checks that the placed guest meets the host exactly in `anchor`.
pub fn check_wedge(host: &PolygonalKnot, m: usize, guest: &PolygonalKnot) -> Result<(), ConnectSumError> {
    let (nh, ng) = (host.len(), guest.len());
    let anchor = host.vertex(m);
    if guest.vertex(0) != anchor {
        return Err(ConnectSumError::Intersection("guest vertex 0 is not the anchor".into()));
    }
    for g in 0..ng {
        for h in 0..nh {
            let (a, b) = (guest.vertex(g), guest.vertex(g + 1));
            let (c, d) = (host.vertex(h), host.vertex(h + 1));
            if segment_contact(a, b, c, d).is_none() {
                continue;
            }
            let g_at = g == 0 || g == ng - 1;
            let h_at = h == m || (h + 1) % nh == m;
            if !(g_at && h_at) {
                return Err(ConnectSumError::Intersection(format!("guest edge {g} meets host edge {h}")));
            }
            // Both segments leave the anchor; they overlap only if they point
            // the same way.
            let u = if g == 0 { guest.vertex(1).minus(anchor) } else { guest.vertex(ng - 1).minus(anchor) };
            let w = if h == m { host.vertex(m + 1).minus(anchor) } else { host.vertex(m + nh - 1).minus(anchor) };
            if u.cross(&w).is_zero_exact() && u.dot(&w) > Rational::from_integer(0.into()) {
                return Err(ConnectSumError::Intersection(format!(
                    "guest edge {g} runs along host edge {h}"
                )));
            }
        }
    }
    Ok(())
}

/// `K #_P K′`: host vertex `m` (the anchor) is replaced by `p1`, the guest
/// arc from its vertex 1 to its last vertex, and `p2`. The guest must be
/// placed with vertex 0 on the anchor. The orientation of the guest arc is
/// chosen so that the plan views of `p1V₂` and `p2Vₙ` are disjoint.
pub fn connected_sum(
    host: &PolygonalKnot,
    m: usize,
    guest: &PolygonalKnot,
    p1: &Point3,
    p2: &Point3,
) -> Result<(PolygonalKnot, ResolutionChoice), ConnectSumError> {
    if p1 == p2 {
        return Err(ConnectSumError::Resolution("split points coincide".into()));
    }
    check_wedge(host, m, guest)?;
    let ng = guest.len();
    let arc: Vec<Point3> = (1..ng).map(|i| guest.vertex(i).clone()).collect();
    for reversed in [false, true] {
        let mut arc = arc.clone();
        if reversed {
            arc.reverse();
        }
        if segments_meet_2d(p1, &arc[0], p2, &arc[arc.len() - 1]) {
            continue;
        }
        let nh = host.len();
        let mut vs: Vec<Point3> = (0..m).map(|i| host.vertex(i).clone()).collect();
        vs.push(p1.clone());
        vs.extend(arc);
        vs.push(p2.clone());
        vs.extend((m + 1..nh).map(|i| host.vertex(i).clone()));
        let name = format!("{}#{}", guest.name(), host.name());
        let Ok(k) = PolygonalKnot::new(name, vs) else {
            continue;
        };
        if let Some(w) = k.is_simple().witness {
            return Err(ConnectSumError::Resolution(format!(
                "result is not embedded: edges {} and {} meet",
                w.edges.0, w.edges.1
            )));
        }
        let choice = ResolutionChoice {
            p1: p1.clone(),
            p2: p2.clone(),
            reversed,
        };
        return Ok((k, choice));
    }
    Err(ConnectSumError::Resolution(
        "both orientations have crossing plan views at the split".into(),
    ))
}
