//! Regular projections and planar diagram codes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::exact::{Point3, Scalar, Sign, Vec3};

use super::ClassifyError;

/// Number of random directions tried before giving up.
pub const MAX_DIRECTION_ATTEMPTS: usize = 10_000;

/// One crossing of an oriented diagram. Arc labels are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Crossing {
    pub over_in: usize,
    pub over_out: usize,
    pub under_in: usize,
    pub under_out: usize,
    /// Right-hand rule with the projection direction pointing at the viewer.
    pub sign: i8,
    /// Polygon edges carrying the over and under strands.
    pub over_edge: usize,
    pub under_edge: usize,
}

impl Crossing {
    /// `[a, b, c, d]`: incoming under arc, then counterclockwise.
    pub fn pd(&self) -> [usize; 4] {
        if self.sign > 0 {
            [self.under_in, self.over_out, self.under_out, self.over_in]
        } else {
            [self.under_in, self.over_in, self.under_out, self.over_out]
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KnotDiagram {
    /// Viewing direction, pointing from the diagram plane to the viewer.
    #[serde(serialize_with = "serialize_point")]
    pub direction: Point3,
    pub crossings: Vec<Crossing>,
    /// Arcs between consecutive crossing passages along the knot.
    pub arc_count: usize,
}

fn serialize_point<S: serde::Serializer>(p: &Point3, s: S) -> Result<S::Ok, S::Error> {
    use crate::exact::rational::format_rational;
    [format_rational(&p.x), format_rational(&p.y), format_rational(&p.z)].serialize(s)
}

impl KnotDiagram {
    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign as i64).sum()
    }

    pub fn pd_code(&self) -> Vec<[usize; 4]> {
        self.crossings.iter().map(Crossing::pd).collect()
    }

    /// `[(1, 5, 2, 4), (3, 1, 4, 6), …]`
    pub fn pd_text(&self) -> String {
        let items: Vec<String> = self
            .pd_code()
            .iter()
            .map(|x| format!("({}, {}, {}, {})", x[0], x[1], x[2], x[3]))
            .collect();
        format!("[{}]", items.join(", "))
    }
}

/// Orthogonal frame `(e1, e2, d)`, right-handed.
struct Frame<T> {
    d: Vec3<T>,
    e1: Vec3<T>,
    e2: Vec3<T>,
}

impl<T: Scalar> Frame<T> {
    fn new(direction: &Point3) -> Option<Frame<T>> {
        let d: Vec3<T> = direction.map(T::from_rational);
        if d.is_zero_exact() {
            return None;
        }
        let axes = [Vec3::from_ints(1, 0, 0), Vec3::from_ints(0, 1, 0), Vec3::from_ints(0, 0, 1)];
        let e1 = axes
            .iter()
            .map(|a| direction.cross(a))
            .find(|c| !c.is_zero_exact())?
            .map(T::from_rational);
        let e2 = d.cross(&e1);
        Some(Frame { d, e1, e2 })
    }

    fn project(&self, p: &Vec3<T>) -> [T; 2] {
        [p.dot(&self.e1), p.dot(&self.e2)]
    }
}

fn cross2<T: Scalar>(a: &[T; 2], b: &[T; 2]) -> T {
    a[0].times(&b[1]).minus(&a[1].times(&b[0]))
}

fn sub2<T: Scalar>(a: &[T; 2], b: &[T; 2]) -> [T; 2] {
    [a[0].minus(&b[0]), a[1].minus(&b[1])]
}

/// For collinear projected segments `[0, r]` and `[q, q + u]`: whether they
/// share a point.
fn collinear_overlap<T: Scalar>(r: &[T; 2], q: &[T; 2], u: &[T; 2]) -> bool {
    let dot = |a: &[T; 2], b: &[T; 2]| a[0].times(&b[0]).plus(&a[1].times(&b[1]));
    let len = dot(r, r);
    let a = dot(q, r);
    let b = a.plus(&dot(u, r));
    let (lo, hi) = if a.cmp_exact(&b).is_le() { (a, b) } else { (b, a) };
    hi.sign() != Sign::Negative && lo.cmp_exact(&len).is_le()
}

/// A crossing found on edge `edge` at parameter `num / den` (`den > 0`).
struct Passage<T> {
    num: T,
    den: T,
    crossing: usize,
    over: bool,
}

struct RawCrossing {
    over_edge: usize,
    under_edge: usize,
    sign: i8,
}

/// Builds the diagram seen from `direction`, or explains why that
/// direction is not regular.
pub fn diagram_from_direction<T: Scalar>(
    vertices: &[Vec3<T>],
    direction: &Point3,
) -> Result<KnotDiagram, ClassifyError> {
    if vertices.len() < 3 {
        return Err(ClassifyError::TooFewVertices(vertices.len()));
    }
    let keep = corner_vertices(vertices);
    let vertices: Vec<Vec3<T>> = keep.iter().map(|&i| vertices[i].clone()).collect();
    let n = vertices.len();
    if n < 3 {
        return Err(ClassifyError::NotEmbedded("polygon is flat".into()));
    }
    let irregular = |why: String| ClassifyError::NotRegular(why);
    let frame = Frame::<T>::new(direction).ok_or_else(|| irregular("zero direction".into()))?;
    let edges: Vec<Vec3<T>> = (0..n).map(|i| vertices[(i + 1) % n].minus(&vertices[i])).collect();
    let p2: Vec<[T; 2]> = vertices.iter().map(|v| frame.project(v)).collect();
    let r2: Vec<[T; 2]> = edges.iter().map(|e| frame.project(e)).collect();
    let depth: Vec<T> = vertices.iter().map(|v| v.dot(&frame.d)).collect();
    let rise: Vec<T> = edges.iter().map(|e| e.dot(&frame.d)).collect();

    for i in 0..n {
        if edges[i].cross(&frame.d).is_zero_exact() {
            return Err(irregular(format!("edge {i} is parallel to the direction")));
        }
        if cross2(&r2[i], &r2[(i + 1) % n]).sign() == Sign::Zero {
            return Err(irregular(format!("edges {i} and {} project collinearly", (i + 1) % n)));
        }
    }

    let mut raw: Vec<RawCrossing> = Vec::new();
    let mut per_edge: Vec<Vec<Passage<T>>> = (0..n).map(|_| Vec::new()).collect();
    for i in 0..n {
        for j in i + 2..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            let mut den = cross2(&r2[i], &r2[j]);
            let qp = sub2(&p2[j], &p2[i]);
            let mut s = cross2(&qp, &r2[j]);
            let mut t = cross2(&qp, &r2[i]);
            match den.sign() {
                Sign::Zero => {
                    if cross2(&qp, &r2[i]).sign() == Sign::Zero && collinear_overlap(&r2[i], &qp, &r2[j]) {
                        return Err(irregular(format!("edges {i} and {j} overlap in projection")));
                    }
                    continue;
                }
                Sign::Negative => {
                    den = den.negated();
                    s = s.negated();
                    t = t.negated();
                }
                Sign::Positive => {}
            }
            let s_lo = s.sign();
            let s_hi = den.minus(&s).sign();
            let t_lo = t.sign();
            let t_hi = den.minus(&t).sign();
            let outside = |a: Sign, b: Sign| a == Sign::Negative || b == Sign::Negative;
            if outside(s_lo, s_hi) || outside(t_lo, t_hi) {
                continue;
            }
            if [s_lo, s_hi, t_lo, t_hi].contains(&Sign::Zero) {
                return Err(irregular(format!("a vertex of edge {i} or {j} projects onto the other")));
            }
            // Heights scaled by den > 0.
            let hi = depth[i].times(&den).plus(&s.times(&rise[i]));
            let hj = depth[j].times(&den).plus(&t.times(&rise[j]));
            let (over, under) = match hi.minus(&hj).sign() {
                Sign::Zero => return Err(ClassifyError::NotEmbedded(format!("edges {i} and {j} intersect"))),
                Sign::Positive => (i, j),
                Sign::Negative => (j, i),
            };
            let sign = match cross2(&r2[over], &r2[under]).sign() {
                Sign::Positive => 1,
                _ => -1,
            };
            let id = raw.len();
            raw.push(RawCrossing {
                over_edge: over,
                under_edge: under,
                sign,
            });
            per_edge[i].push(Passage {
                num: s,
                den: den.clone(),
                crossing: id,
                over: over == i,
            });
            per_edge[j].push(Passage {
                num: t,
                den,
                crossing: id,
                over: over == j,
            });
        }
    }

    let mut order: Vec<(usize, bool)> = Vec::with_capacity(2 * raw.len());
    for (e, list) in per_edge.iter_mut().enumerate() {
        let key = |a: &Passage<T>, b: &Passage<T>| a.num.times(&b.den).minus(&b.num.times(&a.den)).sign();
        for a in 0..list.len() {
            for b in a + 1..list.len() {
                if key(&list[a], &list[b]) == Sign::Zero {
                    return Err(irregular(format!("triple point on edge {e}")));
                }
            }
        }
        list.sort_by(|a, b| key(a, b).to_ordering());
        order.extend(list.iter().map(|p| (p.crossing, p.over)));
    }

    let m = order.len();
    let mut slots = vec![[0usize; 4]; raw.len()];
    for (k, &(c, over)) in order.iter().enumerate() {
        let incoming = k + 1;
        let outgoing = (k + 1) % m + 1;
        let base = if over { 0 } else { 2 };
        slots[c][base] = incoming;
        slots[c][base + 1] = outgoing;
    }
    let crossings = raw
        .iter()
        .zip(slots)
        .map(|(r, s)| Crossing {
            over_in: s[0],
            over_out: s[1],
            under_in: s[2],
            under_out: s[3],
            sign: r.sign,
            over_edge: keep[r.over_edge],
            under_edge: keep[r.under_edge],
        })
        .collect();
    Ok(KnotDiagram {
        direction: direction.clone(),
        crossings,
        arc_count: m,
    })
}

/// Indices of vertices where the polygon actually turns. Vertices in the
/// middle of a straight run are dropped; they are invisible to the diagram.
fn corner_vertices<T: Scalar>(vs: &[Vec3<T>]) -> Vec<usize> {
    let n = vs.len();
    (0..n)
        .filter(|&i| {
            let u = vs[i].minus(&vs[(i + n - 1) % n]);
            let v = vs[(i + 1) % n].minus(&vs[i]);
            !u.cross(&v).is_zero_exact() || u.dot(&v).sign() != Sign::Positive
        })
        .collect()
}

/// A seeded stream of small nonzero integer directions.
pub fn direction_sampler(seed: u64) -> impl Iterator<Item = Point3> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    std::iter::repeat_with(move || loop {
        let mut c = || rng.gen_range(-24i64..=24);
        let (x, y, z) = (c(), c(), c());
        if (x, y, z) != (0, 0, 0) {
            break Vec3::from_ints(x, y, z);
        }
    })
}

/// Projects along `direction`, or along the first regular sampled direction.
pub fn project_to_diagram<T: Scalar>(
    vertices: &[Vec3<T>],
    direction: Option<&Point3>,
    seed: u64,
) -> Result<KnotDiagram, ClassifyError> {
    if let Some(d) = direction {
        return diagram_from_direction(vertices, d);
    }
    for d in direction_sampler(seed).take(MAX_DIRECTION_ATTEMPTS) {
        match diagram_from_direction(vertices, &d) {
            Err(ClassifyError::NotRegular(_)) => continue,
            other => return other,
        }
    }
    Err(ClassifyError::DirectionsExhausted(MAX_DIRECTION_ATTEMPTS))
}
