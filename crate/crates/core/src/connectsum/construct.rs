use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::approximation::approximate;
use crate::classify::{classify, classify_knot, ClassifyOptions, LaurentPolynomial};
use crate::exact::rational::{format_rational, from_f64_dyadic, int, power_of_two_below, rat};
use crate::exact::{Point3, Rational, Vec3};
use crate::knot::{segment_distance_f64, BuiltinKnot, PolygonalKnot};

use super::{
    build_affine_placement, connected_sum, find_regular_projection, hull_vertex, perturb_generic, ConnectSumError,
    PerturbRecord, ResolutionSummary, SHRINK_CAP,
};

pub fn default_eta() -> Rational {
    rat(1, 64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConstructionKind {
    /// Guest attached at `W3` of the hexagonal unknot.
    KStar,
    /// Guest attached at `W7` of the 14-edge unknot.
    KDiamond,
}

impl ConstructionKind {
    fn host(self) -> BuiltinKnot {
        match self {
            ConstructionKind::KStar => BuiltinKnot::K6,
            ConstructionKind::KDiamond => BuiltinKnot::K14,
        }
    }

    fn anchor_index(self) -> usize {
        match self {
            ConstructionKind::KStar => 2,
            ConstructionKind::KDiamond => 6,
        }
    }

    /// Horizontal normal of the wall, towards the guest's side.
    fn wall_normal(self) -> Point3 {
        match self {
            ConstructionKind::KStar => Vec3::from_ints(0, 1, 0),
            ConstructionKind::KDiamond => Vec3::from_ints(1, 10, 0),
        }
    }

    fn split_points(self, eta: &Rational) -> (Point3, Point3) {
        match self {
            ConstructionKind::KStar => (
                Vec3::new(int(2) - eta, int(0), int(1)),
                Vec3::new(int(2) + eta, int(0), int(1)),
            ),
            ConstructionKind::KDiamond => (
                Vec3::new(int(10) - int(10) * eta, eta - int(1), int(-8)),
                Vec3::from_ints(10, -1, -8),
            ),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ConstructOptions {
    pub seed: u64,
    pub max_crossings: usize,
}

impl Default for ConstructOptions {
    fn default() -> Self {
        ConstructOptions {
            seed: 0,
            max_crossings: crate::classify::DEFAULT_MAX_CROSSINGS,
        }
    }
}

/// One pass of the shrink loop.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AttemptRecord {
    pub iteration: usize,
    pub eta: String,
    pub epsilon: String,
    pub scale: Option<String>,
    pub contraction: Option<String>,
    pub contraction_steps: Option<usize>,
    pub resolution: Option<ResolutionSummary>,
    pub perturbation: Option<PerturbRecord>,
    pub outcome: String,
    pub accepted: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstructionTranscript {
    pub kind: ConstructionKind,
    pub host: String,
    pub anchor: [String; 3],
    pub wall_normal: [String; 3],
    pub guest: String,
    pub guest_edges: usize,
    pub guest_jones: String,
    pub seed: u64,
    pub eta: String,
    pub delta: String,
    pub direction: [String; 3],
    pub hull_vertex: usize,
    pub attempts: Vec<AttemptRecord>,
    pub output_edges: Option<usize>,
    pub approximation_jones: Option<String>,
    /// Whether the approximation's Jones polynomial equals the guest's
    /// times the host approximation's.
    pub approximation_is_product: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct Construction {
    pub knot: PolygonalKnot,
    pub transcript: ConstructionTranscript,
}

fn coords(p: &Point3) -> [String; 3] {
    [format_rational(&p.x), format_rational(&p.y), format_rational(&p.z)]
}

/// Largest power of two `δ ≤ 1` with `δ` at most half the slope of either
/// host edge at the anchor.
fn slope_bound(host: &PolygonalKnot, m: usize) -> Result<Rational, ConnectSumError> {
    let n = host.len();
    let mut delta = Rational::one();
    for e in [(m + n - 1) % n, m] {
        let d = host.edge(e);
        if d.z.is_zero() {
            return Err(ConnectSumError::HorizontalHostEdge(e));
        }
        let h = &d.x * &d.x + &d.y * &d.y;
        while int(4) * &delta * &delta * &h > &d.z * &d.z {
            delta /= int(2);
        }
    }
    Ok(delta)
}

/// A power of two below half the distance from the anchor to the host
/// edges not incident to it.
fn initial_epsilon(host: &PolygonalKnot, m: usize) -> Rational {
    let n = host.len();
    let p = host.vertex(m).approx();
    let dist = (0..n)
        .filter(|&e| e != m && (e + 1) % n != m)
        .map(|e| segment_distance_f64(p, p, host.vertex(e).approx(), host.vertex(e + 1).approx()))
        .fold(f64::INFINITY, f64::min);
    let half = from_f64_dyadic(dist.min(2.0) / 2.0, 64);
    power_of_two_below(&half)
}

fn jones_of(k: &PolygonalKnot, opts: &ConstructOptions) -> Result<LaurentPolynomial, ConnectSumError> {
    let copts = ClassifyOptions {
        seed: opts.seed,
        max_crossings: opts.max_crossings,
        ..ClassifyOptions::default()
    };
    Ok(classify_knot(k, &copts)?.jones)
}

fn hat_jones(k: &PolygonalKnot, opts: &ConstructOptions) -> Result<Option<LaurentPolynomial>, ConnectSumError> {
    let a = approximate(k)?;
    if !a.self_intersections.is_embedded {
        return Ok(None);
    }
    let copts = ClassifyOptions {
        seed: opts.seed,
        max_crossings: opts.max_crossings,
        check_embedding: false,
        ..ClassifyOptions::default()
    };
    Ok(Some(classify(&a.polygon.surd_vertices(), &copts)?.jones))
}

enum Target {
    Accepted {
        hat_jones: Option<LaurentPolynomial>,
    },
    Rejected(String),
}

/// Attaches `guest` to the host of `kind`, halving `η` and `ε` until the
/// sum has the guest's type and its approximation shows the intended
/// defect: self-intersections for `KStar`, a changed knot type for
/// `KDiamond`.
pub fn construct(
    kind: ConstructionKind,
    guest: &PolygonalKnot,
    eta: &Rational,
    opts: &ConstructOptions,
) -> Result<Construction, ConnectSumError> {
    if !eta.is_positive() {
        return Err(ConnectSumError::NonPositiveParameter);
    }
    if guest.len() < 3 {
        return Err(ConnectSumError::TooFewEdges {
            needed: 3,
            got: guest.len(),
        });
    }
    if let Some(w) = guest.is_simple().witness {
        return Err(ConnectSumError::NotEmbedded(format!("edges {} and {} meet", w.edges.0, w.edges.1)));
    }
    let host = kind.host().knot();
    let m = kind.anchor_index();
    let anchor = host.vertex(m).clone();
    let normal = kind.wall_normal();
    let delta = slope_bound(&host, m)?;
    let eps0 = initial_epsilon(&host, m);

    let direction = find_regular_projection(guest, opts.seed)?;
    let v = hull_vertex(guest, &direction);
    let g0 = guest.rotated(v);

    let guest_jones = jones_of(guest, opts)?;
    let host_jones = jones_of(&host, opts)?;
    let expected = guest_jones.mul(&host_jones);
    let host_hat = hat_jones(&host, opts)?;

    let mut transcript = ConstructionTranscript {
        kind,
        host: host.name().to_string(),
        anchor: coords(&anchor),
        wall_normal: coords(&normal),
        guest: guest.name().to_string(),
        guest_edges: guest.len(),
        guest_jones: guest_jones.to_string(),
        seed: opts.seed,
        eta: format_rational(eta),
        delta: format_rational(&delta),
        direction: coords(&direction),
        hull_vertex: v,
        attempts: Vec::new(),
        output_edges: None,
        approximation_jones: None,
        approximation_is_product: None,
    };

    let mut eta_i = eta.clone();
    let mut eps_i = eps0;
    for i in 0..SHRINK_CAP {
        let mut rec = AttemptRecord {
            iteration: i,
            eta: format_rational(&eta_i),
            epsilon: format_rational(&eps_i),
            scale: None,
            contraction: None,
            contraction_steps: None,
            resolution: None,
            perturbation: None,
            outcome: String::new(),
            accepted: false,
        };
        let attempt = (|| -> Result<(PolygonalKnot, Target), ConnectSumError> {
            let pl = build_affine_placement(&g0, &direction, 0, &normal, &anchor, &eps_i, &delta)?;
            rec.scale = Some(format_rational(&pl.scale));
            rec.contraction = Some(format_rational(&pl.contraction));
            rec.contraction_steps = Some(pl.contraction_steps);
            let placed = pl.apply(&g0);
            let (p1, p2) = kind.split_points(&eta_i);
            let (sum, res) = connected_sum(&host, m, &placed, &p1, &p2)?;
            rec.resolution = Some((&res).into());
            let (k, pert) = match perturb_generic(&sum, &Rational::zero(), opts.seed) {
                Ok(r) => r,
                Err(_) => {
                    let gap = from_f64_dyadic(sum.min_nonadjacent_distance(), 80);
                    let base = if gap.is_positive() && gap < eta_i { gap } else { eta_i.clone() };
                    let mag = power_of_two_below(&(base / int(64)));
                    perturb_generic(&sum, &mag, opts.seed.wrapping_add(i as u64))?
                }
            };
            rec.perturbation = Some(pert);
            let jones = jones_of(&k, opts)?;
            if jones != expected {
                return Ok((k, Target::Rejected(format!("sum has Jones {jones}, expected {expected}"))));
            }
            let approx = approximate(&k)?;
            let embedded = approx.self_intersections.is_embedded;
            let target = match kind {
                ConstructionKind::KStar if !embedded => Target::Accepted { hat_jones: None },
                ConstructionKind::KStar => Target::Rejected("approximation is embedded".into()),
                ConstructionKind::KDiamond if !embedded => {
                    Target::Rejected("approximation is not embedded".into())
                }
                ConstructionKind::KDiamond => {
                    let copts = ClassifyOptions {
                        seed: opts.seed,
                        max_crossings: opts.max_crossings,
                        check_embedding: false,
                        ..ClassifyOptions::default()
                    };
                    let hj = classify(&approx.polygon.surd_vertices(), &copts)?.jones;
                    if hj == jones {
                        Target::Rejected("approximation has the type of the knot".into())
                    } else {
                        Target::Accepted { hat_jones: Some(hj) }
                    }
                }
            };
            Ok((k, target))
        })();
        match attempt {
            Ok((k, Target::Accepted { hat_jones })) => {
                rec.outcome = "accepted".into();
                rec.accepted = true;
                transcript.attempts.push(rec);
                transcript.output_edges = Some(k.len());
                if let Some(hj) = &hat_jones {
                    transcript.approximation_jones = Some(hj.to_string());
                    transcript.approximation_is_product =
                        host_hat.as_ref().map(|h| &guest_jones.mul(h) == hj);
                }
                let name = match kind {
                    ConstructionKind::KStar => format!("{}_star", guest.name()),
                    ConstructionKind::KDiamond => format!("{}_diamond", guest.name()),
                };
                return Ok(Construction {
                    knot: k.with_name(name),
                    transcript,
                });
            }
            Ok((_, Target::Rejected(why))) => rec.outcome = why,
            Err(e) => rec.outcome = e.to_string(),
        }
        transcript.attempts.push(rec);
        eta_i /= int(2);
        eps_i /= int(2);
    }
    let last_failure = transcript.attempts.last().map(|a| a.outcome.clone()).unwrap_or_default();
    Err(ConnectSumError::ShrinkLoopExhausted {
        iterations: SHRINK_CAP,
        last_failure,
        transcript: Some(Box::new(transcript)),
    })
}

/// The guest summed into the hexagonal unknot at `W3`; `e(K) + 6` edges.
pub fn build_k_star(k: &PolygonalKnot, eta: &Rational, opts: &ConstructOptions) -> Result<Construction, ConnectSumError> {
    construct(ConstructionKind::KStar, k, eta, opts)
}

/// The guest summed into the 14-edge unknot at `W7`; `e(K) + 14` edges.
pub fn build_k_diamond(
    k: &PolygonalKnot,
    eta: &Rational,
    opts: &ConstructOptions,
) -> Result<Construction, ConnectSumError> {
    construct(ConstructionKind::KDiamond, k, eta, opts)
}
