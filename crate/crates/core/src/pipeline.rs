//! The full analysis of one knot: general position, quadrisecants, `K̂`,
//! self-intersections, classification of both and the comparison of their
//! quadrisecant sets.

use std::fmt;
use std::time::Instant;

use serde::Serialize;

use crate::approximation::{
    collect_secant_points, build_approximation, compare_quadrisecant_sets, find_self_intersections, QuadsetComparison,
    SelfIntersectionReport,
};
use crate::classify::{classify, classify_knot, ClassificationResult, ClassifyOptions, DEFAULT_MAX_CROSSINGS};
use crate::exact::rational::format_rational;
use crate::knot::{GeneralPositionReport, PolygonalKnot};
use crate::quadrisecant::{find_all_quadrisecants, QuadrisecantError, QuadrisecantView};

/// Significant digits for decimal coordinates of `K̂`.
const DECIMAL_DIGITS: usize = 20;

#[derive(Clone, Debug)]
pub struct AnalyzeOptions {
    pub seed: u64,
    pub max_crossings: usize,
    pub skip_classify: bool,
    pub timing: bool,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            seed: 0,
            max_crossings: DEFAULT_MAX_CROSSINGS,
            skip_classify: false,
            timing: true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    Input,
    GeneralPosition,
    Quadrisecants,
    Approximation,
    SelfIntersections,
    Classification,
    Comparison,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ConjectureVerdict {
    #[serde(rename = "HOLDS")]
    Holds,
    #[serde(rename = "FAILS-embedding")]
    FailsEmbedding,
    #[serde(rename = "FAILS-type")]
    FailsType,
    #[serde(rename = "FAILS-quadset")]
    FailsQuadset,
    #[serde(rename = "INCONCLUSIVE")]
    Inconclusive,
}

impl ConjectureVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            ConjectureVerdict::Holds => "HOLDS",
            ConjectureVerdict::FailsEmbedding => "FAILS-embedding",
            ConjectureVerdict::FailsType => "FAILS-type",
            ConjectureVerdict::FailsQuadset => "FAILS-quadset",
            ConjectureVerdict::Inconclusive => "INCONCLUSIVE",
        }
    }
}

impl fmt::Display for ConjectureVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KnotSummary {
    pub name: String,
    pub edges: usize,
    pub vertices: Vec<[String; 3]>,
}

impl From<&PolygonalKnot> for KnotSummary {
    fn from(k: &PolygonalKnot) -> Self {
        KnotSummary {
            name: k.name().to_string(),
            edges: k.len(),
            vertices: k
                .vertices()
                .iter()
                .map(|p| [format_rational(&p.x), format_rational(&p.y), format_rational(&p.z)])
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ApproximationSummary {
    pub vertices: usize,
    pub secant_points: usize,
    pub merged_points: usize,
    pub identity: bool,
    pub rational: bool,
    pub degenerate: bool,
    /// Exact coordinates, `a + b·sqrt(d)` where irrational.
    pub exact: Vec<[String; 3]>,
    pub decimal: Vec<[String; 3]>,
    /// 1-based edges of `K` each vertex lies on.
    pub source_edges: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassificationSummary {
    pub verdict: crate::classify::Verdict,
    pub jones: String,
    pub crossings: usize,
    pub writhe: i64,
    pub direction: [String; 3],
    pub pd_code: String,
}

impl From<&ClassificationResult> for ClassificationSummary {
    fn from(c: &ClassificationResult) -> Self {
        let d = &c.diagram.direction;
        ClassificationSummary {
            verdict: c.verdict,
            jones: c.jones_text.clone(),
            crossings: c.crossing_count,
            writhe: c.writhe,
            direction: [format_rational(&d.x), format_rational(&d.y), format_rational(&d.z)],
            pd_code: c.diagram.pd_text(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ClassificationOutcome {
    Classified(ClassificationSummary),
    Skipped,
    Failed { message: String },
}

impl ClassificationOutcome {
    pub fn summary(&self) -> Option<&ClassificationSummary> {
        match self {
            ClassificationOutcome::Classified(s) => Some(s),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Classifications {
    pub knot: ClassificationOutcome,
    pub approximation: ClassificationOutcome,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorKind {
    Input,
    Degeneracy,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StageError {
    pub stage: Stage,
    pub kind: ErrorKind,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StageTiming {
    pub stage: Stage,
    pub millis: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct PipelineReport {
    pub input: KnotSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub general_position: Option<GeneralPositionReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quadrisecants: Option<Vec<QuadrisecantView>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub approximation: Option<ApproximationSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub self_intersections: Option<SelfIntersectionReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<Classifications>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub comparison: Option<QuadsetComparison>,
    pub verdict: ConjectureVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<StageError>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Vec<StageTiming>>,
}

impl PipelineReport {
    pub fn quadrisecant_count(&self) -> Option<usize> {
        self.quadrisecants.as_ref().map(Vec::len)
    }

    pub fn is_embedded(&self) -> Option<bool> {
        self.self_intersections.as_ref().map(|s| s.is_embedded)
    }

    /// Plain-text rendering for terminals.
    pub fn human(&self) -> String {
        let mut out = format!("knot {} ({} edges)\n", self.input.name, self.input.edges);
        if let Some(gp) = &self.general_position {
            out += &format!(
                "general position: {} ({} coplanar quadruples, {} dependent triples)\n",
                if gp.passed { "passed" } else { "failed" },
                gp.coplanar_violations.len(),
                gp.dependent_violations.len()
            );
        }
        if let Some(qs) = &self.quadrisecants {
            out += &format!("quadrisecants: {}\n", qs.len());
            for (i, q) in qs.iter().enumerate() {
                out += &format!("  L{} edges {:?}\n", i + 1, q.edges);
            }
        }
        if let Some(a) = &self.approximation {
            out += &format!(
                "approximation: {} vertices from {} secant points{}\n",
                a.vertices,
                a.secant_points,
                if a.identity { " (identity)" } else { "" }
            );
        }
        if let Some(s) = &self.self_intersections {
            out += &format!(
                "approximation embedded: {} ({} contacts, {} overlaps)\n",
                s.is_embedded,
                s.crossings.len(),
                s.overlap_count()
            );
        }
        if let Some(c) = &self.classification {
            for (label, o) in [("knot", &c.knot), ("approximation", &c.approximation)] {
                match o {
                    ClassificationOutcome::Classified(s) => {
                        out += &format!(
                            "{label}: {} V(t) = {} ({} crossings, writhe {})\n",
                            s.verdict.as_str(),
                            s.jones,
                            s.crossings,
                            s.writhe
                        )
                    }
                    ClassificationOutcome::Skipped => out += &format!("{label}: classification skipped\n"),
                    ClassificationOutcome::Failed { message } => out += &format!("{label}: {message}\n"),
                }
            }
        }
        if let Some(c) = &self.comparison {
            out += &match c {
                QuadsetComparison::Equal { count } => format!("quadrisecant sets: equal ({count})\n"),
                QuadsetComparison::Differs {
                    only_in_knot,
                    only_in_approximation,
                } => format!(
                    "quadrisecant sets: differ ({} only in knot, {} only in approximation)\n",
                    only_in_knot.len(),
                    only_in_approximation.len()
                ),
                QuadsetComparison::NotComparable { reason } => format!("quadrisecant sets: not comparable, {reason}\n"),
            };
        }
        if let Some(e) = &self.error {
            out += &format!("aborted at {:?}: {}\n", e.stage, e.message);
        }
        out += &format!("verdict: {}\n", self.verdict);
        out
    }
}

fn error_kind(e: &QuadrisecantError) -> ErrorKind {
    match e {
        QuadrisecantError::TooFewEdges(_) | QuadrisecantError::OutOfRange { .. } => ErrorKind::Input,
        _ => ErrorKind::Degeneracy,
    }
}

fn verdict(
    embedded: bool,
    classes: Option<&Classifications>,
    comparison: Option<&QuadsetComparison>,
) -> ConjectureVerdict {
    if !embedded {
        return ConjectureVerdict::FailsEmbedding;
    }
    let jones = classes.and_then(|c| Some((c.knot.summary()?, c.approximation.summary()?)));
    if let Some((k, h)) = jones {
        if k.jones != h.jones {
            return ConjectureVerdict::FailsType;
        }
    }
    match (jones, comparison) {
        (_, Some(QuadsetComparison::Differs { .. })) => ConjectureVerdict::FailsQuadset,
        (Some(_), Some(QuadsetComparison::Equal { .. })) => ConjectureVerdict::Holds,
        _ => ConjectureVerdict::Inconclusive,
    }
}

struct Clock {
    enabled: bool,
    timings: Vec<StageTiming>,
}

impl Clock {
    fn run<R>(&mut self, stage: Stage, f: impl FnOnce() -> R) -> R {
        let t = Instant::now();
        let r = f();
        if self.enabled {
            self.timings.push(StageTiming {
                stage,
                millis: t.elapsed().as_secs_f64() * 1e3,
            });
        }
        r
    }
}

/// Runs every stage in order, stopping at the first hard error.
pub fn analyze(knot: &PolygonalKnot, opts: &AnalyzeOptions) -> PipelineReport {
    let mut clock = Clock {
        enabled: opts.timing,
        timings: Vec::new(),
    };
    let mut report = PipelineReport {
        input: knot.into(),
        general_position: None,
        quadrisecants: None,
        approximation: None,
        self_intersections: None,
        classification: None,
        comparison: None,
        verdict: ConjectureVerdict::Inconclusive,
        error: None,
        timings: None,
    };
    let finish = |mut report: PipelineReport, clock: Clock| {
        if clock.enabled {
            report.timings = Some(clock.timings);
        }
        report
    };
    if knot.len() < 4 {
        report.error = Some(StageError {
            stage: Stage::Input,
            kind: ErrorKind::Input,
            message: format!("need more than 3 edges, got {}", knot.len()),
        });
        return finish(report, clock);
    }
    report.general_position = Some(clock.run(Stage::GeneralPosition, || knot.check_general_position()));

    let quads = match clock.run(Stage::Quadrisecants, || find_all_quadrisecants(knot)) {
        Ok(q) => q,
        Err(e) => {
            report.error = Some(StageError {
                stage: Stage::Quadrisecants,
                kind: error_kind(&e),
                message: e.to_string(),
            });
            return finish(report, clock);
        }
    };
    report.quadrisecants = Some(quads.iter().map(QuadrisecantView::from).collect());

    let (w, polygon) = clock.run(Stage::Approximation, || {
        let w = collect_secant_points(&quads);
        let p = build_approximation(knot, &w);
        (w, p)
    });
    report.approximation = Some(ApproximationSummary {
        vertices: polygon.len(),
        secant_points: w.raw_count,
        merged_points: w.raw_count - w.len(),
        identity: polygon.is_identity(),
        rational: polygon.is_rational(),
        degenerate: polygon.degenerate,
        exact: polygon
            .vertices
            .iter()
            .map(|p| [p.x.to_string(), p.y.to_string(), p.z.to_string()])
            .collect(),
        decimal: polygon
            .vertices
            .iter()
            .map(|p| {
                [
                    p.x.to_decimal(DECIMAL_DIGITS),
                    p.y.to_decimal(DECIMAL_DIGITS),
                    p.z.to_decimal(DECIMAL_DIGITS),
                ]
            })
            .collect(),
        source_edges: if polygon.is_identity() {
            (1..=knot.len()).collect()
        } else {
            polygon.provenance.iter().map(|s| s.record.edge + 1).collect()
        },
    });

    let si = clock.run(Stage::SelfIntersections, || find_self_intersections(&polygon));
    let embedded = si.is_embedded;
    report.self_intersections = Some(si.clone());

    if !opts.skip_classify {
        let classes = clock.run(Stage::Classification, || {
            let copts = ClassifyOptions {
                seed: opts.seed,
                max_crossings: opts.max_crossings,
                ..ClassifyOptions::default()
            };
            let outcome = |r: Result<ClassificationResult, _>| match r {
                Ok(c) => ClassificationOutcome::Classified((&c).into()),
                Err(e) => ClassificationOutcome::Failed {
                    message: format!("{e}"),
                },
            };
            let k = outcome(classify_knot(knot, &copts));
            let h = if embedded {
                let hopts = ClassifyOptions {
                    check_embedding: false,
                    ..copts
                };
                outcome(classify(&polygon.surd_vertices(), &hopts))
            } else {
                ClassificationOutcome::Failed {
                    message: "approximation is not embedded".into(),
                }
            };
            Classifications {
                knot: k,
                approximation: h,
            }
        });
        report.classification = Some(classes);
    }

    let cmp = clock.run(Stage::Comparison, || compare_quadrisecant_sets(knot, &quads, &polygon, &si));
    report.comparison = Some(cmp);
    report.verdict = verdict(embedded, report.classification.as_ref(), report.comparison.as_ref());
    finish(report, clock)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::Verdict;
    use crate::knot::builtin_knot;

    fn quiet() -> AnalyzeOptions {
        AnalyzeOptions {
            timing: false,
            ..AnalyzeOptions::default()
        }
    }

    #[test]
    fn k6_fails_embedding() {
        let r = analyze(&builtin_knot("k6").unwrap(), &quiet());
        assert_eq!(r.quadrisecant_count(), Some(1));
        assert_eq!(r.is_embedded(), Some(false));
        assert_eq!(r.verdict, ConjectureVerdict::FailsEmbedding);
        assert!(r.timings.is_none());
    }

    #[test]
    fn k14_fails_type() {
        let r = analyze(&builtin_knot("k14").unwrap(), &quiet());
        assert_eq!(r.quadrisecant_count(), Some(4));
        assert_eq!(r.is_embedded(), Some(true));
        let c = r.classification.as_ref().unwrap();
        assert_eq!(c.knot.summary().unwrap().verdict, Verdict::JonesConsistentUnknot);
        assert!(matches!(
            c.approximation.summary().unwrap().verdict,
            Verdict::TrefoilLeft | Verdict::TrefoilRight
        ));
        assert_eq!(r.verdict, ConjectureVerdict::FailsType);
    }

    #[test]
    fn small_input_is_rejected() {
        let tri = PolygonalKnot::from_ints("tri", &[(0, 0, 0), (1, 0, 0), (0, 1, 0)]);
        let r = analyze(&tri, &quiet());
        assert_eq!(r.error.as_ref().unwrap().kind, ErrorKind::Input);
        assert_eq!(r.verdict, ConjectureVerdict::Inconclusive);
    }

    #[test]
    fn quadrisecant_free_knot_holds() {
        let sq = PolygonalKnot::from_ints("quad", &[(0, 0, 0), (4, 1, 0), (3, 5, 1), (-1, 3, 2)]);
        let r = analyze(&sq, &quiet());
        assert_eq!(r.verdict, ConjectureVerdict::Holds);
        let skipped = analyze(
            &sq,
            &AnalyzeOptions {
                skip_classify: true,
                ..quiet()
            },
        );
        assert_eq!(skipped.verdict, ConjectureVerdict::Inconclusive);
    }

    #[test]
    fn degenerate_input_reports_degeneracy() {
        let r = analyze(&builtin_knot("k0").unwrap(), &quiet());
        if let Some(e) = &r.error {
            assert_eq!(e.kind, ErrorKind::Degeneracy);
        }
    }

    #[test]
    fn report_json_is_deterministic() {
        let k = builtin_knot("k14").unwrap();
        let a = serde_json::to_string(&analyze(&k, &quiet())).unwrap();
        let b = serde_json::to_string(&analyze(&k, &quiet())).unwrap();
        assert_eq!(a, b);
    }
}
