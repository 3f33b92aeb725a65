//! Knot type identification through a regular projection and the Jones
//! polynomial.
//!
//! Jones equal to 1 only says the knot is *consistent with* the unknot: the
//! Jones polynomial is not known to detect the unknot.

mod bracket;
mod diagram;
mod laurent;

use serde::Serialize;
use thiserror::Error;

use crate::exact::{lift_point, Point3, Scalar, Vec3};
use crate::knot::{all_contacts, PolygonalKnot};

pub use bracket::{jones_from_bracket, jones_polynomial, kauffman_bracket, DEFAULT_MAX_CROSSINGS};
pub use diagram::{
    diagram_from_direction, direction_sampler, project_to_diagram, Crossing, KnotDiagram, MAX_DIRECTION_ATTEMPTS,
};
pub use laurent::LaurentPolynomial;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("a knot needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("polygon is not embedded: {0}")]
    NotEmbedded(String),
    #[error("projection is not regular: {0}")]
    NotRegular(String),
    #[error("no regular projection found in {0} attempts")]
    DirectionsExhausted(usize),
    #[error("{count} crossings exceed the state-sum cap of {cap}")]
    CrossingCap { count: usize, cap: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    JonesConsistentUnknot,
    TrefoilLeft,
    TrefoilRight,
    Other,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::JonesConsistentUnknot => "jones_consistent_unknot",
            Verdict::TrefoilLeft => "trefoil_left",
            Verdict::TrefoilRight => "trefoil_right",
            Verdict::Other => "other",
        }
    }

    pub fn mirror(self) -> Verdict {
        match self {
            Verdict::TrefoilLeft => Verdict::TrefoilRight,
            Verdict::TrefoilRight => Verdict::TrefoilLeft,
            v => v,
        }
    }
}

/// `−t⁻⁴ + t⁻³ + t⁻¹`
pub fn left_trefoil_jones() -> LaurentPolynomial {
    LaurentPolynomial::from_terms(&[(-4, -1), (-3, 1), (-1, 1)])
}

pub fn right_trefoil_jones() -> LaurentPolynomial {
    left_trefoil_jones().mirror()
}

pub fn verdict_for(jones: &LaurentPolynomial) -> Verdict {
    if *jones == LaurentPolynomial::one() {
        Verdict::JonesConsistentUnknot
    } else if *jones == left_trefoil_jones() {
        Verdict::TrefoilLeft
    } else if *jones == right_trefoil_jones() {
        Verdict::TrefoilRight
    } else {
        Verdict::Other
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassificationResult {
    pub verdict: Verdict,
    pub jones: LaurentPolynomial,
    pub jones_text: String,
    pub crossing_count: usize,
    pub writhe: i64,
    pub diagram: KnotDiagram,
}

#[derive(Clone, Debug)]
pub struct ClassifyOptions {
    pub direction: Option<Point3>,
    pub seed: u64,
    pub max_crossings: usize,
    /// Run the exact self-intersection test first.
    pub check_embedding: bool,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            direction: None,
            seed: 0,
            max_crossings: DEFAULT_MAX_CROSSINGS,
            check_embedding: true,
        }
    }
}

pub fn classify<T: Scalar>(vertices: &[Vec3<T>], opts: &ClassifyOptions) -> Result<ClassificationResult, ClassifyError> {
    if vertices.len() < 3 {
        return Err(ClassifyError::TooFewVertices(vertices.len()));
    }
    if opts.check_embedding {
        if let Some(w) = all_contacts(vertices).first() {
            return Err(ClassifyError::NotEmbedded(format!(
                "segments {} and {} meet",
                w.edges.0, w.edges.1
            )));
        }
    }
    let diagram = project_to_diagram(vertices, opts.direction.as_ref(), opts.seed)?;
    let jones = jones_polynomial(&diagram, opts.max_crossings)?;
    Ok(ClassificationResult {
        verdict: verdict_for(&jones),
        jones_text: jones.to_string(),
        crossing_count: diagram.crossing_count(),
        writhe: diagram.writhe(),
        jones,
        diagram,
    })
}

pub fn classify_knot(k: &PolygonalKnot, opts: &ClassifyOptions) -> Result<ClassificationResult, ClassifyError> {
    let vs: Vec<Vec3<crate::exact::Rational>> = k.vertices().iter().map(lift_point).collect();
    classify(&vs, opts)
}
