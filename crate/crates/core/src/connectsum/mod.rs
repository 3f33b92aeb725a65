//! Shrinking one knot into a neighbourhood of a vertex of another, forming
//! the connected sum, and the two constructions whose approximations
//! misbehave.

mod construct;
mod perturb;
mod placement;
mod subdivide;
mod sum;

use thiserror::Error;

use crate::classify::ClassifyError;
use crate::knot::KnotError;
use crate::quadrisecant::QuadrisecantError;

pub use construct::{
    build_k_diamond, build_k_star, construct, default_eta, AttemptRecord, ConstructOptions, Construction,
    ConstructionKind, ConstructionTranscript,
};
pub use perturb::{perturb_generic, PerturbRecord};
pub use placement::{
    build_affine_placement, find_regular_projection, hull_vertex, steep_transversal, verify_placement, Placement,
    PlacementCheck, PlacementCondition,
};
pub use subdivide::{hausdorff_estimate, subdivide_for_trefoil_sum, SubdivisionReport};
pub use sum::{check_wedge, connected_sum, ResolutionChoice, ResolutionSummary};

/// Every "small enough" loop halves its parameter at most this many times.
pub const SHRINK_CAP: usize = 60;

#[derive(Debug, Error)]
pub enum ConnectSumError {
    #[error("knot is not embedded: {0}")]
    NotEmbedded(String),
    #[error("no regular projection: {0}")]
    Projection(ClassifyError),
    #[error("wall normal must be horizontal and nonzero")]
    InvalidWall,
    #[error("epsilon, delta and eta must be positive")]
    NonPositiveParameter,
    #[error("vertex {0} does not project to a hull vertex")]
    NotHullVertex(usize),
    #[error("placement violates condition ({condition:?}): {witness}")]
    PlacementFailed {
        condition: PlacementCondition,
        witness: String,
    },
    #[error("z-contraction did not reach the slope bound within {iterations} halvings")]
    PlacementDiverged { iterations: usize },
    #[error("no generic perturbation within {attempts} attempts")]
    PerturbationFailed { attempts: usize },
    #[error("host edge {0} at the anchor is horizontal")]
    HorizontalHostEdge(usize),
    #[error("guest meets host away from the anchor: {0}")]
    Intersection(String),
    #[error("cannot resolve the wedge point: {0}")]
    Resolution(String),
    #[error("knot needs at least {needed} edges, got {got}")]
    TooFewEdges { needed: usize, got: usize },
    #[error("no admissible parameters within {iterations} halvings; last failure: {last_failure}")]
    ShrinkLoopExhausted {
        iterations: usize,
        last_failure: String,
        transcript: Option<Box<ConstructionTranscript>>,
    },
    #[error(transparent)]
    Quadrisecant(#[from] QuadrisecantError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Knot(#[from] KnotError),
}
