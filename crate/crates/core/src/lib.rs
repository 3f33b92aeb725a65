pub mod approximation;
pub mod connectsum;
pub mod classify;
pub mod exact;
pub mod geometry;
pub mod knot;
pub mod pipeline;
pub mod quadrisecant;
