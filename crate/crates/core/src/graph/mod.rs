//! Graphs with edge ends, their morphisms, and quotients by group actions.

mod dot;
mod eegraph;
pub mod fixtures;
mod iso;
mod morphism;
mod quotient;

use thiserror::Error;

pub use dot::{to_dot, to_dot_named};
pub use eegraph::{EEGraph, Edge, End, EndIdx, Finding, GraphBuilder, ValidationReport, VertexIdx};
pub use iso::{is_isomorphic, MAX_ISO_VERTICES};
pub use morphism::{GraphAction, GraphMorphism};
pub use quotient::quotient;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("invalid graph: {0}")]
    Invalid(ValidationReport),
    #[error("malformed graph: {0}")]
    Malformed(String),
    #[error("not a graph morphism: {0}")]
    NotAMorphism(String),
    #[error("invalid group action: {0}")]
    BadAction(String),
    #[error("graph has {vertices} vertices; isomorphism search is capped at {cap}")]
    TooLarge { vertices: usize, cap: usize },
}
