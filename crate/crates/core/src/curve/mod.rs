//! Decorated semi-stable curves, finite group actions on them, and the
//! local checks needed before the cover `C → C/G` can be smoothed.

mod action;
mod node;
mod orientation;
mod quotient;
mod setup;
mod sscurve;

use thiserror::Error;

use crate::graph::GraphError;

pub use action::{Attestation, Characters, CurveAction, NodeElement, NodeLocalAction};
pub use node::{classify_node, node_orbits, NodeCase, NodeClass, StabilizerStructure};
pub use orientation::{check_orientation, is_fast_path, NodeOrientation, OrientationReport};
pub use quotient::{quotient_curve, ComponentCover, CoverData};
pub use setup::{check_setup, SetupReport};
pub use sscurve::{Component, SSCurve};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("curve is not connected")]
    Disconnected,
    #[error("expected {expected} component decorations, found {found}")]
    ComponentCount { expected: usize, found: usize },
    #[error("component {0} has genus 0 and must be ordinary")]
    ForcedOrdinary(String),
    #[error("decorations of {vertex} and {other} differ but they lie in one orbit")]
    NotOrbitConstant { vertex: String, other: String },
    #[error("{element} does not stabilize {node}")]
    NotInStabilizer { node: String, element: String },
    #[error("bad characters: {0}")]
    BadCharacters(String),
    #[error("declared quotient genus {declared} of {vertex} exceeds its genus {genus}")]
    QuotientGenusTooLarge {
        vertex: String,
        declared: u32,
        genus: u32,
    },
    #[error("no quotient genus declared for the orbit of {0}, which has positive genus")]
    MissingQuotientGenus(String),
    #[error("conflicting quotient genus declarations in the orbit of {0}")]
    InconsistentQuotientGenus(String),
    #[error("node {node}: {detail}")]
    NodeStructure { node: String, detail: String },
    #[error("node {0}: stabilizer is not 1, C2 or C2 x C2 and no character data is given")]
    MissingCharacters(String),
    #[error("node {0}: character data given for only part of the stabilizer")]
    IncompleteCharacters(String),
}
