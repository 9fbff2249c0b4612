use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use super::action::CurveAction;
use super::CurveError;
use crate::graph::Edge;

/// Whether the image of the node in the quotient is still a node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NodeCase {
    SingularImage,
    SmoothImage,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StabilizerStructure {
    Trivial,
    Cyclic,
    /// `C₂ × C_m`: a branch swap times rotations of both branches.
    TwoByM,
}

impl fmt::Display for NodeCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NodeCase::SingularImage => "singular-image",
            NodeCase::SmoothImage => "smooth-image",
        })
    }
}

impl fmt::Display for StabilizerStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StabilizerStructure::Trivial => "trivial",
            StabilizerStructure::Cyclic => "cyclic",
            StabilizerStructure::TwoByM => "two-by-m",
        })
    }
}

/// Local type of the cover at a node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeClass {
    pub node: Edge,
    pub label: String,
    /// Element indices of the stabilizer.
    pub stabilizer: Vec<usize>,
    pub case: NodeCase,
    /// Ramification index along each branch.
    pub m: usize,
    pub structure: StabilizerStructure,
}

/// Classifies the local cover at `node`.
///
/// If some stabilizer element swaps the two ends, the node maps to a
/// smooth point, `m = |Stab| / 2`, the branch-preserving half must be
/// cyclic, and the stabilizer is either cyclic or `C₂ × C_m`. Otherwise
/// the image is a node, `m = |Stab|`, and the stabilizer must be cyclic.
pub fn classify_node(action: &CurveAction, node: Edge) -> Result<NodeClass, CurveError> {
    let label = action.node_label(node);
    let group = action.group();
    let stabilizer = action.node_stabilizer(node);
    let order = stabilizer.len();
    let swapping: BTreeSet<usize> = action
        .node_local()
        .get(&node)
        .map(|local| {
            local
                .elements
                .iter()
                .filter(|(_, e)| e.swap)
                .map(|(&g, _)| g)
                .collect()
        })
        .unwrap_or_default();
    let stab_group = action.node_stabilizer_group(node);
    let structure_error = |detail: String| CurveError::NodeStructure {
        node: label.clone(),
        detail,
    };

    let (case, m, structure) = if swapping.is_empty() {
        if !stab_group.is_cyclic() {
            return Err(structure_error(format!(
                "stabilizer of order {order} fixes both branches but is not cyclic"
            )));
        }
        let structure = if order == 1 {
            StabilizerStructure::Trivial
        } else {
            StabilizerStructure::Cyclic
        };
        (NodeCase::SingularImage, order, structure)
    } else {
        let rotations = group
            .subgroup_where(|g| stabilizer.contains(&g) && !swapping.contains(&g))
            .map_err(|e| structure_error(e.to_string()))?;
        if 2 * rotations.order() != order {
            return Err(structure_error(
                "branch-preserving elements are not of index 2".into(),
            ));
        }
        if !rotations.is_cyclic() {
            return Err(structure_error(format!(
                "branch-preserving subgroup of order {} is not cyclic",
                rotations.order()
            )));
        }
        let structure = if stab_group.is_cyclic() {
            StabilizerStructure::Cyclic
        } else if stab_group.is_abelian() && swapping.iter().any(|&g| group.element_order(g) == 2) {
            StabilizerStructure::TwoByM
        } else {
            return Err(structure_error(format!(
                "stabilizer of order {order} is neither cyclic nor C2 x C{}",
                rotations.order()
            )));
        };
        (NodeCase::SmoothImage, rotations.order(), structure)
    };
    Ok(NodeClass {
        node,
        label,
        stabilizer,
        case,
        m,
        structure,
    })
}

/// Node orbits under the action, each sorted, ordered by first node.
pub fn node_orbits(action: &CurveAction) -> Vec<Vec<Edge>> {
    let graph = action.curve().graph();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for node in graph.edges() {
        if seen.contains(&node) {
            continue;
        }
        let orbit: BTreeSet<Edge> = action
            .graph_action()
            .morphisms()
            .iter()
            .map(|m| {
                graph
                    .edge_of(m.end_map[node.a])
                    .expect("automorphisms preserve edges")
            })
            .collect();
        seen.extend(orbit.iter().copied());
        out.push(orbit.into_iter().collect());
    }
    out
}
