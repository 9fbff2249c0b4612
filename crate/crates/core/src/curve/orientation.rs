use super::action::CurveAction;
use super::CurveError;
use crate::graph::Edge;
use crate::group::FiniteGroup;
use crate::report::Status;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeOrientation {
    pub node: Edge,
    pub label: String,
    pub stabilizer_order: usize,
    /// Stabilizer is 1, C₂ or C₂ × C₂.
    pub fast_path: bool,
    pub status: Status,
    /// Elements whose exponent sum does not vanish.
    pub failing_elements: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientationReport {
    pub nodes: Vec<NodeOrientation>,
}

impl OrientationReport {
    pub fn passed(&self) -> bool {
        self.nodes.iter().all(|n| n.status == Status::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &NodeOrientation> {
        self.nodes.iter().filter(|n| n.status == Status::Fail)
    }
}

/// Stabilizers for which orientation holds automatically.
pub fn is_fast_path(stabilizer: &FiniteGroup) -> bool {
    stabilizer.order() <= 4 && stabilizer.exponent() <= 2
}

/// Checks at every node that each stabilizer element's tangent
/// determinant equals the sign of its action on the two ends, i.e. that
/// the two character exponents sum to zero.
///
/// Nodes whose stabilizer is 1, C₂ or C₂ × C₂ need no character data. If
/// data is present anyway it is evaluated.
pub fn check_orientation(action: &CurveAction) -> Result<OrientationReport, CurveError> {
    let graph = action.curve().graph();
    let mut nodes = Vec::new();
    for node in graph.edges() {
        let label = action.node_label(node);
        let Some(local) = action.node_local().get(&node) else {
            nodes.push(NodeOrientation {
                node,
                label,
                stabilizer_order: 1,
                fast_path: true,
                status: Status::Pass,
                failing_elements: Vec::new(),
            });
            continue;
        };
        let fast_path = is_fast_path(&action.node_stabilizer_group(node));
        let complete = local.characters_complete(&label)?;
        if !complete && !fast_path {
            return Err(CurveError::MissingCharacters(label));
        }
        let failing_elements: Vec<String> = if complete {
            local
                .elements
                .iter()
                .filter(|(_, e)| !e.characters.expect("complete").sum_vanishes())
                .map(|(&g, _)| action.group().element(g).to_string())
                .collect()
        } else {
            Vec::new()
        };
        nodes.push(NodeOrientation {
            node,
            label,
            stabilizer_order: local.stabilizer_order(),
            fast_path,
            status: Status::from_ok(failing_elements.is_empty()),
            failing_elements,
        });
    }
    Ok(OrientationReport { nodes })
}
