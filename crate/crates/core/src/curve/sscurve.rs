use serde::{Deserialize, Serialize};

use super::CurveError;
use crate::graph::{EEGraph, VertexIdx};

/// Decoration of one irreducible component: the genus of its
/// normalization and whether that smooth curve is ordinary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub genus: u32,
    pub ordinary: bool,
}

impl Component {
    /// A projective line.
    pub const LINE: Self = Self {
        genus: 0,
        ordinary: true,
    };

    pub fn new(genus: u32, ordinary: bool) -> Self {
        Self { genus, ordinary }
    }
}

/// A semi-stable curve as its dual graph with per-component decorations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SSCurve {
    graph: EEGraph,
    components: Vec<Component>,
}

impl SSCurve {
    /// The graph must be valid and connected; genus-0 components must be
    /// flagged ordinary.
    pub fn new(graph: EEGraph, components: Vec<Component>) -> Result<Self, CurveError> {
        graph.ensure_valid()?;
        if components.len() != graph.vertex_count() {
            return Err(CurveError::ComponentCount {
                expected: graph.vertex_count(),
                found: components.len(),
            });
        }
        if !graph.is_connected() {
            return Err(CurveError::Disconnected);
        }
        if let Some(v) = components.iter().position(|c| c.genus == 0 && !c.ordinary) {
            return Err(CurveError::ForcedOrdinary(graph.vertex_id(v).to_string()));
        }
        Ok(Self { graph, components })
    }

    /// Every component a projective line.
    pub fn rational(graph: EEGraph) -> Result<Self, CurveError> {
        let n = graph.vertex_count();
        Self::new(graph, vec![Component::LINE; n])
    }

    pub fn graph(&self) -> &EEGraph {
        &self.graph
    }

    pub fn component(&self, v: VertexIdx) -> Component {
        self.components[v]
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    /// Replaces one component's decoration, re-checking the invariants.
    pub fn with_component(&self, v: VertexIdx, component: Component) -> Result<Self, CurveError> {
        let mut components = self.components.clone();
        components[v] = component;
        Self::new(self.graph.clone(), components)
    }

    /// `b₁(Γ) + Σ genus(v)`.
    pub fn arithmetic_genus(&self) -> u64 {
        self.graph.betti1() as u64
            + self
                .components
                .iter()
                .map(|c| u64::from(c.genus))
                .sum::<u64>()
    }

    /// A semi-stable curve is ordinary exactly when every component is.
    pub fn is_ordinary(&self) -> bool {
        self.components.iter().all(|c| c.ordinary)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::{cycle, triangle};
    use crate::graph::GraphBuilder;

    fn point() -> EEGraph {
        let mut b = GraphBuilder::new();
        b.add_vertex_with_empty("v");
        b.build().unwrap()
    }

    fn banana() -> EEGraph {
        let mut b = GraphBuilder::new();
        let u = b.add_vertex_with_empty("u");
        let w = b.add_vertex_with_empty("w");
        for k in 0..2 {
            let x = b.add_end(u, format!("u{k}"), false);
            let y = b.add_end(w, format!("w{k}"), false);
            b.pair(x, y);
        }
        b.build().unwrap()
    }

    #[test]
    fn genus_examples() {
        assert_eq!(SSCurve::rational(point()).unwrap().arithmetic_genus(), 0);
        assert_eq!(SSCurve::rational(banana()).unwrap().arithmetic_genus(), 1);
        for n in 3..10 {
            assert_eq!(SSCurve::rational(cycle(n)).unwrap().arithmetic_genus(), 1);
        }
        let c = SSCurve::new(
            banana(),
            vec![Component::new(2, true), Component::new(3, true)],
        )
        .unwrap();
        assert_eq!(c.arithmetic_genus(), 6);
    }

    #[test]
    fn ordinarity() {
        assert!(SSCurve::rational(triangle()).unwrap().is_ordinary());
        let c = SSCurve::new(point(), vec![Component::new(1, false)]).unwrap();
        assert!(!c.is_ordinary());
    }

    #[test]
    fn invariants_are_enforced() {
        assert!(matches!(
            SSCurve::new(point(), vec![Component::new(0, false)]),
            Err(CurveError::ForcedOrdinary(_))
        ));
        assert!(matches!(
            SSCurve::new(point(), vec![]),
            Err(CurveError::ComponentCount { .. })
        ));
        let mut b = GraphBuilder::new();
        b.add_vertex_with_empty("a");
        b.add_vertex_with_empty("b");
        assert!(matches!(
            SSCurve::rational(b.build().unwrap()),
            Err(CurveError::Disconnected)
        ));
    }

    #[test]
    fn flipping_a_flag_breaks_ordinarity() {
        let c = SSCurve::new(
            banana(),
            vec![Component::new(1, true), Component::new(2, true)],
        )
        .unwrap();
        assert!(c.is_ordinary());
        for v in 0..2 {
            let genus = c.component(v).genus;
            let flipped = c.with_component(v, Component::new(genus, false)).unwrap();
            assert!(!flipped.is_ordinary());
        }
    }
}
