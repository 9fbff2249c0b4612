use std::collections::BTreeSet;

use super::action::CurveAction;
use super::node::{classify_node, node_orbits, NodeClass};
use super::sscurve::{Component, SSCurve};
use super::CurveError;
use crate::graph::{quotient, GraphMorphism};

/// How one component orbit covers its image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentCover {
    pub quotient_vertex: String,
    pub orbit_size: usize,
    /// Order of the stabilizer of a component in the orbit: the degree of
    /// that component over its image.
    pub local_degree: usize,
    pub genus: u32,
    pub quotient_genus: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverData {
    /// One classification per node orbit, for its first node.
    pub nodes: Vec<NodeClass>,
    pub components: Vec<ComponentCover>,
    pub projection: GraphMorphism,
}

/// The quotient curve `C / G` and the local data of the cover.
///
/// The dual graph of the quotient is the quotient of the dual graph.
/// Genus-0 components have rational images; components of positive genus
/// take the declared quotient genus, and keep their ordinarity flag unless
/// the image is rational.
pub fn quotient_curve(action: &CurveAction) -> Result<(SSCurve, CoverData), CurveError> {
    let curve = action.curve();
    let graph = curve.graph();
    let (qgraph, projection) = quotient(graph, action.graph_action())?;

    let mut components = Vec::with_capacity(qgraph.vertex_count());
    let mut covers = Vec::with_capacity(qgraph.vertex_count());
    for qv in 0..qgraph.vertex_count() {
        let orbit: Vec<usize> = (0..graph.vertex_count())
            .filter(|&v| projection.vertex_map[v] == qv)
            .collect();
        let rep = orbit[0];
        let source = curve.component(rep);
        let quotient_genus = if source.genus == 0 {
            0
        } else {
            let declared: BTreeSet<u32> = orbit
                .iter()
                .filter_map(|v| action.quotient_genus().get(v).copied())
                .collect();
            match declared.len() {
                0 => {
                    return Err(CurveError::MissingQuotientGenus(
                        graph.vertex_id(rep).to_string(),
                    ))
                }
                1 => *declared.iter().next().expect("one value"),
                _ => {
                    return Err(CurveError::InconsistentQuotientGenus(
                        graph.vertex_id(rep).to_string(),
                    ))
                }
            }
        };
        let ordinary = quotient_genus == 0 || source.ordinary;
        components.push(Component::new(quotient_genus, ordinary));
        covers.push(ComponentCover {
            quotient_vertex: qgraph.vertex_id(qv).to_string(),
            orbit_size: orbit.len(),
            local_degree: action.graph_action().vertex_stabilizer(rep).len(),
            genus: source.genus,
            quotient_genus,
        });
    }

    let nodes = node_orbits(action)
        .into_iter()
        .map(|orbit| classify_node(action, orbit[0]))
        .collect::<Result<Vec<_>, _>>()?;

    let quotient = SSCurve::new(qgraph, components)?;
    Ok((
        quotient,
        CoverData {
            nodes,
            components: covers,
            projection,
        },
    ))
}
