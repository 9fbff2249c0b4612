use std::collections::BTreeMap;

use super::eegraph::{EEGraph, End, EndIdx};
use super::morphism::{GraphAction, GraphMorphism};
use super::GraphError;

/// Quotient of a graph by a group action, with the projection morphism.
///
/// Vertices of the quotient are vertex orbits. The ends at a quotient
/// vertex are the orbits of ends over that vertex orbit; the involution is
/// induced, and every orbit it fixes is merged into the empty end. Names
/// are canonical: `"orbit:"` followed by the smallest member id.
pub fn quotient(
    graph: &EEGraph,
    action: &GraphAction,
) -> Result<(EEGraph, GraphMorphism), GraphError> {
    graph.ensure_valid()?;
    action.check(graph)?;

    let name = |ids: &mut dyn Iterator<Item = &str>| format!("orbit:{}", ids.min().unwrap_or(""));

    // Quotient vertices sorted by canonical name.
    let vertex_orbits = action.vertex_orbits(graph);
    let mut vertex_names: Vec<(String, usize)> = vertex_orbits
        .iter()
        .enumerate()
        .map(|(k, orbit)| (name(&mut orbit.iter().map(|&v| graph.vertex_id(v))), k))
        .collect();
    vertex_names.sort();
    let mut orbit_to_vertex = vec![0; vertex_orbits.len()];
    for (new, &(_, k)) in vertex_names.iter().enumerate() {
        orbit_to_vertex[k] = new;
    }
    let mut vertex_map = vec![0; graph.vertex_count()];
    for (k, orbit) in vertex_orbits.iter().enumerate() {
        for &v in orbit {
            vertex_map[v] = orbit_to_vertex[k];
        }
    }

    let end_orbits = action.end_orbits(graph);
    let mut orbit_of_end = vec![0; graph.end_count()];
    for (k, orbit) in end_orbits.iter().enumerate() {
        for &e in orbit {
            orbit_of_end[e] = k;
        }
    }
    // An orbit survives as a non-empty end unless it is fixed by the
    // induced involution (which includes the orbits of empty ends).
    let survives = |k: usize| {
        let rep = end_orbits[k][0];
        orbit_of_end[graph.partner(rep)] != k
    };

    // Ends of the quotient, grouped per quotient vertex, empty end first,
    // then surviving orbits by name.
    type Slot = (Option<(String, usize)>, Vec<(String, usize)>);
    let mut per_vertex: BTreeMap<usize, Slot> = BTreeMap::new();
    for (k, orbit) in end_orbits.iter().enumerate() {
        let rep = orbit[0];
        let qv = vertex_map[graph.end(rep).vertex];
        let label = name(&mut orbit.iter().map(|&e| graph.end(e).id.as_str()));
        let slot = per_vertex.entry(qv).or_default();
        if graph.end(rep).empty {
            slot.0 = Some((label, k));
        } else if survives(k) {
            slot.1.push((label, k));
        }
    }

    let mut ends = Vec::new();
    let mut orbit_to_end: BTreeMap<usize, EndIdx> = BTreeMap::new();
    let mut empty_of_vertex = vec![0; vertex_names.len()];
    for (qv, (empty, mut others)) in per_vertex {
        let (label, k) = empty.ok_or_else(|| {
            GraphError::Malformed(format!(
                "quotient vertex {} has no empty end",
                vertex_names[qv].0
            ))
        })?;
        empty_of_vertex[qv] = ends.len();
        orbit_to_end.insert(k, ends.len());
        ends.push(End {
            id: label,
            vertex: qv,
            empty: true,
        });
        others.sort();
        for (label, k) in others {
            orbit_to_end.insert(k, ends.len());
            ends.push(End {
                id: label,
                vertex: qv,
                empty: false,
            });
        }
    }

    let end_map: Vec<EndIdx> = (0..graph.end_count())
        .map(|e| {
            orbit_to_end
                .get(&orbit_of_end[e])
                .copied()
                .unwrap_or_else(|| empty_of_vertex[vertex_map[graph.end(e).vertex]])
        })
        .collect();

    let mut involution: Vec<EndIdx> = (0..ends.len()).collect();
    for e in 0..graph.end_count() {
        involution[end_map[e]] = end_map[graph.partner(e)];
    }

    let quotient = EEGraph::from_raw(
        vertex_names.into_iter().map(|(n, _)| n).collect(),
        ends,
        involution,
    )?;
    quotient.ensure_valid()?;
    let projection = GraphMorphism {
        vertex_map,
        end_map,
    };
    projection.check(graph, &quotient)?;
    Ok((quotient, projection))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::{cycle, petersen_adjacency, triangle};
    use crate::graph::iso::is_isomorphic;
    use crate::group::FiniteGroup;
    use crate::perm::Permutation;

    fn action_by_vertex_perms(graph: &EEGraph, group: FiniteGroup) -> GraphAction {
        let gens: Vec<_> = group
            .generators()
            .iter()
            .map(|s| {
                (
                    s.clone(),
                    GraphMorphism::induced_by_vertex_map(graph, s).unwrap(),
                )
            })
            .collect();
        GraphAction::from_generators(graph, group, &gens).unwrap()
    }

    #[test]
    fn triangle_mod_c3_is_a_loop() {
        let g = triangle();
        let action = action_by_vertex_perms(&g, FiniteGroup::cyclic(3).unwrap());
        let (q, proj) = quotient(&g, &action).unwrap();
        assert_eq!(q.vertex_count(), 1);
        assert_eq!(q.edges().len(), 1);
        assert_eq!(q.vertex_id(0), "orbit:C1");
        assert!(proj.vertex_map.iter().all(|&v| v == 0));
        let ids: Vec<_> = q.ends().iter().map(|e| e.id.as_str()).collect();
        assert_eq!(ids, vec!["orbit:C1,1", "orbit:C1,2", "orbit:C1,3"]);
    }

    #[test]
    fn triangle_mod_s3_is_a_point() {
        let g = triangle();
        let action = action_by_vertex_perms(&g, FiniteGroup::symmetric(3).unwrap());
        let (q, proj) = quotient(&g, &action).unwrap();
        assert_eq!(q.vertex_count(), 1);
        assert!(q.edges().is_empty());
        assert_eq!(q.end_count(), 1);
        // every end lands on the single empty end
        assert!(proj.end_map.iter().all(|&e| e == 0));
    }

    #[test]
    fn trivial_group_gives_isomorphic_graph() {
        for g in [triangle(), cycle(5), petersen_adjacency()] {
            let action = GraphAction::trivial(&g, FiniteGroup::trivial(1));
            let (q, _) = quotient(&g, &action).unwrap();
            assert!(is_isomorphic(&g, &q).unwrap().is_some());
        }
    }

    #[test]
    fn cycle_mod_rotation_by_two() {
        // C6 rotated by two steps: two vertex orbits joined by two edge orbits.
        let g = cycle(6);
        let rot2 = Permutation::parse_with_degree("(0 2 4)(1 3 5)", 6).unwrap();
        let group = FiniteGroup::closure(6, &[rot2]).unwrap();
        let action = action_by_vertex_perms(&g, group);
        let (q, proj) = quotient(&g, &action).unwrap();
        assert_eq!(q.vertex_count(), 2);
        assert_eq!(q.edges().len(), 2);
        assert_eq!(q.multiplicity(0, 1), 2);
        proj.check(&g, &q).unwrap();
    }
}
