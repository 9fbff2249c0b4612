use std::collections::{BTreeSet, VecDeque};

use super::eegraph::{EEGraph, EndIdx, VertexIdx};
use super::GraphError;
use crate::group::FiniteGroup;
use crate::perm::Permutation;

/// A map of graphs: vertices to vertices, ends to ends, compatible with
/// the vertex of each end and with the involutions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GraphMorphism {
    pub vertex_map: Vec<VertexIdx>,
    pub end_map: Vec<EndIdx>,
}

impl GraphMorphism {
    pub fn identity(graph: &EEGraph) -> Self {
        Self {
            vertex_map: (0..graph.vertex_count()).collect(),
            end_map: (0..graph.end_count()).collect(),
        }
    }

    /// `self ∘ inner`: apply `inner`, then `self`.
    pub fn compose(&self, inner: &Self) -> Self {
        Self {
            vertex_map: inner
                .vertex_map
                .iter()
                .map(|&v| self.vertex_map[v])
                .collect(),
            end_map: inner.end_map.iter().map(|&e| self.end_map[e]).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.vertex_map.iter().enumerate().all(|(i, &j)| i == j)
            && self.end_map.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn inverse(&self) -> Self {
        let mut vertex_map = vec![0; self.vertex_map.len()];
        for (i, &j) in self.vertex_map.iter().enumerate() {
            vertex_map[j] = i;
        }
        let mut end_map = vec![0; self.end_map.len()];
        for (i, &j) in self.end_map.iter().enumerate() {
            end_map[j] = i;
        }
        Self {
            vertex_map,
            end_map,
        }
    }

    /// Checks the morphism axioms from `source` to `target`: ends at `v`
    /// land at the image of `v`, and `f ∘ n = n ∘ f` on ends.
    pub fn check(&self, source: &EEGraph, target: &EEGraph) -> Result<(), GraphError> {
        let bad = |msg: String| Err(GraphError::NotAMorphism(msg));
        if self.vertex_map.len() != source.vertex_count()
            || self.end_map.len() != source.end_count()
        {
            return bad("map sizes do not match the source graph".into());
        }
        if self.vertex_map.iter().any(|&v| v >= target.vertex_count())
            || self.end_map.iter().any(|&e| e >= target.end_count())
        {
            return bad("image out of range of the target graph".into());
        }
        for (e, end) in source.ends().iter().enumerate() {
            let image = self.end_map[e];
            if target.end(image).vertex != self.vertex_map[end.vertex] {
                return bad(format!(
                    "end {} at {} maps to {}, which is not at {}",
                    end.id,
                    source.vertex_id(end.vertex),
                    target.end(image).id,
                    target.vertex_id(self.vertex_map[end.vertex])
                ));
            }
            if self.end_map[source.partner(e)] != target.partner(image) {
                return bad(format!(
                    "end map does not commute with the involution at {}",
                    end.id
                ));
            }
        }
        Ok(())
    }

    /// Checks that this is a bijective endomorphism of `graph`.
    pub fn check_automorphism(&self, graph: &EEGraph) -> Result<(), GraphError> {
        self.check(graph, graph)?;
        let bijective = |map: &[usize]| map.iter().collect::<BTreeSet<_>>().len() == map.len();
        if !bijective(&self.vertex_map) || !bijective(&self.end_map) {
            return Err(GraphError::NotAMorphism(
                "automorphism is not bijective".into(),
            ));
        }
        Ok(())
    }

    /// Extends a vertex permutation of a graph without loops or parallel
    /// edges to its unique automorphism.
    pub fn induced_by_vertex_map(
        graph: &EEGraph,
        vertex_map: &Permutation,
    ) -> Result<Self, GraphError> {
        if vertex_map.degree() != graph.vertex_count() {
            return Err(GraphError::NotAMorphism(format!(
                "vertex permutation has degree {}, graph has {} vertices",
                vertex_map.degree(),
                graph.vertex_count()
            )));
        }
        let mut end_map = Vec::with_capacity(graph.end_count());
        for (e, end) in graph.ends().iter().enumerate() {
            let u = vertex_map.apply(end.vertex);
            let image = if end.empty {
                graph.empty_end(u)
            } else {
                let w = vertex_map.apply(graph.end(graph.partner(e)).vertex);
                let mut candidates =
                    graph.ends_at(u).iter().copied().filter(|&f| {
                        !graph.end(f).empty && graph.end(graph.partner(f)).vertex == w
                    });
                match (candidates.next(), candidates.next()) {
                    (Some(f), None) => Some(f),
                    (None, _) => None,
                    (Some(_), Some(_)) => {
                        return Err(GraphError::NotAMorphism(
                            "graph has parallel edges; the end map is not determined".into(),
                        ))
                    }
                }
            };
            end_map.push(image.ok_or_else(|| {
                GraphError::NotAMorphism(format!(
                    "vertex map does not preserve adjacency at {}",
                    end.id
                ))
            })?);
        }
        let morphism = Self {
            vertex_map: vertex_map.images().to_vec(),
            end_map,
        };
        morphism.check_automorphism(graph)?;
        Ok(morphism)
    }
}

/// A group acting on a graph by automorphisms, stored as one morphism per
/// group element (aligned with `group.elements()`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphAction {
    group: FiniteGroup,
    morphisms: Vec<GraphMorphism>,
}

impl GraphAction {
    /// Extends automorphisms assigned to generators to the whole group.
    ///
    /// The generators must generate `group`. Every product `s·x` reached
    /// while walking the group is checked against the morphism already
    /// recorded for it, so a returned action is a homomorphism.
    pub fn from_generators(
        graph: &EEGraph,
        group: FiniteGroup,
        generators: &[(Permutation, GraphMorphism)],
    ) -> Result<Self, GraphError> {
        let mut gen_idx = Vec::with_capacity(generators.len());
        for (g, m) in generators {
            let idx = group.index_of(g).ok_or_else(|| {
                GraphError::BadAction(format!("generator {g} is not in the group"))
            })?;
            m.check_automorphism(graph)
                .map_err(|e| GraphError::BadAction(format!("generator {g}: {e}")))?;
            gen_idx.push((idx, m));
        }
        let mut morphisms: Vec<Option<GraphMorphism>> = vec![None; group.order()];
        let id = group.identity_index();
        morphisms[id] = Some(GraphMorphism::identity(graph));
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            let mx = morphisms[x]
                .clone()
                .expect("queued elements have morphisms");
            for &(s, ms) in &gen_idx {
                let y = group.mul(s, x);
                let my = ms.compose(&mx);
                match &morphisms[y] {
                    Some(existing) if *existing != my => {
                        return Err(GraphError::BadAction(format!(
                            "not a homomorphism: two words for {} act differently",
                            group.element(y)
                        )))
                    }
                    Some(_) => {}
                    None => {
                        morphisms[y] = Some(my);
                        queue.push_back(y);
                    }
                }
            }
        }
        let morphisms = morphisms
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| GraphError::BadAction("generators do not generate the group".into()))?;
        Ok(Self { group, morphisms })
    }

    /// Every element acts as the identity.
    pub fn trivial(graph: &EEGraph, group: FiniteGroup) -> Self {
        let morphisms = vec![GraphMorphism::identity(graph); group.order()];
        Self { group, morphisms }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn morphism(&self, element: usize) -> &GraphMorphism {
        &self.morphisms[element]
    }

    pub fn morphisms(&self) -> &[GraphMorphism] {
        &self.morphisms
    }

    /// Re-checks the action axioms against `graph`: automorphisms,
    /// identity to identity, and multiplicativity on all pairs.
    pub fn check(&self, graph: &EEGraph) -> Result<(), GraphError> {
        for m in &self.morphisms {
            m.check_automorphism(graph)?;
        }
        if !self.morphisms[self.group.identity_index()].is_identity() {
            return Err(GraphError::BadAction(
                "identity does not act trivially".into(),
            ));
        }
        for g in 0..self.group.order() {
            for h in 0..self.group.order() {
                let gh = self.group.mul(g, h);
                if self.morphisms[gh] != self.morphisms[g].compose(&self.morphisms[h]) {
                    return Err(GraphError::BadAction(format!(
                        "not a homomorphism at {}·{}",
                        self.group.element(g),
                        self.group.element(h)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn vertex_orbit(&self, v: VertexIdx) -> BTreeSet<VertexIdx> {
        self.morphisms.iter().map(|m| m.vertex_map[v]).collect()
    }

    pub fn end_orbit(&self, e: EndIdx) -> BTreeSet<EndIdx> {
        self.morphisms.iter().map(|m| m.end_map[e]).collect()
    }

    /// Vertex orbits, each sorted, ordered by smallest member.
    pub fn vertex_orbits(&self, graph: &EEGraph) -> Vec<Vec<VertexIdx>> {
        orbits(graph.vertex_count(), |v| self.vertex_orbit(v))
    }

    pub fn end_orbits(&self, graph: &EEGraph) -> Vec<Vec<EndIdx>> {
        orbits(graph.end_count(), |e| self.end_orbit(e))
    }

    /// Indices of elements fixing vertex `v`.
    pub fn vertex_stabilizer(&self, v: VertexIdx) -> Vec<usize> {
        (0..self.group.order())
            .filter(|&g| self.morphisms[g].vertex_map[v] == v)
            .collect()
    }
}

fn orbits(n: usize, orbit_of: impl Fn(usize) -> BTreeSet<usize>) -> Vec<Vec<usize>> {
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for x in 0..n {
        if seen[x] {
            continue;
        }
        let orbit: Vec<usize> = orbit_of(x).into_iter().collect();
        for &y in &orbit {
            seen[y] = true;
        }
        out.push(orbit);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::{cycle, triangle};

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse_with_degree(s, n).unwrap()
    }

    #[test]
    fn induced_rotation_of_triangle() {
        let g = triangle();
        let rot = GraphMorphism::induced_by_vertex_map(&g, &p("(0 1 2)", 3)).unwrap();
        let c12 = g.end_by_id("C1,2").unwrap();
        assert_eq!(g.end(rot.end_map[c12]).id, "C2,3");
        let empty = g.end_by_id("C1,1").unwrap();
        assert_eq!(g.end(rot.end_map[empty]).id, "C2,2");
    }

    #[test]
    fn non_automorphism_is_rejected() {
        let g = cycle(4);
        assert!(GraphMorphism::induced_by_vertex_map(&g, &p("(0 1)", 4)).is_err());
    }

    #[test]
    fn action_from_generators_is_a_homomorphism() {
        let g = triangle();
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let gens: Vec<_> = s3
            .generators()
            .iter()
            .map(|s| {
                (
                    s.clone(),
                    GraphMorphism::induced_by_vertex_map(&g, s).unwrap(),
                )
            })
            .collect();
        let action = GraphAction::from_generators(&g, s3, &gens).unwrap();
        action.check(&g).unwrap();
        assert_eq!(action.vertex_orbits(&g), vec![vec![0, 1, 2]]);
        for v in 0..3 {
            assert_eq!(action.vertex_stabilizer(v).len(), 2);
        }
    }

    #[test]
    fn inconsistent_generator_assignment_is_rejected() {
        // C3 generated by (0 1 2), but assigned the reflection-free rotation
        // of order 3 on a 6-cycle with the wrong cube.
        let g = cycle(6);
        let c3 = FiniteGroup::cyclic(3).unwrap();
        let rot = GraphMorphism::induced_by_vertex_map(&g, &p("(0 1 2 3 4 5)", 6)).unwrap();
        let gens = vec![(p("(0 1 2)", 3), rot)];
        assert!(matches!(
            GraphAction::from_generators(&g, c3, &gens),
            Err(GraphError::BadAction(_))
        ));
    }

    #[test]
    fn generators_outside_group_are_rejected() {
        let g = triangle();
        let c3 = FiniteGroup::cyclic(3).unwrap();
        let m = GraphMorphism::induced_by_vertex_map(&g, &p("(0 1)", 3)).unwrap();
        assert!(GraphAction::from_generators(&g, c3, &[(p("(0 1)", 3), m)]).is_err());
    }
}
