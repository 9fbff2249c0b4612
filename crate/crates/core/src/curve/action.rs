use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::sscurve::SSCurve;
use super::CurveError;
use crate::graph::{Edge, EndIdx, GraphAction, VertexIdx};
use crate::group::FiniteGroup;

/// Tangent characters of a stabilizer element at a node, as exponents of a
/// primitive `modulus`-th root of unity: the element sends the branch
/// coordinate `a` to `ζ^a` times the coordinate of the branch it lands on,
/// and likewise for `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Characters {
    pub a: u64,
    pub b: u64,
    pub modulus: u64,
}

impl Characters {
    pub fn new(a: u64, b: u64, modulus: u64) -> Result<Self, CurveError> {
        if modulus == 0 {
            return Err(CurveError::BadCharacters("modulus must be positive".into()));
        }
        if a >= modulus || b >= modulus {
            return Err(CurveError::BadCharacters(format!(
                "exponents ({a}, {b}) must be reduced modulo {modulus}"
            )));
        }
        Ok(Self { a, b, modulus })
    }

    pub fn trivial() -> Self {
        Self {
            a: 0,
            b: 0,
            modulus: 1,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    /// Determinant condition `μ_a · μ_b = 1`.
    pub fn sum_vanishes(&self) -> bool {
        (self.a + self.b).is_multiple_of(self.modulus)
    }

    /// The same characters with the branches relabeled.
    pub fn swapped(&self) -> Self {
        Self {
            a: self.b,
            b: self.a,
            modulus: self.modulus,
        }
    }

    /// Exponents rescaled to a multiple `n` of the modulus.
    fn lift(&self, n: u64) -> (u64, u64) {
        let k = n / self.modulus;
        (self.a * k, self.b * k)
    }
}

/// One stabilizer element's behavior at a node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NodeElement {
    /// Whether the element exchanges the two ends of the node.
    pub swap: bool,
    pub characters: Option<Characters>,
}

/// The stabilizer of a node together with the swap flag and optional
/// tangent characters of each of its elements. Branch `a` is the end with
/// the smaller index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeLocalAction {
    pub node: Edge,
    pub elements: BTreeMap<usize, NodeElement>,
}

impl NodeLocalAction {
    pub fn stabilizer_order(&self) -> usize {
        self.elements.len()
    }

    pub fn has_characters(&self) -> bool {
        self.elements.values().any(|e| e.characters.is_some())
    }

    /// `true` when no element carries characters, `false` when all do;
    /// an error for partial data.
    pub(crate) fn characters_complete(&self, label: &str) -> Result<bool, CurveError> {
        let given = self
            .elements
            .values()
            .filter(|e| e.characters.is_some())
            .count();
        match given {
            0 => Ok(false),
            n if n == self.elements.len() => Ok(true),
            _ => Err(CurveError::IncompleteCharacters(label.to_string())),
        }
    }

    /// Checks that the characters compose like the monomial matrices they
    /// describe: for `σ∘τ`, branch `a` picks up `τ`'s exponent at `a` and
    /// then `σ`'s exponent at whichever branch `τ` moved `a` to.
    pub fn check_character_homomorphism(&self, group: &FiniteGroup) -> Result<(), String> {
        let Some(n) = self
            .elements
            .values()
            .map(|e| e.characters.map(|c| c.modulus))
            .collect::<Option<Vec<u64>>>()
            .map(|ms| ms.into_iter().fold(1, lcm))
        else {
            return Ok(());
        };
        let lifted: BTreeMap<usize, (bool, u64, u64)> = self
            .elements
            .iter()
            .map(|(&g, e)| {
                let (a, b) = e.characters.expect("complete").lift(n);
                (g, (e.swap, a, b))
            })
            .collect();
        for (&s, &(s_swap, s_a, s_b)) in &lifted {
            for (&t, &(t_swap, t_a, t_b)) in &lifted {
                let st = group.mul(s, t);
                let &(st_swap, st_a, st_b) = lifted
                    .get(&st)
                    .ok_or_else(|| format!("stabilizer not closed at {}", group.element(st)))?;
                let (s_at_ta, s_at_tb) = if t_swap { (s_b, s_a) } else { (s_a, s_b) };
                let expect_a = (t_a + s_at_ta) % n;
                let expect_b = (t_b + s_at_tb) % n;
                if st_swap != (s_swap ^ t_swap) || (st_a, st_b) != (expect_a, expect_b) {
                    return Err(format!(
                        "characters are not multiplicative: {} ∘ {} should give ({expect_a}, {expect_b}) mod {n}, recorded ({st_a}, {st_b})",
                        group.element(s),
                        group.element(t)
                    ));
                }
            }
        }
        Ok(())
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

/// Declared evidence that the listed elements act nontrivially on a
/// component even though the dual graph cannot show it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Attestation {
    pub elements: BTreeSet<usize>,
    pub note: String,
}

/// A finite group acting on a semi-stable curve, as far as the dual graph
/// and the local data at the nodes can record it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveAction {
    curve: SSCurve,
    action: GraphAction,
    node_local: BTreeMap<Edge, NodeLocalAction>,
    quotient_genus: BTreeMap<VertexIdx, u32>,
    attestations: BTreeMap<VertexIdx, Attestation>,
}

impl CurveAction {
    /// Checks the graph action against the curve and that genus and
    /// ordinarity are constant on vertex orbits, then records the
    /// stabilizer of every node with a nontrivial one.
    pub fn new(curve: SSCurve, action: GraphAction) -> Result<Self, CurveError> {
        let graph = curve.graph();
        action.check(graph)?;
        for v in 0..graph.vertex_count() {
            for w in action.vertex_orbit(v) {
                if curve.component(v) != curve.component(w) {
                    return Err(CurveError::NotOrbitConstant {
                        vertex: graph.vertex_id(v).to_string(),
                        other: graph.vertex_id(w).to_string(),
                    });
                }
            }
        }
        let mut node_local = BTreeMap::new();
        for node in graph.edges() {
            let elements: BTreeMap<usize, NodeElement> = (0..action.group().order())
                .filter_map(|g| {
                    let image = action.morphism(g).end_map[node.a];
                    (image == node.a || image == node.b).then_some((
                        g,
                        NodeElement {
                            swap: image == node.b,
                            characters: None,
                        },
                    ))
                })
                .collect();
            if elements.len() > 1 {
                node_local.insert(node, NodeLocalAction { node, elements });
            }
        }
        Ok(Self {
            curve,
            action,
            node_local,
            quotient_genus: BTreeMap::new(),
            attestations: BTreeMap::new(),
        })
    }

    pub fn curve(&self) -> &SSCurve {
        &self.curve
    }

    pub fn graph_action(&self) -> &GraphAction {
        &self.action
    }

    pub fn group(&self) -> &FiniteGroup {
        self.action.group()
    }

    /// Local data for nodes with nontrivial stabilizer.
    pub fn node_local(&self) -> &BTreeMap<Edge, NodeLocalAction> {
        &self.node_local
    }

    pub fn quotient_genus(&self) -> &BTreeMap<VertexIdx, u32> {
        &self.quotient_genus
    }

    pub fn attestations(&self) -> &BTreeMap<VertexIdx, Attestation> {
        &self.attestations
    }

    /// The node containing end `e`, if `e` is not empty.
    pub fn node_of_end(&self, e: EndIdx) -> Option<Edge> {
        self.curve.graph().edge_of(e)
    }

    pub fn node_label(&self, node: Edge) -> String {
        self.curve.graph().edge_label(node)
    }

    /// Records the tangent characters of `element` at `node`, with branch
    /// `a` the smaller end index.
    pub fn set_characters(
        &mut self,
        node: Edge,
        element: usize,
        characters: Characters,
    ) -> Result<(), CurveError> {
        let label = self.node_label(node);
        let entry = self
            .node_local
            .get_mut(&node)
            .and_then(|n| n.elements.get_mut(&element))
            .ok_or_else(|| CurveError::NotInStabilizer {
                node: label,
                element: self.action.group().element(element).to_string(),
            })?;
        entry.characters = Some(characters);
        Ok(())
    }

    /// Drops all recorded characters at `node`.
    pub fn clear_characters(&mut self, node: Edge) {
        if let Some(n) = self.node_local.get_mut(&node) {
            for e in n.elements.values_mut() {
                e.characters = None;
            }
        }
    }

    pub fn declare_quotient_genus(&mut self, v: VertexIdx, genus: u32) -> Result<(), CurveError> {
        let component = self.curve.component(v);
        if genus > component.genus {
            return Err(CurveError::QuotientGenusTooLarge {
                vertex: self.curve.graph().vertex_id(v).to_string(),
                declared: genus,
                genus: component.genus,
            });
        }
        self.quotient_genus.insert(v, genus);
        Ok(())
    }

    pub fn attest(
        &mut self,
        v: VertexIdx,
        elements: impl IntoIterator<Item = usize>,
        note: impl Into<String>,
    ) -> Result<(), CurveError> {
        let stabilizer: BTreeSet<usize> = self.action.vertex_stabilizer(v).into_iter().collect();
        let elements: BTreeSet<usize> = elements.into_iter().collect();
        if let Some(&g) = elements.iter().find(|g| !stabilizer.contains(g)) {
            return Err(CurveError::NotInStabilizer {
                node: self.curve.graph().vertex_id(v).to_string(),
                element: self.action.group().element(g).to_string(),
            });
        }
        self.attestations.insert(
            v,
            Attestation {
                elements,
                note: note.into(),
            },
        );
        Ok(())
    }

    pub fn remove_attestations(&mut self) {
        self.attestations.clear();
    }

    /// Indices of the elements preserving the node `{a, n(a)}`.
    pub fn node_stabilizer(&self, node: Edge) -> Vec<usize> {
        match self.node_local.get(&node) {
            Some(n) => n.elements.keys().copied().collect(),
            None => vec![self.group().identity_index()],
        }
    }

    /// The stabilizer of `node` as a group of its own.
    pub fn node_stabilizer_group(&self, node: Edge) -> FiniteGroup {
        let members: BTreeSet<usize> = self.node_stabilizer(node).into_iter().collect();
        self.group()
            .subgroup_where(|g| members.contains(&g))
            .expect("stabilizers are subgroups")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::sscurve::Component;
    use crate::graph::{fixtures::triangle, GraphMorphism};
    use crate::perm::Permutation;

    fn triangle_action(group: FiniteGroup) -> CurveAction {
        let g = triangle();
        let gens: Vec<_> = group
            .generators()
            .iter()
            .map(|s| {
                (
                    s.clone(),
                    GraphMorphism::induced_by_vertex_map(&g, s).unwrap(),
                )
            })
            .collect();
        let action = GraphAction::from_generators(&g, group, &gens).unwrap();
        CurveAction::new(SSCurve::rational(g).unwrap(), action).unwrap()
    }

    #[test]
    fn triangle_s3_node_stabilizers_swap() {
        let a = triangle_action(FiniteGroup::symmetric(3).unwrap());
        assert_eq!(a.node_local().len(), 3);
        for local in a.node_local().values() {
            assert_eq!(local.stabilizer_order(), 2);
            assert_eq!(local.elements.values().filter(|e| e.swap).count(), 1);
        }
    }

    #[test]
    fn triangle_c3_nodes_have_trivial_stabilizer() {
        let a = triangle_action(FiniteGroup::cyclic(3).unwrap());
        assert!(a.node_local().is_empty());
        let node = a.curve().graph().edges()[0];
        assert_eq!(a.node_stabilizer(node), vec![a.group().identity_index()]);
    }

    #[test]
    fn non_constant_decorations_are_rejected() {
        let g = triangle();
        let c3 = FiniteGroup::cyclic(3).unwrap();
        let gens: Vec<_> = c3
            .generators()
            .iter()
            .map(|s| {
                (
                    s.clone(),
                    GraphMorphism::induced_by_vertex_map(&g, s).unwrap(),
                )
            })
            .collect();
        let action = GraphAction::from_generators(&g, c3, &gens).unwrap();
        let curve = SSCurve::new(
            g,
            vec![Component::new(1, true), Component::LINE, Component::LINE],
        )
        .unwrap();
        assert!(matches!(
            CurveAction::new(curve, action),
            Err(CurveError::NotOrbitConstant { .. })
        ));
    }

    #[test]
    fn characters_reject_unreduced_exponents() {
        assert!(Characters::new(3, 0, 3).is_err());
        assert!(Characters::new(0, 0, 0).is_err());
        assert!(Characters::new(1, 2, 3).unwrap().sum_vanishes());
        assert!(!Characters::new(1, 1, 3).unwrap().sum_vanishes());
    }

    #[test]
    fn character_homomorphism_on_c2_swap() {
        let mut a = triangle_action(FiniteGroup::symmetric(3).unwrap());
        let node = *a.node_local().keys().next().unwrap();
        let (id, swap) = {
            let local = &a.node_local()[&node];
            let id = *local.elements.iter().find(|(_, e)| !e.swap).unwrap().0;
            let swap = *local.elements.iter().find(|(_, e)| e.swap).unwrap().0;
            (id, swap)
        };
        a.set_characters(node, id, Characters::trivial()).unwrap();
        a.set_characters(node, swap, Characters::new(1, 1, 2).unwrap())
            .unwrap();
        a.node_local()[&node]
            .check_character_homomorphism(a.group())
            .unwrap();
        // an involution swapping the branches must have exponent sum zero
        a.set_characters(node, swap, Characters::new(1, 0, 2).unwrap())
            .unwrap();
        assert!(a.node_local()[&node]
            .check_character_homomorphism(a.group())
            .is_err());
    }

    #[test]
    fn attestation_must_lie_in_stabilizer() {
        let mut a = triangle_action(FiniteGroup::symmetric(3).unwrap());
        let rot = a
            .group()
            .index_of(&Permutation::parse_with_degree("(0 1 2)", 3).unwrap())
            .unwrap();
        assert!(a.attest(0, [rot], "x").is_err());
        let refl = a
            .group()
            .index_of(&Permutation::parse_with_degree("(1 2)", 3).unwrap())
            .unwrap();
        a.attest(0, [refl], "reflection through C1").unwrap();
    }

    #[test]
    fn quotient_genus_bounded_by_genus() {
        let mut a = triangle_action(FiniteGroup::cyclic(3).unwrap());
        assert!(a.declare_quotient_genus(0, 1).is_err());
        a.declare_quotient_genus(0, 0).unwrap();
    }
}
