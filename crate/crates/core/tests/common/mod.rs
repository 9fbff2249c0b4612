#![allow(dead_code)]

use curvecover::curve::{Characters, CurveAction};
use curvecover::graph::{EEGraph, GraphAction, GraphBuilder, GraphMorphism};
use curvecover::group::FiniteGroup;
use curvecover::report::{is_prime, Prime};

/// The `k` smallest primes not dividing `order`.
pub fn coprime_primes(order: usize, k: usize) -> Vec<Prime> {
    (2u64..)
        .filter(|&p| is_prime(p) && !(order as u64).is_multiple_of(p))
        .take(k)
        .map(|p| Prime::new(p).unwrap())
        .collect()
}

pub fn smallest_prime_divisor(order: usize) -> Option<Prime> {
    (2..=order as u64)
        .find(|&p| is_prime(p) && (order as u64).is_multiple_of(p))
        .map(|p| Prime::new(p).unwrap())
}

/// One line with a single self-node.
pub fn loop_graph() -> EEGraph {
    let mut b = GraphBuilder::new();
    let v = b.add_vertex_with_empty("x");
    let e = b.add_end(v, "x:a", false);
    let f = b.add_end(v, "x:b", false);
    b.pair(e, f);
    b.build().unwrap()
}

/// One line, no nodes.
pub fn point_graph() -> EEGraph {
    let mut b = GraphBuilder::new();
    b.add_vertex_with_empty("x");
    b.build().unwrap()
}

/// Corrupts one node's character sum: every element of the first node
/// with a nontrivial stabilizer gets `(0, 0) mod 2`, except one
/// non-identity element which gets `(1, 0) mod 2`. `None` when no node has
/// a nontrivial stabilizer.
pub fn corrupt_orientation(action: &CurveAction) -> Option<CurveAction> {
    let mut out = action.clone();
    let (&node, local) = action.node_local().iter().next()?;
    let id = action.group().identity_index();
    let victim = *local.elements.keys().find(|&&g| g != id)?;
    for &g in local.elements.keys() {
        let c = if g == victim {
            Characters::new(1, 0, 2).unwrap()
        } else {
            Characters::new(0, 0, 2).unwrap()
        };
        out.set_characters(node, g, c).unwrap();
    }
    Some(out)
}

/// Adjoins a central `C2` acting as the identity on the dual graph, with
/// no characters and no attestations: its generator fixes every component
/// and every end and nothing records an action on any component.
pub fn adjoin_invisible_involution(action: &CurveAction) -> CurveAction {
    let group = action.group();
    let graph = action.curve().graph();
    let product = group
        .direct_product(&FiniteGroup::cyclic(2).unwrap())
        .unwrap();
    let k = group.generators().len();
    let generators: Vec<_> = product
        .generators()
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let m = if i < k {
                let g = group.index_of(&group.generators()[i]).unwrap();
                action.graph_action().morphism(g).clone()
            } else {
                GraphMorphism::identity(graph)
            };
            (s.clone(), m)
        })
        .collect();
    let graph_action = GraphAction::from_generators(graph, product, &generators).unwrap();
    let mut out = CurveAction::new(action.curve().clone(), graph_action).unwrap();
    for (&v, &genus) in action.quotient_genus() {
        out.declare_quotient_genus(v, genus).unwrap();
    }
    out
}

/// Drops attestations and characters, leaving only end motion as evidence
/// of faithfulness.
pub fn strip_evidence(action: &CurveAction) -> CurveAction {
    let mut out = action.clone();
    out.remove_attestations();
    let nodes: Vec<_> = out.node_local().keys().copied().collect();
    for node in nodes {
        out.clear_characters(node);
    }
    out
}
