use super::action::CurveAction;
use crate::graph::VertexIdx;
use crate::perm::gcd;
use crate::report::{CheckItem, Hypothesis, Prime};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetupReport {
    pub items: Vec<CheckItem>,
}

impl SetupReport {
    pub fn passed(&self) -> bool {
        self.items.iter().all(CheckItem::passed)
    }
}

/// Whether `element`, which fixes `v`, visibly acts nontrivially on the
/// component `v`: it moves an end of `v`, carries nontrivial characters
/// at a node through `v`, or is attested.
pub(crate) fn acts_nontrivially_on(action: &CurveAction, v: VertexIdx, element: usize) -> bool {
    let graph = action.curve().graph();
    let morphism = action.graph_action().morphism(element);
    let moves_end = graph.ends_at(v).iter().any(|&e| morphism.end_map[e] != e);
    let has_characters = graph.ends_at(v).iter().any(|&e| {
        action
            .node_of_end(e)
            .and_then(|node| action.node_local().get(&node))
            .and_then(|local| local.elements.get(&element))
            .and_then(|entry| entry.characters)
            .is_some_and(|c| !c.is_trivial())
    });
    let attested = action
        .attestations()
        .get(&v)
        .is_some_and(|a| a.elements.contains(&element));
    moves_end || has_characters || attested
}

/// The standing hypotheses on the group: order prime to `p`, faithful
/// action of each component stabilizer, and no non-identity element acting
/// as the identity on the curve.
pub fn check_setup(action: &CurveAction, p: Prime) -> SetupReport {
    let group = action.group();
    let graph = action.curve().graph();
    let order = group.order() as u64;
    let coprime = gcd(order as usize, p.get() as usize) == 1;
    let coprimality = CheckItem::new(
        Hypothesis::Coprimality,
        coprime,
        if coprime {
            format!("gcd(|G| = {order}, p = {p}) = 1")
        } else {
            format!("p = {p} divides |G| = {order}")
        },
    );

    let id = group.identity_index();
    let mut unfaithful = Vec::new();
    let mut checked = 0usize;
    for v in 0..graph.vertex_count() {
        for g in action.graph_action().vertex_stabilizer(v) {
            if g == id {
                continue;
            }
            checked += 1;
            if !acts_nontrivially_on(action, v, g) {
                unfaithful.push(format!(
                    "{} fixes {} with no visible action",
                    group.element(g),
                    graph.vertex_id(v)
                ));
            }
        }
    }
    let faithfulness = CheckItem::new(
        Hypothesis::Faithfulness,
        unfaithful.is_empty(),
        if unfaithful.is_empty() {
            format!("{checked} (vertex, stabilizer element) pairs act nontrivially")
        } else {
            unfaithful.join("; ")
        },
    );

    let kernel: Vec<String> = (0..group.order())
        .filter(|&g| g != id)
        .filter(|&g| {
            let m = action.graph_action().morphism(g);
            let moves_vertex = m.vertex_map.iter().enumerate().any(|(v, &w)| v != w);
            !moves_vertex && !(0..graph.vertex_count()).any(|v| acts_nontrivially_on(action, v, g))
        })
        .map(|g| group.element(g).to_string())
        .collect();
    let component_action = CheckItem::new(
        Hypothesis::ComponentAction,
        kernel.is_empty(),
        if kernel.is_empty() {
            "every non-identity element moves a component or acts on one it fixes".to_string()
        } else {
            format!(
                "acting as the identity on every component: {}",
                kernel.join(", ")
            )
        },
    );

    SetupReport {
        items: vec![coprimality, faithfulness, component_action],
    }
}
