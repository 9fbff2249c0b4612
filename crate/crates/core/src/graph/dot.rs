use std::fmt::Write;

use super::eegraph::EEGraph;

/// Renders the graph in DOT as an undirected multigraph. Empty ends are
/// not drawn; loops become self-edges.
pub fn to_dot(graph: &EEGraph) -> String {
    to_dot_named(graph, None)
}

/// Like [`to_dot`], with a graph name (`graph <name> { .. }`).
pub fn to_dot_named(graph: &EEGraph, name: Option<&str>) -> String {
    let mut out = String::new();
    match name {
        Some(name) => writeln!(out, "graph {} {{", dot_id(name)),
        None => writeln!(out, "graph {{"),
    }
    .expect("writing to a String");
    for id in graph.vertex_ids() {
        writeln!(out, "  {};", dot_id(id)).expect("writing to a String");
    }
    for edge in graph.edges() {
        let (u, v) = graph.edge_vertices(edge);
        writeln!(
            out,
            "  {} -- {} [taillabel={}, headlabel={}];",
            dot_id(graph.vertex_id(u)),
            dot_id(graph.vertex_id(v)),
            dot_id(&graph.end(edge.a).id),
            dot_id(&graph.end(edge.b).id),
        )
        .expect("writing to a String");
    }
    out.push_str("}\n");
    out
}

fn dot_id(id: &str) -> String {
    let bare = id
        .chars()
        .next()
        .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && id.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
    if bare {
        id.to_string()
    } else {
        format!("\"{}\"", id.replace('\\', "\\\\").replace('"', "\\\""))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::eegraph::GraphBuilder;
    use crate::graph::fixtures::triangle;

    fn squash(s: &str) -> String {
        s.split_whitespace().collect::<Vec<_>>().join(" ")
    }

    #[test]
    fn edgeless_vertex() {
        let mut b = GraphBuilder::new();
        b.add_vertex_with_empty("v0");
        assert_eq!(squash(&to_dot(&b.build().unwrap())), "graph { v0; }");
    }

    #[test]
    fn triangle_has_three_nodes_and_edges() {
        let dot = to_dot(&triangle());
        assert_eq!(dot.matches(" -- ").count(), 3);
        assert!(dot.contains("  C1;\n  C2;\n  C3;\n"));
        assert!(!dot.contains("C1,1"));
    }

    #[test]
    fn loop_is_a_self_edge() {
        let mut b = GraphBuilder::new();
        let v = b.add_vertex_with_empty("v");
        let x = b.add_end(v, "x", false);
        let y = b.add_end(v, "y", false);
        b.pair(x, y);
        let dot = to_dot(&b.build().unwrap());
        assert!(dot.contains("v -- v"));
    }

    #[test]
    fn odd_identifiers_are_quoted() {
        assert_eq!(dot_id("orbit:a\"b"), "\"orbit:a\\\"b\"");
        assert_eq!(dot_id("1x"), "\"1x\"");
        assert_eq!(dot_id("x_1"), "x_1");
    }
}
