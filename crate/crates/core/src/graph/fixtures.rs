//! Small named graphs used by the gallery and the tests.

use super::eegraph::{EEGraph, GraphBuilder};

/// Graph on vertices `v0 .. v{n-1}` from an edge list. The end of edge
/// `{u, w}` at `u` is named `"v{u}>v{w}"`, with `#k` appended for the
/// `k`-th repeat of a parallel edge.
pub fn from_adjacency(n: usize, edges: &[(usize, usize)]) -> EEGraph {
    let mut b = GraphBuilder::new();
    for v in 0..n {
        b.add_vertex_with_empty(format!("v{v}"));
    }
    let mut repeats = std::collections::HashMap::new();
    for &(u, w) in edges {
        let k = repeats.entry((u.min(w), u.max(w))).or_insert(0usize);
        let suffix = if *k == 0 {
            String::new()
        } else {
            format!("#{k}")
        };
        *k += 1;
        let x = b.add_end(u, format!("v{u}>v{w}{suffix}"), false);
        let y = b.add_end(w, format!("v{w}>v{u}{suffix}"), false);
        b.pair(x, y);
    }
    b.build().expect("adjacency list gives a valid graph")
}

/// Three vertices `C1, C2, C3` with ends `Ci,j`; the empty end of `Ci` is
/// `Ci,i` and the involution swaps `Ci,j` with `Cj,i`.
pub fn triangle() -> EEGraph {
    let mut b = GraphBuilder::new();
    let mut ends = [[0usize; 3]; 3];
    for (i, row) in ends.iter_mut().enumerate() {
        let v = b.add_vertex(format!("C{}", i + 1));
        for (j, slot) in row.iter_mut().enumerate() {
            *slot = b.add_end(v, format!("C{},{}", i + 1, j + 1), i == j);
        }
    }
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        b.pair(ends[i][j], ends[j][i]);
    }
    b.build().expect("triangle is valid")
}

/// The `n`-cycle as a simple graph.
pub fn cycle(n: usize) -> EEGraph {
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    from_adjacency(n, &edges)
}

/// The Petersen graph from a hardcoded adjacency list: outer 5-cycle,
/// inner pentagram, spokes.
pub fn petersen_adjacency() -> EEGraph {
    from_adjacency(
        10,
        &[
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 0),
            (5, 7),
            (7, 9),
            (9, 6),
            (6, 8),
            (8, 5),
            (0, 5),
            (1, 6),
            (2, 7),
            (3, 8),
            (4, 9),
        ],
    )
}
