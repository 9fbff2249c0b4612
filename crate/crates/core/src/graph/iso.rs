use std::collections::BTreeMap;

use super::eegraph::{EEGraph, EndIdx, VertexIdx};
use super::morphism::GraphMorphism;
use super::GraphError;

/// Largest graph [`is_isomorphic`] will search.
pub const MAX_ISO_VERTICES: usize = 64;

/// Searches for an invertible morphism `g1 → g2`.
///
/// Vertices are matched by backtracking, pruned on degree and loop count
/// and checked against edge multiplicities to already-matched vertices.
/// Once a vertex bijection preserving all multiplicities is found, the
/// ends are matched edge by edge to produce the witness.
pub fn is_isomorphic(g1: &EEGraph, g2: &EEGraph) -> Result<Option<GraphMorphism>, GraphError> {
    g1.ensure_valid()?;
    g2.ensure_valid()?;
    for g in [g1, g2] {
        if g.vertex_count() > MAX_ISO_VERTICES {
            return Err(GraphError::TooLarge {
                vertices: g.vertex_count(),
                cap: MAX_ISO_VERTICES,
            });
        }
    }
    if g1.vertex_count() != g2.vertex_count() || g1.edges().len() != g2.edges().len() {
        return Ok(None);
    }
    let m1 = multiplicities(g1);
    let m2 = multiplicities(g2);
    let n = g1.vertex_count();
    let signature = |g: &EEGraph, m: &[Vec<usize>], v: usize| (g.degree(v), m[v][v]);

    // Match g1's vertices in breadth-first order so each new vertex is
    // adjacent to something already matched where possible.
    let order = bfs_order(g1, &m1);
    let mut assignment: Vec<Option<VertexIdx>> = vec![None; n];
    let mut used = vec![false; n];

    fn extend(
        depth: usize,
        order: &[usize],
        m1: &[Vec<usize>],
        m2: &[Vec<usize>],
        sig_ok: &dyn Fn(usize, usize) -> bool,
        assignment: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
    ) -> bool {
        let Some(&u) = order.get(depth) else {
            return true;
        };
        for w in 0..m2.len() {
            if used[w] || !sig_ok(u, w) {
                continue;
            }
            let consistent = order[..depth].iter().all(|&x| {
                let y = assignment[x].expect("matched");
                m1[u][x] == m2[w][y]
            });
            if !consistent {
                continue;
            }
            assignment[u] = Some(w);
            used[w] = true;
            if extend(depth + 1, order, m1, m2, sig_ok, assignment, used) {
                return true;
            }
            assignment[u] = None;
            used[w] = false;
        }
        false
    }

    let sig_ok = |u: usize, w: usize| signature(g1, &m1, u) == signature(g2, &m2, w);
    if !extend(0, &order, &m1, &m2, &sig_ok, &mut assignment, &mut used) {
        return Ok(None);
    }
    let vertex_map: Vec<VertexIdx> = assignment
        .into_iter()
        .map(|a| a.expect("complete"))
        .collect();
    let witness = GraphMorphism {
        end_map: match_ends(g1, g2, &vertex_map),
        vertex_map,
    };
    witness.check(g1, g2)?;
    Ok(Some(witness))
}

fn multiplicities(g: &EEGraph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut m = vec![vec![0; n]; n];
    for edge in g.edges() {
        let (u, v) = g.edge_vertices(edge);
        m[u][v] += 1;
        if u != v {
            m[v][u] += 1;
        }
    }
    m
}

fn bfs_order(g: &EEGraph, m: &[Vec<usize>]) -> Vec<usize> {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for w in 0..n {
                if !seen[w] && m[u][w] > 0 {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    order
}

/// Given a multiplicity-preserving vertex bijection, pairs up the edges
/// between corresponding vertex pairs and maps their ends accordingly.
fn match_ends(g1: &EEGraph, g2: &EEGraph, vertex_map: &[VertexIdx]) -> Vec<EndIdx> {
    let mut end_map = vec![usize::MAX; g1.end_count()];
    for (v, &image) in vertex_map.iter().enumerate().take(g1.vertex_count()) {
        let e1 = g1.empty_end(v).expect("valid graph");
        end_map[e1] = g2.empty_end(image).expect("valid graph");
    }
    // Oriented edge (end at u, end at w) keyed by (u, w); loops appear once
    // per orientation, matching on both sides.
    let mut pool: BTreeMap<(VertexIdx, VertexIdx), Vec<(EndIdx, EndIdx)>> = BTreeMap::new();
    for edge in g2.edges() {
        let (u, w) = g2.edge_vertices(edge);
        pool.entry((u, w)).or_default().push((edge.a, edge.b));
        if u != w {
            pool.entry((w, u)).or_default().push((edge.b, edge.a));
        }
    }
    for edge in g1.edges() {
        let (u, w) = g1.edge_vertices(edge);
        let key = (vertex_map[u], vertex_map[w]);
        let (x, y) = pool
            .get_mut(&key)
            .and_then(Vec::pop)
            .expect("multiplicities agree");
        if key.0 != key.1 {
            // drop the reverse orientation of the same target edge
            let rev = pool.get_mut(&(key.1, key.0)).expect("reverse present");
            let pos = rev
                .iter()
                .position(|&(p, q)| (p, q) == (y, x))
                .expect("reverse present");
            rev.remove(pos);
        }
        end_map[edge.a] = x;
        end_map[edge.b] = y;
    }
    end_map
}
