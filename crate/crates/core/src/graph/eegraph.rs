use std::collections::{BTreeMap, HashMap};
use std::fmt;

use super::GraphError;

/// Index of a vertex in an [`EEGraph`].
pub type VertexIdx = usize;
/// Index of an edge end in an [`EEGraph`].
pub type EndIdx = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct End {
    pub id: String,
    pub vertex: VertexIdx,
    pub empty: bool,
}

/// A graph with edge ends.
///
/// Each vertex `v` owns a set of edge ends `E_v`, one of which is its
/// distinguished empty end. An involution on the set of all ends pairs the
/// two ends of every edge and fixes exactly the empty ends. Loops and
/// parallel edges are allowed.
///
/// Graphs can be held in an invalid state so that [`EEGraph::validate`]
/// can report on them; everything else assumes a valid graph.
#[derive(Debug, Clone)]
pub struct EEGraph {
    vertices: Vec<String>,
    ends: Vec<End>,
    involution: Vec<EndIdx>,
    ends_at: Vec<Vec<EndIdx>>,
    vertex_index: HashMap<String, VertexIdx>,
    end_index: HashMap<String, EndIdx>,
}

impl PartialEq for EEGraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices
            && self.ends == other.ends
            && self.involution == other.involution
    }
}

impl Eq for EEGraph {}

/// An unordered edge `{a, n(a)}` with `a < n(a)` as end indices. For a
/// curve this is a node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub a: EndIdx,
    pub b: EndIdx,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Finding {
    DuplicateVertexId(String),
    DuplicateEndId(String),
    NotAnInvolution {
        end: String,
        image: String,
        back: String,
    },
    StrayFixedPoint {
        end: String,
    },
    EmptyEndNotFixed {
        end: String,
    },
    MissingEmptyEnd {
        vertex: String,
    },
    SeveralEmptyEnds {
        vertex: String,
        count: usize,
    },
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Finding::DuplicateVertexId(id) => write!(f, "duplicate vertex id {id:?}"),
            Finding::DuplicateEndId(id) => write!(f, "duplicate end id {id:?}"),
            Finding::NotAnInvolution { end, image, back } => write!(
                f,
                "involution not self-inverse: n({end}) = {image} but n({image}) = {back}"
            ),
            Finding::StrayFixedPoint { end } => {
                write!(f, "stray fixed point: non-empty end {end} is fixed by n")
            }
            Finding::EmptyEndNotFixed { end } => {
                write!(f, "empty end {end} is not fixed by n")
            }
            Finding::MissingEmptyEnd { vertex } => {
                write!(f, "vertex {vertex} has no empty end")
            }
            Finding::SeveralEmptyEnds { vertex, count } => {
                write!(f, "vertex {vertex} has {count} empty ends")
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub findings: Vec<Finding>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.findings.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.findings.is_empty() {
            return f.write_str("valid");
        }
        for (i, finding) in self.findings.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{finding}")?;
        }
        Ok(())
    }
}

impl EEGraph {
    /// Assembles a graph without checking the graph axioms. Only the
    /// references are checked (end vertices in range, involution total).
    pub fn from_raw(
        vertices: Vec<String>,
        ends: Vec<End>,
        involution: Vec<EndIdx>,
    ) -> Result<Self, GraphError> {
        if involution.len() != ends.len() {
            return Err(GraphError::Malformed(format!(
                "involution has {} entries for {} ends",
                involution.len(),
                ends.len()
            )));
        }
        if let Some(&bad) = involution.iter().find(|&&e| e >= ends.len()) {
            return Err(GraphError::Malformed(format!(
                "involution image {bad} out of range"
            )));
        }
        let mut ends_at = vec![Vec::new(); vertices.len()];
        for (i, end) in ends.iter().enumerate() {
            let slot = ends_at.get_mut(end.vertex).ok_or_else(|| {
                GraphError::Malformed(format!(
                    "end {} refers to missing vertex {}",
                    end.id, end.vertex
                ))
            })?;
            slot.push(i);
        }
        let vertex_index = vertices
            .iter()
            .enumerate()
            .map(|(i, id)| (id.clone(), i))
            .collect();
        let end_index = ends
            .iter()
            .enumerate()
            .map(|(i, e)| (e.id.clone(), i))
            .collect();
        Ok(Self {
            vertices,
            ends,
            involution,
            ends_at,
            vertex_index,
            end_index,
        })
    }

    pub fn validate(&self) -> ValidationReport {
        let mut findings = Vec::new();
        let mut seen = HashMap::new();
        for id in &self.vertices {
            if seen.insert(id.as_str(), ()).is_some() {
                findings.push(Finding::DuplicateVertexId(id.clone()));
            }
        }
        let mut seen = HashMap::new();
        for end in &self.ends {
            if seen.insert(end.id.as_str(), ()).is_some() {
                findings.push(Finding::DuplicateEndId(end.id.clone()));
            }
        }
        for (e, end) in self.ends.iter().enumerate() {
            let image = self.involution[e];
            let back = self.involution[image];
            if back != e {
                findings.push(Finding::NotAnInvolution {
                    end: end.id.clone(),
                    image: self.ends[image].id.clone(),
                    back: self.ends[back].id.clone(),
                });
            }
            match (end.empty, image == e) {
                (false, true) => findings.push(Finding::StrayFixedPoint {
                    end: end.id.clone(),
                }),
                (true, false) => findings.push(Finding::EmptyEndNotFixed {
                    end: end.id.clone(),
                }),
                _ => {}
            }
        }
        for (v, id) in self.vertices.iter().enumerate() {
            let count = self.ends_at[v]
                .iter()
                .filter(|&&e| self.ends[e].empty)
                .count();
            match count {
                1 => {}
                0 => findings.push(Finding::MissingEmptyEnd { vertex: id.clone() }),
                count => findings.push(Finding::SeveralEmptyEnds {
                    vertex: id.clone(),
                    count,
                }),
            }
        }
        ValidationReport { findings }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }

    pub(crate) fn ensure_valid(&self) -> Result<(), GraphError> {
        let report = self.validate();
        if report.is_valid() {
            Ok(())
        } else {
            Err(GraphError::Invalid(report))
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn end_count(&self) -> usize {
        self.ends.len()
    }

    pub fn vertex_id(&self, v: VertexIdx) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_ids(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_by_id(&self, id: &str) -> Option<VertexIdx> {
        self.vertex_index.get(id).copied()
    }

    pub fn end(&self, e: EndIdx) -> &End {
        &self.ends[e]
    }

    pub fn ends(&self) -> &[End] {
        &self.ends
    }

    pub fn end_by_id(&self, id: &str) -> Option<EndIdx> {
        self.end_index.get(id).copied()
    }

    /// `n(e)`.
    pub fn partner(&self, e: EndIdx) -> EndIdx {
        self.involution[e]
    }

    pub fn involution(&self) -> &[EndIdx] {
        &self.involution
    }

    /// All ends at `v`, including the empty end.
    pub fn ends_at(&self, v: VertexIdx) -> &[EndIdx] {
        &self.ends_at[v]
    }

    pub fn empty_end(&self, v: VertexIdx) -> Option<EndIdx> {
        self.ends_at[v]
            .iter()
            .copied()
            .find(|&e| self.ends[e].empty)
    }

    /// Number of non-empty ends at `v`; a loop counts twice.
    pub fn degree(&self, v: VertexIdx) -> usize {
        self.ends_at[v]
            .iter()
            .filter(|&&e| !self.ends[e].empty)
            .count()
    }

    /// Edges as 2-element orbits of the involution, sorted by end index.
    pub fn edges(&self) -> Vec<Edge> {
        (0..self.ends.len())
            .filter_map(|a| {
                let b = self.involution[a];
                (a < b).then_some(Edge { a, b })
            })
            .collect()
    }

    pub fn edge_of(&self, e: EndIdx) -> Option<Edge> {
        let p = self.involution[e];
        match e.cmp(&p) {
            std::cmp::Ordering::Less => Some(Edge { a: e, b: p }),
            std::cmp::Ordering::Greater => Some(Edge { a: p, b: e }),
            std::cmp::Ordering::Equal => None,
        }
    }

    pub fn edge_vertices(&self, edge: Edge) -> (VertexIdx, VertexIdx) {
        (self.ends[edge.a].vertex, self.ends[edge.b].vertex)
    }

    /// `"a~b"` using end identifiers.
    pub fn edge_label(&self, edge: Edge) -> String {
        format!("{}~{}", self.ends[edge.a].id, self.ends[edge.b].id)
    }

    /// Connected-component label per vertex, numbered from 0 in order of
    /// first appearance.
    pub fn component_labels(&self) -> Vec<usize> {
        let n = self.vertices.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for edge in self.edges() {
            let (u, v) = self.edge_vertices(edge);
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru != rv {
                parent[ru.max(rv)] = ru.min(rv);
            }
        }
        let mut relabel = BTreeMap::new();
        (0..n)
            .map(|v| {
                let root = find(&mut parent, v);
                let next = relabel.len();
                *relabel.entry(root).or_insert(next)
            })
            .collect()
    }

    pub fn component_count(&self) -> usize {
        self.component_labels()
            .into_iter()
            .max()
            .map_or(0, |m| m + 1)
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// First Betti number `|E| − |V| + #components`.
    pub fn betti1(&self) -> usize {
        self.edges().len() + self.component_count() - self.vertex_count()
    }

    /// Number of edges between `u` and `v` (loops at `u` when `u == v`).
    pub fn multiplicity(&self, u: VertexIdx, v: VertexIdx) -> usize {
        self.edges()
            .into_iter()
            .filter(|&e| {
                let (x, y) = self.edge_vertices(e);
                (x, y) == (u, v) || (x, y) == (v, u)
            })
            .count()
    }
}

/// Incremental construction of an [`EEGraph`].
#[derive(Debug, Default, Clone)]
pub struct GraphBuilder {
    vertices: Vec<String>,
    ends: Vec<End>,
    involution: Vec<EndIdx>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a vertex without any ends.
    pub fn add_vertex(&mut self, id: impl Into<String>) -> VertexIdx {
        self.vertices.push(id.into());
        self.vertices.len() - 1
    }

    /// Adds a vertex together with its empty end, named `"<id>:empty"`.
    pub fn add_vertex_with_empty(&mut self, id: impl Into<String>) -> VertexIdx {
        let id = id.into();
        let empty = format!("{id}:empty");
        let v = self.add_vertex(id);
        self.add_end(v, empty, true);
        v
    }

    /// Adds an end at `vertex`; it starts out fixed by the involution.
    pub fn add_end(&mut self, vertex: VertexIdx, id: impl Into<String>, empty: bool) -> EndIdx {
        let e = self.ends.len();
        self.ends.push(End {
            id: id.into(),
            vertex,
            empty,
        });
        self.involution.push(e);
        e
    }

    /// Sets `n(a) = b` and `n(b) = a`.
    pub fn pair(&mut self, a: EndIdx, b: EndIdx) -> &mut Self {
        self.involution[a] = b;
        self.involution[b] = a;
        self
    }

    /// Sets `n(a) = b` only; for building deliberately broken graphs.
    pub fn map_one_way(&mut self, a: EndIdx, b: EndIdx) -> &mut Self {
        self.involution[a] = b;
        self
    }

    pub fn build_unchecked(self) -> Result<EEGraph, GraphError> {
        EEGraph::from_raw(self.vertices, self.ends, self.involution)
    }

    pub fn build(self) -> Result<EEGraph, GraphError> {
        let graph = self.build_unchecked()?;
        graph.ensure_valid()?;
        Ok(graph)
    }
}
