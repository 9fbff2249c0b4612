//! JSON serialization of a curve with a group action.
//!
//! Everything refers to vertices and ends by id. Node-local elements may be
//! written as cycle strings such as `"(0 1)(2 3)"` or as words in the
//! generators such as `"g0*g1^-1"` (`"e"` is the identity).

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curve::{quotient_curve, Characters, Component, CurveAction, SSCurve};
use crate::graph::{EEGraph, GraphAction, GraphBuilder, GraphMorphism};
use crate::group::FiniteGroup;
use crate::perm::Permutation;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveDocument {
    pub schema_version: u32,
    pub group: GroupDoc,
    pub curve: CurveDoc,
    pub action: Vec<GeneratorAction>,
    #[serde(default)]
    pub node_local: Vec<NodeLocalEntry>,
    #[serde(default)]
    pub quotient_genus: Vec<QuotientGenusEntry>,
    #[serde(default)]
    pub attestations: Vec<AttestationEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDoc {
    pub label: String,
    pub degree: usize,
    pub generators: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveDoc {
    pub vertices: Vec<VertexDoc>,
    pub ends: Vec<EndDoc>,
    /// Pairs of ends exchanged by the involution; unlisted ends are fixed.
    pub involution: Vec<[String; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexDoc {
    pub id: String,
    pub genus: u32,
    pub ordinary: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EndDoc {
    pub id: String,
    pub vertex: String,
    pub empty: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorAction {
    pub generator: String,
    pub vertex_map: BTreeMap<String, String>,
    pub end_map: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeLocalEntry {
    pub node: [String; 2],
    pub element: String,
    pub swap: bool,
    pub char_a: u64,
    pub char_b: u64,
    pub modulus: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuotientGenusEntry {
    pub vertex: String,
    pub genus: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AttestationEntry {
    pub vertex: String,
    pub elements: Vec<String>,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocumentError {
    #[error("invalid JSON at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: {message}")]
    Field { path: String, message: String },
}

fn field(path: impl Into<String>, message: impl ToString) -> DocumentError {
    DocumentError::Field {
        path: path.into(),
        message: message.to_string(),
    }
}

impl CurveDocument {
    pub fn from_json(text: &str) -> Result<Self, DocumentError> {
        serde_json::from_str(text).map_err(|e| DocumentError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
        s.push('\n');
        s
    }

    pub fn from_action(action: &CurveAction) -> Self {
        let curve = action.curve();
        let graph = curve.graph();
        let group = action.group();
        let end_id = |e: usize| graph.end(e).id.clone();
        let vertex_id = |v: usize| graph.vertex_id(v).to_string();

        let vertices = (0..graph.vertex_count())
            .map(|v| VertexDoc {
                id: vertex_id(v),
                genus: curve.component(v).genus,
                ordinary: curve.component(v).ordinary,
            })
            .collect();
        let ends = graph
            .ends()
            .iter()
            .map(|end| EndDoc {
                id: end.id.clone(),
                vertex: vertex_id(end.vertex),
                empty: end.empty,
            })
            .collect();
        let involution = (0..graph.end_count())
            .filter(|&e| graph.partner(e) > e)
            .map(|e| [end_id(e), end_id(graph.partner(e))])
            .collect();

        let action_docs = group
            .generators()
            .iter()
            .map(|g| {
                let m = action
                    .graph_action()
                    .morphism(group.index_of(g).expect("generator"));
                GeneratorAction {
                    generator: g.to_string(),
                    vertex_map: m
                        .vertex_map
                        .iter()
                        .enumerate()
                        .map(|(v, &w)| (vertex_id(v), vertex_id(w)))
                        .collect(),
                    end_map: m
                        .end_map
                        .iter()
                        .enumerate()
                        .map(|(e, &f)| (end_id(e), end_id(f)))
                        .collect(),
                }
            })
            .collect();

        let mut node_local = Vec::new();
        for (node, local) in action.node_local() {
            for (&g, entry) in &local.elements {
                if let Some(c) = entry.characters {
                    node_local.push(NodeLocalEntry {
                        node: [end_id(node.a), end_id(node.b)],
                        element: group.element(g).to_string(),
                        swap: entry.swap,
                        char_a: c.a,
                        char_b: c.b,
                        modulus: c.modulus,
                    });
                }
            }
        }

        Self {
            schema_version: SCHEMA_VERSION,
            group: GroupDoc {
                label: group.label().to_string(),
                degree: group.degree(),
                generators: group
                    .generators()
                    .iter()
                    .map(Permutation::to_string)
                    .collect(),
            },
            curve: CurveDoc {
                vertices,
                ends,
                involution,
            },
            action: action_docs,
            node_local,
            quotient_genus: action
                .quotient_genus()
                .iter()
                .map(|(&v, &genus)| QuotientGenusEntry {
                    vertex: vertex_id(v),
                    genus,
                })
                .collect(),
            attestations: action
                .attestations()
                .iter()
                .map(|(&v, a)| AttestationEntry {
                    vertex: vertex_id(v),
                    elements: a
                        .elements
                        .iter()
                        .map(|&g| group.element(g).to_string())
                        .collect(),
                    note: a.note.clone(),
                })
                .collect(),
        }
    }

    /// The quotient curve of `action` as a document with the trivial group.
    /// Components of positive genus declare themselves as their own
    /// quotient, so the result can be fed back in.
    pub fn quotient_of(action: &CurveAction) -> Result<Self, crate::curve::CurveError> {
        let (d, _) = quotient_curve(action)?;
        Ok(Self::from_action(&trivial_action(d)?))
    }

    pub fn to_action(&self) -> Result<CurveAction, DocumentError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(field(
                "schema_version",
                format!(
                    "unsupported version {} (expected {SCHEMA_VERSION})",
                    self.schema_version
                ),
            ));
        }

        let mut generators = Vec::with_capacity(self.group.generators.len());
        for (i, s) in self.group.generators.iter().enumerate() {
            let g = parse_perm(s, self.group.degree)
                .map_err(|m| field(format!("group.generators[{i}]"), m))?;
            generators.push(g);
        }
        let group = FiniteGroup::closure(self.group.degree, &generators)
            .map_err(|e| field("group", e))?
            .with_label(self.group.label.clone());

        let (graph, components) = self.curve.build()?;
        let vertex_index: HashMap<&str, usize> = self
            .curve
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.id.as_str(), i))
            .collect();
        let end_index: HashMap<&str, usize> = self
            .curve
            .ends
            .iter()
            .enumerate()
            .map(|(i, e)| (e.id.as_str(), i))
            .collect();
        let lookup_vertex = |path: &str, id: &str| {
            vertex_index
                .get(id)
                .copied()
                .ok_or_else(|| field(path, format!("unknown vertex {id:?}")))
        };
        let lookup_end = |path: &str, id: &str| {
            end_index
                .get(id)
                .copied()
                .ok_or_else(|| field(path, format!("unknown end {id:?}")))
        };

        if self.action.len() != generators.len() {
            return Err(field(
                "action",
                format!(
                    "{} entries for {} generators",
                    self.action.len(),
                    generators.len()
                ),
            ));
        }
        let mut pairs = Vec::with_capacity(generators.len());
        for (i, (g, doc)) in generators.iter().zip(&self.action).enumerate() {
            let path = format!("action[{i}]");
            let declared = parse_perm(&doc.generator, self.group.degree)
                .map_err(|m| field(format!("{path}.generator"), m))?;
            if &declared != g {
                return Err(field(
                    format!("{path}.generator"),
                    format!("{declared} does not match group generator {g}"),
                ));
            }
            let mut vertex_map = vec![usize::MAX; graph.vertex_count()];
            for (from, to) in &doc.vertex_map {
                let p = format!("{path}.vertex_map.{from}");
                vertex_map[lookup_vertex(&p, from)?] = lookup_vertex(&p, to)?;
            }
            let mut end_map = vec![usize::MAX; graph.end_count()];
            for (from, to) in &doc.end_map {
                let p = format!("{path}.end_map.{from}");
                end_map[lookup_end(&p, from)?] = lookup_end(&p, to)?;
            }
            if let Some(v) = vertex_map.iter().position(|&w| w == usize::MAX) {
                return Err(field(
                    format!("{path}.vertex_map"),
                    format!("no image for {}", graph.vertex_id(v)),
                ));
            }
            if let Some(e) = end_map.iter().position(|&f| f == usize::MAX) {
                return Err(field(
                    format!("{path}.end_map"),
                    format!("no image for {}", graph.end(e).id),
                ));
            }
            pairs.push((
                g.clone(),
                GraphMorphism {
                    vertex_map,
                    end_map,
                },
            ));
        }
        let graph_action = GraphAction::from_generators(&graph, group.clone(), &pairs)
            .map_err(|e| field("action", e))?;
        let curve = SSCurve::new(graph.clone(), components).map_err(|e| field("curve", e))?;
        let mut action = CurveAction::new(curve, graph_action).map_err(|e| field("action", e))?;

        for (i, entry) in self.node_local.iter().enumerate() {
            let path = format!("node_local[{i}]");
            let a = lookup_end(&format!("{path}.node"), &entry.node[0])?;
            let b = lookup_end(&format!("{path}.node"), &entry.node[1])?;
            let node = graph
                .edge_of(a)
                .filter(|n| n.a.min(n.b) == a.min(b) && n.a.max(n.b) == a.max(b))
                .ok_or_else(|| field(format!("{path}.node"), "the two ends do not form a node"))?;
            let g = parse_element(&entry.element, &group, &generators)
                .map_err(|m| field(format!("{path}.element"), m))?;
            let computed_swap = action.graph_action().morphism(g).end_map[node.a] == node.b;
            if computed_swap != entry.swap {
                return Err(field(
                    format!("{path}.swap"),
                    format!(
                        "declared {} but the action gives {computed_swap}",
                        entry.swap
                    ),
                ));
            }
            // characters are recorded against branch a = smaller end index
            let (ca, cb) = if a == node.a {
                (entry.char_a, entry.char_b)
            } else {
                (entry.char_b, entry.char_a)
            };
            let chars = Characters::new(ca, cb, entry.modulus).map_err(|e| field(&path, e))?;
            action
                .set_characters(node, g, chars)
                .map_err(|e| field(format!("{path}.element"), e))?;
        }

        for (i, entry) in self.quotient_genus.iter().enumerate() {
            let path = format!("quotient_genus[{i}]");
            let v = lookup_vertex(&format!("{path}.vertex"), &entry.vertex)?;
            action
                .declare_quotient_genus(v, entry.genus)
                .map_err(|e| field(&path, e))?;
        }

        for (i, entry) in self.attestations.iter().enumerate() {
            let path = format!("attestations[{i}]");
            let v = lookup_vertex(&format!("{path}.vertex"), &entry.vertex)?;
            let mut elements = Vec::with_capacity(entry.elements.len());
            for (j, s) in entry.elements.iter().enumerate() {
                elements.push(
                    parse_element(s, &group, &generators)
                        .map_err(|m| field(format!("{path}.elements[{j}]"), m))?,
                );
            }
            action
                .attest(v, elements, entry.note.clone())
                .map_err(|e| field(&path, e))?;
        }
        Ok(action)
    }
}

impl CurveDoc {
    fn build(&self) -> Result<(EEGraph, Vec<Component>), DocumentError> {
        let mut b = GraphBuilder::new();
        let mut vertex_index = HashMap::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if vertex_index.insert(v.id.as_str(), i).is_some() {
                return Err(field(
                    format!("curve.vertices[{i}].id"),
                    format!("duplicate vertex {:?}", v.id),
                ));
            }
            b.add_vertex(v.id.clone());
        }
        let mut end_index = HashMap::new();
        for (i, e) in self.ends.iter().enumerate() {
            let v = *vertex_index.get(e.vertex.as_str()).ok_or_else(|| {
                field(
                    format!("curve.ends[{i}].vertex"),
                    format!("unknown vertex {:?}", e.vertex),
                )
            })?;
            if end_index.insert(e.id.as_str(), i).is_some() {
                return Err(field(
                    format!("curve.ends[{i}].id"),
                    format!("duplicate end {:?}", e.id),
                ));
            }
            b.add_end(v, e.id.clone(), e.empty);
        }
        let mut seen = vec![false; self.ends.len()];
        for (i, [x, y]) in self.involution.iter().enumerate() {
            let path = format!("curve.involution[{i}]");
            let lookup = |id: &String| {
                end_index
                    .get(id.as_str())
                    .copied()
                    .ok_or_else(|| field(&path, format!("unknown end {id:?}")))
            };
            let (a, c) = (lookup(x)?, lookup(y)?);
            for e in [a, c] {
                if std::mem::replace(&mut seen[e], true) && a != c {
                    return Err(field(
                        &path,
                        format!("end {:?} is paired twice", self.ends[e].id),
                    ));
                }
            }
            b.pair(a, c);
        }
        let graph = b.build().map_err(|e| field("curve", e))?;
        let components = self
            .vertices
            .iter()
            .map(|v| Component::new(v.genus, v.ordinary))
            .collect();
        Ok((graph, components))
    }
}

fn parse_perm(s: &str, degree: usize) -> Result<Permutation, String> {
    let p = Permutation::parse_with_degree(s, degree).map_err(|e| e.to_string())?;
    if p.degree() != degree {
        return Err(format!("{s} moves points beyond the group degree {degree}"));
    }
    Ok(p)
}

/// An element given as a cycle string or as a word like `g0*g1^-1`.
fn parse_element(
    s: &str,
    group: &FiniteGroup,
    generators: &[Permutation],
) -> Result<usize, String> {
    let s = s.trim();
    let element = if s.starts_with('(') {
        parse_perm(s, group.degree())?
    } else if s == "e" {
        Permutation::identity(group.degree())
    } else {
        let mut acc = Permutation::identity(group.degree());
        for factor in s.split('*') {
            let factor = factor.trim();
            let (name, power) = match factor.split_once('^') {
                Some((n, p)) => (
                    n,
                    p.parse::<i64>()
                        .map_err(|_| format!("bad exponent in {factor:?}"))?,
                ),
                None => (factor, 1),
            };
            let k: usize = name
                .strip_prefix('g')
                .and_then(|k| k.parse().ok())
                .ok_or_else(|| format!("expected a generator like g0, got {name:?}"))?;
            let g = generators
                .get(k)
                .ok_or_else(|| format!("there is no generator g{k}"))?;
            acc = acc.compose(&g.pow(power));
        }
        acc
    };
    group
        .index_of(&element)
        .ok_or_else(|| format!("{element} is not in the group"))
}

/// `curve` with the trivial group, declaring each component its own
/// quotient.
pub fn trivial_action(curve: SSCurve) -> Result<CurveAction, crate::curve::CurveError> {
    let group = FiniteGroup::trivial(1);
    let graph_action = GraphAction::trivial(curve.graph(), group);
    let genera: Vec<u32> = curve.components().iter().map(|c| c.genus).collect();
    let mut action = CurveAction::new(curve, graph_action)?;
    for (v, genus) in genera.into_iter().enumerate() {
        if genus > 0 {
            action.declare_quotient_genus(v, genus)?;
        }
    }
    Ok(action)
}
