//! Ready-made curves with group actions that satisfy every hypothesis of
//! the smoothing theorem.
//!
//! All builders create vertices and ends in a fixed order, so two builds
//! with the same parameters are identical.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::curve::{Characters, Component, CurveAction, CurveError, SSCurve};
use crate::graph::{
    fixtures, EEGraph, EndIdx, GraphAction, GraphBuilder, GraphError, GraphMorphism,
};
use crate::group::{FiniteGroup, GroupError};
use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GalleryError {
    #[error("{0}")]
    BadParameter(String),
    #[error("{0} is not an element of the group")]
    NotInGroup(String),
    #[error("h1 = {0} must have order 2")]
    NotAnInvolution(String),
    #[error("h2 = {0} must have order greater than 2")]
    OrderTooSmall(String),
    #[error(
        "h1 and h2 generate a subgroup of order {generated}, not the whole group of order {order}"
    )]
    DoesNotGenerate { generated: usize, order: usize },
    #[error("the group must be abelian: {0}")]
    NotAbelian(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Curve(#[from] CurveError),
}

/// Shape of a build, for pinning in tests.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expected {
    pub group_order: usize,
    pub genus_total: u64,
    pub quotient_vertices: usize,
    pub quotient_edges: usize,
    pub genus_base: u64,
}

#[derive(Debug, Clone)]
pub struct GalleryEntry {
    pub name: String,
    pub parameters: BTreeMap<String, String>,
    pub action: CurveAction,
    pub expected: Expected,
}

fn entry(
    name: &str,
    parameters: &[(&str, String)],
    action: CurveAction,
    expected: Expected,
) -> GalleryEntry {
    GalleryEntry {
        name: name.to_string(),
        parameters: parameters
            .iter()
            .map(|(k, v)| (k.to_string(), v.clone()))
            .collect(),
        action,
        expected,
    }
}

/// Standard instances of every builder, the ones used throughout the tests.
pub fn catalogue() -> Vec<GalleryEntry> {
    let shape =
        |group_order, genus_total, quotient_vertices, quotient_edges, genus_base| Expected {
            group_order,
            genus_total,
            quotient_vertices,
            quotient_edges,
            genus_base,
        };
    let mut out = vec![
        entry("triangle-c3", &[], triangle_c3(), shape(3, 1, 1, 1, 1)),
        entry("triangle-s3", &[], triangle_s3(), shape(6, 1, 1, 0, 0)),
        entry(
            "hyperelliptic-base",
            &[],
            hyperelliptic_base(),
            shape(2, 1, 1, 0, 0),
        ),
    ];
    for ell in [2u32, 3, 5] {
        out.push(entry(
            "hyperelliptic-step",
            &[("ell", ell.to_string())],
            hyperelliptic_step(ell).expect("ell >= 2"),
            shape(2, ell as u64, 2, 1, 0),
        ));
    }
    let cayley_cases = [
        ("A4", "(0 1)(2 3)", "(0 1 2)"),
        ("S3", "(0 1)", "(0 1 2)"),
        ("D4", "(1 3)", "(0 1 2 3)"),
        ("C4", "(0 2)(1 3)", "(0 1 2 3)"),
    ];
    for (name, h1, h2) in cayley_cases {
        let group = FiniteGroup::by_name(name).expect("known group");
        let order = group.order();
        let action = cayley_from_strings(&group, h1, h2).expect("valid generators");
        out.push(entry(
            "cayley",
            &[("group", name.into()), ("h1", h1.into()), ("h2", h2.into())],
            action,
            shape(order, order as u64 / 2 + 1, 1, 1, 1),
        ));
    }
    let semidirect_cases = [
        ("C2xC4", "(0 1)", "(2 3 4 5)"),
        ("C2xC3", "(0 1)", "(2 3 4)"),
    ];
    for (name, h1, h2) in semidirect_cases {
        let group = FiniteGroup::by_name(name).expect("known group");
        let order = group.order();
        let action = semidirect_from_strings(&group, h1, h2).expect("valid generators");
        out.push(entry(
            "semidirect",
            &[("group", name.into()), ("h1", h1.into()), ("h2", h2.into())],
            action,
            shape(2 * order, order as u64 / 2 + 1, 1, 0, 0),
        ));
    }
    for n in [3usize, 4, 5, 6] {
        out.push(entry(
            "ngon",
            &[("n", n.to_string())],
            ngon_dihedral(n).expect("n >= 3"),
            shape(2 * n, 1, 1, 0, 0),
        ));
    }
    out.push(entry("petersen", &[], petersen_a5(), shape(60, 6, 1, 0, 0)));
    out
}

fn rational_curve(graph: EEGraph) -> SSCurve {
    SSCurve::rational(graph).expect("gallery graphs are valid and connected")
}

/// Attests every non-identity element of each vertex stabilizer.
fn attest_stabilizers(action: &mut CurveAction, note: &str) {
    let id = action.group().identity_index();
    for v in 0..action.curve().graph().vertex_count() {
        let elements: Vec<usize> = action
            .graph_action()
            .vertex_stabilizer(v)
            .into_iter()
            .filter(|&g| g != id)
            .collect();
        if !elements.is_empty() {
            action
                .attest(v, elements, note)
                .expect("stabilizer elements");
        }
    }
}

fn vertex_permutation_action(graph: &EEGraph, group: FiniteGroup) -> GraphAction {
    let generators: Vec<_> = group
        .generators()
        .iter()
        .map(|s| {
            let m = GraphMorphism::induced_by_vertex_map(graph, s).expect("automorphism");
            (s.clone(), m)
        })
        .collect();
    GraphAction::from_generators(graph, group, &generators).expect("generators act")
}

/// Three lines in a triangle, rotated by `C3`. The quotient is one line
/// with a self-node.
pub fn triangle_c3() -> CurveAction {
    let graph = fixtures::triangle();
    let group = FiniteGroup::cyclic(3).expect("C3");
    let action = vertex_permutation_action(&graph, group);
    CurveAction::new(rational_curve(graph), action).expect("valid action")
}

/// Three lines in a triangle under all of `S3`. The quotient is a line.
pub fn triangle_s3() -> CurveAction {
    let graph = fixtures::triangle();
    let group = FiniteGroup::symmetric(3).expect("S3");
    let action = vertex_permutation_action(&graph, group);
    let mut action = CurveAction::new(rational_curve(graph), action).expect("valid action");
    attest_stabilizers(
        &mut action,
        "a transposition fixing a line exchanges its two nodes",
    );
    action
}

/// Two lines meeting in two points, exchanged by an involution that also
/// exchanges the branches at each node. Genus 1, quotient a line.
pub fn hyperelliptic_base() -> CurveAction {
    let mut b = GraphBuilder::new();
    let a = b.add_vertex_with_empty("A");
    let a_p = b.add_end(a, "A:p", false);
    let a_q = b.add_end(a, "A:q", false);
    let bv = b.add_vertex_with_empty("B");
    let b_p = b.add_end(bv, "B:p", false);
    let b_q = b.add_end(bv, "B:q", false);
    b.pair(a_p, b_p).pair(a_q, b_q);
    let graph = b.build().expect("valid");

    let group = FiniteGroup::cyclic(2).expect("C2");
    let sigma = group.generators()[0].clone();
    let end_map: Vec<EndIdx> = (0..graph.end_count())
        .map(|e| {
            let end = graph.end(e);
            let other = 1 - end.vertex;
            let suffix = end.id.split(':').nth(1).unwrap_or("empty");
            graph
                .end_by_id(&format!("{}:{suffix}", graph.vertex_id(other)))
                .expect("mirror end")
        })
        .collect();
    let swap = GraphMorphism {
        vertex_map: vec![1, 0],
        end_map,
    };
    let action = GraphAction::from_generators(&graph, group, &[(sigma, swap)]).expect("involution");
    CurveAction::new(rational_curve(graph), action).expect("valid action")
}

/// One inductive step: a hyperelliptic curve `H` of genus `ell − 1` meets
/// an elliptic curve `E` in a single point which is a ramification point
/// of both hyperelliptic involutions. The involution acts on each
/// component and fixes the node, with tangent eigenvalues `−1, −1`.
pub fn hyperelliptic_step(ell: u32) -> Result<CurveAction, GalleryError> {
    if ell < 2 {
        return Err(GalleryError::BadParameter(format!(
            "ell must be at least 2, got {ell}"
        )));
    }
    let mut b = GraphBuilder::new();
    let h = b.add_vertex_with_empty("H");
    let hp = b.add_end(h, "H:P", false);
    let e = b.add_vertex_with_empty("E");
    let ep = b.add_end(e, "E:P", false);
    b.pair(hp, ep);
    let graph = b.build()?;
    let node = graph.edges()[0];
    let curve = SSCurve::new(
        graph.clone(),
        vec![Component::new(ell - 1, true), Component::new(1, true)],
    )?;

    let group = FiniteGroup::cyclic(2)?;
    let id = group.identity_index();
    let sigma = 1 - id;
    let mut action = CurveAction::new(curve, GraphAction::trivial(&graph, group))?;
    action.set_characters(node, id, Characters::new(0, 0, 2)?)?;
    action.set_characters(node, sigma, Characters::new(1, 1, 2)?)?;
    for v in [h, e] {
        action.declare_quotient_genus(v, 0)?;
        action.attest(
            v,
            [sigma],
            "the hyperelliptic involution of the component, whose quotient is a line",
        )?;
    }
    Ok(action)
}

/// A `C2`-cover of a line by a nodal curve of arithmetic genus `genus`,
/// with ordinary components.
pub fn hyperelliptic(genus: u32) -> Result<CurveAction, GalleryError> {
    match genus {
        0 => Err(GalleryError::BadParameter(
            "genus must be at least 1".into(),
        )),
        1 => Ok(hyperelliptic_base()),
        g => hyperelliptic_step(g),
    }
}

fn parse_element(group: &FiniteGroup, s: &str) -> Result<Permutation, GalleryError> {
    let p = Permutation::parse_with_degree(s, group.degree())
        .map_err(|e| GalleryError::BadParameter(format!("cannot parse {s:?}: {e}")))?;
    if p.degree() != group.degree() || !group.contains(&p) {
        return Err(GalleryError::NotInGroup(s.to_string()));
    }
    Ok(p)
}

pub fn cayley_from_strings(
    group: &FiniteGroup,
    h1: &str,
    h2: &str,
) -> Result<CurveAction, GalleryError> {
    cayley_two_generator(
        group,
        &parse_element(group, h1)?,
        &parse_element(group, h2)?,
    )
}

pub fn semidirect_from_strings(
    group: &FiniteGroup,
    h1: &str,
    h2: &str,
) -> Result<CurveAction, GalleryError> {
    semidirect_cover(
        group,
        &parse_element(group, h1)?,
        &parse_element(group, h2)?,
    )
}

const LABELS: [&str; 3] = ["h1", "h2", "h2inv"];

/// The Cayley graph of `group` for an involution `h1` and an element `h2`
/// of order at least 3, one line per element. Vertex `g` has ends
/// `h1, h2, h2inv`; `(g, h1)` meets `(g·h1, h1)` and `(g, h2)` meets
/// `(g·h2, h2inv)`.
fn cayley_graph(
    group: &FiniteGroup,
    h1: &Permutation,
    h2: &Permutation,
) -> Result<EEGraph, GalleryError> {
    if !group.contains(h1) {
        return Err(GalleryError::NotInGroup(h1.to_string()));
    }
    if !group.contains(h2) {
        return Err(GalleryError::NotInGroup(h2.to_string()));
    }
    if h1.order() != 2 {
        return Err(GalleryError::NotAnInvolution(h1.to_string()));
    }
    if h2.order() <= 2 {
        return Err(GalleryError::OrderTooSmall(h2.to_string()));
    }
    let generated = FiniteGroup::closure(group.degree(), &[h1.clone(), h2.clone()])?;
    if generated.order() != group.order() {
        return Err(GalleryError::DoesNotGenerate {
            generated: generated.order(),
            order: group.order(),
        });
    }

    let n = group.order();
    let mut b = GraphBuilder::new();
    let mut ends = vec![[0usize; 3]; n];
    for (i, g) in group.elements().iter().enumerate() {
        let id = g.to_string();
        let v = b.add_vertex_with_empty(id.clone());
        for (k, label) in LABELS.iter().enumerate() {
            ends[i][k] = b.add_end(v, format!("{id}:{label}"), false);
        }
    }
    for (i, g) in group.elements().iter().enumerate() {
        let j = group.index_of(&g.compose(h1)).expect("closed");
        if i < j {
            b.pair(ends[i][0], ends[j][0]);
        }
        let k = group.index_of(&g.compose(h2)).expect("closed");
        b.pair(ends[i][1], ends[k][2]);
    }
    Ok(b.build()?)
}

/// End index of `(element, label)` in a graph built by [`cayley_graph`].
fn cayley_end(element: usize, label: usize) -> EndIdx {
    4 * element + 1 + label
}

/// `x ↦ s·x` on vertices, keeping end labels.
fn translation_morphism(group: &FiniteGroup, s: &Permutation) -> GraphMorphism {
    let images = group.left_translation(s);
    let mut end_map = Vec::with_capacity(4 * group.order());
    for x in 0..group.order() {
        let y = images.apply(x);
        end_map.push(4 * y);
        for l in 0..3 {
            end_map.push(cayley_end(y, l));
        }
    }
    GraphMorphism {
        vertex_map: images.images().to_vec(),
        end_map,
    }
}

/// Left translation action of `group` on its Cayley curve.
pub fn cayley_two_generator(
    group: &FiniteGroup,
    h1: &Permutation,
    h2: &Permutation,
) -> Result<CurveAction, GalleryError> {
    let graph = cayley_graph(group, h1, h2)?;
    let generators: Vec<_> = group
        .generators()
        .iter()
        .map(|s| (s.clone(), translation_morphism(group, s)))
        .collect();
    let action = GraphAction::from_generators(&graph, group.clone(), &generators)?;
    Ok(CurveAction::new(rational_curve(graph), action)?)
}

/// The Cayley curve of an abelian group with the larger group
/// `G ⋊ C2` acting by translations and by `x ↦ x⁻¹`.
pub fn semidirect_cover(
    group: &FiniteGroup,
    h1: &Permutation,
    h2: &Permutation,
) -> Result<CurveAction, GalleryError> {
    if !group.is_abelian() {
        return Err(GalleryError::NotAbelian(format!(
            "{} is not abelian",
            group.label()
        )));
    }
    let graph = cayley_graph(group, h1, h2)?;
    let big = group.semidirect_with_inversion()?;
    let mut generators: Vec<_> = group
        .generators()
        .iter()
        .map(|s| (group.left_translation(s), translation_morphism(group, s)))
        .collect();

    // x ↦ x⁻¹ keeps h1 ends and exchanges h2 with h2inv, since
    // (x·h2)⁻¹ = x⁻¹·h2⁻¹ in an abelian group.
    let inversion = group.inversion_map();
    let mut end_map = Vec::with_capacity(graph.end_count());
    for x in 0..group.order() {
        let y = inversion.apply(x);
        end_map.extend([4 * y, cayley_end(y, 0), cayley_end(y, 2), cayley_end(y, 1)]);
    }
    generators.push((
        inversion.clone(),
        GraphMorphism {
            vertex_map: inversion.images().to_vec(),
            end_map,
        },
    ));
    let action = GraphAction::from_generators(&graph, big, &generators)?;
    let mut action = CurveAction::new(rational_curve(graph), action)?;
    attest_stabilizers(
        &mut action,
        "the element y -> x^2 * y^-1 fixing x exchanges its h2 and h2inv ends",
    );
    Ok(action)
}

/// `n` lines in a closed chain, the `∞` of each glued to the `0` of the
/// next, with the dihedral group of the `n`-gon acting. Rotations shift
/// the chain; reflections reverse it and exchange `0` and `∞` on each line.
pub fn ngon_dihedral(n: usize) -> Result<CurveAction, GalleryError> {
    if n < 3 {
        return Err(GalleryError::BadParameter(format!(
            "n must be at least 3, got {n}"
        )));
    }
    let mut b = GraphBuilder::new();
    for i in 0..n {
        let v = b.add_vertex_with_empty(format!("v{i}"));
        b.add_end(v, format!("v{i}:zero"), false);
        b.add_end(v, format!("v{i}:inf"), false);
    }
    // ends of v_i: 3i empty, 3i + 1 zero, 3i + 2 inf
    for i in 0..n {
        b.pair(3 * i + 2, 3 * ((i + 1) % n) + 1);
    }
    let graph = b.build()?;
    let group = FiniteGroup::dihedral(n)?;
    let generators: Vec<_> = group
        .generators()
        .iter()
        .map(|g| {
            let reflection = (g.apply(1) + n - g.apply(0)) % n != 1;
            let mut end_map = Vec::with_capacity(3 * n);
            for i in 0..n {
                let j = g.apply(i);
                end_map.push(3 * j);
                if reflection {
                    end_map.extend([3 * j + 2, 3 * j + 1]);
                } else {
                    end_map.extend([3 * j + 1, 3 * j + 2]);
                }
            }
            (
                g.clone(),
                GraphMorphism {
                    vertex_map: g.images().to_vec(),
                    end_map,
                },
            )
        })
        .collect();
    let action = GraphAction::from_generators(&graph, group, &generators)?;
    let mut action = CurveAction::new(rational_curve(graph), action)?;
    attest_stabilizers(
        &mut action,
        "a reflection fixing a line exchanges its points 0 and infinity",
    );
    Ok(action)
}

/// Lines indexed by the 2-subsets of `{0, …, 4}`, meeting when disjoint
/// (the Petersen graph), with `A5` permuting the subsets.
pub fn petersen_a5() -> CurveAction {
    let subsets: Vec<(usize, usize)> = (0..5)
        .flat_map(|a| (a + 1..5).map(move |b| (a, b)))
        .collect();
    let index = |a: usize, b: usize| {
        subsets
            .iter()
            .position(|&s| s == (a.min(b), a.max(b)))
            .expect("2-subset")
    };
    let name = |(a, b): (usize, usize)| format!("{a}{b}");

    let mut b = GraphBuilder::new();
    let mut end_of = BTreeMap::new();
    for (i, &s) in subsets.iter().enumerate() {
        let v = b.add_vertex_with_empty(name(s));
        for (j, &t) in subsets.iter().enumerate() {
            if s.0 != t.0 && s.0 != t.1 && s.1 != t.0 && s.1 != t.1 {
                end_of.insert(
                    (i, j),
                    b.add_end(v, format!("{}>{}", name(s), name(t)), false),
                );
            }
        }
    }
    for (&(i, j), &e) in &end_of {
        if i < j {
            b.pair(e, end_of[&(j, i)]);
        }
    }
    let graph = b.build().expect("Petersen graph is valid");

    let a5 = FiniteGroup::alternating(5).expect("A5");
    let induced = |g: &Permutation| {
        let images = subsets
            .iter()
            .map(|&(x, y)| index(g.apply(x), g.apply(y)))
            .collect();
        Permutation::from_images(images).expect("bijection on subsets")
    };
    let generators: Vec<Permutation> = a5.generators().iter().map(induced).collect();
    let group = FiniteGroup::closure(subsets.len(), &generators)
        .expect("A5 on pairs")
        .with_label("A5");
    let pairs: Vec<_> = generators
        .iter()
        .map(|g| {
            let m = GraphMorphism::induced_by_vertex_map(&graph, g).expect("automorphism");
            (g.clone(), m)
        })
        .collect();
    let action = GraphAction::from_generators(&graph, group, &pairs).expect("A5 acts");
    let mut action = CurveAction::new(rational_curve(graph), action).expect("valid action");
    attest_stabilizers(
        &mut action,
        "a nontrivial element fixing a pair permutes the three lines meeting it",
    );
    action
}
