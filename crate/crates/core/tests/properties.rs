mod common;

use std::collections::BTreeSet;

use common::{coprime_primes, loop_graph};
use curvecover::certificate::certify;
use curvecover::curve::quotient_curve;
use curvecover::document::CurveDocument;
use curvecover::gallery;
use curvecover::graph::{fixtures, is_isomorphic, quotient, EEGraph, GraphAction, GraphMorphism};
use curvecover::group::FiniteGroup;
use curvecover::perm::Permutation;
use proptest::prelude::*;

fn permutation(degree: usize) -> impl Strategy<Value = Permutation> {
    Just((0..degree).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|images| Permutation::from_images(images).unwrap())
}

fn brute_force(degree: usize, generators: &[Permutation]) -> BTreeSet<Permutation> {
    let mut set: BTreeSet<Permutation> = generators.iter().cloned().collect();
    set.insert(Permutation::identity(degree));
    loop {
        let items: Vec<_> = set.iter().cloned().collect();
        let before = set.len();
        for a in &items {
            for b in &items {
                set.insert(a.compose(b));
            }
        }
        if set.len() == before {
            return set;
        }
    }
}

fn involution_ok(graph: &EEGraph) -> bool {
    graph.is_valid() && (0..graph.end_count()).all(|e| graph.partner(graph.partner(e)) == e)
}

/// Rotation of an `n`-cycle by `k` steps and the group it generates.
fn rotation_action(n: usize, k: usize) -> (EEGraph, GraphAction) {
    let graph = fixtures::cycle(n);
    let images: Vec<usize> = (0..n).map(|i| (i + k) % n).collect();
    let r = Permutation::from_images(images).unwrap();
    let group = FiniteGroup::closure(n, std::slice::from_ref(&r)).unwrap();
    let m = GraphMorphism::induced_by_vertex_map(&graph, &r).unwrap();
    let action = GraphAction::from_generators(&graph, group, &[(r, m)]).unwrap();
    (graph, action)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn closure_matches_brute_force(gens in prop::collection::vec(permutation(5), 1..3)) {
        let group = FiniteGroup::closure(5, &gens).unwrap();
        let brute = brute_force(5, &gens);
        prop_assert_eq!(group.order(), brute.len());
        prop_assert!(group.elements().iter().all(|g| brute.contains(g)));
        for g in 0..group.order() {
            prop_assert_eq!(group.order() % group.element_order(g), 0);
            prop_assert_eq!(group.mul(g, group.inverse(g)), group.identity_index());
        }
    }

    #[test]
    fn rotation_quotients_of_cycles(n in 3usize..24, k in 1usize..24) {
        let (graph, action) = rotation_action(n, k % n);
        let order = action.group().order();
        for v in 0..n {
            prop_assert_eq!(order % action.vertex_orbit(v).len(), 0);
        }
        for e in 0..graph.end_count() {
            prop_assert_eq!(order % action.end_orbit(e).len(), 0);
        }
        let (q, projection) = quotient(&graph, &action).unwrap();
        prop_assert!(involution_ok(&q));
        prop_assert_eq!(q.vertex_count(), n / order);
        prop_assert_eq!(q.betti1(), 1);
        prop_assert!(projection.check(&graph, &q).is_ok());
    }

    #[test]
    fn trivial_quotient_is_the_identity(n in 3usize..16, chords in prop::collection::vec((0usize..16, 0usize..16), 0..6)) {
        let mut edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        edges.extend(chords.into_iter().map(|(a, b)| (a % n, b % n)).filter(|(a, b)| a != b));
        let graph = fixtures::from_adjacency(n, &edges);
        let action = GraphAction::trivial(&graph, FiniteGroup::trivial(1));
        let (q, _) = quotient(&graph, &action).unwrap();
        prop_assert!(involution_ok(&q));
        prop_assert!(is_isomorphic(&q, &graph).unwrap().is_some());
    }

    #[test]
    fn ngon_certificates(n in 3usize..16, which in 0usize..3) {
        let action = gallery::ngon_dihedral(n).unwrap();
        let p = coprime_primes(2 * n, 3)[which];
        let cert = certify(&action, p).unwrap();
        prop_assert_eq!((cert.genus_total, cert.genus_base, cert.rh_budget), (1, 0, 4 * n as i64));
        let (d, _) = quotient_curve(&action).unwrap();
        let (q, _) = quotient(action.curve().graph(), action.graph_action()).unwrap();
        prop_assert!(is_isomorphic(d.graph(), &q).unwrap().is_some());
    }

    #[test]
    fn cyclic_cayley_curves(half in 2usize..16, step in 1usize..32) {
        // C_{2h} with h1 the half turn and h2 any generator of order > 2
        let n = 2 * half;
        let group = FiniteGroup::cyclic(n).unwrap();
        let rotate = |k: usize| Permutation::from_images((0..n).map(|i| (i + k) % n).collect()).unwrap();
        let step = (1..=n).map(|d| (step + d) % n).find(|&s| s != 0 && gcd(s, n) == 1).unwrap();
        let h1 = rotate(half);
        let h2 = rotate(step);
        prop_assume!(h2.order() > 2);
        let action = gallery::cayley_two_generator(&group, &h1, &h2).unwrap();
        prop_assert_eq!(action.curve().arithmetic_genus(), half as u64 + 1);
        let (d, _) = quotient_curve(&action).unwrap();
        prop_assert!(is_isomorphic(d.graph(), &loop_graph()).unwrap().is_some());
        let doc = CurveDocument::from_action(&action);
        prop_assert_eq!(CurveDocument::from_json(&doc.to_json()).unwrap().to_action().unwrap(), action);
    }

    #[test]
    fn hyperelliptic_chain(g in 1u32..40) {
        let action = gallery::hyperelliptic(g).unwrap();
        let cert = certify(&action, coprime_primes(2, 1)[0]).unwrap();
        prop_assert_eq!((cert.genus_total, cert.genus_base), (g as u64, 0));
        prop_assert_eq!(cert.rh_budget, 2 * g as i64 + 2);
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
