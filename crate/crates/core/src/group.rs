//! Finite permutation groups stored as explicit closed element sets.
//!
//! Every group in this crate is small enough to enumerate, so a group is
//! just its sorted element list plus the generators it was built from.
//! Stabilizers, orbits and structural predicates are all brute force over
//! that list.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::perm::{gcd, PermError, Permutation};

/// Default bound on the number of elements a closure may produce.
pub const DEFAULT_ELEMENT_CAP: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("generator {index} has degree {found}, expected {expected}")]
    DegreeMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("closure exceeded the cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("group is not abelian: {0} and {1} do not commute")]
    NotAbelian(Permutation, Permutation),
    #[error(
        "unknown group name {0:?} (expected C<n>, D<n>, S<n>, A<n> or products joined by 'x')"
    )]
    UnknownName(String),
    #[error("elements do not form a group: {0}")]
    NotClosed(String),
    #[error(transparent)]
    Perm(#[from] PermError),
}

#[derive(Debug, Clone)]
pub struct FiniteGroup {
    degree: usize,
    label: String,
    elements: Vec<Permutation>,
    generators: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
}

/// Groups compare by degree and element set; labels and generating sets
/// are presentation details.
impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}

impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// Smallest group of permutations of `degree` points containing
    /// `generators`, with the default element cap.
    pub fn closure(degree: usize, generators: &[Permutation]) -> Result<Self, GroupError> {
        Self::closure_with_cap(degree, generators, DEFAULT_ELEMENT_CAP)
    }

    pub fn closure_with_cap(
        degree: usize,
        generators: &[Permutation],
        cap: usize,
    ) -> Result<Self, GroupError> {
        for (index, g) in generators.iter().enumerate() {
            if g.degree() != degree {
                return Err(GroupError::DegreeMismatch {
                    index,
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let identity = Permutation::identity(degree);
        let mut seen: HashSet<Permutation> = HashSet::new();
        seen.insert(identity.clone());
        let mut queue = VecDeque::from([identity]);
        while let Some(x) = queue.pop_front() {
            for s in generators {
                let y = s.compose(&x);
                if !seen.contains(&y) {
                    if seen.len() >= cap {
                        return Err(GroupError::CapExceeded { cap });
                    }
                    seen.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }
        let mut elements: Vec<Permutation> = seen.into_iter().collect();
        elements.sort();
        Ok(Self::from_sorted(degree, elements, generators.to_vec()))
    }

    /// Builds a group from an element list, checking identity, closure
    /// under composition and inverses. The generating set is the element
    /// list itself minus the identity.
    pub fn from_elements(degree: usize, elements: Vec<Permutation>) -> Result<Self, GroupError> {
        let mut elements = elements;
        elements.sort();
        elements.dedup();
        if let Some(bad) = elements.iter().find(|g| g.degree() != degree) {
            return Err(GroupError::DegreeMismatch {
                index: 0,
                expected: degree,
                found: bad.degree(),
            });
        }
        let generators: Vec<Permutation> = elements
            .iter()
            .filter(|g| !g.is_identity())
            .cloned()
            .collect();
        let group = Self::from_sorted(degree, elements, generators);
        if !group.contains(&Permutation::identity(degree)) {
            return Err(GroupError::NotClosed("identity missing".into()));
        }
        for a in &group.elements {
            if !group.contains(&a.inverse()) {
                return Err(GroupError::NotClosed(format!("inverse of {a} missing")));
            }
            for b in &group.elements {
                if !group.contains(&a.compose(b)) {
                    return Err(GroupError::NotClosed(format!("{a}·{b} missing")));
                }
            }
        }
        Ok(group)
    }

    fn from_sorted(
        degree: usize,
        elements: Vec<Permutation>,
        generators: Vec<Permutation>,
    ) -> Self {
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, g)| (g.clone(), i))
            .collect();
        Self {
            degree,
            label: "G".to_string(),
            elements,
            generators,
            index,
        }
    }

    pub fn trivial(degree: usize) -> Self {
        Self::from_sorted(degree, vec![Permutation::identity(degree)], Vec::new()).with_label("C1")
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Elements in sorted (image-sequence) order; indices into this slice
    /// are the element indices used throughout the crate.
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, index: usize) -> &Permutation {
        &self.elements[index]
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn index_of(&self, g: &Permutation) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.index.contains_key(g)
    }

    pub fn identity_index(&self) -> usize {
        self.index[&Permutation::identity(self.degree)]
    }

    /// Index of `elements[a] ∘ elements[b]`.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.index[&self.elements[a].compose(&self.elements[b])]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.index[&self.elements[a].inverse()]
    }

    pub fn element_order(&self, a: usize) -> usize {
        self.elements[a].order()
    }

    /// A generating element when the group is cyclic.
    pub fn cyclic_generator(&self) -> Option<&Permutation> {
        self.elements.iter().find(|g| g.order() == self.order())
    }

    pub fn is_cyclic(&self) -> bool {
        self.cyclic_generator().is_some()
    }

    pub fn is_abelian(&self) -> bool {
        self.non_commuting_pair().is_none()
    }

    fn non_commuting_pair(&self) -> Option<(&Permutation, &Permutation)> {
        let gens = &self.generators;
        gens.iter().enumerate().find_map(|(i, a)| {
            gens[i + 1..]
                .iter()
                .find(|b| !a.commutes_with(b))
                .map(|b| (a, b))
        })
    }

    /// Largest element order.
    pub fn exponent(&self) -> usize {
        self.elements
            .iter()
            .map(Permutation::order)
            .fold(1, |acc, n| acc / gcd(acc, n) * n)
    }

    /// The subgroup of elements selected by `keep`. The selection must be
    /// closed; stabilizers always are.
    pub fn subgroup_where(&self, mut keep: impl FnMut(usize) -> bool) -> Result<Self, GroupError> {
        let elements = (0..self.order())
            .filter(|&i| keep(i))
            .map(|i| self.elements[i].clone())
            .collect();
        Ok(Self::from_elements(self.degree, elements)?.with_label("Stab"))
    }

    /// `G ⋊ C₂` with `C₂` acting by inversion, realized on the element set
    /// of `G` (point `i` is `elements()[i]`). Generated by the left
    /// translations by the generators of `G` together with `x ↦ x⁻¹`.
    /// When every element of `G` is an involution the inversion map is the
    /// identity and the result coincides with the regular representation.
    pub fn semidirect_with_inversion(&self) -> Result<Self, GroupError> {
        if let Some((a, b)) = self.non_commuting_pair() {
            return Err(GroupError::NotAbelian(a.clone(), b.clone()));
        }
        let mut generators: Vec<Permutation> = self
            .generators
            .iter()
            .map(|g| self.left_translation(g))
            .collect();
        let inversion = self.inversion_map();
        if !inversion.is_identity() {
            generators.push(inversion);
        }
        Ok(Self::closure(self.order(), &generators)?.with_label(format!("{}:C2", self.label)))
    }

    /// `x ↦ g·x` as a permutation of element indices.
    pub fn left_translation(&self, g: &Permutation) -> Permutation {
        let images = self
            .elements
            .iter()
            .map(|x| self.index[&g.compose(x)])
            .collect();
        Permutation::from_images(images).expect("left translation is a bijection")
    }

    /// `x ↦ x⁻¹` as a permutation of element indices.
    pub fn inversion_map(&self) -> Permutation {
        let images = self
            .elements
            .iter()
            .map(|x| self.index[&x.inverse()])
            .collect();
        Permutation::from_images(images).expect("inversion is a bijection")
    }

    /// External direct product acting on the disjoint union of the two
    /// ground sets (`self` first).
    pub fn direct_product(&self, other: &Self) -> Result<Self, GroupError> {
        let degree = self.degree + other.degree;
        let shift = |g: &Permutation, offset: usize| {
            let mut images: Vec<usize> = (0..degree).collect();
            for (i, &j) in g.images().iter().enumerate() {
                images[i + offset] = j + offset;
            }
            Permutation::from_images(images).expect("shifted permutation")
        };
        let generators: Vec<Permutation> = self
            .generators
            .iter()
            .map(|g| shift(g, 0))
            .chain(other.generators.iter().map(|g| shift(g, self.degree)))
            .collect();
        Ok(Self::closure(degree, &generators)?
            .with_label(format!("{}x{}", self.label, other.label)))
    }

    pub fn cyclic(n: usize) -> Result<Self, GroupError> {
        let n = n.max(1);
        let gens = if n == 1 {
            Vec::new()
        } else {
            vec![Permutation::from_cycles(n, &[(0..n).collect()])?]
        };
        Ok(Self::closure(n, &gens)?.with_label(format!("C{n}")))
    }

    /// Symmetries of the regular `n`-gon on its `n` vertices, generated by
    /// the rotation `i ↦ i + 1` and the reflection `i ↦ −i`. The degenerate
    /// cases use faithful small representations: `D1 ≅ C2` on two points,
    /// `D2 ≅ C2 × C2` on four.
    pub fn dihedral(n: usize) -> Result<Self, GroupError> {
        let gens = match n {
            0 | 1 => vec![Permutation::from_cycles(2, &[vec![0, 1]])?],
            2 => vec![
                Permutation::from_cycles(4, &[vec![0, 1], vec![2, 3]])?,
                Permutation::from_cycles(4, &[vec![0, 2], vec![1, 3]])?,
            ],
            _ => vec![
                Permutation::from_cycles(n, &[(0..n).collect()])?,
                Permutation::from_images((0..n).map(|i| (n - i) % n).collect())?,
            ],
        };
        let degree = gens[0].degree();
        Ok(Self::closure(degree, &gens)?.with_label(format!("D{}", n.max(1))))
    }

    pub fn symmetric(n: usize) -> Result<Self, GroupError> {
        let n = n.max(1);
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Permutation::from_cycles(n, &[vec![0, 1]])?);
        }
        if n >= 3 {
            gens.push(Permutation::from_cycles(n, &[(0..n).collect()])?);
        }
        Ok(Self::closure(n, &gens)?.with_label(format!("S{n}")))
    }

    /// Even permutations of `n` points, generated by `(0 1 2)` together
    /// with the long cycle `(0 .. n−1)` for odd `n` or `(1 .. n−1)` for
    /// even `n`.
    pub fn alternating(n: usize) -> Result<Self, GroupError> {
        let n = n.max(1);
        let mut gens = Vec::new();
        if n >= 3 {
            gens.push(Permutation::from_cycles(n, &[vec![0, 1, 2]])?);
        }
        if n >= 4 {
            let long: Vec<usize> = if n % 2 == 1 {
                (0..n).collect()
            } else {
                (1..n).collect()
            };
            gens.push(Permutation::from_cycles(n, &[long])?);
        }
        Ok(Self::closure(n, &gens)?.with_label(format!("A{n}")))
    }

    /// Parses `C<n>`, `D<n>`, `S<n>`, `A<n>` and direct products such as
    /// `C2xC4`.
    pub fn by_name(name: &str) -> Result<Self, GroupError> {
        let unknown = || GroupError::UnknownName(name.to_string());
        let mut factors = name.split(['x', '×']).map(str::trim);
        let first = factors.next().ok_or_else(unknown)?;
        let mut group = Self::single_by_name(first).ok_or_else(unknown)??;
        for factor in factors {
            let next = Self::single_by_name(factor).ok_or_else(unknown)??;
            group = group.direct_product(&next)?;
        }
        Ok(group)
    }

    fn single_by_name(name: &str) -> Option<Result<Self, GroupError>> {
        let mut chars = name.chars();
        let kind = chars.next()?.to_ascii_uppercase();
        let n: usize = chars.as_str().parse().ok()?;
        Some(match kind {
            'C' => Self::cyclic(n),
            'D' => Self::dihedral(n),
            'S' => Self::symmetric(n),
            'A' => Self::alternating(n),
            _ => return None,
        })
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (order {}) = <", self.label, self.order())?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(">")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn p(s: &str, degree: usize) -> Permutation {
        Permutation::parse_with_degree(s, degree).unwrap()
    }

    /// Naive fixpoint: multiply everything by everything until nothing new
    /// appears. Independent of the breadth-first closure.
    fn brute_force_order(degree: usize, gens: &[Permutation]) -> usize {
        let mut set: BTreeSet<Permutation> = gens.iter().cloned().collect();
        set.insert(Permutation::identity(degree));
        loop {
            let current: Vec<_> = set.iter().cloned().collect();
            let before = set.len();
            for a in &current {
                for b in &current {
                    set.insert(a.compose(b));
                }
            }
            if set.len() == before {
                return set.len();
            }
        }
    }

    #[test]
    fn closure_examples() {
        assert_eq!(FiniteGroup::closure(3, &[]).unwrap().order(), 1);
        assert_eq!(
            FiniteGroup::closure(2, &[p("(0 1)", 2)]).unwrap().order(),
            2
        );
        let s3 = [p("(0 1 2)", 3), p("(0 1)", 3)];
        assert_eq!(brute_force_order(3, &s3), 6);
        assert_eq!(FiniteGroup::closure(3, &s3).unwrap().order(), 6);
        let a5 = [p("(0 1 2 3 4)", 5), p("(0 1)(2 3)", 5)];
        assert_eq!(brute_force_order(5, &a5), 60);
        assert_eq!(FiniteGroup::closure(5, &a5).unwrap().order(), 60);
    }

    #[test]
    fn closure_errors() {
        assert!(matches!(
            FiniteGroup::closure(3, &[p("(0 1)", 2)]),
            Err(GroupError::DegreeMismatch { .. })
        ));
        assert!(matches!(
            FiniteGroup::closure_with_cap(5, &[p("(0 1 2 3 4)", 5), p("(0 1)", 5)], 100),
            Err(GroupError::CapExceeded { cap: 100 })
        ));
        assert!(matches!(
            FiniteGroup::symmetric(8),
            Err(GroupError::CapExceeded { .. })
        ));
    }

    #[test]
    fn cyclicity() {
        let trivial = FiniteGroup::trivial(1);
        assert!(trivial.is_cyclic());
        let c3 = FiniteGroup::closure(3, &[p("(0 1 2)", 3)]).unwrap();
        assert_eq!(c3.cyclic_generator().unwrap().order(), 3);
        let klein = FiniteGroup::closure(4, &[p("(0 1)", 4), p("(2 3)", 4)]).unwrap();
        assert_eq!(klein.order(), 4);
        assert!(klein.elements().iter().all(|g| g.order() <= 2));
        assert!(!klein.is_cyclic());
    }

    #[test]
    fn abelian() {
        assert!(FiniteGroup::cyclic(2).unwrap().is_abelian());
        let s3 = FiniteGroup::closure(3, &[p("(0 1 2)", 3), p("(0 1)", 3)]).unwrap();
        assert!(!s3.is_abelian());
        let c2c4 = FiniteGroup::by_name("C2xC4").unwrap();
        assert_eq!(c2c4.degree(), 6);
        assert_eq!(c2c4.order(), 8);
        assert!(c2c4.is_abelian());
        // exhaustive commutator check agrees with the generator test
        for a in s3.elements() {
            for b in s3.elements() {
                if !a.commutes_with(b) {
                    return;
                }
            }
        }
        panic!("S3 should have a non-commuting pair");
    }

    #[test]
    fn semidirect_examples() {
        let c1 = FiniteGroup::trivial(1);
        assert_eq!(c1.semidirect_with_inversion().unwrap().order(), 1);
        let c3 = FiniteGroup::cyclic(3).unwrap();
        let h = c3.semidirect_with_inversion().unwrap();
        assert_eq!(brute_force_order(3, h.generators()), 6);
        assert_eq!(h.order(), 6);
        assert!(!h.is_abelian());
        let c2c4 = FiniteGroup::by_name("C2xC4").unwrap();
        let h = c2c4.semidirect_with_inversion().unwrap();
        assert_eq!(brute_force_order(8, h.generators()), 16);
        assert_eq!(h.order(), 16);
        let s3 = FiniteGroup::symmetric(3).unwrap();
        assert!(matches!(
            s3.semidirect_with_inversion(),
            Err(GroupError::NotAbelian(..))
        ));
    }

    #[test]
    fn semidirect_contains_translations_with_index_two() {
        let g = FiniteGroup::by_name("C2xC4").unwrap();
        let h = g.semidirect_with_inversion().unwrap();
        let translations: Vec<_> = g.elements().iter().map(|x| g.left_translation(x)).collect();
        assert!(translations.iter().all(|t| h.contains(t)));
        let sub = FiniteGroup::from_elements(h.degree(), translations).unwrap();
        assert_eq!(h.order(), 2 * sub.order());
    }

    #[test]
    fn standard_orders() {
        assert_eq!(FiniteGroup::cyclic(1).unwrap().order(), 1);
        assert_eq!(FiniteGroup::dihedral(3).unwrap().order(), 6);
        assert_eq!(FiniteGroup::dihedral(2).unwrap().order(), 4);
        assert_eq!(FiniteGroup::dihedral(1).unwrap().order(), 2);
        for n in 3..=12 {
            assert_eq!(FiniteGroup::dihedral(n).unwrap().order(), 2 * n);
        }
        let factorial = |n: usize| (1..=n).product::<usize>();
        for n in 1..=6 {
            assert_eq!(FiniteGroup::symmetric(n).unwrap().order(), factorial(n));
            assert_eq!(
                FiniteGroup::alternating(n).unwrap().order(),
                factorial(n).div_ceil(2).max(1)
            );
        }
        assert_eq!(FiniteGroup::alternating(5).unwrap().order(), 60);
    }

    #[test]
    fn by_name_rejects_garbage() {
        assert!(FiniteGroup::by_name("Q8").is_err());
        assert!(FiniteGroup::by_name("C").is_err());
        assert!(FiniteGroup::by_name("").is_err());
    }

    #[test]
    fn from_elements_detects_non_closure() {
        let set = vec![Permutation::identity(3), p("(0 1 2)", 3)];
        assert!(FiniteGroup::from_elements(3, set).is_err());
    }

    #[test]
    fn equality_ignores_generators() {
        let a = FiniteGroup::closure(3, &[p("(0 1 2)", 3)]).unwrap();
        let b = FiniteGroup::closure(3, &[p("(0 2 1)", 3)]).unwrap();
        assert_eq!(a, b);
    }
}
