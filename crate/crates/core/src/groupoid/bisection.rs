use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{FiniteGroupoid, GroupoidError};
use crate::algebra::FiniteInverseSemigroup;
use crate::bits::BitSet;

/// Hard cap on search nodes visited by [`enumerate_bisections`].
pub const DEFAULT_MAX_CANDIDATES: usize = 1 << 20;

/// A set of arrows on which both `d` and `r` are injective.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bisection {
    arrows: BitSet,
}

impl Bisection {
    pub fn new(g: &FiniteGroupoid, arrows: BitSet) -> Result<Self, GroupoidError> {
        assert_eq!(arrows.capacity(), g.len());
        let mut sources = BitSet::new(g.len());
        let mut ranges = BitSet::new(g.len());
        for a in arrows.iter() {
            if sources.contains(g.source(a)) {
                return Err(GroupoidError::NotABisection("source map is not injective"));
            }
            if ranges.contains(g.range(a)) {
                return Err(GroupoidError::NotABisection("range map is not injective"));
            }
            sources.insert(g.source(a));
            ranges.insert(g.range(a));
        }
        Ok(Bisection { arrows })
    }

    pub fn empty(g: &FiniteGroupoid) -> Self {
        Bisection { arrows: BitSet::new(g.len()) }
    }

    pub fn singleton(g: &FiniteGroupoid, a: usize) -> Self {
        Bisection { arrows: BitSet::from_indices(g.len(), [a]) }
    }

    /// A set of units; every such set is a bisection.
    pub fn of_units(g: &FiniteGroupoid, units: impl IntoIterator<Item = usize>) -> Self {
        let arrows = BitSet::from_indices(g.len(), units);
        assert!(arrows.iter().all(|u| g.is_unit(u)), "not a set of units");
        Bisection { arrows }
    }

    pub fn arrows(&self) -> &BitSet {
        &self.arrows
    }

    pub fn contains(&self, a: usize) -> bool {
        self.arrows.contains(a)
    }

    pub fn len(&self) -> usize {
        self.arrows.count()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `d(S)` as a set of units.
    pub fn source_set(&self, g: &FiniteGroupoid) -> BitSet {
        BitSet::from_indices(g.len(), self.arrows.iter().map(|a| g.source(a)))
    }

    /// `r(S)` as a set of units.
    pub fn range_set(&self, g: &FiniteGroupoid) -> BitSet {
        BitSet::from_indices(g.len(), self.arrows.iter().map(|a| g.range(a)))
    }

    pub fn is_unit_set(&self, g: &FiniteGroupoid) -> bool {
        self.arrows.iter().all(|a| g.is_unit(a))
    }

    pub fn describe(&self, g: &FiniteGroupoid) -> String {
        let names: Vec<&str> = self.arrows.iter().map(|a| g.name(a)).collect();
        format!("{{{}}}", names.join(","))
    }
}

/// `ST = {στ : σ ∈ S, τ ∈ T, d(σ) = r(τ)}`.
pub fn slice_product(g: &FiniteGroupoid, s: &Bisection, t: &Bisection) -> Bisection {
    let mut arrows = BitSet::new(g.len());
    for a in s.arrows.iter() {
        for b in t.arrows.iter() {
            if let Some(c) = g.compose(a, b) {
                arrows.insert(c);
            }
        }
    }
    Bisection::new(g, arrows).expect("product of bisections is a bisection")
}

/// `S* = {σ⁻¹ : σ ∈ S}`.
pub fn slice_inverse(g: &FiniteGroupoid, s: &Bisection) -> Bisection {
    let arrows = BitSet::from_indices(g.len(), s.arrows.iter().map(|a| g.inverse(a)));
    Bisection::new(g, arrows).expect("inverse of a bisection is a bisection")
}

/// Every bisection of `g`, in canonical order.
///
/// Branches unit by unit over the source fibre: each unit contributes at
/// most one arrow, and ranges already used are pruned. Fails once more
/// than `max_candidates` search nodes have been visited.
pub fn enumerate_bisections(g: &FiniteGroupoid, max_candidates: usize) -> Result<Vec<Bisection>, GroupoidError> {
    let fibres: Vec<Vec<usize>> = g.units().map(|u| (0..g.len()).filter(|&a| g.source(a) == u).collect()).collect();
    let mut found = Vec::new();
    let mut visited = 0usize;
    let mut current = BitSet::new(g.len());
    let mut used_ranges = BitSet::new(g.len());
    walk_fibres(g, &fibres, 0, &mut current, &mut used_ranges, &mut found, &mut visited, max_candidates)?;
    found.sort();
    Ok(found)
}

#[allow(clippy::too_many_arguments)]
fn walk_fibres(
    g: &FiniteGroupoid,
    fibres: &[Vec<usize>],
    depth: usize,
    current: &mut BitSet,
    used_ranges: &mut BitSet,
    found: &mut Vec<Bisection>,
    visited: &mut usize,
    bound: usize,
) -> Result<(), GroupoidError> {
    *visited += 1;
    if *visited > bound {
        return Err(GroupoidError::BoundExceeded { bound });
    }
    if depth == fibres.len() {
        found.push(Bisection { arrows: current.clone() });
        return Ok(());
    }
    walk_fibres(g, fibres, depth + 1, current, used_ranges, found, visited, bound)?;
    for &a in &fibres[depth] {
        let r = g.range(a);
        if used_ranges.contains(r) {
            continue;
        }
        current.insert(a);
        used_ranges.insert(r);
        walk_fibres(g, fibres, depth + 1, current, used_ranges, found, visited, bound)?;
        current.remove(a);
        used_ranges.remove(r);
    }
    Ok(())
}

/// `{∅} ∪ {{γ} : γ an arrow}`, in canonical order.
pub fn singleton_semigroup(g: &FiniteGroupoid) -> Vec<Bisection> {
    let mut all: Vec<Bisection> = std::iter::once(Bisection::empty(g))
        .chain((0..g.len()).map(|a| Bisection::singleton(g, a)))
        .collect();
    all.sort();
    all
}

/// Whether `collection` is a basis for the (discrete) topology of `g`.
///
/// In a discrete space `{γ}` must be a union of members contained in it,
/// which happens exactly when `{γ}` itself is a member.
pub fn is_basis(g: &FiniteGroupoid, collection: &[Bisection]) -> bool {
    (0..g.len()).all(|a| {
        let mut union = BitSet::new(g.len());
        for s in collection.iter().filter(|s| s.arrows.is_subset(&Bisection::singleton(g, a).arrows)) {
            union.union_with(&s.arrows);
        }
        union.contains(a)
    })
}

/// `λ_S(x) = r(γ)` for the unique `γ ∈ S` with `d(γ) = x`.
pub fn lambda_action(g: &FiniteGroupoid, s: &Bisection, x: usize) -> Result<usize, GroupoidError> {
    s.arrows
        .iter()
        .find(|&a| g.source(a) == x)
        .map(|a| g.range(a))
        .ok_or_else(|| GroupoidError::OutsideDomain(g.name(x).to_string()))
}

/// For every `γ ∈ S`: `d(γ) ∈ S*US` iff `r(γ) ∈ U`.
pub fn check_conjugation_lemma(g: &FiniteGroupoid, s: &Bisection, u: &Bisection) -> bool {
    assert!(u.is_unit_set(g), "U must be a set of units");
    let conj = slice_product(g, &slice_product(g, &slice_inverse(g, s), u), s);
    s.arrows.iter().all(|a| conj.contains(g.source(a)) == u.contains(g.range(a)))
}

/// A collection of bisections closed under product and inverse, with its
/// multiplication table. Element `i` of the table is bisection `i`.
#[derive(Debug, Clone)]
pub struct BisectionSemigroup {
    bisections: Vec<Bisection>,
    semigroup: FiniteInverseSemigroup,
}

impl BisectionSemigroup {
    pub fn new(g: &FiniteGroupoid, bisections: Vec<Bisection>) -> Result<Self, GroupoidError> {
        let index: HashMap<&Bisection, usize> = bisections.iter().enumerate().map(|(i, b)| (b, i)).collect();
        if !index.contains_key(&Bisection::empty(g)) {
            return Err(GroupoidError::NotClosed { left: "∅".into(), right: "∅".into() });
        }
        let n = bisections.len();
        let mut table = Vec::with_capacity(n * n);
        for s in &bisections {
            if !index.contains_key(&slice_inverse(g, s)) {
                return Err(GroupoidError::NotClosed { left: s.describe(g), right: "*".into() });
            }
            for t in &bisections {
                let p = slice_product(g, s, t);
                match index.get(&p) {
                    Some(&k) => table.push(k),
                    None => return Err(GroupoidError::NotClosed { left: s.describe(g), right: t.describe(g) }),
                }
            }
        }
        let names = (0..n).map(|i| format!("b{i}")).collect();
        let semigroup = FiniteInverseSemigroup::from_table(names, table)?;
        Ok(BisectionSemigroup { bisections, semigroup })
    }

    pub fn bisections(&self) -> &[Bisection] {
        &self.bisections
    }

    pub fn bisection(&self, element: usize) -> &Bisection {
        &self.bisections[element]
    }

    pub fn semigroup(&self) -> &FiniteInverseSemigroup {
        &self.semigroup
    }
}

/// The hidden correspondence between opaque table elements and bisections.
/// Only audit code (isomorphism checks) reads it.
#[derive(Debug, Clone)]
pub struct AuditMap {
    bisections: Vec<Bisection>,
}

impl AuditMap {
    pub fn bisection(&self, element: usize) -> &Bisection {
        &self.bisections[element]
    }

    pub fn len(&self) -> usize {
        self.bisections.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bisections.is_empty()
    }
}

/// A multiplication table with all geometric data erased, plus the audit map.
#[derive(Debug, Clone)]
pub struct AbstractSemigroup {
    pub semigroup: FiniteInverseSemigroup,
    pub audit: AuditMap,
}

/// Renames the elements of `collection` to `s0, s1, ...` in an order
/// shuffled by `seed`, keeping only the multiplication table.
pub fn abstract_table(g: &FiniteGroupoid, collection: &[Bisection], seed: u64) -> Result<AbstractSemigroup, GroupoidError> {
    let concrete = BisectionSemigroup::new(g, collection.to_vec())?;
    let n = collection.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    // order[new] = old
    let mut position = vec![0; n];
    for (new, &old) in order.iter().enumerate() {
        position[old] = new;
    }
    let table = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .map(|(a, b)| position[concrete.semigroup.mul(order[a], order[b])])
        .collect();
    let names = (0..n).map(|i| format!("s{i}")).collect();
    let semigroup = FiniteInverseSemigroup::from_table(names, table)?;
    let bisections = order.iter().map(|&old| collection[old].clone()).collect();
    Ok(AbstractSemigroup { semigroup, audit: AuditMap { bisections } })
}
