//! Groupoid isomorphisms: the canonical one read off an audit map, and an
//! independent search.

use thiserror::Error;

use crate::action::GermGroupoid;
use crate::bits::BitSet;
use crate::groupoid::{AuditMap, FiniteGroupoid};

/// Up to this many arrows, [`brute_force_iso`] tries every bijection of
/// non-unit arrows without propagation.
pub const EXHAUSTIVE_ARROWS: usize = 8;

/// Default arrow bound for [`brute_force_iso`].
pub const DEFAULT_MAX_ARROWS: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IsoError {
    #[error("germ {germ} is sent to different arrows by class members")]
    NotWellDefined { germ: String },
    #[error("map is not a bijection: {0}")]
    NotBijective(String),
    #[error("map is not a functor: {0}")]
    NotFunctorial(String),
    #[error("groupoids are not isomorphic")]
    NotIsomorphic,
    #[error("groupoid has {arrows} arrows, above the search bound {bound}")]
    BoundExceeded { arrows: usize, bound: usize },
}

/// An arrow bijection `from → to`; `map[a]` is the image of arrow `a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupoidIsomorphism {
    map: Vec<usize>,
}

impl GroupoidIsomorphism {
    /// Wraps `map` after checking every isomorphism invariant.
    pub fn new(from: &FiniteGroupoid, to: &FiniteGroupoid, map: Vec<usize>) -> Result<Self, IsoError> {
        let iso = GroupoidIsomorphism { map };
        iso.verify(from, to)?;
        Ok(iso)
    }

    pub fn apply(&self, arrow: usize) -> usize {
        self.map[arrow]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn verify(&self, from: &FiniteGroupoid, to: &FiniteGroupoid) -> Result<(), IsoError> {
        let map = &self.map;
        if map.len() != from.len() || from.len() != to.len() {
            return Err(IsoError::NotBijective(format!("{} arrows against {}", from.len(), to.len())));
        }
        let mut hit = BitSet::new(to.len());
        for (a, &b) in map.iter().enumerate() {
            if b >= to.len() || hit.contains(b) {
                return Err(IsoError::NotBijective(format!("{} has a clashing image", from.name(a))));
            }
            hit.insert(b);
        }
        let name = |a: usize| from.name(a).to_string();
        for a in 0..from.len() {
            let b = map[a];
            if from.is_unit(a) != to.is_unit(b) {
                return Err(IsoError::NotFunctorial(format!("{} changes unit status", name(a))));
            }
            if to.source(b) != map[from.source(a)] || to.range(b) != map[from.range(a)] {
                return Err(IsoError::NotFunctorial(format!("{} endpoints are not preserved", name(a))));
            }
            if to.inverse(b) != map[from.inverse(a)] {
                return Err(IsoError::NotFunctorial(format!("{} inverse is not preserved", name(a))));
            }
        }
        for (a, c) in from.composable_pairs() {
            let product = from.compose(a, c).expect("composable");
            if to.compose(map[a], map[c]) != Some(map[product]) {
                return Err(IsoError::NotFunctorial(format!("{}·{} is not preserved", name(a), name(c))));
            }
        }
        Ok(())
    }
}

/// The isomorphism `[S, ξ_x] ↦ γ`, where `γ ∈ S` has `d(γ) = x`, from the
/// reconstructed germ groupoid back to `original`.
///
/// `audit` translates elements of the abstract table that produced
/// `germs` into bisections of `original`.
pub fn canonical_iso(original: &FiniteGroupoid, germs: &GermGroupoid, audit: &AuditMap) -> Result<GroupoidIsomorphism, IsoError> {
    let reconstructed = germs.groupoid();
    let e = germs.semilattice();
    let spectrum = germs.spectrum();
    // ξ determines x as the only unit lying in every member of its support.
    let mut point_of = Vec::with_capacity(spectrum.len());
    for (p, xi) in spectrum.points().iter().enumerate() {
        let mut common = BitSet::full(original.len());
        for slot in xi.bits().iter() {
            common.intersect_with(audit.bisection(e.element(slot)).arrows());
        }
        match (common.count(), common.first()) {
            (1, Some(x)) if original.is_unit(x) => point_of.push(x),
            _ => return Err(IsoError::NotWellDefined { germ: format!("point p{p}") }),
        }
    }
    let arrow_at = |element: usize, x: usize| {
        audit.bisection(element).arrows().iter().find(|&a| original.source(a) == x)
    };
    let mut map = Vec::with_capacity(reconstructed.len());
    for arrow in 0..reconstructed.len() {
        let germ = germs.germ(arrow);
        let x = point_of[germ.base];
        let mut image = None;
        for &element in &germ.members {
            let gamma = arrow_at(element, x);
            if gamma.is_none() || (image.is_some() && image != gamma) {
                return Err(IsoError::NotWellDefined { germ: reconstructed.name(arrow).to_string() });
            }
            image = gamma;
        }
        map.push(image.expect("germ classes are nonempty"));
    }
    GroupoidIsomorphism::new(reconstructed, original, map)
}

/// Searches for an isomorphism `g1 → g2`.
///
/// Units are matched first, then each non-unit arrow is tried against the
/// arrows of `g2` between the images of its endpoints. Up to
/// [`EXHAUSTIVE_ARROWS`] arrows this is the whole check; larger inputs also
/// prune on inverses, on products with arrows already placed, and on unit
/// profiles. Refuses inputs with more than `max_arrows` arrows.
pub fn brute_force_iso(g1: &FiniteGroupoid, g2: &FiniteGroupoid, max_arrows: usize) -> Result<GroupoidIsomorphism, IsoError> {
    let bound = max_arrows;
    if g1.len().max(g2.len()) > bound {
        return Err(IsoError::BoundExceeded { arrows: g1.len().max(g2.len()), bound });
    }
    if g1.len() != g2.len() || g1.unit_count() != g2.unit_count() {
        return Err(IsoError::NotIsomorphic);
    }
    let prune = g1.len() > EXHAUSTIVE_ARROWS;
    let (p1, p2) = (profiles(g1), profiles(g2));
    if prune {
        let (mut a, mut b) = (p1.clone(), p2.clone());
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            return Err(IsoError::NotIsomorphic);
        }
    }
    let mut search = Search {
        g1,
        g2,
        prune,
        profiles: (p1, p2),
        map: vec![usize::MAX; g1.len()],
        used: BitSet::new(g2.len()),
    };
    if search.place(0) {
        GroupoidIsomorphism::new(g1, g2, search.map)
    } else {
        Err(IsoError::NotIsomorphic)
    }
}

fn profiles(g: &FiniteGroupoid) -> Profile {
    g.units()
        .map(|u| {
            let out = (0..g.len()).filter(|&a| g.source(a) == u).count();
            let loops = (0..g.len()).filter(|&a| g.source(a) == u && g.range(a) == u).count();
            (out, loops)
        })
        .collect()
}

/// Per unit: (arrows out, isotropy size).
type Profile = Vec<(usize, usize)>;

struct Search<'a> {
    g1: &'a FiniteGroupoid,
    g2: &'a FiniteGroupoid,
    prune: bool,
    profiles: (Profile, Profile),
    map: Vec<usize>,
    used: BitSet,
}

impl Search<'_> {
    fn place(&mut self, a: usize) -> bool {
        if a == self.g1.len() {
            return GroupoidIsomorphism { map: self.map.clone() }.verify(self.g1, self.g2).is_ok();
        }
        for b in 0..self.g2.len() {
            if self.used.contains(b) || !self.admissible(a, b) {
                continue;
            }
            self.map[a] = b;
            self.used.insert(b);
            if self.place(a + 1) {
                return true;
            }
            self.used.remove(b);
            self.map[a] = usize::MAX;
        }
        false
    }

    fn admissible(&self, a: usize, b: usize) -> bool {
        let (g1, g2) = (self.g1, self.g2);
        if g1.is_unit(a) {
            return g2.is_unit(b) && (!self.prune || self.profiles.0[a] == self.profiles.1[b]);
        }
        if g2.is_unit(b) || g2.source(b) != self.map[g1.source(a)] || g2.range(b) != self.map[g1.range(a)] {
            return false;
        }
        if !self.prune {
            return true;
        }
        let inv = g1.inverse(a);
        if inv < a && g2.inverse(b) != self.map[inv] {
            return false;
        }
        if inv == a && g2.inverse(b) != b {
            return false;
        }
        for c in 0..a {
            let mc = self.map[c];
            if let Some(p) = g1.compose(a, c) {
                if p <= a && g2.compose(b, mc) != Some(if p == a { b } else { self.map[p] }) {
                    return false;
                }
            }
            if let Some(p) = g1.compose(c, a) {
                if p <= a && g2.compose(mc, b) != Some(if p == a { b } else { self.map[p] }) {
                    return false;
                }
            }
        }
        if let Some(p) = g1.compose(a, a) {
            if p <= a && g2.compose(b, b) != Some(if p == a { b } else { self.map[p] }) {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::germ_groupoid;
    use crate::groupoid::tests::pair;
    use crate::groupoid::{abstract_table, enumerate_bisections, singleton_semigroup, validate_groupoid, RawGroupoid};

    fn units_only(n: usize) -> FiniteGroupoid {
        validate_groupoid(RawGroupoid { units: (0..n).map(|i| format!("u{i}")).collect(), ..Default::default() }).unwrap()
    }

    fn cyclic(n: usize) -> FiniteGroupoid {
        let name = |k: usize| if k == 0 { "e".to_string() } else { format!("g{k}") };
        let mut raw = RawGroupoid { units: vec![name(0)], ..Default::default() };
        for k in 1..n {
            raw.arrows.push((name(k), name(0), name(0)));
            raw.inverse.push((name(k), name((n - k) % n)));
            for j in 1..n {
                raw.compose.push((name(k), name(j), name((k + j) % n)));
            }
        }
        validate_groupoid(raw).unwrap()
    }

    #[test]
    fn identity_is_found() {
        for g in [pair(), cyclic(3), units_only(3)] {
            let iso = brute_force_iso(&g, &g, DEFAULT_MAX_ARROWS).unwrap();
            iso.verify(&g, &g).unwrap();
        }
    }

    #[test]
    fn non_isomorphic_inputs() {
        assert_eq!(brute_force_iso(&pair(), &units_only(4), DEFAULT_MAX_ARROWS), Err(IsoError::NotIsomorphic));
        assert_eq!(brute_force_iso(&cyclic(4), &units_only(4), DEFAULT_MAX_ARROWS), Err(IsoError::NotIsomorphic));
        assert!(matches!(brute_force_iso(&pair(), &pair(), 3), Err(IsoError::BoundExceeded { .. })));
    }

    #[test]
    fn verify_rejects_broken_maps() {
        let g = pair();
        assert!(matches!(GroupoidIsomorphism::new(&g, &g, vec![0, 1, 3, 2]), Err(IsoError::NotFunctorial(_))));
        assert!(matches!(GroupoidIsomorphism::new(&g, &g, vec![0, 0, 2, 3]), Err(IsoError::NotBijective(_))));
        assert!(GroupoidIsomorphism::new(&g, &g, vec![1, 0, 3, 2]).is_ok());
    }

    #[test]
    fn canonical_iso_for_pair_groupoid() {
        let g = pair();
        for collection in [singleton_semigroup(&g), enumerate_bisections(&g, 1 << 20).unwrap()] {
            let t = abstract_table(&g, &collection, 17).unwrap();
            let germs = germ_groupoid(&t.semigroup).unwrap();
            let iso = canonical_iso(&g, &germs, &t.audit).unwrap();
            assert_eq!(iso.map().len(), 4);
            brute_force_iso(germs.groupoid(), &g, DEFAULT_MAX_ARROWS).unwrap();
        }
    }

    #[test]
    fn canonical_iso_for_cyclic_group() {
        let g = cyclic(3);
        let t = abstract_table(&g, &singleton_semigroup(&g), 2).unwrap();
        let germs = germ_groupoid(&t.semigroup).unwrap();
        canonical_iso(&g, &germs, &t.audit).unwrap();
    }

    #[test]
    fn canonical_iso_for_units_only() {
        let g = units_only(3);
        let t = abstract_table(&g, &enumerate_bisections(&g, 1 << 20).unwrap(), 4).unwrap();
        let germs = germ_groupoid(&t.semigroup).unwrap();
        let iso = canonical_iso(&g, &germs, &t.audit).unwrap();
        assert!((0..3).all(|a| g.is_unit(iso.apply(a))));
    }

    #[test]
    fn pruned_search_on_larger_groups() {
        let g = cyclic(9);
        let iso = brute_force_iso(&g, &g, DEFAULT_MAX_ARROWS).unwrap();
        iso.verify(&g, &g).unwrap();
        assert_eq!(brute_force_iso(&cyclic(9), &units_only(9), DEFAULT_MAX_ARROWS), Err(IsoError::NotIsomorphic));
    }
}
