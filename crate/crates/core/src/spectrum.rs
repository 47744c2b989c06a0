//! Filters, characters and the tight spectrum of a finite semilattice.
//!
//! A character is a `{0,1}`-valued multiplicative map on the idempotents,
//! stored as the bitmask of its support; its support is a filter and every
//! filter arises this way. Tightness is decided by searching for a violation
//! of the cover-sup equation rather than by enumerating covers.

use thiserror::Error;

use crate::algebra::Semilattice;
use crate::bits::BitSet;

/// Default bound on `|E|` for exhaustive subset enumeration of filters.
pub const DEFAULT_FILTER_BOUND: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectrumError {
    #[error("semilattice has {size} idempotents, above the exhaustive bound {bound}")]
    BoundExceeded { size: usize, bound: usize },
    #[error("subset is not a filter: {0}")]
    NotAFilter(&'static str),
    #[error("map is not a character: {0}")]
    NotACharacter(&'static str),
    #[error("tight characters {tight:?} differ from ultra-characters {ultra:?}")]
    TightUltraMismatch { tight: Vec<BitSet>, ultra: Vec<BitSet> },
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Filter {
    members: BitSet,
}

impl Filter {
    pub fn new(e: &Semilattice, members: BitSet) -> Result<Self, SpectrumError> {
        if members.contains(e.zero()) {
            return Err(SpectrumError::NotAFilter("contains zero"));
        }
        for a in members.iter() {
            if !e.up(a).is_subset(&members) {
                return Err(SpectrumError::NotAFilter("not upward hereditary"));
            }
            for b in members.iter() {
                if !members.contains(e.meet(a, b)) {
                    return Err(SpectrumError::NotAFilter("not downward directed"));
                }
            }
        }
        Ok(Filter { members })
    }

    /// `↑a` for a nonzero slot `a`.
    pub fn principal(e: &Semilattice, a: usize) -> Result<Self, SpectrumError> {
        Filter::new(e, e.up(a).clone())
    }

    pub fn members(&self) -> &BitSet {
        &self.members
    }

    pub fn contains(&self, slot: usize) -> bool {
        self.members.contains(slot)
    }

    /// Meet of all members; `None` for the empty filter.
    pub fn minimum(&self, e: &Semilattice) -> Option<usize> {
        e.meet_all(self.members.iter())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Character {
    values: BitSet,
}

impl Character {
    /// Checks `φ(0) = 0`, multiplicativity and that `φ` is not identically zero.
    pub fn new(e: &Semilattice, values: BitSet) -> Result<Self, SpectrumError> {
        if values.contains(e.zero()) {
            return Err(SpectrumError::NotACharacter("does not vanish at zero"));
        }
        if values.is_empty() {
            return Err(SpectrumError::NotACharacter("identically zero"));
        }
        for a in 0..e.len() {
            for b in 0..e.len() {
                let lhs = values.contains(e.meet(a, b));
                if lhs != (values.contains(a) && values.contains(b)) {
                    return Err(SpectrumError::NotACharacter("not multiplicative"));
                }
            }
        }
        Ok(Character { values })
    }

    pub(crate) fn from_bits_unchecked(values: BitSet) -> Self {
        Character { values }
    }

    pub fn value(&self, slot: usize) -> bool {
        self.values.contains(slot)
    }

    pub fn bits(&self) -> &BitSet {
        &self.values
    }

    pub fn support(&self) -> Filter {
        Filter { members: self.values.clone() }
    }
}

impl From<&Filter> for Character {
    fn from(filter: &Filter) -> Self {
        Character { values: filter.members.clone() }
    }
}

/// How filters are enumerated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FilterSearch {
    /// Principal filters `↑e`, each checked against the filter axioms.
    Principal,
    /// Every subset of the nonzero idempotents, refused above `bound`.
    Exhaustive { bound: usize },
}

/// All filters, in canonical (bitmask) order.
pub fn enumerate_filters(e: &Semilattice) -> Vec<Filter> {
    enumerate_filters_with(e, FilterSearch::Principal).expect("principal enumeration is unbounded")
}

pub fn enumerate_filters_with(e: &Semilattice, search: FilterSearch) -> Result<Vec<Filter>, SpectrumError> {
    let mut filters = match search {
        FilterSearch::Principal => {
            // In a finite semilattice every filter is principal on its minimum.
            e.nonzero()
                .iter()
                .map(|a| Filter::principal(e, a).expect("principal filters satisfy the axioms"))
                .collect::<Vec<_>>()
        }
        FilterSearch::Exhaustive { bound } => {
            if e.len() > bound {
                return Err(SpectrumError::BoundExceeded { size: e.len(), bound });
            }
            let nonzero: Vec<usize> = e.nonzero().iter().collect();
            let mut found = Vec::new();
            for mask in 1u64..(1u64 << nonzero.len()) {
                let members = BitSet::from_indices(
                    e.len(),
                    nonzero.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &a)| a),
                );
                if let Ok(f) = Filter::new(e, members) {
                    found.push(f);
                }
            }
            found
        }
    };
    filters.sort();
    filters.dedup();
    Ok(filters)
}

/// Filters not properly contained in any other filter.
pub fn ultrafilters(e: &Semilattice) -> Vec<Filter> {
    let filters = enumerate_filters(e);
    filters
        .iter()
        .filter(|f| {
            !filters
                .iter()
                .any(|g| g != *f && f.members.is_subset(&g.members))
        })
        .cloned()
        .collect()
}

/// Which `(X, Y)` pairs the tightness scan visits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoverScan {
    /// `X` meet-reduced to a single member of the support (or empty), `Y` over
    /// antichains of nonzero idempotents outside the support.
    Antichains,
    /// Audit: every `x` (or empty `X`) and every subset `Y` of the nonzero
    /// idempotents, refused when there are more than `max_nonzero` of them.
    AllSubsets { max_nonzero: usize },
}

/// An instance of the tightness equation that `φ` fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TightViolation {
    /// `None` stands for `X = ∅`.
    pub x: Option<usize>,
    pub y: Vec<usize>,
    /// A cover of `E^{X,Y}` on which the equation fails.
    pub cover: BitSet,
}

pub fn is_tight_character(phi: &Character, e: &Semilattice) -> bool {
    tight_violation(phi, e, CoverScan::Antichains)
        .expect("antichain scan is unbounded")
        .is_none()
}

/// Searches for `(X, Y, Z)` with `Z` a cover of `E^{X,Y}` and
/// `max_{z∈Z} φ(z) != φ(x)·∏(1-φ(y))`.
///
/// For a character the left side never exceeds the right: `φ(z)=1` with
/// `z <= x` and `z ⊥ y` forces `φ(x)=1` and `φ(y)=0`. So a violation needs
/// the right side to be 1 while `Z₀ = {f ∈ E^{X,Y} : φ(f)=0}` is a cover,
/// and every cover avoiding the support is contained in `Z₀`.
pub fn tight_violation(phi: &Character, e: &Semilattice, scan: CoverScan) -> Result<Option<TightViolation>, SpectrumError> {
    match scan {
        CoverScan::Antichains => Ok(antichain_scan(phi, e)),
        CoverScan::AllSubsets { max_nonzero } => subset_scan(phi, e, max_nonzero),
    }
}

fn complement_cover(phi: &Character, e: &Semilattice, ideal: &BitSet) -> Option<BitSet> {
    let z0 = ideal.difference(phi.bits());
    e.is_cover(&z0, ideal).then_some(z0)
}

fn antichain_scan(phi: &Character, e: &Semilattice) -> Option<TightViolation> {
    let outside: Vec<usize> = e.nonzero().difference(phi.bits()).iter().collect();
    let xs = std::iter::once(None).chain(phi.bits().iter().map(Some));
    for x in xs {
        let base = match x {
            Some(x) => e.down(x).clone(),
            None => e.all(),
        };
        let mut ys = Vec::new();
        if let Some(v) = antichain_walk(phi, e, &outside, 0, &mut ys, &base, x) {
            return Some(v);
        }
    }
    None
}

fn antichain_walk(
    phi: &Character,
    e: &Semilattice,
    candidates: &[usize],
    start: usize,
    ys: &mut Vec<usize>,
    ideal: &BitSet,
    x: Option<usize>,
) -> Option<TightViolation> {
    if let Some(cover) = complement_cover(phi, e, ideal) {
        return Some(TightViolation { x, y: ys.clone(), cover });
    }
    for i in start..candidates.len() {
        let y = candidates[i];
        if ys.iter().any(|&w| e.leq(w, y) || e.leq(y, w)) {
            continue;
        }
        ys.push(y);
        let next = ideal.intersection(e.perp(y));
        let found = antichain_walk(phi, e, candidates, i + 1, ys, &next, x);
        ys.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}

fn subset_scan(phi: &Character, e: &Semilattice, max_nonzero: usize) -> Result<Option<TightViolation>, SpectrumError> {
    let nonzero: Vec<usize> = e.nonzero().iter().collect();
    if nonzero.len() > max_nonzero {
        return Err(SpectrumError::BoundExceeded { size: e.len(), bound: max_nonzero + 1 });
    }
    let xs = std::iter::once(None).chain((0..e.len()).map(Some));
    for x in xs {
        for mask in 0u64..(1u64 << nonzero.len()) {
            let ys: Vec<usize> = nonzero
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &y)| y)
                .collect();
            let ideal = e.restricted_ideal(x.as_slice(), &ys);
            let rhs = x.is_none_or(|x| phi.value(x)) && ys.iter().all(|&y| !phi.value(y));
            if rhs {
                if let Some(cover) = complement_cover(phi, e, &ideal) {
                    return Ok(Some(TightViolation { x, y: ys, cover }));
                }
            } else if ideal.iter().any(|z| phi.value(z)) {
                // `ideal` covers itself, so any member in the support breaks
                // the equation.
                return Ok(Some(TightViolation { x, y: ys, cover: ideal }));
            }
        }
    }
    Ok(None)
}

/// The tight characters together with the basic sets `D_e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TightSpectrum {
    points: Vec<Character>,
    basic_sets: Vec<BitSet>,
}

impl TightSpectrum {
    /// Points in canonical (bitmask) order.
    pub fn points(&self) -> &[Character] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `D_e` as a set of point indices.
    pub fn basic_set(&self, slot: usize) -> &BitSet {
        &self.basic_sets[slot]
    }

    pub fn point_index(&self, phi: &Character) -> Option<usize> {
        self.points.binary_search(phi).ok()
    }
}

/// Tight characters, cross-checked against the ultra-characters.
pub fn tight_spectrum(e: &Semilattice) -> Result<TightSpectrum, SpectrumError> {
    let mut points: Vec<Character> = enumerate_filters(e)
        .iter()
        .map(Character::from)
        .filter(|phi| is_tight_character(phi, e))
        .collect();
    points.sort();
    let ultra: Vec<BitSet> = ultrafilters(e).into_iter().map(|f| f.members).collect();
    let tight: Vec<BitSet> = points.iter().map(|p| p.values.clone()).collect();
    if tight != ultra {
        return Err(SpectrumError::TightUltraMismatch { tight, ultra });
    }
    let basic_sets = (0..e.len())
        .map(|slot| BitSet::from_indices(points.len(), (0..points.len()).filter(|&p| points[p].value(slot))))
        .collect();
    Ok(TightSpectrum { points, basic_sets })
}
