//! Points of a finite space versus tight filters on a basis of it.

use super::ReconstructionError;
use crate::algebra::{FiniteInverseSemigroup, Semilattice};
use crate::bits::BitSet;
use crate::spectrum::{tight_spectrum, ultrafilters, Character, Filter};

/// A finite set of points with a family of subsets that contains `∅`,
/// every singleton, and is closed under intersection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointBasisSpace {
    points: usize,
    basis: Vec<BitSet>,
}

impl PointBasisSpace {
    /// Members are kept in the given order; duplicates are rejected.
    pub fn new(points: usize, basis: Vec<BitSet>) -> Result<Self, ReconstructionError> {
        if basis.iter().any(|u| u.capacity() != points) {
            return Err(ReconstructionError::InvalidBasis("member over a different point set"));
        }
        for (i, u) in basis.iter().enumerate() {
            if basis[..i].contains(u) {
                return Err(ReconstructionError::InvalidBasis("duplicate member"));
            }
        }
        if !basis.contains(&BitSet::new(points)) {
            return Err(ReconstructionError::InvalidBasis("empty set missing"));
        }
        if (0..points).any(|x| !basis.contains(&BitSet::from_indices(points, [x]))) {
            return Err(ReconstructionError::InvalidBasis("a singleton is missing"));
        }
        for u in &basis {
            for v in &basis {
                if !basis.contains(&u.intersection(v)) {
                    return Err(ReconstructionError::InvalidBasis("not closed under intersection"));
                }
            }
        }
        Ok(PointBasisSpace { points, basis })
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn basis(&self) -> &[BitSet] {
        &self.basis
    }

    /// `(B, ∩)` as a semigroup whose element `i` is `basis[i]`.
    pub fn semigroup(&self) -> FiniteInverseSemigroup {
        let n = self.basis.len();
        let table = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .map(|(a, b)| {
                let meet = self.basis[a].intersection(&self.basis[b]);
                self.basis.iter().position(|u| *u == meet).expect("closed under intersection")
            })
            .collect();
        let names = (0..n).map(|i| format!("U{i}")).collect();
        FiniteInverseSemigroup::from_table(names, table).expect("a meet table is an inverse semigroup")
    }

    /// The semilattice of [`Self::semigroup`]; slot `i` is `basis[i]`.
    pub fn semilattice(&self) -> Semilattice {
        Semilattice::from_semigroup(&self.semigroup())
    }
}

/// `ξ_x = {U ∈ B : x ∈ U}`, checked to be an ultrafilter.
pub fn phi_point(space: &PointBasisSpace, x: usize) -> Result<Filter, ReconstructionError> {
    assert!(x < space.points, "point {x} out of range");
    let e = space.semilattice();
    let members = BitSet::from_indices(space.basis.len(), (0..space.basis.len()).filter(|&u| space.basis[u].contains(x)));
    let filter = Filter::new(&e, members)?;
    if !ultrafilters(&e).contains(&filter) {
        return Err(ReconstructionError::CheckFailed {
            clause: "point filter is an ultrafilter",
            witness: format!("point {x}"),
        });
    }
    Ok(filter)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StoneReport {
    pub points: usize,
    pub spectrum_size: usize,
    pub injective: bool,
    pub surjective: bool,
    pub basic_sets_match: bool,
}

/// Checks that `x ↦ ξ_x` is a bijection onto the tight spectrum of `(B, ∩)`
/// carrying each `U` onto `D_U`.
pub fn stone_check(space: &PointBasisSpace) -> Result<StoneReport, ReconstructionError> {
    let e = space.semilattice();
    let spectrum = tight_spectrum(&e)?;
    let mut image = Vec::with_capacity(space.points);
    for x in 0..space.points {
        let xi = Character::from(&phi_point(space, x)?);
        let p = spectrum.point_index(&xi).ok_or_else(|| ReconstructionError::CheckFailed {
            clause: "point filter is tight",
            witness: format!("point {x}"),
        })?;
        if let Some(y) = image.iter().position(|&q| q == p) {
            return Err(ReconstructionError::CheckFailed {
                clause: "injectivity",
                witness: format!("points {y} and {x} have the same filter"),
            });
        }
        image.push(p);
    }
    if let Some(p) = (0..spectrum.len()).find(|p| !image.contains(p)) {
        return Err(ReconstructionError::CheckFailed {
            clause: "surjectivity",
            witness: format!("tight filter {:?} is no point filter", spectrum.points()[p].bits()),
        });
    }
    for (u, member) in space.basis.iter().enumerate() {
        let mapped = BitSet::from_indices(spectrum.len(), member.iter().map(|x| image[x]));
        let slot = e.slot(u).expect("every member is idempotent");
        if &mapped != spectrum.basic_set(slot) {
            return Err(ReconstructionError::CheckFailed {
                clause: "image of U is D_U",
                witness: format!("U = {member:?}"),
            });
        }
    }
    Ok(StoneReport {
        points: space.points,
        spectrum_size: spectrum.len(),
        injective: true,
        surjective: true,
        basic_sets_match: true,
    })
}

/// Every admissible basis on `points` points, in a deterministic order.
///
/// Members are listed by increasing bitmask. Enumerates all families of
/// subsets with at least two points, then adds `∅` and the singletons and
/// keeps the intersection-closed ones.
pub fn enumerate_bases(points: usize) -> Vec<PointBasisSpace> {
    assert!(points <= 5, "basis enumeration is doubly exponential");
    let optional: Vec<u64> = (0u64..1 << points).filter(|m| m.count_ones() >= 2).collect();
    let forced: Vec<u64> = std::iter::once(0).chain((0..points).map(|x| 1 << x)).collect();
    let mut out = Vec::new();
    for choice in 0u64..1 << optional.len() {
        let mut masks: Vec<u64> = forced.clone();
        masks.extend(optional.iter().enumerate().filter(|(i, _)| choice >> i & 1 == 1).map(|(_, &m)| m));
        if masks.iter().all(|a| masks.iter().all(|b| masks.contains(&(a & b)))) {
            masks.sort_unstable();
            let basis = masks.into_iter().map(|m| BitSet::from_mask(points, m)).collect();
            out.push(PointBasisSpace { points, basis });
        }
    }
    out
}
