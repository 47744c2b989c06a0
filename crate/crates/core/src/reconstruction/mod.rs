//! Recovering a groupoid from an inverse semigroup of its bisections.
//!
//! [`reconstruct`] sees only a multiplication table. The audit side
//! ([`canonical_iso`], [`equivariance_check`]) is handed the original
//! groupoid and the hidden element-to-bisection map to confirm the result.

mod iso;
mod stone;

use thiserror::Error;

pub use iso::{brute_force_iso, canonical_iso, GroupoidIsomorphism, IsoError, DEFAULT_MAX_ARROWS, EXHAUSTIVE_ARROWS};
pub use stone::{enumerate_bases, phi_point, stone_check, PointBasisSpace, StoneReport};

use crate::action::{germ_groupoid, theta_apply, ActionError, GermGroupoid};
use crate::algebra::FiniteInverseSemigroup;
use crate::bits::BitSet;
use crate::groupoid::{is_basis, lambda_action, Bisection, BisectionSemigroup, FiniteGroupoid, GroupoidError};
use crate::spectrum::{Character, SpectrumError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReconstructionError {
    #[error("invalid basis: {0}")]
    InvalidBasis(&'static str),
    #[error("collection is not a basis of the groupoid")]
    NotABasis,
    #[error("check failed ({clause}): {witness}")]
    CheckFailed { clause: &'static str, witness: String },
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error(transparent)]
    Groupoid(#[from] GroupoidError),
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
}

/// The germ groupoid of `table`, built from the table alone.
pub fn reconstruct(table: &FiniteInverseSemigroup) -> Result<GermGroupoid, ActionError> {
    germ_groupoid(table)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EquivarianceReport {
    /// Number of `(S, x)` pairs compared.
    pub checked: usize,
}

/// Checks `θ_S(Φ(x)) = Φ(λ_S(x))` for every `S` in `collection` and every
/// `x ∈ d(S)`, where `Φ(x)` is the character "`x` lies in the unit set".
pub fn equivariance_check(g: &FiniteGroupoid, collection: &[Bisection]) -> Result<EquivarianceReport, ReconstructionError> {
    if !is_basis(g, collection) {
        return Err(ReconstructionError::NotABasis);
    }
    let concrete = BisectionSemigroup::new(g, collection.to_vec())?;
    let s = concrete.semigroup();
    let e = crate::algebra::Semilattice::from_semigroup(s);
    let phi = |x: usize| {
        let bits = BitSet::from_indices(e.len(), (0..e.len()).filter(|&slot| concrete.bisection(e.element(slot)).contains(x)));
        Character::new(&e, bits)
    };
    let mut checked = 0;
    for element in 0..s.len() {
        let slice = concrete.bisection(element);
        for x in slice.source_set(g).iter() {
            let lhs = theta_apply(s, &e, element, &phi(x)?)?;
            let y = lambda_action(g, slice, x)?;
            if lhs != phi(y)? {
                return Err(ReconstructionError::CheckFailed {
                    clause: "equivariance",
                    witness: format!("S = {}, x = {}", slice.describe(g), g.name(x)),
                });
            }
            checked += 1;
        }
    }
    Ok(EquivarianceReport { checked })
}
