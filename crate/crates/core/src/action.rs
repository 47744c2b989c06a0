//! The canonical action of an inverse semigroup on its tight spectrum and
//! the groupoid of germs of that action.

use std::collections::HashMap;

use thiserror::Error;

use crate::algebra::{FiniteInverseSemigroup, Semilattice};
use crate::bits::BitSet;
use crate::groupoid::{validate_groupoid, Bisection, FiniteGroupoid, GroupoidError, RawGroupoid};
use crate::spectrum::{tight_spectrum, Character, SpectrumError, TightSpectrum};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ActionError {
    #[error("character is outside the domain of `{element}`")]
    OutsideDomain { element: String },
    #[error("image of a tight point under `{element}` is not a tight point")]
    NotInvariant { element: String },
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
    #[error("germ data does not form a groupoid: {0}")]
    Groupoid(#[from] GroupoidError),
}

/// `θ_s(φ) = (e ↦ φ(s* e s))`, defined when `φ(s*s) = 1`.
pub fn theta_apply(
    s: &FiniteInverseSemigroup,
    e: &Semilattice,
    element: usize,
    phi: &Character,
) -> Result<Character, ActionError> {
    let domain = e.slot(s.source_idempotent(element)).expect("s*s is idempotent");
    if !phi.value(domain) {
        return Err(ActionError::OutsideDomain { element: s.name(element).to_string() });
    }
    let star = s.star(element);
    let values = BitSet::from_indices(
        e.len(),
        (0..e.len()).filter(|&slot| {
            let conj = s.mul(s.mul(star, e.element(slot)), element);
            phi.value(e.slot(conj).expect("s*es is idempotent"))
        }),
    );
    Ok(Character::from_bits_unchecked(values))
}

/// Whether some idempotent `f` with `ξ(f) = 1` has `s1 f = s2 f`.
pub fn same_germ(
    s: &FiniteInverseSemigroup,
    e: &Semilattice,
    s1: usize,
    s2: usize,
    xi: &Character,
) -> Result<bool, ActionError> {
    for t in [s1, s2] {
        if !xi.value(e.slot(s.source_idempotent(t)).expect("idempotent")) {
            return Err(ActionError::OutsideDomain { element: s.name(t).to_string() });
        }
    }
    Ok(xi.bits().iter().any(|slot| {
        let f = e.element(slot);
        s.mul(s1, f) == s.mul(s2, f)
    }))
}

/// `θ` tabulated on point indices of the tight spectrum.
#[derive(Debug, Clone)]
pub struct SpectralAction {
    domains: Vec<BitSet>,
    maps: Vec<Vec<Option<usize>>>,
}

impl SpectralAction {
    pub fn new(s: &FiniteInverseSemigroup, e: &Semilattice, spectrum: &TightSpectrum) -> Result<Self, ActionError> {
        let mut domains = Vec::with_capacity(s.len());
        let mut maps = Vec::with_capacity(s.len());
        for element in 0..s.len() {
            let domain = spectrum.basic_set(e.slot(s.source_idempotent(element)).expect("idempotent")).clone();
            let mut map = vec![None; spectrum.len()];
            for p in domain.iter() {
                let image = theta_apply(s, e, element, &spectrum.points()[p])?;
                let q = spectrum
                    .point_index(&image)
                    .ok_or_else(|| ActionError::NotInvariant { element: s.name(element).to_string() })?;
                map[p] = Some(q);
            }
            domains.push(domain);
            maps.push(map);
        }
        Ok(SpectralAction { domains, maps })
    }

    /// `D_{s*s}` as point indices.
    pub fn domain(&self, element: usize) -> &BitSet {
        &self.domains[element]
    }

    pub fn apply(&self, element: usize, point: usize) -> Option<usize> {
        self.maps[element][point]
    }
}

/// A germ class `[s, ξ]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Germ {
    /// Least element index in the class.
    pub representative: usize,
    /// Index of `ξ` in the tight spectrum.
    pub base: usize,
    /// Every `s` with `[s, ξ]` equal to this germ, ascending.
    pub members: Vec<usize>,
}

/// The groupoid of germs together with the data it was built from.
///
/// Arrow `p < spectrum.len()` is the unit at point `p`; the remaining
/// arrows are the non-unit germs sorted by (representative, base).
#[derive(Debug, Clone)]
pub struct GermGroupoid {
    semigroup: FiniteInverseSemigroup,
    semilattice: Semilattice,
    spectrum: TightSpectrum,
    action: SpectralAction,
    germs: Vec<Germ>,
    lookup: HashMap<(usize, usize), usize>,
    groupoid: FiniteGroupoid,
}

/// Builds the germ groupoid of the action of `s` on its tight spectrum.
pub fn germ_groupoid(s: &FiniteInverseSemigroup) -> Result<GermGroupoid, ActionError> {
    GermGroupoid::build(s)
}

impl GermGroupoid {
    pub fn build(s: &FiniteInverseSemigroup) -> Result<Self, ActionError> {
        let e = Semilattice::from_semigroup(s);
        let spectrum = tight_spectrum(&e)?;
        let action = SpectralAction::new(s, &e, &spectrum)?;

        let (mut units, mut others) = (Vec::new(), Vec::new());
        for (p, xi) in spectrum.points().iter().enumerate() {
            let mut classes: Vec<Germ> = Vec::new();
            for element in (0..s.len()).filter(|&t| action.domain(t).contains(p)) {
                let mut placed = false;
                for class in classes.iter_mut() {
                    if same_germ(s, &e, class.representative, element, xi)? {
                        class.members.push(element);
                        placed = true;
                        break;
                    }
                }
                if !placed {
                    classes.push(Germ { representative: element, base: p, members: vec![element] });
                }
            }
            for class in classes {
                if class.members.iter().any(|&t| s.is_idempotent(t)) {
                    units.push(class);
                } else {
                    others.push(class);
                }
            }
        }
        debug_assert_eq!(units.len(), spectrum.len());
        others.sort_by_key(|g| (g.representative, g.base));
        let germs: Vec<Germ> = units.into_iter().chain(others).collect();
        let mut lookup = HashMap::new();
        for (arrow, germ) in germs.iter().enumerate() {
            for &t in &germ.members {
                lookup.insert((t, germ.base), arrow);
            }
        }

        let names: Vec<String> = germs
            .iter()
            .enumerate()
            .map(|(arrow, g)| {
                if arrow < spectrum.len() {
                    format!("p{}", g.base)
                } else {
                    format!("{}@p{}", s.name(g.representative), g.base)
                }
            })
            .collect();
        let range = |g: &Germ| action.apply(g.representative, g.base).expect("base in domain");
        let mut raw = RawGroupoid { units: names[..spectrum.len()].to_vec(), ..Default::default() };
        for (arrow, g) in germs.iter().enumerate().skip(spectrum.len()) {
            raw.arrows.push((names[arrow].clone(), names[g.base].clone(), names[range(g)].clone()));
        }
        // [s, θ_t ξ]·[t, ξ] = [st, ξ] and [s, ξ]⁻¹ = [s*, θ_s ξ]
        for b in &germs {
            for a in germs.iter().filter(|a| a.base == range(b)) {
                let product = s.mul(a.representative, b.representative);
                let res = lookup[&(product, b.base)];
                raw.compose.push((
                    names[lookup[&(a.representative, a.base)]].clone(),
                    names[lookup[&(b.representative, b.base)]].clone(),
                    names[res].clone(),
                ));
            }
            let inv = lookup[&(s.star(b.representative), range(b))];
            raw.inverse.push((names[lookup[&(b.representative, b.base)]].clone(), names[inv].clone()));
        }
        let groupoid = validate_groupoid(raw)?;
        Ok(GermGroupoid { semigroup: s.clone(), semilattice: e, spectrum, action, germs, lookup, groupoid })
    }

    pub fn groupoid(&self) -> &FiniteGroupoid {
        &self.groupoid
    }

    pub fn semigroup(&self) -> &FiniteInverseSemigroup {
        &self.semigroup
    }

    pub fn semilattice(&self) -> &Semilattice {
        &self.semilattice
    }

    pub fn spectrum(&self) -> &TightSpectrum {
        &self.spectrum
    }

    pub fn action(&self) -> &SpectralAction {
        &self.action
    }

    pub fn germ(&self, arrow: usize) -> &Germ {
        &self.germs[arrow]
    }

    /// The arrow `[element, ξ_point]`, if `point ∈ D_{s*s}`.
    pub fn germ_of(&self, element: usize, point: usize) -> Option<usize> {
        self.lookup.get(&(element, point)).copied()
    }

    /// The unit arrow sitting over a spectrum point.
    pub fn unit_of_point(&self, point: usize) -> usize {
        assert!(point < self.spectrum.len());
        point
    }

    /// `X_s = {[s, ξ] : ξ ∈ D_{s*s}}`.
    pub fn slice_of(&self, element: usize) -> Bisection {
        let arrows = BitSet::from_indices(
            self.groupoid.len(),
            self.action.domain(element).iter().map(|p| self.lookup[&(element, p)]),
        );
        Bisection::new(&self.groupoid, arrows).expect("germs of one element form a bisection")
    }
}
