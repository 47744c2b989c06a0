use std::collections::{HashMap, HashSet};

use super::{rho_prime, ConvolutionAlgebra, ConvolutionError, StarAlgebra};
use crate::action::GermGroupoid;
use crate::algebra::{FiniteInverseSemigroup, Semilattice};
use crate::bits::BitSet;

/// Largest cover checked in [`CoverMode::Audit`].
pub const AUDIT_COVER_SIZE: usize = 4;

/// Which covers of `E^{X,Y}` the tightness scan compares against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoverMode {
    /// Minimal covers only, with `Y` restricted below the meet of `X`.
    Minimal,
    /// Every cover with at most [`AUDIT_COVER_SIZE`] members, and `Y` over
    /// all antichains.
    Audit,
}

/// An instance `(X, Y, Z)` where `⋁ π(Z)` differs from the product side.
/// All entries are semigroup element indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TightnessWitness {
    pub x: Option<usize>,
    pub y: Vec<usize>,
    pub cover: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TightRepresentationReport {
    pub multiplicativity: bool,
    pub star: bool,
    pub zero: bool,
    /// Idempotents go to commuting idempotents.
    pub idempotents: bool,
    /// `∨` is commutative, idempotent and associative on idempotent images.
    pub join_laws: bool,
    /// Number of `(X, Y)` instances scanned.
    pub instances: usize,
    pub tightness_witnesses: Vec<TightnessWitness>,
    pub failures: Vec<String>,
}

impl TightRepresentationReport {
    pub fn passed(&self) -> bool {
        self.multiplicativity
            && self.star
            && self.zero
            && self.idempotents
            && self.join_laws
            && self.tightness_witnesses.is_empty()
    }
}

const MAX_WITNESSES: usize = 16;

/// Checks that `pi` is a tight representation of `s` in `algebra`.
///
/// Failures are collected in the report; an error is returned only when
/// the images cannot be combined at all.
pub fn check_tight_representation<A: StarAlgebra>(
    algebra: &A,
    s: &FiniteInverseSemigroup,
    pi: impl Fn(usize) -> A::Element,
    mode: CoverMode,
) -> Result<TightRepresentationReport, ConvolutionError> {
    let images: Vec<A::Element> = (0..s.len()).map(&pi).collect();
    let mut report = TightRepresentationReport {
        multiplicativity: true,
        star: true,
        zero: images[s.zero()] == algebra.zero(),
        idempotents: true,
        join_laws: true,
        instances: 0,
        tightness_witnesses: Vec::new(),
        failures: Vec::new(),
    };
    if !report.zero {
        report.failures.push(format!("image of {} is not zero", s.name(s.zero())));
    }
    for a in 0..s.len() {
        if algebra.star(&images[a])? != images[s.star(a)] {
            report.star = false;
            report.failures.push(format!("star not preserved at {}", s.name(a)));
        }
        for b in 0..s.len() {
            if algebra.mul(&images[a], &images[b])? != images[s.mul(a, b)] {
                report.multiplicativity = false;
                report.failures.push(format!("product not preserved at ({}, {})", s.name(a), s.name(b)));
            }
        }
    }
    let e = Semilattice::from_semigroup(s);
    let projections: Vec<&A::Element> = e.elements().iter().map(|&el| &images[el]).collect();
    for (i, p) in projections.iter().enumerate() {
        if algebra.mul(p, p)? != **p {
            report.idempotents = false;
            report.failures.push(format!("image of {} is not idempotent", s.name(e.element(i))));
        }
        for q in &projections[..i] {
            if algebra.mul(p, q)? != algebra.mul(q, p)? {
                report.idempotents = false;
                report.failures.push("idempotent images do not commute".into());
            }
        }
    }
    if !report.idempotents {
        return Ok(report);
    }
    check_join_laws(algebra, &projections, &mut report)?;

    let mut scan = Scan { algebra, e: &e, projections: &projections, mode, cache: HashMap::new() };
    let mut emit = ScanOutput { report: &mut report, s, e: &e };
    let nonzero: Vec<usize> = e.nonzero().iter().collect();
    let bases = std::iter::once(None).chain(nonzero.iter().map(|&x| Some(x)));
    for x in bases {
        let (rhs, ideal) = match x {
            None => (algebra.one(), e.all()),
            Some(x) => (projections[x].clone(), e.down(x).clone()),
        };
        let candidates: Vec<usize> = match (x, mode) {
            (Some(x), CoverMode::Minimal) => nonzero.iter().copied().filter(|&y| e.leq(y, x)).collect(),
            _ => nonzero.clone(),
        };
        scan.walk(x, &candidates, 0, &mut Vec::new(), rhs, ideal, &mut emit)?;
    }
    Ok(report)
}

fn check_join_laws<A: StarAlgebra>(
    algebra: &A,
    projections: &[&A::Element],
    report: &mut TightRepresentationReport,
) -> Result<(), ConvolutionError> {
    for p in projections {
        if algebra.join(p, p)? != **p {
            report.join_laws = false;
        }
        for q in projections {
            let pq = algebra.join(p, q)?;
            if pq != algebra.join(q, p)? {
                report.join_laws = false;
            }
            if projections.len() <= 12 {
                for r in projections {
                    if algebra.join(&pq, r)? != algebra.join(p, &algebra.join(q, r)?)? {
                        report.join_laws = false;
                    }
                }
            }
        }
    }
    if !report.join_laws {
        report.failures.push("join laws fail on idempotent images".into());
    }
    Ok(())
}

struct ScanOutput<'r> {
    report: &'r mut TightRepresentationReport,
    s: &'r FiniteInverseSemigroup,
    e: &'r Semilattice,
}

/// A cover, as ascending slots, with its join.
type CoverJoin<E> = (Vec<usize>, E);

struct Scan<'a, A: StarAlgebra> {
    algebra: &'a A,
    e: &'a Semilattice,
    projections: &'a [&'a A::Element],
    mode: CoverMode,
    /// For each ideal, the distinct joins over its covers with one cover each.
    cache: HashMap<BitSet, Vec<CoverJoin<A::Element>>>,
}

impl<A: StarAlgebra> Scan<'_, A> {
    #[allow(clippy::too_many_arguments)]
    fn walk(
        &mut self,
        x: Option<usize>,
        candidates: &[usize],
        from: usize,
        ys: &mut Vec<usize>,
        rhs: A::Element,
        ideal: BitSet,
        out: &mut ScanOutput<'_>,
    ) -> Result<(), ConvolutionError> {
        out.report.instances += 1;
        if !self.cache.contains_key(&ideal) {
            let joins = self.cover_joins(&ideal)?;
            self.cache.insert(ideal.clone(), joins);
        }
        for (cover, value) in &self.cache[&ideal] {
            if *value != rhs && out.report.tightness_witnesses.len() < MAX_WITNESSES {
                let el = |slot: usize| out.e.element(slot);
                out.report.tightness_witnesses.push(TightnessWitness {
                    x: x.map(el),
                    y: ys.iter().map(|&y| el(y)).collect(),
                    cover: cover.iter().map(|&z| el(z)).collect(),
                });
                out.report.failures.push(format!(
                    "tightness fails at X = {:?}, Y = {:?}",
                    x.map(|x| out.s.name(el(x))),
                    ys.iter().map(|&y| out.s.name(el(y))).collect::<Vec<_>>()
                ));
            }
        }
        for i in from..candidates.len() {
            let y = candidates[i];
            if ys.iter().any(|&w| self.e.leq(w, y) || self.e.leq(y, w)) {
                continue;
            }
            let one = self.algebra.one();
            let keep = self.algebra.sub(&one, self.projections[y])?;
            let next_rhs = self.algebra.mul(&rhs, &keep)?;
            let next_ideal = ideal.intersection(self.e.perp(y));
            ys.push(y);
            self.walk(x, candidates, i + 1, ys, next_rhs, next_ideal, out)?;
            ys.pop();
        }
        Ok(())
    }

    fn cover_joins(&self, ideal: &BitSet) -> Result<Vec<CoverJoin<A::Element>>, ConvolutionError> {
        let covers = match self.mode {
            CoverMode::Minimal => minimal_covers(self.e, ideal),
            CoverMode::Audit => small_covers(self.e, ideal, AUDIT_COVER_SIZE),
        };
        let mut joins: Vec<CoverJoin<A::Element>> = Vec::new();
        for cover in covers {
            let mut value = self.algebra.zero();
            for &z in &cover {
                value = self.algebra.join(&value, self.projections[z])?;
            }
            if !joins.iter().any(|(_, v)| *v == value) {
                joins.push((cover, value));
            }
        }
        Ok(joins)
    }
}

/// Minimal covers of a down-closed `ideal`, as sorted slot lists.
///
/// `Z` covers the ideal exactly when each atom in it lies below some
/// member of `Z`, so these are the minimal set covers of its atoms.
fn minimal_covers(e: &Semilattice, ideal: &BitSet) -> Vec<Vec<usize>> {
    let atoms = e.atoms().intersection(ideal);
    let candidates: Vec<usize> = ideal.iter().filter(|&z| z != e.zero()).collect();
    let mut search = AtomCover { e, atoms: &atoms, candidates: &candidates, seen: HashSet::new(), out: Vec::new() };
    search.extend(&atoms, &mut Vec::new());
    let mut out = search.out;
    out.sort();
    out
}

struct AtomCover<'a> {
    e: &'a Semilattice,
    atoms: &'a BitSet,
    candidates: &'a [usize],
    seen: HashSet<BitSet>,
    out: Vec<Vec<usize>>,
}

impl AtomCover<'_> {
    fn extend(&mut self, uncovered: &BitSet, chosen: &mut Vec<usize>) {
        let Some(atom) = uncovered.first() else {
            if self.is_minimal(chosen) {
                let key = BitSet::from_indices(self.e.len(), chosen.iter().copied());
                if self.seen.insert(key) {
                    let mut cover = chosen.clone();
                    cover.sort_unstable();
                    self.out.push(cover);
                }
            }
            return;
        };
        for &z in self.candidates {
            if chosen.contains(&z) || !self.e.leq(atom, z) {
                continue;
            }
            chosen.push(z);
            self.extend(&uncovered.difference(self.e.down(z)), chosen);
            chosen.pop();
        }
    }

    /// Every member covers an atom no other member covers.
    fn is_minimal(&self, chosen: &[usize]) -> bool {
        chosen.iter().all(|&z| {
            self.atoms
                .iter()
                .any(|a| self.e.leq(a, z) && chosen.iter().all(|&w| w == z || !self.e.leq(a, w)))
        })
    }
}

/// Every cover of `ideal` with at most `max` members, checked directly.
fn small_covers(e: &Semilattice, ideal: &BitSet, max: usize) -> Vec<Vec<usize>> {
    let members: Vec<usize> = ideal.iter().collect();
    let mut out = Vec::new();
    let mut current = Vec::new();
    subsets_up_to(&members, 0, max, &mut current, &mut |z| {
        if e.is_cover(&BitSet::from_indices(e.len(), z.iter().copied()), ideal) {
            out.push(z.to_vec());
        }
    });
    out
}

fn subsets_up_to(items: &[usize], from: usize, max: usize, current: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
    visit(current);
    if current.len() == max {
        return;
    }
    for i in from..items.len() {
        current.push(items[i]);
        subsets_up_to(items, i + 1, max, current, visit);
        current.pop();
    }
}

/// A smallest list of idempotents whose basic sets cover the tight
/// spectrum, least in lexicographic order among those, checked to satisfy
/// `⋁ ρ'(e_k) = 1` in the germ groupoid algebra.
pub fn unit_cover(germs: &GermGroupoid) -> Result<Vec<usize>, ConvolutionError> {
    let spectrum = germs.spectrum();
    if spectrum.is_empty() {
        return Err(ConvolutionError::EmptySpectrum);
    }
    let e = germs.semilattice();
    let candidates: Vec<usize> = e.nonzero().iter().collect();
    let everything = BitSet::full(spectrum.len());
    let mut found = None;
    for k in 1..=candidates.len() {
        let mut current = Vec::new();
        first_cover(&candidates, k, 0, &mut current, &mut |slots| {
            let mut union = BitSet::new(spectrum.len());
            for &slot in slots {
                union.union_with(spectrum.basic_set(slot));
            }
            union == everything
        }, &mut found);
        if found.is_some() {
            break;
        }
    }
    let slots = found.expect("the nonzero idempotents cover every point");
    let elements: Vec<usize> = slots.iter().map(|&slot| e.element(slot)).collect();

    let algebra = ConvolutionAlgebra::new(germs.groupoid());
    let mut join = algebra.zero();
    for &el in &elements {
        join = algebra.join(&join, &rho_prime(&algebra, germs, el))?;
    }
    if join != algebra.one() {
        return Err(ConvolutionError::CheckFailed("join of the unit cover is not the unit".into()));
    }
    Ok(elements)
}

fn first_cover(
    items: &[usize],
    size: usize,
    from: usize,
    current: &mut Vec<usize>,
    covers: &mut impl FnMut(&[usize]) -> bool,
    found: &mut Option<Vec<usize>>,
) {
    if found.is_some() {
        return;
    }
    if current.len() == size {
        if covers(current) {
            *found = Some(current.clone());
        }
        return;
    }
    for i in from..items.len() {
        current.push(items[i]);
        first_cover(items, size, i + 1, current, covers, found);
        current.pop();
        if found.is_some() {
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::germ_groupoid;
    use crate::algebra::tests::subsets_of_two;
    use crate::convolution::{rho, MatrixAlgebra};
    use crate::groupoid::tests::{pair, pair_raw};
    use crate::groupoid::{enumerate_bisections, singleton_semigroup, validate_groupoid, BisectionSemigroup};

    /// Oracle: covers by subset enumeration, keeping the inclusion-minimal ones.
    fn minimal_covers_brute(e: &Semilattice, ideal: &BitSet) -> Vec<Vec<usize>> {
        let members: Vec<usize> = ideal.iter().collect();
        let covers: Vec<BitSet> = (0u64..1 << members.len())
            .map(|m| BitSet::from_indices(e.len(), (0..members.len()).filter(|i| m >> i & 1 == 1).map(|i| members[i])))
            .filter(|z| e.is_cover(z, ideal))
            .collect();
        let mut out: Vec<Vec<usize>> = covers
            .iter()
            .filter(|z| !covers.iter().any(|w| w != *z && w.is_subset(z)))
            .map(|z| z.iter().collect())
            .collect();
        out.sort();
        out
    }

    #[test]
    fn minimal_covers_match_brute_force() {
        let g = pair();
        let full = BisectionSemigroup::new(&g, enumerate_bisections(&g, 1 << 20).unwrap()).unwrap();
        for s in [subsets_of_two(), full.semigroup().clone()] {
            let e = Semilattice::from_semigroup(&s);
            for a in 0..e.len() {
                for ideal in [e.down(a).clone(), e.down(a).intersection(e.perp(a)), e.all()] {
                    assert_eq!(minimal_covers(&e, &ideal), minimal_covers_brute(&e, &ideal));
                }
            }
        }
    }

    #[test]
    fn rho_on_singleton_semigroup_is_tight() {
        let g = pair();
        let alg = ConvolutionAlgebra::new(&g);
        let bs = BisectionSemigroup::new(&g, singleton_semigroup(&g)).unwrap();
        for mode in [CoverMode::Minimal, CoverMode::Audit] {
            let report = check_tight_representation(&alg, bs.semigroup(), |k| rho(&alg, bs.bisection(k)), mode).unwrap();
            assert!(report.passed(), "{report:?}");
        }
    }

    #[test]
    fn regular_matrices_are_tight() {
        let g = pair();
        let alg = ConvolutionAlgebra::new(&g);
        let mats = MatrixAlgebra::new(g.len());
        let bs = BisectionSemigroup::new(&g, enumerate_bisections(&g, 1 << 20).unwrap()).unwrap();
        let pi = |k: usize| alg.left_regular(&mats, &rho(&alg, bs.bisection(k))).unwrap();
        let report = check_tight_representation(&mats, bs.semigroup(), pi, CoverMode::Minimal).unwrap();
        assert!(report.passed(), "{report:?}");
    }

    #[test]
    fn restricting_to_a_component_breaks_tightness() {
        let mut raw = pair_raw();
        raw.units.push("z".into());
        let g = validate_groupoid(raw).unwrap();
        let alg = ConvolutionAlgebra::new(&g);
        let component = BitSet::from_indices(g.len(), (0..g.len()).filter(|&a| g.source(a) != 2));
        for collection in [singleton_semigroup(&g), enumerate_bisections(&g, 1 << 20).unwrap()] {
            let bs = BisectionSemigroup::new(&g, collection).unwrap();
            let pi = |k: usize| alg.indicator(&bs.bisection(k).arrows().intersection(&component));
            let report = check_tight_representation(&alg, bs.semigroup(), pi, CoverMode::Minimal).unwrap();
            assert!(report.multiplicativity && report.star && report.zero);
            assert!(!report.passed());
            assert!(report.tightness_witnesses.iter().any(|w| w.x.is_none() && w.y.is_empty()));
        }
    }

    #[test]
    fn unit_covers() {
        let g = pair();
        let bs = BisectionSemigroup::new(&g, enumerate_bisections(&g, 1 << 20).unwrap()).unwrap();
        let germs = germ_groupoid(bs.semigroup()).unwrap();
        let cover = unit_cover(&germs).unwrap();
        assert_eq!(cover.len(), 1);
        assert_eq!(bs.bisection(cover[0]).arrows(), &BitSet::from_indices(4, [0, 1]));

        let s = subsets_of_two();
        let top = s.index_of("12").unwrap();
        assert_eq!(unit_cover(&germ_groupoid(&s).unwrap()).unwrap(), vec![top]);
    }

    #[test]
    fn unit_cover_without_top() {
        // {∅, {1}, {2}} under intersection
        let names = vec!["0".to_string(), "1".to_string(), "2".to_string()];
        let table = vec![0, 0, 0, 0, 1, 0, 0, 0, 2];
        let s = FiniteInverseSemigroup::from_table(names, table).unwrap();
        assert_eq!(unit_cover(&germ_groupoid(&s).unwrap()).unwrap(), vec![1, 2]);
        let zero = FiniteInverseSemigroup::from_table(vec!["0".into()], vec![0]).unwrap();
        assert_eq!(unit_cover(&germ_groupoid(&zero).unwrap()), Err(ConvolutionError::EmptySpectrum));
    }
}
