//! Finite inverse semigroups given by multiplication tables.
//!
//! Elements are opaque names mapped to dense indices; the involution `s*`
//! is always derived from the table by search, never read from input. The
//! idempotents form a [`Semilattice`] on which the order, orthogonality and
//! cover relations are computed over "slots" (dense idempotent indices).

use std::collections::HashMap;

use thiserror::Error;

use crate::bits::BitSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("multiplication table has {found} entries, expected {expected}")]
    TableShape { expected: usize, found: usize },
    #[error("product {row}*{col} refers to element index {value}, which does not exist")]
    ProductOutOfRange { row: usize, col: usize, value: usize },
    #[error("element `{0}` is declared twice")]
    DuplicateElement(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("not associative: ({a}{b}){c} != {a}({b}{c})")]
    NotAssociative { a: String, b: String, c: String },
    #[error("element `{element}` has {count} inverses, expected exactly one")]
    NoUniqueInverse { element: String, count: usize },
    #[error("no absorbing zero element")]
    NoZero,
    #[error("declared zero `{declared}` is not absorbing (the absorbing element is {absorbing:?})")]
    ZeroMismatch { declared: String, absorbing: Option<String> },
    #[error("`{0}` is not an idempotent")]
    NotIdempotent(String),
}

/// An unvalidated multiplication table, row-major over `elements`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawSemigroup {
    pub elements: Vec<String>,
    pub table: Vec<usize>,
    pub zero: Option<usize>,
}

impl RawSemigroup {
    /// Adds a fresh absorbing element and declares it the zero.
    pub fn adjoin_zero(&self) -> RawSemigroup {
        let n = self.elements.len();
        let mut name = String::from("0");
        while self.elements.contains(&name) {
            name.push('\'');
        }
        let mut elements = self.elements.clone();
        elements.push(name);
        let m = n + 1;
        let mut table = vec![n; m * m];
        for a in 0..n {
            for b in 0..n {
                table[a * m + b] = self.table[a * n + b];
            }
        }
        RawSemigroup { elements, table, zero: Some(n) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteInverseSemigroup {
    names: Vec<String>,
    index: HashMap<String, usize>,
    table: Vec<usize>,
    star: Vec<usize>,
    zero: usize,
    idempotents: Vec<usize>,
}

/// Checks the inverse semigroup axioms exhaustively and derives `*` and `0`.
///
/// Checks run in the order associativity, unique inverses, zero, so the
/// reported failure is the most fundamental one.
pub fn validate_inverse_semigroup(raw: RawSemigroup) -> Result<FiniteInverseSemigroup, AlgebraError> {
    let RawSemigroup { elements, table, zero } = raw;
    let n = elements.len();
    if table.len() != n * n {
        return Err(AlgebraError::TableShape { expected: n * n, found: table.len() });
    }
    let mut index = HashMap::with_capacity(n);
    for (i, name) in elements.iter().enumerate() {
        if index.insert(name.clone(), i).is_some() {
            return Err(AlgebraError::DuplicateElement(name.clone()));
        }
    }
    for (k, &v) in table.iter().enumerate() {
        if v >= n {
            return Err(AlgebraError::ProductOutOfRange { row: k / n, col: k % n, value: v });
        }
    }
    let mul = |a: usize, b: usize| table[a * n + b];

    for a in 0..n {
        for b in 0..n {
            let ab = mul(a, b);
            for c in 0..n {
                if mul(ab, c) != mul(a, mul(b, c)) {
                    return Err(AlgebraError::NotAssociative {
                        a: elements[a].clone(),
                        b: elements[b].clone(),
                        c: elements[c].clone(),
                    });
                }
            }
        }
    }

    let mut star = Vec::with_capacity(n);
    for (s, name) in elements.iter().enumerate() {
        let inverses: Vec<usize> = (0..n)
            .filter(|&t| mul(mul(s, t), s) == s && mul(mul(t, s), t) == t)
            .collect();
        if inverses.len() != 1 {
            return Err(AlgebraError::NoUniqueInverse { element: name.clone(), count: inverses.len() });
        }
        star.push(inverses[0]);
    }

    let absorbing = (0..n).find(|&z| (0..n).all(|s| mul(z, s) == z && mul(s, z) == z));
    let zero = match (zero, absorbing) {
        (None, Some(z)) => z,
        (Some(d), Some(z)) if d == z => z,
        (None, None) => return Err(AlgebraError::NoZero),
        (Some(d), found) => {
            return Err(AlgebraError::ZeroMismatch {
                declared: elements.get(d).cloned().unwrap_or_else(|| format!("#{d}")),
                absorbing: found.map(|z| elements[z].clone()),
            })
        }
    };

    let idempotents = (0..n).filter(|&e| mul(e, e) == e).collect();
    Ok(FiniteInverseSemigroup { names: elements, index, table, star, zero, idempotents })
}

impl FiniteInverseSemigroup {
    /// Convenience constructor from names and a row-major table of indices.
    pub fn from_table(names: Vec<String>, table: Vec<usize>) -> Result<Self, AlgebraError> {
        validate_inverse_semigroup(RawSemigroup { elements: names, table, zero: None })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.len() + b]
    }

    pub fn star(&self, s: usize) -> usize {
        self.star[s]
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn name(&self, s: usize) -> &str {
        &self.names[s]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn is_idempotent(&self, e: usize) -> bool {
        self.mul(e, e) == e
    }

    /// Idempotent elements in increasing index order.
    pub fn idempotents(&self) -> &[usize] {
        &self.idempotents
    }

    /// `s*s`, the source idempotent of `s`.
    pub fn source_idempotent(&self, s: usize) -> usize {
        self.mul(self.star(s), s)
    }

    /// `ss*`, the range idempotent of `s`.
    pub fn range_idempotent(&self, s: usize) -> usize {
        self.mul(s, self.star(s))
    }

    fn require_idempotent(&self, e: usize) -> Result<(), AlgebraError> {
        if self.is_idempotent(e) {
            Ok(())
        } else {
            Err(AlgebraError::NotIdempotent(self.names[e].clone()))
        }
    }

    /// `e <= f` iff `ef = e`.
    pub fn leq(&self, e: usize, f: usize) -> Result<bool, AlgebraError> {
        self.require_idempotent(e)?;
        self.require_idempotent(f)?;
        Ok(self.mul(e, f) == e)
    }

    pub fn orthogonal(&self, e: usize, f: usize) -> Result<bool, AlgebraError> {
        self.require_idempotent(e)?;
        self.require_idempotent(f)?;
        Ok(self.mul(e, f) == self.zero)
    }

    pub fn intersects(&self, e: usize, f: usize) -> Result<bool, AlgebraError> {
        self.orthogonal(e, f).map(|o| !o)
    }

    pub fn to_raw(&self) -> RawSemigroup {
        RawSemigroup { elements: self.names.clone(), table: self.table.clone(), zero: Some(self.zero) }
    }
}

/// The idempotents of an inverse semigroup under the induced product.
///
/// Slots are assigned in increasing element order, so for a semigroup
/// consisting only of idempotents slot `i` is element `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Semilattice {
    members: Vec<usize>,
    slot_of: Vec<Option<usize>>,
    meet: Vec<usize>,
    zero: usize,
    down: Vec<BitSet>,
    up: Vec<BitSet>,
    perp: Vec<BitSet>,
}

pub fn idempotent_semilattice(s: &FiniteInverseSemigroup) -> Semilattice {
    Semilattice::from_semigroup(s)
}

impl Semilattice {
    pub fn from_semigroup(s: &FiniteInverseSemigroup) -> Self {
        let members = s.idempotents().to_vec();
        let k = members.len();
        let mut slot_of = vec![None; s.len()];
        for (slot, &e) in members.iter().enumerate() {
            slot_of[e] = Some(slot);
        }
        let mut meet = Vec::with_capacity(k * k);
        for &e in &members {
            for &f in &members {
                let p = s.mul(e, f);
                meet.push(slot_of[p].expect("product of idempotents is idempotent"));
            }
        }
        let zero = slot_of[s.zero()].expect("zero is idempotent");
        let mut down = vec![BitSet::new(k); k];
        let mut up = vec![BitSet::new(k); k];
        let mut perp = vec![BitSet::new(k); k];
        for a in 0..k {
            for b in 0..k {
                let m = meet[a * k + b];
                if m == a {
                    // a <= b
                    down[b].insert(a);
                    up[a].insert(b);
                }
                if m == zero {
                    perp[a].insert(b);
                }
            }
        }
        Semilattice { members, slot_of, meet, zero, down, up, perp }
    }

    /// Number of idempotents, zero included.
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Semigroup element held by a slot.
    pub fn element(&self, slot: usize) -> usize {
        self.members[slot]
    }

    pub fn elements(&self) -> &[usize] {
        &self.members
    }

    /// Slot of an idempotent element, `None` if it is not idempotent.
    pub fn slot(&self, element: usize) -> Option<usize> {
        self.slot_of.get(element).copied().flatten()
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b]
    }

    /// Meet of a family; `None` for the empty family.
    pub fn meet_all(&self, slots: impl IntoIterator<Item = usize>) -> Option<usize> {
        slots.into_iter().reduce(|a, b| self.meet(a, b))
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.meet(a, b) == a
    }

    pub fn orthogonal(&self, a: usize, b: usize) -> bool {
        self.meet(a, b) == self.zero
    }

    pub fn intersects(&self, a: usize, b: usize) -> bool {
        !self.orthogonal(a, b)
    }

    /// `{f : f <= a}`.
    pub fn down(&self, a: usize) -> &BitSet {
        &self.down[a]
    }

    /// `{f : f >= a}`.
    pub fn up(&self, a: usize) -> &BitSet {
        &self.up[a]
    }

    /// `{f : fa = 0}`.
    pub fn perp(&self, a: usize) -> &BitSet {
        &self.perp[a]
    }

    pub fn all(&self) -> BitSet {
        BitSet::full(self.len())
    }

    pub fn nonzero(&self) -> BitSet {
        let mut set = self.all();
        set.remove(self.zero);
        set
    }

    /// Minimal nonzero idempotents.
    pub fn atoms(&self) -> BitSet {
        let mut atoms = BitSet::new(self.len());
        for a in 0..self.len() {
            if a != self.zero && self.down[a].count() == 2 {
                atoms.insert(a);
            }
        }
        atoms
    }

    /// `E^{X,Y} = {f : f <= x for all x in X, f ⊥ y for all y in Y}`.
    pub fn restricted_ideal(&self, xs: &[usize], ys: &[usize]) -> BitSet {
        let mut set = self.all();
        for &x in xs {
            set.intersect_with(&self.down[x]);
        }
        for &y in ys {
            set.intersect_with(&self.perp[y]);
        }
        set
    }

    /// `Z` covers `F` iff `Z ⊆ F` and every nonzero member of `F` intersects
    /// some member of `Z`. A zero member of `F` places no demand on `Z`.
    pub fn is_cover(&self, z: &BitSet, f: &BitSet) -> bool {
        if !z.is_subset(f) {
            return false;
        }
        f.iter()
            .filter(|&g| g != self.zero)
            .all(|g| z.iter().any(|c| self.intersects(c, g)))
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    fn names(list: &[&str]) -> Vec<String> {
        list.iter().map(|s| s.to_string()).collect()
    }

    /// Subsets of {1,2} under intersection: 0=∅, 1={1}, 2={2}, 3={1,2}.
    pub(crate) fn subsets_of_two() -> FiniteInverseSemigroup {
        let table = (0..4).flat_map(|a| (0..4).map(move |b| a & b)).collect();
        FiniteInverseSemigroup::from_table(names(&["0", "1", "2", "12"]), table).unwrap()
    }

    #[test]
    fn two_element_semilattice_is_valid_with_trivial_star() {
        let s = FiniteInverseSemigroup::from_table(names(&["0", "e"]), vec![0, 0, 0, 1]).unwrap();
        assert_eq!(s.zero(), 0);
        assert_eq!(s.star(0), 0);
        assert_eq!(s.star(1), 1);
        let e = idempotent_semilattice(&s);
        assert_eq!(e.len(), 2);
    }

    #[test]
    fn right_zero_table_has_no_unique_inverse() {
        // ab=b, ba=a, aa=a, bb=b
        let err = FiniteInverseSemigroup::from_table(names(&["a", "b"]), vec![0, 1, 0, 1]).unwrap_err();
        assert_eq!(err, AlgebraError::NoUniqueInverse { element: "a".into(), count: 2 });
    }

    #[test]
    fn symmetric_inverse_monoid_on_one_point() {
        let s = FiniteInverseSemigroup::from_table(names(&["0", "id"]), vec![0, 0, 0, 1]).unwrap();
        assert_eq!(s.star(1), 1);
        assert_eq!(s.star(0), 0);
    }

    #[test]
    fn group_with_zero_has_two_idempotents() {
        // Z/3 = {1, g, g2} plus zero at index 0.
        let n = 4;
        let mut table = vec![0; n * n];
        for a in 1..n {
            for b in 1..n {
                table[a * n + b] = 1 + ((a - 1) + (b - 1)) % 3;
            }
        }
        let s = FiniteInverseSemigroup::from_table(names(&["0", "1", "g", "g2"]), table).unwrap();
        assert_eq!(s.idempotents(), &[0, 1]);
        assert_eq!(s.star(2), 3);
    }

    #[test]
    fn missing_zero_is_reported_and_can_be_adjoined() {
        // Z/2 without a zero.
        let raw = RawSemigroup { elements: names(&["1", "g"]), table: vec![0, 1, 1, 0], zero: None };
        assert_eq!(validate_inverse_semigroup(raw.clone()).unwrap_err(), AlgebraError::NoZero);
        let s = validate_inverse_semigroup(raw.adjoin_zero()).unwrap();
        assert_eq!(s.name(s.zero()), "0");
        assert_eq!(s.len(), 3);
    }

    #[test]
    fn non_associative_table_reports_a_triple() {
        let mut table: Vec<usize> = (0..4).flat_map(|a| (0..4).map(move |b| a & b)).collect();
        table[3 * 4 + 3] = 1; // {1,2}·{1,2} = {1}
        let err = FiniteInverseSemigroup::from_table(names(&["0", "1", "2", "12"]), table).unwrap_err();
        assert!(matches!(err, AlgebraError::NotAssociative { .. }), "{err:?}");
    }

    #[test]
    fn declared_zero_must_absorb() {
        let raw = RawSemigroup { elements: names(&["0", "e"]), table: vec![0, 0, 0, 1], zero: Some(1) };
        assert!(matches!(validate_inverse_semigroup(raw), Err(AlgebraError::ZeroMismatch { .. })));
    }

    #[test]
    fn order_orthogonality_and_intersection() {
        let s = subsets_of_two();
        assert!(s.leq(1, 3).unwrap());
        assert!(s.orthogonal(1, 2).unwrap());
        assert!(s.intersects(1, 3).unwrap());
        for e in 0..4 {
            assert!(s.leq(e, e).unwrap());
        }
    }

    #[test]
    fn order_on_non_idempotent_is_an_error() {
        let table = vec![0, 0, 0, 0, 1, 2, 0, 2, 1];
        let s = FiniteInverseSemigroup::from_table(names(&["0", "1", "g"]), table).unwrap();
        assert_eq!(s.leq(2, 1), Err(AlgebraError::NotIdempotent("g".into())));
    }

    #[test]
    fn restricted_ideal_examples() {
        let s = subsets_of_two();
        let e = idempotent_semilattice(&s);
        assert_eq!(e.restricted_ideal(&[], &[0]), e.all());
        assert_eq!(e.restricted_ideal(&[3], &[1]), BitSet::from_indices(4, [0, 2]));
    }

    #[test]
    fn cover_examples() {
        let s = subsets_of_two();
        let e = idempotent_semilattice(&s);
        let all = e.all();
        assert!(e.is_cover(&all, &all));
        assert!(e.is_cover(&BitSet::from_indices(4, [1, 2]), &all));
        assert!(!e.is_cover(&BitSet::from_indices(4, [0]), &all));
        assert!(!e.is_cover(&BitSet::from_indices(4, [3]), &BitSet::from_indices(4, [1, 2])));
    }

    #[test]
    fn semilattice_input_is_its_own_carrier() {
        let s = subsets_of_two();
        assert_eq!(idempotent_semilattice(&s).elements(), &[0, 1, 2, 3]);
        assert_eq!(idempotent_semilattice(&s).atoms(), BitSet::from_indices(4, [1, 2]));
    }
}
