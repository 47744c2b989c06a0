//! Finite discrete groupoids and their slices.
//!
//! A finite groupoid carries the discrete topology, so every subset is
//! compact and open and "compact open slice" means "any bisection".

mod bisection;

use std::collections::HashMap;
use std::hash::{DefaultHasher, Hash, Hasher};

use thiserror::Error;

pub use bisection::{
    abstract_table, check_conjugation_lemma, enumerate_bisections, is_basis, lambda_action, singleton_semigroup,
    slice_inverse, slice_product, AbstractSemigroup, AuditMap, Bisection, BisectionSemigroup,
    DEFAULT_MAX_CANDIDATES,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupoidError {
    #[error("identifier `{0}` is declared twice")]
    DuplicateId(String),
    #[error("unknown identifier `{0}`")]
    UnknownId(String),
    #[error("bad units: {0}")]
    BadUnits(String),
    #[error("{left}·{right} declared but d({left}) != r({right})")]
    BadComposabilityDomain { left: String, right: String },
    #[error("{left}·{right} = {result} has the wrong source or range")]
    BadCompositionEndpoints { left: String, right: String, result: String },
    #[error("{left}·{right} is composable but has no declared product")]
    MissingComposition { left: String, right: String },
    #[error("{left}·{right} declared with two different results")]
    ConflictingComposition { left: String, right: String },
    #[error("not associative: ({a}{b}){c} != {a}({b}{c})")]
    NotAssociative { a: String, b: String, c: String },
    #[error("bad inverse for `{arrow}`: {reason}")]
    BadInverse { arrow: String, reason: &'static str },
    #[error("arrow set is not a bisection: {0}")]
    NotABisection(&'static str),
    #[error("enumeration visited more than {bound} candidate subsets")]
    BoundExceeded { bound: usize },
    #[error("unit `{0}` is outside the domain of the slice")]
    OutsideDomain(String),
    #[error("collection not closed: product or inverse of {left} and {right} is missing")]
    NotClosed { left: String, right: String },
    #[error(transparent)]
    Algebra(#[from] crate::algebra::AlgebraError),
}

/// An unvalidated groupoid description. Units are implicitly arrows with
/// `d = r = self`; `arrows` lists the remaining `(id, d, r)` triples.
/// Products involving a unit may be omitted, as may one direction of each
/// inverse pair.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawGroupoid {
    pub units: Vec<String>,
    pub arrows: Vec<(String, String, String)>,
    pub compose: Vec<(String, String, String)>,
    pub inverse: Vec<(String, String)>,
}

/// A validated finite groupoid; units occupy the first arrow indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroupoid {
    names: Vec<String>,
    index: HashMap<String, usize>,
    unit_count: usize,
    source: Vec<usize>,
    range: Vec<usize>,
    inverse: Vec<usize>,
    product: Vec<Option<usize>>,
}

pub fn validate_groupoid(raw: RawGroupoid) -> Result<FiniteGroupoid, GroupoidError> {
    FiniteGroupoid::from_raw(raw)
}

impl FiniteGroupoid {
    pub fn from_raw(raw: RawGroupoid) -> Result<Self, GroupoidError> {
        let unit_count = raw.units.len();
        let mut names: Vec<String> = raw.units.clone();
        names.extend(raw.arrows.iter().map(|(id, _, _)| id.clone()));
        let n = names.len();
        let mut index = HashMap::with_capacity(n);
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(GroupoidError::DuplicateId(name.clone()));
            }
        }
        let lookup = |name: &str| index.get(name).copied().ok_or_else(|| GroupoidError::UnknownId(name.to_string()));
        let unit = |name: &str| -> Result<usize, GroupoidError> {
            let i = lookup(name)?;
            if i < unit_count {
                Ok(i)
            } else {
                Err(GroupoidError::BadUnits(format!("`{name}` is used as an endpoint but is not a unit")))
            }
        };

        let mut source: Vec<usize> = (0..unit_count).collect();
        let mut range: Vec<usize> = (0..unit_count).collect();
        for (_, d, r) in &raw.arrows {
            source.push(unit(d)?);
            range.push(unit(r)?);
        }

        let mut product = vec![None; n * n];
        let name = |i: usize| names[i].clone();
        for (l, r, res) in &raw.compose {
            let (a, b, c) = (lookup(l)?, lookup(r)?, lookup(res)?);
            if source[a] != range[b] {
                return Err(GroupoidError::BadComposabilityDomain { left: name(a), right: name(b) });
            }
            if source[c] != source[b] || range[c] != range[a] {
                return Err(GroupoidError::BadCompositionEndpoints { left: name(a), right: name(b), result: name(c) });
            }
            match product[a * n + b] {
                Some(prev) if prev != c => {
                    return Err(GroupoidError::ConflictingComposition { left: name(a), right: name(b) })
                }
                _ => product[a * n + b] = Some(c),
            }
        }
        // Unit laws fill in (and check) every product with a unit factor.
        for a in 0..n {
            Self::force(&mut product, n, a, source[a], a, &names)?;
            Self::force(&mut product, n, range[a], a, a, &names)?;
        }
        for a in 0..n {
            for b in 0..n {
                if source[a] == range[b] && product[a * n + b].is_none() {
                    return Err(GroupoidError::MissingComposition { left: name(a), right: name(b) });
                }
            }
        }

        let mut inverse: Vec<Option<usize>> = (0..n).map(|i| (i < unit_count).then_some(i)).collect();
        for (a, b) in &raw.inverse {
            let (a, b) = (lookup(a)?, lookup(b)?);
            for (x, y) in [(a, b), (b, a)] {
                match inverse[x] {
                    Some(prev) if prev != y => {
                        return Err(GroupoidError::BadInverse { arrow: name(x), reason: "declared twice with different values" })
                    }
                    _ => inverse[x] = Some(y),
                }
            }
        }
        let mut inv = Vec::with_capacity(n);
        for (a, slot) in inverse.iter().enumerate() {
            let b = slot.ok_or(GroupoidError::BadInverse { arrow: name(a), reason: "no inverse declared" })?;
            if source[b] != range[a] || range[b] != source[a] {
                return Err(GroupoidError::BadInverse { arrow: name(a), reason: "inverse has the wrong endpoints" });
            }
            if product[a * n + b] != Some(range[a]) || product[b * n + a] != Some(source[a]) {
                return Err(GroupoidError::BadInverse { arrow: name(a), reason: "products with the inverse are not units" });
            }
            inv.push(b);
        }

        let g = FiniteGroupoid { names, index, unit_count, source, range, inverse: inv, product };
        for a in 0..n {
            for b in g.composable_with(a) {
                let ab = g.compose(a, b).expect("composable");
                for c in g.composable_with(b) {
                    let bc = g.compose(b, c).expect("composable");
                    if g.compose(ab, c) != g.compose(a, bc) {
                        return Err(GroupoidError::NotAssociative {
                            a: g.names[a].clone(),
                            b: g.names[b].clone(),
                            c: g.names[c].clone(),
                        });
                    }
                }
            }
        }
        Ok(g)
    }

    fn force(
        product: &mut [Option<usize>],
        n: usize,
        a: usize,
        b: usize,
        implied: usize,
        names: &[String],
    ) -> Result<(), GroupoidError> {
        match product[a * n + b] {
            Some(p) if p != implied => Err(GroupoidError::BadUnits(format!(
                "{}·{} must be {} by the unit laws",
                names[a], names[b], names[implied]
            ))),
            _ => {
                product[a * n + b] = Some(implied);
                Ok(())
            }
        }
    }

    /// Number of arrows, units included.
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn unit_count(&self) -> usize {
        self.unit_count
    }

    pub fn units(&self) -> std::ops::Range<usize> {
        0..self.unit_count
    }

    pub fn is_unit(&self, a: usize) -> bool {
        a < self.unit_count
    }

    pub fn source(&self, a: usize) -> usize {
        self.source[a]
    }

    pub fn range(&self, a: usize) -> usize {
        self.range[a]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `a·b`, defined iff `d(a) = r(b)`.
    pub fn compose(&self, a: usize, b: usize) -> Option<usize> {
        self.product[a * self.len() + b]
    }

    /// Arrows `b` with `d(a) = r(b)`.
    pub fn composable_with(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        let d = self.source[a];
        (0..self.len()).filter(move |&b| self.range[b] == d)
    }

    pub fn composable_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.len()).flat_map(move |a| self.composable_with(a).map(move |b| (a, b)))
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// Structural hash, used to tag algebra elements with their groupoid.
    pub fn fingerprint(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.unit_count.hash(&mut h);
        self.source.hash(&mut h);
        self.range.hash(&mut h);
        self.product.hash(&mut h);
        h.finish()
    }

    pub fn to_raw(&self) -> RawGroupoid {
        let units = self.names[..self.unit_count].to_vec();
        let arrows = (self.unit_count..self.len())
            .map(|a| (self.names[a].clone(), self.names[self.source[a]].clone(), self.names[self.range[a]].clone()))
            .collect();
        let compose = self
            .composable_pairs()
            .filter(|&(a, b)| !self.is_unit(a) && !self.is_unit(b))
            .map(|(a, b)| {
                let c = self.compose(a, b).expect("composable");
                (self.names[a].clone(), self.names[b].clone(), self.names[c].clone())
            })
            .collect();
        let inverse = (self.unit_count..self.len())
            .filter(|&a| a <= self.inverse[a])
            .map(|a| (self.names[a].clone(), self.names[self.inverse[a]].clone()))
            .collect();
        RawGroupoid { units, arrows, compose, inverse }
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    fn s(x: &str) -> String {
        x.to_string()
    }

    /// Units x, y and arrows g: x → y, h: y → x.
    pub(crate) fn pair_raw() -> RawGroupoid {
        RawGroupoid {
            units: vec![s("x"), s("y")],
            arrows: vec![(s("g"), s("x"), s("y")), (s("h"), s("y"), s("x"))],
            compose: vec![(s("g"), s("h"), s("y")), (s("h"), s("g"), s("x"))],
            inverse: vec![(s("g"), s("h"))],
        }
    }

    pub(crate) fn pair() -> FiniteGroupoid {
        validate_groupoid(pair_raw()).unwrap()
    }

    #[test]
    fn pair_groupoid_is_valid() {
        let g = pair();
        assert_eq!(g.len(), 4);
        assert_eq!(g.unit_count(), 2);
        let (x, y, gg, h) = (0, 1, 2, 3);
        assert_eq!(g.source(gg), x);
        assert_eq!(g.range(gg), y);
        assert_eq!(g.inverse(gg), h);
        assert_eq!(g.compose(gg, h), Some(y));
        assert_eq!(g.compose(gg, gg), None);
        assert_eq!(g.compose(gg, x), Some(gg));
        assert_eq!(g.compose(y, gg), Some(gg));
    }

    #[test]
    fn units_only_groupoid_is_valid() {
        let raw = RawGroupoid { units: vec![s("a"), s("b"), s("c")], ..Default::default() };
        let g = validate_groupoid(raw).unwrap();
        assert_eq!(g.len(), 3);
        assert_eq!(g.composable_pairs().count(), 3);
    }

    #[test]
    fn composing_non_composable_pair_is_rejected() {
        let mut raw = pair_raw();
        raw.compose.push((s("g"), s("g"), s("g")));
        assert_eq!(
            validate_groupoid(raw),
            Err(GroupoidError::BadComposabilityDomain { left: s("g"), right: s("g") })
        );
    }

    #[test]
    fn missing_products_and_inverses_are_rejected() {
        let mut raw = pair_raw();
        raw.compose.pop();
        assert!(matches!(validate_groupoid(raw), Err(GroupoidError::MissingComposition { .. })));
        let mut raw = pair_raw();
        raw.inverse.clear();
        assert!(matches!(validate_groupoid(raw), Err(GroupoidError::BadInverse { .. })));
    }

    #[test]
    fn duplicate_and_unknown_ids() {
        let mut raw = pair_raw();
        raw.arrows.push((s("g"), s("x"), s("y")));
        assert_eq!(validate_groupoid(raw), Err(GroupoidError::DuplicateId(s("g"))));
        let mut raw = pair_raw();
        raw.arrows[0].1 = s("z");
        assert_eq!(validate_groupoid(raw), Err(GroupoidError::UnknownId(s("z"))));
        let mut raw = pair_raw();
        raw.arrows[0].1 = s("h");
        assert!(matches!(validate_groupoid(raw), Err(GroupoidError::BadUnits(_))));
    }

    #[test]
    fn z2_loop_must_square_to_unit_for_inverse() {
        // g: e → e with g·g = g is not a groupoid.
        let raw = RawGroupoid {
            units: vec![s("e")],
            arrows: vec![(s("g"), s("e"), s("e"))],
            compose: vec![(s("g"), s("g"), s("g"))],
            inverse: vec![(s("g"), s("g"))],
        };
        assert!(matches!(validate_groupoid(raw), Err(GroupoidError::BadInverse { .. })));
    }

    #[test]
    fn raw_round_trip() {
        let g = pair();
        assert_eq!(validate_groupoid(g.to_raw()).unwrap(), g);
    }
}
