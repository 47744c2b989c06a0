//! Built-in test instances.

use std::collections::BTreeSet;

use crate::algebra::{FiniteInverseSemigroup, Semilattice};
use crate::groupoid::{validate_groupoid, FiniteGroupoid, RawGroupoid};

#[derive(Debug, Clone)]
pub struct CorpusInstance {
    pub name: String,
    pub groupoid: FiniteGroupoid,
}

/// `X × X` for `X = {0..n}`: arrow `e{i}{j}` goes from `x{j}` to `x{i}`.
pub fn pair_groupoid(n: usize) -> FiniteGroupoid {
    assert!((1..=9).contains(&n));
    let unit = |i: usize| format!("x{i}");
    let arrow = |i: usize, j: usize| if i == j { unit(i) } else { format!("e{i}{j}") };
    let mut raw = RawGroupoid { units: (0..n).map(unit).collect(), ..Default::default() };
    for i in 0..n {
        for j in (0..n).filter(|&j| j != i) {
            raw.arrows.push((arrow(i, j), unit(j), unit(i)));
            if i < j {
                raw.inverse.push((arrow(i, j), arrow(j, i)));
            }
            for k in 0..n {
                // (i ← j)(j ← k) = (i ← k)
                if k != j {
                    raw.compose.push((arrow(i, j), arrow(j, k), arrow(i, k)));
                }
            }
        }
    }
    validate_groupoid(raw).expect("pair groupoid is valid")
}

/// `Z/n` as a groupoid with one unit `e`.
pub fn cyclic_group(n: usize) -> FiniteGroupoid {
    assert!(n >= 1);
    let name = |k: usize| if k == 0 { "e".to_string() } else { format!("g{k}") };
    let mut raw = RawGroupoid { units: vec![name(0)], ..Default::default() };
    for k in 1..n {
        raw.arrows.push((name(k), name(0), name(0)));
        if k <= n - k {
            raw.inverse.push((name(k), name(n - k)));
        }
        for j in 1..n {
            raw.compose.push((name(k), name(j), name((k + j) % n)));
        }
    }
    validate_groupoid(raw).expect("cyclic group is valid")
}

/// `n` units and nothing else.
pub fn units_only(n: usize) -> FiniteGroupoid {
    validate_groupoid(RawGroupoid { units: (0..n).map(|i| format!("u{i}")).collect(), ..Default::default() })
        .expect("unit space is valid")
}

/// Disjoint union, with names prefixed `L.` and `R.`.
pub fn disjoint_union(left: &FiniteGroupoid, right: &FiniteGroupoid) -> FiniteGroupoid {
    let (l, r) = (left.to_raw(), right.to_raw());
    let pre = |p: &str, s: &String| format!("{p}{s}");
    let map_raw = |raw: RawGroupoid, p: &str| RawGroupoid {
        units: raw.units.iter().map(|u| pre(p, u)).collect(),
        arrows: raw.arrows.iter().map(|(a, d, r)| (pre(p, a), pre(p, d), pre(p, r))).collect(),
        compose: raw.compose.iter().map(|(a, b, c)| (pre(p, a), pre(p, b), pre(p, c))).collect(),
        inverse: raw.inverse.iter().map(|(a, b)| (pre(p, a), pre(p, b))).collect(),
    };
    let (l, r) = (map_raw(l, "L."), map_raw(r, "R."));
    let raw = RawGroupoid {
        units: l.units.into_iter().chain(r.units).collect(),
        arrows: l.arrows.into_iter().chain(r.arrows).collect(),
        compose: l.compose.into_iter().chain(r.compose).collect(),
        inverse: l.inverse.into_iter().chain(r.inverse).collect(),
    };
    validate_groupoid(raw).expect("disjoint union is valid")
}

/// Two units, each carrying its own copy of `Z/2`.
pub fn group_bundle() -> FiniteGroupoid {
    let mut raw = RawGroupoid { units: vec!["a".into(), "b".into()], ..Default::default() };
    for u in ["a", "b"] {
        let t = format!("t{u}");
        raw.arrows.push((t.clone(), u.into(), u.into()));
        raw.compose.push((t.clone(), t.clone(), u.into()));
        raw.inverse.push((t.clone(), t));
    }
    validate_groupoid(raw).expect("group bundle is valid")
}

/// The built-in family, smallest first within each kind.
pub fn corpus() -> Vec<CorpusInstance> {
    let mut out = Vec::new();
    let mut add = |name: &str, groupoid: FiniteGroupoid| out.push(CorpusInstance { name: name.to_string(), groupoid });
    for n in 2..=4 {
        add(&format!("pair{n}"), pair_groupoid(n));
    }
    for n in 2..=4 {
        add(&format!("Z{n}"), cyclic_group(n));
    }
    for n in 1..=4 {
        add(&format!("units{n}"), units_only(n));
    }
    add("pair2+Z2", disjoint_union(&pair_groupoid(2), &cyclic_group(2)));
    add("Z2+Z3", disjoint_union(&cyclic_group(2), &cyclic_group(3)));
    add("pair2+pair2", disjoint_union(&pair_groupoid(2), &pair_groupoid(2)));
    add("pair2+units2", disjoint_union(&pair_groupoid(2), &units_only(2)));
    add("pair3+units2", disjoint_union(&pair_groupoid(3), &units_only(2)));
    add("bundle", group_bundle());
    out
}

pub fn find(name: &str) -> Option<CorpusInstance> {
    corpus().into_iter().find(|c| c.name == name)
}

/// All semilattices with zero of size `n`, one per isomorphism class.
///
/// Builds every partial order on the nonzero elements that is compatible
/// with their index order, adds a bottom, keeps the ones in which all
/// pairwise meets exist, and deduplicates by a canonical relabelling.
pub fn semilattices_of_size(n: usize) -> Vec<FiniteInverseSemigroup> {
    assert!((1..=7).contains(&n), "size must be between 1 and 7");
    let m = n - 1;
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u64..1 << pairs.len() {
        // below[i][j]: i < j
        let mut below = vec![vec![false; m]; m];
        for (k, &(i, j)) in pairs.iter().enumerate() {
            below[i][j] = mask >> k & 1 == 1;
        }
        let transitive = (0..m).all(|i| (0..m).all(|j| (0..m).all(|k| !(below[i][j] && below[j][k]) || below[i][k])));
        if !transitive {
            continue;
        }
        let Some(meet) = meets(&below) else { continue };
        let key = canonical_key(&below);
        if seen.insert(key) {
            out.push(meet_semigroup(&meet));
        }
    }
    out
}

/// Meet table over `0..=m` with `0` the bottom and `i + 1` the nonzero
/// element `i`, or `None` if some pair has no greatest lower bound.
fn meets(below: &[Vec<bool>]) -> Option<Vec<usize>> {
    let m = below.len();
    let le = |a: usize, b: usize| a == 0 || a == b || (a > 0 && b > 0 && below[a - 1][b - 1]);
    let size = m + 1;
    let mut table = vec![0; size * size];
    for a in 0..size {
        for b in 0..size {
            let lower: Vec<usize> = (0..size).filter(|&c| le(c, a) && le(c, b)).collect();
            let greatest = lower.iter().copied().find(|&c| lower.iter().all(|&d| le(d, c)))?;
            table[a * size + b] = greatest;
        }
    }
    Some(table)
}

fn canonical_key(below: &[Vec<bool>]) -> Vec<bool> {
    let m = below.len();
    let mut perm: Vec<usize> = (0..m).collect();
    let mut best: Option<Vec<bool>> = None;
    loop {
        let key: Vec<bool> = (0..m).flat_map(|i| (0..m).map(move |j| (i, j))).map(|(i, j)| below[perm[i]][perm[j]]).collect();
        if best.as_ref().is_none_or(|b| key < *b) {
            best = Some(key);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    best.unwrap_or_default()
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else { return false };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("pivot has a successor");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn meet_semigroup(table: &[usize]) -> FiniteInverseSemigroup {
    let size = (table.len() as f64).sqrt() as usize;
    let names = (0..size).map(|i| if i == 0 { "0".to_string() } else { format!("f{i}") }).collect();
    FiniteInverseSemigroup::from_table(names, table.to_vec()).expect("meet tables are semilattices")
}

/// Every generated semilattice of size at most `max`.
pub fn small_semilattices(max: usize) -> Vec<Semilattice> {
    (1..=max).flat_map(semilattices_of_size).map(|s| Semilattice::from_semigroup(&s)).collect()
}
