//! One PASS/FAIL line per acceptance criterion. Every check is exact.

use std::process::ExitCode;
use std::time::Instant;

use ample_germs::action::germ_groupoid;
use ample_germs::algebra::{FiniteInverseSemigroup, Semilattice};
use ample_germs::bits::BitSet;
use ample_germs::convolution::{check_tight_representation, rho, rho_prime, unit_cover, ConvolutionAlgebra, CoverMode, StarAlgebra};
use ample_germs::corpus::{corpus, pair_groupoid, small_semilattices, CorpusInstance};
use ample_germs::groupoid::{
    abstract_table, check_conjugation_lemma, enumerate_bisections, singleton_semigroup, slice_inverse, slice_product,
    Bisection, BisectionSemigroup, FiniteGroupoid, DEFAULT_MAX_CANDIDATES,
};
use ample_germs::reconstruction::{
    brute_force_iso, canonical_iso, enumerate_bases, equivariance_check, reconstruct, stone_check, DEFAULT_MAX_ARROWS,
};
use ample_germs::spectrum::{
    enumerate_filters_with, tight_violation, ultrafilters, Character, CoverScan, FilterSearch, DEFAULT_FILTER_BOUND,
};

type Outcome = Result<String, String>;

fn collections(g: &FiniteGroupoid) -> Vec<(&'static str, Vec<Bisection>)> {
    let mut out = vec![("singletons", singleton_semigroup(g))];
    if let Ok(full) = enumerate_bisections(g, DEFAULT_MAX_CANDIDATES) {
        out.push(("all bisections", full));
    }
    out
}

fn round_trip(instances: &[CorpusInstance]) -> Outcome {
    let mut checked = 0;
    for inst in instances {
        for (label, c) in collections(&inst.groupoid) {
            let t = abstract_table(&inst.groupoid, &c, 2024).map_err(|e| format!("{} {label}: {e}", inst.name))?;
            let rebuilt = reconstruct(&t.semigroup).map_err(|e| format!("{} {label}: {e}", inst.name))?;
            canonical_iso(&inst.groupoid, &rebuilt, &t.audit).map_err(|e| format!("{} {label}: canonical {e}", inst.name))?;
            brute_force_iso(rebuilt.groupoid(), &inst.groupoid, DEFAULT_MAX_ARROWS)
                .map_err(|e| format!("{} {label}: search {e}", inst.name))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} reconstructions isomorphic to their source"))
}

/// Tight points against maximal filters. Up to the exhaustive bound the
/// filters come from a full subset search and each is scanned both ways;
/// above it, principal filters and the antichain scan are used.
/// Returns whether the exhaustive route was taken.
fn tight_equals_ultra(e: &Semilattice) -> Result<bool, String> {
    let exhaustive = e.len() <= DEFAULT_FILTER_BOUND;
    let search = if exhaustive { FilterSearch::Exhaustive { bound: DEFAULT_FILTER_BOUND } } else { FilterSearch::Principal };
    let filters = enumerate_filters_with(e, search).map_err(|x| x.to_string())?;
    let mut tight: Vec<BitSet> = Vec::new();
    for f in &filters {
        let phi = Character::from(f);
        let fast = tight_violation(&phi, e, CoverScan::Antichains).map_err(|x| x.to_string())?;
        if exhaustive {
            let audit = tight_violation(&phi, e, CoverScan::AllSubsets { max_nonzero: DEFAULT_FILTER_BOUND })
                .map_err(|x| x.to_string())?;
            if audit.is_none() != fast.is_none() {
                return Err(format!("scan modes disagree on {:?}", f.members()));
            }
        }
        if fast.is_none() {
            tight.push(f.members().clone());
        }
    }
    let mut ultra: Vec<BitSet> = ultrafilters(e).iter().map(|f| f.members().clone()).collect();
    tight.sort();
    ultra.sort();
    if tight != ultra {
        return Err(format!("tight {tight:?} vs ultra {ultra:?}"));
    }
    Ok(exhaustive)
}

fn tight_ultra(instances: &[CorpusInstance]) -> Outcome {
    let (mut count, mut large) = (0, 0);
    for inst in instances {
        for (label, c) in collections(&inst.groupoid) {
            let bs = BisectionSemigroup::new(&inst.groupoid, c).map_err(|e| e.to_string())?;
            let exhaustive = tight_equals_ultra(&Semilattice::from_semigroup(bs.semigroup()))
                .map_err(|e| format!("{} {label}: {e}", inst.name))?;
            count += 1;
            large += usize::from(!exhaustive);
        }
    }
    let abstract_ones = small_semilattices(6);
    if abstract_ones.len() != 77 {
        return Err(format!("expected 77 semilattices of size at most 6, generated {}", abstract_ones.len()));
    }
    for (k, e) in abstract_ones.iter().enumerate() {
        tight_equals_ultra(e).map_err(|x| format!("generated semilattice {k}: {x}"))?;
    }
    Ok(format!(
        "{count} corpus semilattices ({large} above the exhaustive bound) and {} generated ones",
        abstract_ones.len()
    ))
}

/// Oracle count of admissible bases by scanning all families of subsets.
fn count_bases(points: usize) -> usize {
    let subsets = 1u64 << points;
    (0u64..1 << subsets)
        .filter(|family| {
            let has = |m: u64| family >> m & 1 == 1;
            has(0)
                && (0..points).all(|x| has(1 << x))
                && (0..subsets).all(|a| !has(a) || (0..subsets).all(|b| !has(b) || has(a & b)))
        })
        .count()
}

fn stone() -> Outcome {
    let mut total = 0;
    for n in 0..=4 {
        let bases = enumerate_bases(n);
        if bases.len() != count_bases(n) {
            return Err(format!("|X| = {n}: {} bases generated, oracle finds {}", bases.len(), count_bases(n)));
        }
        for space in &bases {
            let report = stone_check(space).map_err(|e| format!("|X| = {n}: {e}"))?;
            if report.spectrum_size != n || !(report.injective && report.surjective && report.basic_sets_match) {
                return Err(format!("|X| = {n}: {report:?}"));
            }
        }
        total += bases.len();
    }
    Ok(format!("{total} bases on at most 4 points, all three clauses"))
}

fn conjugation(instances: &[CorpusInstance]) -> Outcome {
    let mut triples = 0;
    for inst in instances {
        let g = &inst.groupoid;
        let all = enumerate_bisections(g, DEFAULT_MAX_CANDIDATES).map_err(|e| e.to_string())?;
        let unit_sets: Vec<&Bisection> = all.iter().filter(|b| b.is_unit_set(g)).collect();
        for s in &all {
            for u in &unit_sets {
                if !check_conjugation_lemma(g, s, u) {
                    return Err(format!("{}: S = {}, U = {}", inst.name, s.describe(g), u.describe(g)));
                }
                triples += s.len();
            }
        }
    }
    Ok(format!("{triples} (arrow, S, U) triples"))
}

fn equivariance(instances: &[CorpusInstance]) -> Outcome {
    let mut pairs = 0;
    for inst in instances {
        for (label, c) in collections(&inst.groupoid) {
            pairs += equivariance_check(&inst.groupoid, &c).map_err(|e| format!("{} {label}: {e}", inst.name))?.checked;
        }
    }
    Ok(format!("{pairs} (S, x) pairs"))
}

fn representation(instances: &[CorpusInstance]) -> Outcome {
    let mut pairs = 0;
    let mut reports = 0;
    for inst in instances {
        let g = &inst.groupoid;
        let alg = ConvolutionAlgebra::new(g);
        let all = enumerate_bisections(g, DEFAULT_MAX_CANDIDATES).map_err(|e| e.to_string())?;
        let indicators: Vec<_> = all.iter().map(|s| rho(&alg, s)).collect();
        for (i, s) in all.iter().enumerate() {
            if alg.star(&indicators[i]).map_err(|e| e.to_string())? != rho(&alg, &slice_inverse(g, s)) {
                return Err(format!("{}: star fails at {}", inst.name, s.describe(g)));
            }
            for (j, t) in all.iter().enumerate() {
                let p = alg.mul(&indicators[i], &indicators[j]).map_err(|e| e.to_string())?;
                if !p.is_indicator() || p != rho(&alg, &slice_product(g, s, t)) {
                    return Err(format!("{}: product fails at {} {}", inst.name, s.describe(g), t.describe(g)));
                }
                pairs += 1;
            }
        }
        for (label, c) in collections(g) {
            let bs = BisectionSemigroup::new(g, c).map_err(|e| e.to_string())?;
            let report = check_tight_representation(&alg, bs.semigroup(), |k| rho(&alg, bs.bisection(k)), CoverMode::Minimal)
                .map_err(|e| e.to_string())?;
            if !report.passed() {
                return Err(format!("{} {label}: rho {:?}", inst.name, report.failures));
            }
            let t = abstract_table(g, bs.bisections(), 7).map_err(|e| e.to_string())?;
            let germs = germ_groupoid(&t.semigroup).map_err(|e| e.to_string())?;
            let galg = ConvolutionAlgebra::new(germs.groupoid());
            let report = check_tight_representation(&galg, &t.semigroup, |k| rho_prime(&galg, &germs, k), CoverMode::Minimal)
                .map_err(|e| e.to_string())?;
            if !report.passed() {
                return Err(format!("{} {label}: rho' {:?}", inst.name, report.failures));
            }
            let cover = unit_cover(&germs).map_err(|e| format!("{} {label}: {e}", inst.name))?;
            let mut join = galg.zero();
            for &e in &cover {
                join = galg.join(&join, &rho_prime(&galg, &germs, e)).map_err(|e| e.to_string())?;
            }
            if join != galg.one() {
                return Err(format!("{} {label}: unit cover join is not 1", inst.name));
            }
            reports += 2;
        }
    }
    Ok(format!("{pairs} indicator products, {reports} tight representations, unit covers join to 1"))
}

/// Independent oracles: subsets filtered by injectivity, idempotents by
/// squaring, tight points by exhaustive scan, germs by direct quotient.
fn derived_counts() -> Outcome {
    let g = pair_groupoid(2);
    let n = g.len();
    let bisections: Vec<BitSet> = (0u64..1 << n)
        .map(|m| BitSet::from_mask(n, m))
        .filter(|set| {
            let d: Vec<usize> = set.iter().map(|a| g.source(a)).collect();
            let r: Vec<usize> = set.iter().map(|a| g.range(a)).collect();
            let distinct = |v: &[usize]| v.iter().enumerate().all(|(i, x)| !v[..i].contains(x));
            distinct(&d) && distinct(&r)
        })
        .collect();
    let g_ref = &g;
    let product = |s: &BitSet, t: &BitSet| {
        BitSet::from_indices(n, s.iter().flat_map(|a| t.iter().filter_map(move |b| g_ref.compose(a, b))))
    };
    let idempotents = bisections.iter().filter(|s| product(s, s) == **s).count();

    let library = enumerate_bisections(&g, DEFAULT_MAX_CANDIDATES).map_err(|e| e.to_string())?;
    let table = abstract_table(&g, &library, 0).map_err(|e| e.to_string())?;
    let e = Semilattice::from_semigroup(&table.semigroup);
    let germs = germ_groupoid(&table.semigroup).map_err(|e| e.to_string())?;

    let filters = enumerate_filters_with(&e, FilterSearch::Exhaustive { bound: DEFAULT_FILTER_BOUND }).map_err(|x| x.to_string())?;
    let tight = filters
        .iter()
        .filter(|f| tight_violation(&Character::from(*f), &e, CoverScan::AllSubsets { max_nonzero: 20 }).ok().flatten().is_none())
        .count();
    let arrows = germ_count(&table.semigroup, &e);

    let got = (library.len(), e.len(), germs.spectrum().len(), germs.groupoid().len());
    let oracle = (bisections.len(), idempotents, tight, arrows);
    let pinned = (7, 4, 2, 4);
    if got != oracle || got != pinned {
        return Err(format!("library {got:?}, oracle {oracle:?}, pinned {pinned:?}"));
    }
    Ok(format!(
        "bisections = {}, idempotents = {}, tight points = {}, germ arrows = {}",
        got.0, got.1, got.2, got.3
    ))
}

/// Germs counted by brute force: pairs (s, ξ) with ξ(s*s) = 1, quotiented by
/// the witness relation computed over all idempotents.
fn germ_count(s: &FiniteInverseSemigroup, e: &Semilattice) -> usize {
    let points: Vec<Character> = ultrafilters(e).iter().map(Character::from).collect();
    let mut count = 0;
    for xi in &points {
        let live: Vec<usize> = (0..s.len()).filter(|&t| xi.value(e.slot(s.mul(s.star(t), t)).unwrap())).collect();
        let related = |a: usize, b: usize| {
            s.idempotents().iter().any(|&f| xi.value(e.slot(f).unwrap()) && s.mul(a, f) == s.mul(b, f))
        };
        let mut reps: Vec<usize> = Vec::new();
        for &t in &live {
            if !reps.iter().any(|&r| related(r, t)) {
                reps.push(t);
            }
        }
        count += reps.len();
    }
    count
}

fn independence(instances: &[CorpusInstance]) -> Outcome {
    let mut comparisons = 0;
    for inst in instances {
        for (label, c) in collections(&inst.groupoid) {
            let mut rebuilt = Vec::new();
            for seed in 0..10u64 {
                let t = abstract_table(&inst.groupoid, &c, seed).map_err(|e| e.to_string())?;
                rebuilt.push(reconstruct(&t.semigroup).map_err(|e| e.to_string())?);
            }
            for i in 0..rebuilt.len() {
                for j in i + 1..rebuilt.len() {
                    brute_force_iso(rebuilt[i].groupoid(), rebuilt[j].groupoid(), DEFAULT_MAX_ARROWS)
                        .map_err(|e| format!("{} {label}: seeds {i} and {j}: {e}", inst.name))?;
                    comparisons += 1;
                }
            }
        }
    }
    Ok(format!("{comparisons} pairwise isomorphisms across 10 seeds"))
}

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn main() -> ExitCode {
    let instances = corpus();
    let criteria: Vec<Criterion> = vec![
        ("round-trip reconstruction", Box::new(|| round_trip(&instances))),
        ("tight equals ultra", Box::new(|| tight_ultra(&instances))),
        ("stone correspondence", Box::new(stone)),
        ("conjugation lemma", Box::new(|| conjugation(&instances))),
        ("equivariance", Box::new(|| equivariance(&instances))),
        ("representation identities", Box::new(|| representation(&instances))),
        ("derived counts", Box::new(derived_counts)),
        ("representation independence", Box::new(|| independence(&instances))),
    ];
    let mut failed = 0;
    for (name, check) in &criteria {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {name}: {detail} ({secs:.2}s)"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name}: {detail} ({secs:.2}s)");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
