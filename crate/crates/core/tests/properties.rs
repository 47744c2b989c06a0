use ample_germs::action::germ_groupoid;
use ample_germs::bits::BitSet;
use ample_germs::convolution::{ConvolutionAlgebra, StarAlgebra};
use ample_germs::corpus::{corpus, CorpusInstance};
use ample_germs::groupoid::{
    abstract_table, enumerate_bisections, singleton_semigroup, slice_inverse, slice_product, Bisection,
    DEFAULT_MAX_CANDIDATES,
};
use ample_germs::io::{parse_groupoid, parse_semigroup, print_groupoid, print_semigroup};
use ample_germs::reconstruction::{brute_force_iso, reconstruct, DEFAULT_MAX_ARROWS};
use num_rational::Rational64;
use proptest::prelude::*;

fn instance(index: usize) -> CorpusInstance {
    let all = corpus();
    all[index % all.len()].clone()
}

fn collection(inst: &CorpusInstance, singletons: bool) -> Vec<Bisection> {
    if singletons {
        singleton_semigroup(&inst.groupoid)
    } else {
        enumerate_bisections(&inst.groupoid, DEFAULT_MAX_CANDIDATES).unwrap()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn documents_round_trip(index in 0usize..64, seed in any::<u64>(), singletons in any::<bool>()) {
        let inst = instance(index);
        let g = &inst.groupoid;
        prop_assert_eq!(&parse_groupoid(&print_groupoid(g)).unwrap(), g);
        let table = abstract_table(g, &collection(&inst, singletons), seed).unwrap().semigroup;
        prop_assert_eq!(parse_semigroup(&print_semigroup(&table)).unwrap(), table);
    }

    #[test]
    fn subsets_are_bisections_exactly_when_injective(index in 0usize..64, mask in any::<u64>()) {
        let g = instance(index).groupoid;
        let arrows = BitSet::from_mask(g.len(), mask & ((1u64 << g.len()) - 1));
        let sources: Vec<usize> = arrows.iter().map(|a| g.source(a)).collect();
        let ranges: Vec<usize> = arrows.iter().map(|a| g.range(a)).collect();
        let distinct = |v: &[usize]| (0..v.len()).all(|i| (0..i).all(|j| v[i] != v[j]));
        prop_assert_eq!(Bisection::new(&g, arrows).is_ok(), distinct(&sources) && distinct(&ranges));
    }

    #[test]
    fn action_laws(index in 0usize..64, seed in any::<u64>(), singletons in any::<bool>(), picks in any::<(usize, usize)>()) {
        let inst = instance(index);
        let table = abstract_table(&inst.groupoid, &collection(&inst, singletons), seed).unwrap().semigroup;
        let germs = germ_groupoid(&table).unwrap();
        let theta = germs.action();
        let (s, t) = (picks.0 % table.len(), picks.1 % table.len());
        let st = table.mul(s, t);
        for point in 0..germs.spectrum().len() {
            let composed = theta.apply(t, point).and_then(|q| theta.apply(s, q));
            prop_assert_eq!(composed, theta.apply(st, point));
            if let Some(q) = theta.apply(s, point) {
                prop_assert_eq!(theta.apply(table.star(s), q), Some(point));
            }
        }
        prop_assert!(theta.domain(table.zero()).is_empty());
    }

    #[test]
    fn slices_of_germs_multiply_like_the_table(index in 0usize..64, seed in any::<u64>(), singletons in any::<bool>(), picks in any::<(usize, usize)>()) {
        let inst = instance(index);
        let table = abstract_table(&inst.groupoid, &collection(&inst, singletons), seed).unwrap().semigroup;
        let germs = germ_groupoid(&table).unwrap();
        let h = germs.groupoid();
        let (s, t) = (picks.0 % table.len(), picks.1 % table.len());
        let product = slice_product(h, &germs.slice_of(s), &germs.slice_of(t));
        prop_assert_eq!(germs.slice_of(table.mul(s, t)), product);
        prop_assert_eq!(germs.slice_of(table.star(s)), slice_inverse(h, &germs.slice_of(s)));
    }

    #[test]
    fn reconstruction_does_not_depend_on_the_seed(index in 0usize..64, seeds in any::<(u64, u64)>(), singletons in any::<bool>()) {
        let inst = instance(index);
        let slices = collection(&inst, singletons);
        let first = reconstruct(&abstract_table(&inst.groupoid, &slices, seeds.0).unwrap().semigroup).unwrap();
        let second = reconstruct(&abstract_table(&inst.groupoid, &slices, seeds.1).unwrap().semigroup).unwrap();
        prop_assert!(brute_force_iso(first.groupoid(), second.groupoid(), DEFAULT_MAX_ARROWS).is_ok());
        prop_assert!(brute_force_iso(first.groupoid(), &inst.groupoid, DEFAULT_MAX_ARROWS).is_ok());
    }

    #[test]
    fn convolution_is_an_associative_star_algebra(index in 0usize..64, raw in prop::collection::vec(-3i64..=3, 48)) {
        let g = instance(index).groupoid;
        let alg = ConvolutionAlgebra::new(&g);
        let n = g.len();
        let element = |k: usize| alg.from_coefficients((0..n).map(|a| Rational64::from(raw[(k * n + a) % raw.len()])).collect());
        let (f, h, k) = (element(0), element(1), element(2));
        let left = alg.mul(&alg.mul(&f, &h).unwrap(), &k).unwrap();
        let right = alg.mul(&f, &alg.mul(&h, &k).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(alg.star(&alg.mul(&f, &h).unwrap()).unwrap(), alg.mul(&alg.star(&h).unwrap(), &alg.star(&f).unwrap()).unwrap());
        prop_assert_eq!(alg.mul(&alg.one(), &f).unwrap(), f.clone());
        prop_assert_eq!(alg.mul(&f, &alg.add(&h, &k).unwrap()).unwrap(), alg.add(&alg.mul(&f, &h).unwrap(), &alg.mul(&f, &k).unwrap()).unwrap());
    }
}
