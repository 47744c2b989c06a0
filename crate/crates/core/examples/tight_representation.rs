//! Indicator functions of bisections inside the convolution algebra.

use ample_germs::action::germ_groupoid;
use ample_germs::convolution::{check_tight_representation, rho, unit_cover, ConvolutionAlgebra, CoverMode};
use ample_germs::corpus::{cyclic_group, disjoint_union, pair_groupoid};
use ample_germs::groupoid::{abstract_table, enumerate_bisections, BisectionSemigroup, DEFAULT_MAX_CANDIDATES};

fn main() {
    let g = disjoint_union(&pair_groupoid(2), &cyclic_group(2));
    let slices = enumerate_bisections(&g, DEFAULT_MAX_CANDIDATES).unwrap();
    let concrete = BisectionSemigroup::new(&g, slices.clone()).unwrap();
    let alg = ConvolutionAlgebra::new(&g);
    for mode in [CoverMode::Minimal, CoverMode::Audit] {
        let report = check_tight_representation(&alg, concrete.semigroup(), |k| rho(&alg, concrete.bisection(k)), mode).unwrap();
        println!("{mode:?}: passed = {}, {} tightness instances", report.passed(), report.instances);
    }
    let table = abstract_table(&g, &slices, 1).unwrap();
    let germs = germ_groupoid(&table.semigroup).unwrap();
    let cover = unit_cover(&germs).unwrap();
    let described: Vec<String> = cover.iter().map(|&e| table.audit.bisection(e).describe(&g)).collect();
    println!("unit cover: {}", described.join(" + "));
}
