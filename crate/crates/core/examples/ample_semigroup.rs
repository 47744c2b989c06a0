//! Bisections of the pair groupoid on two points and their multiplication table.

use ample_germs::corpus::pair_groupoid;
use ample_germs::groupoid::{abstract_table, enumerate_bisections, BisectionSemigroup, DEFAULT_MAX_CANDIDATES};
use ample_germs::io::print_semigroup;

fn main() {
    let g = pair_groupoid(2);
    let slices = enumerate_bisections(&g, DEFAULT_MAX_CANDIDATES).unwrap();
    let concrete = BisectionSemigroup::new(&g, slices.clone()).unwrap();
    for (i, b) in concrete.bisections().iter().enumerate() {
        println!("{} = {}", concrete.semigroup().name(i), b.describe(&g));
    }
    println!("{} idempotents", concrete.semigroup().idempotents().len());
    let table = abstract_table(&g, &slices, 11).unwrap();
    print!("{}", print_semigroup(&table.semigroup));
}
