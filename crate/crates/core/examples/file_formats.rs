//! Writes groupoid and semigroup documents and reads them back.

use ample_germs::corpus::group_bundle;
use ample_germs::groupoid::{abstract_table, singleton_semigroup};
use ample_germs::io::{parse_groupoid, parse_semigroup, print_groupoid, print_semigroup};

fn main() {
    let g = group_bundle();
    let text = print_groupoid(&g);
    print!("{text}");
    assert_eq!(parse_groupoid(&text).unwrap(), g);

    let table = abstract_table(&g, &singleton_semigroup(&g), 0).unwrap().semigroup;
    let text = print_semigroup(&table);
    print!("{text}");
    assert_eq!(parse_semigroup(&text).unwrap(), table);

    let broken = "groupoid {\n  units = [x]\n  arrows = [(x, x, x)]\n}";
    println!("{}", parse_groupoid(broken).unwrap_err());
}
