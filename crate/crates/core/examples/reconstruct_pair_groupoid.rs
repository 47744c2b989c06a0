//! Forgets the bisections behind a table, rebuilds the groupoid and compares.

use ample_germs::corpus::pair_groupoid;
use ample_germs::groupoid::{abstract_table, singleton_semigroup};
use ample_germs::reconstruction::{brute_force_iso, canonical_iso, reconstruct, DEFAULT_MAX_ARROWS};

fn main() {
    let g = pair_groupoid(3);
    let table = abstract_table(&g, &singleton_semigroup(&g), 2024).unwrap();
    let germs = reconstruct(&table.semigroup).unwrap();
    let rebuilt = germs.groupoid();
    println!("{} elements -> {} units, {} arrows", table.semigroup.len(), rebuilt.unit_count(), rebuilt.len());
    let iso = canonical_iso(&g, &germs, &table.audit).unwrap();
    for a in 0..rebuilt.len() {
        println!("{:>8} -> {}", rebuilt.name(a), g.name(iso.apply(a)));
    }
    println!("independent search agrees: {}", brute_force_iso(rebuilt, &g, DEFAULT_MAX_ARROWS).is_ok());
}
