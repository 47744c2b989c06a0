//! Validates a few multiplication tables and reports why the bad ones fail.

use ample_germs::algebra::{validate_inverse_semigroup, RawSemigroup};

fn raw(elements: &[&str], table: &[usize]) -> RawSemigroup {
    RawSemigroup { elements: elements.iter().map(|s| s.to_string()).collect(), table: table.to_vec(), zero: None }
}

fn main() {
    let cases = [
        ("two-element semilattice", raw(&["0", "e"], &[0, 0, 0, 1])),
        ("right-zero band", raw(&["0", "a", "b"], &[0, 0, 0, 0, 1, 2, 0, 1, 2])),
        ("cyclic group without zero", raw(&["e", "g"], &[0, 1, 1, 0])),
    ];
    for (label, table) in cases {
        match validate_inverse_semigroup(table.clone()) {
            Ok(s) => println!("{label}: ok, {} idempotents", s.idempotents().len()),
            Err(e) => println!("{label}: {e}"),
        }
    }
    let with_zero = validate_inverse_semigroup(raw(&["e", "g"], &[0, 1, 1, 0]).adjoin_zero()).unwrap();
    for a in 0..with_zero.len() {
        println!("  {}* = {}", with_zero.name(a), with_zero.name(with_zero.star(a)));
    }
}
