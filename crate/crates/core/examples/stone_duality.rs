//! Points of a finite space against tight filters of a basis of open sets.

use ample_germs::bits::BitSet;
use ample_germs::reconstruction::{enumerate_bases, phi_point, stone_check, PointBasisSpace};

fn main() {
    let sets = [0b000, 0b001, 0b010, 0b100, 0b011, 0b111];
    let space = PointBasisSpace::new(3, sets.iter().map(|&m| BitSet::from_mask(3, m)).collect()).unwrap();
    for x in 0..space.points() {
        let filter = phi_point(&space, x).unwrap();
        println!("point {x} -> filter of {} basic sets", filter.members().count());
    }
    let report = stone_check(&space).unwrap();
    println!("{report:?}");
    for n in 0..=3 {
        let bases = enumerate_bases(n);
        let passing = bases.iter().filter(|b| stone_check(b).is_ok()).count();
        println!("{n} points: {passing} of {} bases pass", bases.len());
    }
}
