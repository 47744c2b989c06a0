//! Germs of the cyclic group of order three acting on a single point.

use ample_germs::action::germ_groupoid;
use ample_germs::algebra::{validate_inverse_semigroup, RawSemigroup};

fn main() {
    let elements = vec!["e".into(), "g".into(), "gg".into()];
    let table = (0..9).map(|k| (k / 3 + k % 3) % 3).collect();
    let s = validate_inverse_semigroup(RawSemigroup { elements, table, zero: None }.adjoin_zero()).unwrap();
    let germs = germ_groupoid(&s).unwrap();
    let g = germs.groupoid();
    println!("{} points, {} germs", germs.spectrum().len(), g.len());
    for a in 0..g.len() {
        let germ = germs.germ(a);
        let members: Vec<&str> = germ.members.iter().map(|&m| s.name(m)).collect();
        println!("{} = [{}, p{}], members {:?}", g.name(a), s.name(germ.representative), germ.base, members);
    }
}
