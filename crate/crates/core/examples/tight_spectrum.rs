//! Filters, ultrafilters and tight characters of the subsets of {1, 2, 3}.

use ample_germs::algebra::{FiniteInverseSemigroup, Semilattice};
use ample_germs::spectrum::{enumerate_filters, tight_spectrum, ultrafilters};

fn main() {
    let names: Vec<String> = (0..8u32).map(|m| format!("{{{}}}", (1..=3).filter(|i| m >> (i - 1) & 1 == 1).map(|i| i.to_string()).collect::<Vec<_>>().join(""))).collect();
    let table: Vec<usize> = (0..64).map(|k| (k / 8) & (k % 8)).collect();
    let s = FiniteInverseSemigroup::from_table(names, table).unwrap();
    let e = Semilattice::from_semigroup(&s);
    println!("{} filters, {} ultrafilters", enumerate_filters(&e).len(), ultrafilters(&e).len());
    let spectrum = tight_spectrum(&e).unwrap();
    for (p, phi) in spectrum.points().iter().enumerate() {
        let members: Vec<&str> = phi.support().members().iter().map(|slot| s.name(e.element(slot))).collect();
        println!("p{p}: {}", members.join(" "));
    }
}
