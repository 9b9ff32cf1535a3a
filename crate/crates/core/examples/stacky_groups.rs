//! Group objects among groupoids and bibundles: the group test through
//! the preinverse, and coherence of the structure witnesses.
//!
//! Run with `cargo run --example stacky_groups`.

use bibucalc::calculus::find_iso;
use bibucalc::group::{check_coherence, check_group, kronecker_finite, monoid_not_group, preinverse};

fn main() {
    for (n, q) in [(2, 1), (4, 2), (6, 3)] {
        let mut d = kronecker_finite(n, q).unwrap();
        let rep = check_group(&mut d).unwrap();
        let coh = check_coherence(&mut d).unwrap();
        let s = preinverse(&d).unwrap();
        let same = d.inv.as_ref().is_some_and(|i| find_iso(&s, i).is_some());
        println!(
            "{}: {} objects, {} arrows; group {}; preinverse ({} points) matches inverse {same}; coherent {}",
            d.name,
            d.base.num_objects(),
            d.base.num_arrows(),
            rep.holds,
            s.len(),
            coh.holds
        );
    }

    let mut m = monoid_not_group();
    let rep = check_group(&mut m).unwrap();
    println!("{}: group {} (left {:?}, right {:?})", m.name, rep.holds, rep.left.flags(), rep.right.flags());
}
