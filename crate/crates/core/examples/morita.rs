//! Morita equivalences are exactly the biprincipal bibundles.
//!
//! Run with `cargo run --example morita`.

use bibucalc::calculus::{is_weak_isomorphism, terminal_morphism};
use bibucalc::fixtures::{permutation_action, translation_action};
use bibucalc::groupoid::{cyclic, pair};

fn main() {
    let cases = [
        ("Pair(3) -> point", terminal_morphism(&pair(3))),
        ("Z/3 acting freely on 3 points -> point", terminal_morphism(&translation_action(3, 3))),
        ("Z/2 on 3 points -> point", terminal_morphism(&permutation_action(2, &[1, 0, 2]))),
        ("Cyc(2) -> point", terminal_morphism(&cyclic(2))),
    ];
    for (name, m) in &cases {
        let w = is_weak_isomorphism(m);
        print!("{name:>40}: ");
        match &w.inverse {
            Some((inv, a, b)) => println!(
                "Morita equivalence, inverse has {} points, unit witnesses on {} and {} points",
                inv.len(),
                a.len(),
                b.len()
            ),
            None => println!("not invertible (left {:?}, right {:?})", w.left.flags(), w.right.flags()),
        }
    }
}
