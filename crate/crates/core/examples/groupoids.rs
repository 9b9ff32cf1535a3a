//! Building and validating finite groupoids.
//!
//! Run with `cargo run --example groupoids`.

use bibucalc::fixtures::{permutation_action, standard_groupoids};
use bibucalc::groupoid::{cyclic, disjoint_union, pair, validate_groupoid, FinGroupoid};

fn main() {
    for (name, g) in standard_groupoids() {
        let ok = validate_groupoid(&g).is_valid();
        println!("{name:>16}: {} objects, {:>2} arrows, valid {ok}", g.num_objects(), g.num_arrows());
    }

    // Z/2 swapping two of three points: one free orbit and one fixed point
    let action = permutation_action(2, &[1, 0, 2]);
    for x in 0..action.num_objects() as u32 {
        let isotropy = action.hom(x, x).count();
        println!("isotropy at {}: {isotropy}", action.object_label(x));
    }

    // products are stored lazily and materialized on demand
    let square = FinGroupoid::product(&cyclic(2), &pair(2));
    println!("Cyc(2) x Pair(2): {} arrows, valid {}", square.num_arrows(), validate_groupoid(&square).is_valid());
    let table = square.to_table();
    assert_eq!(table.num_arrows(), square.num_arrows());

    let union = disjoint_union(&[cyclic(3), pair(2)]);
    println!("Cyc(3) + Pair(2): {} objects, labels {:?}", union.num_objects(), union.objects().labels());
}
