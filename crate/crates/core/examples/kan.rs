//! Nerves and Kan conditions.
//!
//! Run with `cargo run --example kan`.

use bibucalc::groupoid::{cyclic, pair};
use bibucalc::simplicial::{arrow_category, classify, horn_set, kan_check, nerve, truncated_free_monoid};

fn main() {
    let poset = nerve(&arrow_category(), 3).unwrap();
    println!("nerve of 0 -> 1: levels {:?}", (0..=3).map(|n| poset.len(n)).collect::<Vec<_>>());
    println!("horns of shape (2,0): {}", horn_set(&poset, 2, 0).unwrap().len());
    let k = kan_check(&poset, 2, 0, false).unwrap();
    println!("Kan(2,0): {} witness {:?}", k.holds, k.witness);

    for (name, c) in [
        ("0 -> 1", arrow_category()),
        ("free monoid up to a^3", truncated_free_monoid(3)),
        ("Cyc(3)", cyclic(3).to_category()),
        ("Pair(2)", pair(2).to_category()),
    ] {
        let x = nerve(&c, 3).unwrap();
        let cl = classify(&x, 3).unwrap();
        println!(
            "{name:>22}: nerve of a category {}, of a groupoid {}, groupoid level {:?}",
            cl.is_nerve_of_category, cl.is_1_groupoid_nerve, cl.groupoid_level
        );
    }
}
