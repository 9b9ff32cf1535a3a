//! Composing bibundles: associators, unitors, the pentagon, and
//! functoriality of bundlization.
//!
//! Run with `cargo run --example composition`.

use bibucalc::calculus::{associator_witness, bundlize, compose_bb, find_iso, left_unit_witness, pentagon_paths};
use bibucalc::fixtures::{random_hom, random_right_principal, rng, translation_action};
use bibucalc::groupoid::{cyclic, pair};

fn main() {
    let mut r = rng(42);
    let gs = [pair(2), cyclic(4), translation_action(2, 2), cyclic(2), pair(3)];
    let chain: Vec<_> = (0..4).map(|i| random_right_principal(&mut r, &gs[i], &gs[i + 1])).collect();
    for (i, m) in chain.iter().enumerate() {
        println!("M{i}: {} points", m.len());
    }

    let mn = compose_bb(&chain[0], &chain[1]).unwrap();
    println!("M0 ; M1 has {} points", mn.len());

    let (lhs, rhs, w) = associator_witness(&chain[0], &chain[1], &chain[2]).unwrap();
    println!("associator: {} -> {} points, bijective {}", lhs.len(), rhs.len(), w.len() == lhs.len());
    let (_, unit) = left_unit_witness(&chain[0]).unwrap();
    println!("left unitor on M0 moves {} points", (0..unit.len() as u32).filter(|&p| unit.apply(p) != p).count());

    let (top, bottom) = pentagon_paths(&chain[0], &chain[1], &chain[2], &chain[3]).unwrap();
    println!("pentagon paths agree: {}", top == bottom);

    let phi = random_hom(&mut r, &gs[0], &gs[1]);
    let psi = random_hom(&mut r, &gs[1], &gs[2]);
    let lhs = compose_bb(&bundlize(&phi).unwrap(), &bundlize(&psi).unwrap()).unwrap();
    let rhs = bundlize(&phi.then(&psi).unwrap()).unwrap();
    println!("<phi> ; <psi> = <psi . phi>: {}", find_iso(&lhs, &rhs).is_some());
}
