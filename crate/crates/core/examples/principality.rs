//! Principality conditions and the bibundle pairing.
//!
//! Run with `cargo run --example principality`.

use bibucalc::bibundle::{check_pairing_axioms, check_principal, compute_pairing, Side};
use bibucalc::calculus::{bundlize, cv, identity_bibundle, terminal_morphism};
use bibucalc::groupoid::{cyclic, pair, GroupoidHom};

fn main() {
    let g = cyclic(4);
    let cases = [
        ("Id Cyc(4)", identity_bibundle(&g)),
        ("eps Pair(3)", terminal_morphism(&pair(3))),
        ("Cv Cyc(2)", cv(&cyclic(2))),
        (
            "bundlize Cyc(4) -> Cyc(2)",
            bundlize(&GroupoidHom::new(cyclic(4), cyclic(2), vec![0], vec![0, 1, 0, 1]).unwrap()).unwrap(),
        ),
    ];
    for (name, b) in &cases {
        let right = check_principal(b, Side::Right);
        let left = check_principal(b, Side::Left);
        println!("{name:>26}: right {:?}, left {:?}", right.flags(), left.flags());
        match compute_pairing(b) {
            Ok(p) => println!("{:>26}  pairing with {} entries, axioms hold: {}", "", p.len(), check_pairing_axioms(b, &p).is_valid()),
            Err(e) => println!("{:>26}  no pairing: {e}", ""),
        }
    }

    // on Id_G the pairing is <g, g'> = g^-1 g'
    let id = identity_bibundle(&g);
    let p = compute_pairing(&id).unwrap();
    for (m, m2, k) in p.entries().into_iter().take(4) {
        println!("<{}, {}> = {}", id.label(m), id.label(m2), g.arrow_label(k));
    }
}
