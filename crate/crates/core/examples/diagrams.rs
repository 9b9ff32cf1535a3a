//! The string-diagram language: parsing, evaluation and identities.
//!
//! Run with `cargo run --example diagrams`.

use bibucalc::diagram::{check_identity, evaluate_str, parse, print, DiagramEnv, GRAPHIC_IDENTITIES};
use bibucalc::groupoid::{cyclic, pair};

fn main() {
    let e = parse("delta ; (id * eps)").unwrap();
    println!("parsed and printed: {}", print(&e));

    let env = DiagramEnv::new(pair(3));
    let coarse = evaluate_str("cv ; (eps * eps)", &env).unwrap();
    println!("coarse moduli of Pair(3) has {} point(s)", coarse.len());

    let env = DiagramEnv::new(cyclic(3));
    let isotropy = evaluate_str("delta ; ev", &env).unwrap();
    println!("isotropy bundle of Cyc(3) has {} points", isotropy.len());

    for (name, lhs, rhs) in GRAPHIC_IDENTITIES {
        let c = check_identity(lhs, rhs, &env).unwrap();
        println!("{name:>22}: {lhs}  ~  {rhs}  [{}]", if c.holds() { "holds" } else { "fails" });
    }

    match check_identity("id ; mu", "id", &env) {
        Ok(_) => println!("unexpected"),
        Err(e) => println!("type error: {e}"),
    }
}
