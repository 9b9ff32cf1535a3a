//! Seeded fixture generation and the JSON file formats.
//!
//! Run with `cargo run --example fixtures_and_files`.

use bibucalc::bibundle::{check_principal, Side};
use bibucalc::fixtures::{random_groupoid, random_right_principal, rng};
use bibucalc::group::kronecker_finite;
use bibucalc::io;

fn main() {
    let dir = std::env::temp_dir().join("bibucalc-example");
    let mut r = rng(7);
    let g = random_groupoid(&mut r, 8);
    let h = random_groupoid(&mut r, 8);
    let m = random_right_principal(&mut r, &g, &h);
    let path = dir.join("m.json");
    io::save_bibundle(&path, &m).unwrap();
    let back = io::load_bibundle(&path).unwrap();
    println!("wrote {} ({} points), round trip equal {}", path.display(), m.len(), back == m);
    println!("right principal after reload: {}", check_principal(&back, Side::Right).holds());

    let spec = io::save_stacky(&dir, "kronecker_6_2", &kronecker_finite(6, 2).unwrap()).unwrap();
    let d = io::load_stacky(&spec).unwrap();
    println!("spec {} loads as `{}` with mu of {} points", spec.display(), d.name, d.mu.len());
    println!("{}", std::fs::read_to_string(&spec).unwrap());
}
