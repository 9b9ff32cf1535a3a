//! Linking categories and linking groupoids.
//!
//! Run with `cargo run --example linking`.

use bibucalc::bibundle::{check_principal, Side};
use bibucalc::calculus::{identity_bibundle, terminal_morphism};
use bibucalc::groupoid::{cyclic, pair, validate_category, validate_groupoid};
use bibucalc::linking::{linking_category, linking_groupoid, principality_via_linking};

fn main() {
    let m = terminal_morphism(&pair(2));
    let lc = linking_category(&m);
    println!(
        "linking category of eps Pair(2): {} objects, {} arrows, valid {}",
        lc.category.num_objects(),
        lc.category.num_arrows(),
        validate_category(&lc.category).is_valid()
    );
    for side in [Side::Left, Side::Right] {
        let direct = check_principal(&m, side).flags();
        let linked = principality_via_linking(&m, side).flags();
        println!("{side:?}: direct {direct:?}, via linking {linked:?}");
    }

    let lg = linking_groupoid(&identity_bibundle(&cyclic(3))).unwrap();
    println!(
        "linking groupoid of Id Cyc(3): {} objects, {} arrows, valid {}",
        lg.groupoid.num_objects(),
        lg.groupoid.num_arrows(),
        validate_groupoid(&lg.groupoid).is_valid()
    );
    println!("arrow labels: {:?}", lg.groupoid.arrows().labels());

    match linking_groupoid(&terminal_morphism(&cyclic(2))) {
        Ok(_) => println!("unexpected"),
        Err(e) => println!("eps Cyc(2): {e}"),
    }
}
