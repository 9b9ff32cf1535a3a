//! A textual string-diagram language over one base groupoid `G`.
//!
//! Wires are copies of `G`; a diagram with `m` inputs and `n` outputs
//! evaluates to a `G^m`-`G^n` bibundle. Identities are decided by
//! isomorphism search, never by rewriting.

pub mod eval;
pub mod parse;

pub use eval::{
    check_identity, evaluate, evaluate_str, power_of, typecheck, DiagramEnv, IdentityCheck, BUILTINS,
};
pub use parse::{parse, print, Expr, Node, Span};

/// Identities that hold in the diagram calculus of every groupoid, as
/// `(name, lhs, rhs)`.
pub const GRAPHIC_IDENTITIES: &[(&str, &str, &str)] = &[
    ("coassociativity", "delta ; (delta * id)", "delta ; (id * delta)"),
    ("left counit", "delta ; (eps * id)", "id"),
    ("right counit", "delta ; (id * eps)", "id"),
    ("cocommutativity", "delta ; tau", "delta"),
    ("zig-zag", "(cv * id) ; (id * ev)", "id"),
    ("zag-zig", "(id * cv) ; (ev * id)", "id"),
    ("cv and delta, left", "cv ; (delta * eps)", "cv"),
    ("cv and delta, right", "cv ; (eps * delta)", "cv"),
    ("flip involution", "tau ; tau", "id * id"),
    ("flip natural in delta", "(delta * id) ; (id * tau) ; (tau * id)", "tau ; (id * delta)"),
    ("flip natural in eps", "tau ; (eps * id)", "id * eps"),
    ("ev symmetric", "tau ; ev", "ev"),
    ("cv symmetric", "cv ; tau", "cv"),
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::standard_groupoids;

    #[test]
    fn graphic_identities_on_small_fixtures() {
        for (name, g) in standard_groupoids().into_iter().filter(|(_, g)| g.num_arrows() <= 4) {
            let env = DiagramEnv::new(g);
            for (id, lhs, rhs) in GRAPHIC_IDENTITIES {
                assert!(check_identity(lhs, rhs, &env).unwrap().holds(), "{id} on {name}");
            }
        }
    }
}
