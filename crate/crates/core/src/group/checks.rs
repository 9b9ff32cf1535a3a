use serde::Serialize;

use super::StackyGroupData;
use crate::bibundle::{Bibundle, PrincipalityReport};
use crate::calculus::{find_iso, is_weak_isomorphism, unit_bibundle, IsoWitness};
use crate::diagram::{check_identity, evaluate_str, DiagramEnv};
use crate::error::Result;

/// The preinverse `(Cv × Id × e) ∘ (Id × μ × Id) ∘ (Id × Ev)` as a diagram.
pub const PREINVERSE: &str = "(cv * id * e) ; (id * mu * id) ; (id * ev)";

/// Result of one identity check, with the witness as a label table.
#[derive(Debug, Clone, Serialize)]
pub struct IdentityOutcome {
    pub name: String,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
    pub witness: Option<Vec<(String, String)>>,
}

fn identity(name: &str, lhs: &str, rhs: &str, env: &DiagramEnv) -> Result<(IdentityOutcome, Option<IsoWitness>)> {
    let c = check_identity(lhs, rhs, env)?;
    let out = IdentityOutcome {
        name: name.into(),
        lhs: lhs.into(),
        rhs: rhs.into(),
        holds: c.holds(),
        witness: c.witness.as_ref().map(|w| w.labeled(&c.lhs, &c.rhs)),
    };
    Ok((out, c.witness))
}

fn direct(name: &str, lhs_text: &str, lhs: &Bibundle, rhs_text: &str, rhs: &Bibundle) -> IdentityOutcome {
    let w = find_iso(lhs, rhs);
    IdentityOutcome {
        name: name.into(),
        lhs: lhs_text.into(),
        rhs: rhs_text.into(),
        holds: w.is_some(),
        witness: w.map(|w| w.labeled(lhs, rhs)),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MonoidReport {
    pub associativity: IdentityOutcome,
    pub left_unit: IdentityOutcome,
    pub right_unit: IdentityOutcome,
}

impl MonoidReport {
    pub fn holds(&self) -> bool {
        self.associativity.holds && self.left_unit.holds && self.right_unit.holds
    }
}

/// Searches for the associator and both unitors and stores them in `d`.
pub fn check_monoid(d: &mut StackyGroupData) -> Result<MonoidReport> {
    let env = d.env();
    let (associativity, ass) = identity("associativity", "(mu * id) ; mu", "(id * mu) ; mu", &env)?;
    let (left_unit, luni) = identity("left unit", "(e * id) ; mu", "id", &env)?;
    let (right_unit, runi) = identity("right unit", "(id * e) ; mu", "id", &env)?;
    d.ass = ass;
    d.luni = luni;
    d.runi = runi;
    Ok(MonoidReport {
        associativity,
        left_unit,
        right_unit,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct BimonoidReport {
    pub identities: Vec<IdentityOutcome>,
}

impl BimonoidReport {
    pub fn holds(&self) -> bool {
        self.identities.iter().all(|i| i.holds)
    }
}

/// Compatibility of `mu`, `e` with the comonoid `delta`, `eps`.
pub fn check_bimonoid(d: &StackyGroupData) -> Result<BimonoidReport> {
    let env = d.env();
    let mut identities = Vec::new();
    for (name, lhs, rhs) in [
        ("counit of product", "mu ; eps", "eps * eps"),
        ("diagonal of product", "mu ; delta", "(delta * delta) ; (id * tau * id) ; (mu * mu)"),
        ("diagonal of unit", "e ; delta", "e * e"),
    ] {
        identities.push(identity(name, lhs, rhs, &env)?.0);
    }
    let e_eps = evaluate_str("e ; eps", &env)?;
    identities.push(direct("counit of unit", "e ; eps", &e_eps, "empty diagram", &unit_bibundle()));
    Ok(BimonoidReport { identities })
}

/// Evaluates [`PREINVERSE`] in the environment of `d`.
pub fn preinverse(d: &StackyGroupData) -> Result<Bibundle> {
    evaluate_str(PREINVERSE, &d.env())
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupReport {
    /// The preinverse is a weak isomorphism.
    pub holds: bool,
    pub preinverse_points: usize,
    pub right: PrincipalityReport,
    pub left: PrincipalityReport,
    /// Present only when an inverse bibundle is supplied.
    pub left_inverse: Option<IdentityOutcome>,
    pub right_inverse: Option<IdentityOutcome>,
    pub inverse_is_preinverse: Option<bool>,
}

/// A monoid object is a group iff its preinverse is a weak isomorphism.
/// With `inv` bound, also checks both inverse laws and that `inv` agrees
/// with the preinverse; their witnesses are stored in `d`.
pub fn check_group(d: &mut StackyGroupData) -> Result<GroupReport> {
    let s = preinverse(d)?;
    let weak = is_weak_isomorphism(&s);
    let mut report = GroupReport {
        holds: weak.holds,
        preinverse_points: s.len(),
        right: weak.right,
        left: weak.left,
        left_inverse: None,
        right_inverse: None,
        inverse_is_preinverse: None,
    };
    if let Some(i) = &d.inv {
        let env = d.env();
        let (l, lw) = identity("left inverse", "delta ; (inv * id) ; mu", "eps ; e", &env)?;
        let (r, rw) = identity("right inverse", "delta ; (id * inv) ; mu", "eps ; e", &env)?;
        d.linv = lw;
        d.rinv = rw;
        report.left_inverse = Some(l);
        report.right_inverse = Some(r);
        report.inverse_is_preinverse = Some(find_iso(i, &s).is_some());
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::{bundlize, verify_iso};
    use crate::group::{discrete_monoid, kronecker_finite, monoid_not_group, plain_group};
    use crate::groupoid::{cyclic, GroupoidHom};

    #[test]
    fn plain_cyclic_group() {
        let mut d = plain_group(&cyclic(3)).unwrap();
        assert!(check_monoid(&mut d).unwrap().holds());
        assert!(check_bimonoid(&d).unwrap().holds());
        let g = check_group(&mut d).unwrap();
        assert!(g.holds);
        assert_eq!(g.left_inverse.as_ref().map(|o| o.holds), Some(true));
        assert_eq!(g.inverse_is_preinverse, Some(true));
    }

    #[test]
    fn preinverse_of_cyclic_is_negation() {
        let d = plain_group(&cyclic(5)).unwrap();
        let s = preinverse(&d).unwrap();
        let neg = GroupoidHom::new(
            d.base.clone(),
            d.base.clone(),
            (0..5).map(|x| (5 - x) % 5).collect(),
            (0..5).map(|x| (5 - x) % 5).collect(),
        )
        .unwrap();
        let b = bundlize(&neg).unwrap();
        let w = find_iso(&s, &b).expect("preinverse is negation");
        assert!(verify_iso(&s, &b, &w).is_valid());
    }

    #[test]
    fn kronecker_4_2_is_a_group() {
        let mut d = kronecker_finite(4, 2).unwrap();
        assert!(check_monoid(&mut d).unwrap().holds());
        let g = check_group(&mut d).unwrap();
        assert!(g.holds);
        assert_eq!(g.inverse_is_preinverse, Some(true));
    }

    #[test]
    fn monoid_is_not_a_group() {
        let mut d = monoid_not_group();
        assert!(check_monoid(&mut d).unwrap().holds());
        assert!(check_bimonoid(&d).unwrap().holds());
        let g = check_group(&mut d).unwrap();
        assert!(!g.holds);
        assert!(!(g.right.holds() && g.left.holds()));
    }

    #[test]
    fn corrupted_product_breaks_associativity() {
        // addition mod 3 with the single entry 1+1 changed from 2 to 0
        let table = vec![vec![0, 1, 2], vec![1, 0, 0], vec![2, 0, 1]];
        let mut d = discrete_monoid((0..3).map(|i| i.to_string()).collect(), &table, 0).unwrap();
        let rep = check_monoid(&mut d).unwrap();
        assert!(!rep.associativity.holds);
        assert!(rep.left_unit.holds && rep.right_unit.holds);
        assert!(d.ass.is_none());
    }
}
