//! Group objects in the bibundle 2-category: structure bibundles, the
//! constructors that produce them, and the axiom checkers.

mod checks;
mod coherence;

pub use checks::{
    check_bimonoid, check_group, check_monoid, preinverse, BimonoidReport, GroupReport, IdentityOutcome,
    MonoidReport, PREINVERSE,
};
pub use coherence::{check_coherence, CoherenceFrame, CoherenceLoops, CoherenceReport};

use crate::bibundle::{check_principal, Bibundle, Side};
use crate::calculus::{bundlize, IsoWitness};
use crate::diagram::DiagramEnv;
use crate::error::{Error, Result};
use crate::groupoid::{table_groupoid, Arrow, FinGroupoid, GroupoidHom};

/// Structure bibundles of a candidate group object on `base`, plus the
/// 2-cells found by the checkers.
///
/// `mu` is a `G×G`-`G` bibundle, `e` a `1`-`G` bibundle and `inv` an
/// optional `G`-`G` bibundle. Witnesses are filled in by [`check_monoid`]
/// and [`check_group`] and then reused by [`check_coherence`].
#[derive(Debug, Clone)]
pub struct StackyGroupData {
    pub name: String,
    pub base: FinGroupoid,
    pub mu: Bibundle,
    pub e: Bibundle,
    pub inv: Option<Bibundle>,
    pub ass: Option<IsoWitness>,
    pub luni: Option<IsoWitness>,
    pub runi: Option<IsoWitness>,
    pub linv: Option<IsoWitness>,
    pub rinv: Option<IsoWitness>,
}

impl StackyGroupData {
    /// Checks shapes and right principality of every structure bibundle.
    pub fn new(
        name: impl Into<String>,
        base: FinGroupoid,
        mu: Bibundle,
        e: Bibundle,
        inv: Option<Bibundle>,
    ) -> Result<Self> {
        let g2 = base.power(2);
        let one = FinGroupoid::unit_groupoid();
        let shape = |what: &str, b: &Bibundle, l: &FinGroupoid, r: &FinGroupoid| -> Result<()> {
            if b.left() != l || b.right() != r {
                return Err(Error::GroupoidMismatch(format!(
                    "{what} goes {} -> {}, expected {} -> {}",
                    b.left().name(),
                    b.right().name(),
                    l.name(),
                    r.name()
                )));
            }
            let rep = check_principal(b, Side::Right);
            if !rep.holds() {
                return Err(Error::Malformed(format!("{what} is not right principal: {:?}", rep.flags())));
            }
            Ok(())
        };
        shape("mu", &mu, &g2, &base)?;
        shape("e", &e, &one, &base)?;
        if let Some(i) = &inv {
            shape("inv", i, &base, &base)?;
        }
        Ok(StackyGroupData {
            name: name.into(),
            base,
            mu: mu.with_provenance("mu"),
            e: e.with_provenance("e"),
            inv: inv.map(|i| i.with_provenance("inv")),
            ass: None,
            luni: None,
            runi: None,
            linv: None,
            rinv: None,
        })
    }

    /// Bundlizes the structure homomorphisms of a strict group object.
    pub fn from_homs(
        name: impl Into<String>,
        mu: &GroupoidHom,
        e: &GroupoidHom,
        inv: Option<&GroupoidHom>,
    ) -> Result<Self> {
        let base = mu.target.clone();
        let inv = inv.map(bundlize).transpose()?;
        Self::new(name, base, bundlize(mu)?, bundlize(e)?, inv)
    }

    /// A diagram environment over `base` with `mu`, `e` (and `inv`) bound.
    pub fn env(&self) -> DiagramEnv {
        let mut env = DiagramEnv::new(self.base.clone());
        env.bind("mu", self.mu.clone()).expect("mu has arity 2->1");
        env.bind("e", self.e.clone()).expect("e has arity 0->1");
        if let Some(i) = &self.inv {
            env.bind("inv", i.clone()).expect("inv has arity 1->1");
        }
        env
    }
}

/// A normal subgroup `A` of a finite group `B` (the inclusion crossed module).
#[derive(Debug, Clone)]
pub struct CrossedModuleIncl {
    ambient: FinGroupoid,
    members: Vec<Arrow>,
}

impl CrossedModuleIncl {
    /// `ambient` must have one object. Rejects non-subgroups and
    /// non-normal subgroups, naming an offending element.
    pub fn new(ambient: FinGroupoid, subgroup: &[Arrow]) -> Result<Self> {
        if ambient.num_objects() != 1 {
            return Err(Error::GroupoidMismatch("ambient group must have one object".into()));
        }
        let n = ambient.num_arrows();
        let mut inside = vec![false; n];
        for &a in subgroup {
            if a as usize >= n {
                return Err(Error::OutOfRange(format!("subgroup element {a} is not in the group")));
            }
            inside[a as usize] = true;
        }
        let lab = |a: Arrow| ambient.arrow_label(a).to_string();
        if !inside[ambient.unit(0) as usize] {
            return Err(Error::Malformed("subgroup does not contain the identity".into()));
        }
        let members: Vec<Arrow> = (0..n as u32).filter(|&a| inside[a as usize]).collect();
        for &a in &members {
            if !inside[ambient.inv(a) as usize] {
                return Err(Error::Malformed(format!("subgroup lacks the inverse of {}", lab(a))));
            }
            for &b in &members {
                if !inside[ambient.mul(a, b) as usize] {
                    return Err(Error::Malformed(format!("subgroup not closed: {} {}", lab(a), lab(b))));
                }
            }
            for b in 0..n as u32 {
                let c = ambient.mul(ambient.mul(b, a), ambient.inv(b));
                if !inside[c as usize] {
                    return Err(Error::Malformed(format!(
                        "subgroup not normal: {} {} {}^-1 = {} is outside",
                        lab(b),
                        lab(a),
                        lab(b),
                        lab(c)
                    )));
                }
            }
        }
        Ok(CrossedModuleIncl { ambient, members })
    }

    pub fn ambient(&self) -> &FinGroupoid {
        &self.ambient
    }

    /// Elements of the subgroup in ascending order.
    pub fn subgroup(&self) -> &[Arrow] {
        &self.members
    }
}

/// The strict 2-group of an inclusion crossed module `A ⊆ B`.
///
/// Objects are the elements of `B`; arrows are pairs `(a, b)` ordered
/// `a`-major with `l(a,b) = b·a` and `r(a,b) = b`. The group structure is
/// the semidirect product, and `mu`, `e`, `inv` are its bundlizations.
pub fn two_group_from_crossed_module(cm: &CrossedModuleIncl) -> Result<StackyGroupData> {
    let b = &cm.ambient;
    let a_el = &cm.members;
    let (nb, na) = (b.num_arrows() as u32, a_el.len() as u32);
    let mut a_pos = vec![u32::MAX; nb as usize];
    for (i, &a) in a_el.iter().enumerate() {
        a_pos[a as usize] = i as u32;
    }
    let arrow = |a: Arrow, x: Arrow| a_pos[a as usize] * nb + x;
    let split = |k: Arrow| (a_el[(k / nb) as usize], k % nb);
    let n1 = na * nb;

    let t = table_groupoid(
        b.arrows().labels().to_vec(),
        (0..n1)
            .map(|k| {
                let (a, x) = split(k);
                format!("({},{})", b.arrow_label(a), b.arrow_label(x))
            })
            .collect(),
        (0..n1).map(|k| {
            let (a, x) = split(k);
            b.mul(x, a)
        })
        .collect(),
        (0..n1).map(|k| k % nb).collect(),
        |k1, k2| {
            let ((a1, _), (a2, x2)) = (split(k1), split(k2));
            arrow(b.mul(a2, a1), x2)
        },
        (0..n1)
            .map(|k| {
                let (a, x) = split(k);
                arrow(b.inv(a), b.mul(x, a))
            })
            .collect(),
        (0..nb).map(|x| arrow(b.unit(0), x)).collect(),
    );

    let tt = FinGroupoid::product(&t, &t);
    let mu = GroupoidHom::new(
        tt,
        t.clone(),
        (0..nb * nb).map(|xy| b.mul(xy / nb, xy % nb)).collect(),
        (0..n1 * n1)
            .map(|kk| {
                let ((a1, x1), (a2, x2)) = (split(kk / n1), split(kk % n1));
                let conj = b.mul(b.mul(b.inv(x2), a1), x2);
                arrow(b.mul(conj, a2), b.mul(x1, x2))
            })
            .collect(),
    )?;
    let e = GroupoidHom::new(
        FinGroupoid::unit_groupoid(),
        t.clone(),
        vec![b.unit(0)],
        vec![arrow(b.unit(0), b.unit(0))],
    )?;
    let inv = GroupoidHom::new(
        t.clone(),
        t.clone(),
        (0..nb).map(|x| b.inv(x)).collect(),
        (0..n1)
            .map(|k| {
                let (a, x) = split(k);
                let xi = b.inv(x);
                arrow(b.mul(b.mul(x, b.inv(a)), xi), xi)
            })
            .collect(),
    )?;
    StackyGroupData::from_homs(format!("2-group of {} in {}", na, b.name()), &mu, &e, Some(&inv))
}

/// Finite stand-in for the Kronecker foliation 2-group: `B = Z/N`,
/// `A = ⟨q⟩ ⊆ B`, so `l(k, θ) = θ + k` with `k ∈ qZ/N`.
pub fn kronecker_finite(n: usize, q: usize) -> Result<StackyGroupData> {
    if n == 0 || q == 0 || q > n || !n.is_multiple_of(q) {
        return Err(Error::OutOfRange(format!("kronecker_finite needs 1 <= q <= N and q | N, got N={n}, q={q}")));
    }
    let b = crate::groupoid::cyclic(n);
    let sub: Vec<Arrow> = (0..n as u32).filter(|k| (*k as usize).is_multiple_of(q)).collect();
    let mut d = two_group_from_crossed_module(&CrossedModuleIncl::new(b, &sub)?)?;
    d.name = format!("kronecker({n},{q})");
    Ok(d)
}

/// An ordinary finite group as a stacky group on its discrete groupoid of elements.
pub fn plain_group(group: &FinGroupoid) -> Result<StackyGroupData> {
    let cm = CrossedModuleIncl::new(group.clone(), &[group.unit(0)])?;
    let mut d = two_group_from_crossed_module(&cm)?;
    d.name = format!("plain {}", group.name());
    Ok(d)
}

/// The one-object groupoid of an abelian group with multiplication as the
/// group structure. Unlike the crossed-module examples its structure
/// bibundles have nontrivial automorphisms, so coherence is not automatic.
pub fn delooping(group: &FinGroupoid) -> Result<StackyGroupData> {
    if group.num_objects() != 1 {
        return Err(Error::GroupoidMismatch("delooping needs a one-object groupoid".into()));
    }
    let n = group.num_arrows() as u32;
    for a in 0..n {
        for b in 0..n {
            if group.mul(a, b) != group.mul(b, a) {
                return Err(Error::Malformed(format!(
                    "delooping needs an abelian group: {} and {} do not commute",
                    group.arrow_label(a),
                    group.arrow_label(b)
                )));
            }
        }
    }
    let gg = FinGroupoid::product(group, group);
    let mu = GroupoidHom::new(gg, group.clone(), vec![0], (0..n * n).map(|k| group.mul(k / n, k % n)).collect())?;
    let e = GroupoidHom::new(FinGroupoid::unit_groupoid(), group.clone(), vec![0], vec![group.unit(0)])?;
    let inv = GroupoidHom::new(group.clone(), group.clone(), vec![0], (0..n).map(|a| group.inv(a)).collect())?;
    StackyGroupData::from_homs(format!("delooping of {}", group.name()), &mu, &e, Some(&inv))
}

/// A finite monoid as a stacky monoid on the discrete groupoid of its elements.
/// `table[x][y]` is the product `xy`; no inverse is supplied.
pub fn discrete_monoid(labels: Vec<String>, table: &[Vec<u32>], unit: u32) -> Result<StackyGroupData> {
    let n = labels.len() as u32;
    if table.len() != n as usize || table.iter().any(|r| r.len() != n as usize || r.iter().any(|&v| v >= n)) {
        return Err(Error::Malformed("monoid table must be n x n with entries in range".into()));
    }
    if unit >= n {
        return Err(Error::OutOfRange("monoid unit".into()));
    }
    let ids: Vec<u32> = (0..n).collect();
    let g = table_groupoid(
        labels.clone(),
        labels.iter().map(|l| format!("id{l}")).collect(),
        ids.clone(),
        ids.clone(),
        |a, _| a,
        ids.clone(),
        ids,
    );
    let prod: Vec<u32> = (0..n * n).map(|k| table[(k / n) as usize][(k % n) as usize]).collect();
    let mu = GroupoidHom::new(FinGroupoid::product(&g, &g), g.clone(), prod.clone(), prod)?;
    let e = GroupoidHom::new(FinGroupoid::unit_groupoid(), g, vec![unit], vec![unit])?;
    StackyGroupData::from_homs("discrete monoid", &mu, &e, None)
}

/// The two-element monoid `{0, 1}` under multiplication: a stacky monoid
/// that is not a group, used as the negative control for [`check_group`].
pub fn monoid_not_group() -> StackyGroupData {
    let mut d = discrete_monoid(vec!["0".into(), "1".into()], &[vec![0, 0], vec![0, 1]], 1)
        .expect("multiplicative {0,1} is a monoid");
    d.name = "multiplicative monoid {0,1}".into();
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::{cyclic, one_object, validate_groupoid};

    #[test]
    fn kronecker_sizes() {
        let d = kronecker_finite(6, 2).unwrap();
        assert_eq!(d.base.num_objects(), 6);
        assert_eq!(d.base.num_arrows(), 18);
        assert_eq!(d.mu.len(), 108);
        assert!(validate_groupoid(&d.base).is_valid());
        assert!(kronecker_finite(6, 4).is_err());
    }

    #[test]
    fn crossed_module_examples() {
        let full = two_group_from_crossed_module(&CrossedModuleIncl::new(cyclic(2), &[0, 1]).unwrap()).unwrap();
        assert_eq!(full.base.num_arrows(), 4);
        let half = kronecker_finite(4, 2).unwrap();
        assert_eq!((half.base.num_objects(), half.base.num_arrows()), (4, 8));
        let plain = plain_group(&cyclic(4)).unwrap();
        assert_eq!((plain.base.num_objects(), plain.base.num_arrows()), (4, 4));
    }

    fn s3() -> FinGroupoid {
        let perms: Vec<[u32; 3]> = vec![[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
        let idx = |p: [u32; 3]| perms.iter().position(|q| *q == p).unwrap() as u32;
        let table: Vec<Vec<u32>> = perms
            .iter()
            .map(|p| perms.iter().map(|q| idx([p[q[0] as usize], p[q[1] as usize], p[q[2] as usize]])).collect())
            .collect();
        one_object((0..6).map(|i| format!("s{i}")).collect(), &table).unwrap()
    }

    #[test]
    fn non_normal_subgroup_is_rejected() {
        let s3 = s3();
        let err = CrossedModuleIncl::new(s3.clone(), &[0, 1]).unwrap_err();
        assert!(err.to_string().contains("not normal"), "{err}");
        assert!(CrossedModuleIncl::new(s3, &[0, 4, 5]).is_ok());
    }

    #[test]
    fn delooping_needs_an_abelian_group() {
        assert!(delooping(&cyclic(3)).is_ok());
        assert!(delooping(&s3()).is_err());
    }
}
