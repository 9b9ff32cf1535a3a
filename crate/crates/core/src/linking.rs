//! Linking category and linking groupoid of a bibundle.
//!
//! Labels are tagged `G:`, `M:`, `Mop:`, `H:` so user labels never collide.
//! An `M`-arrow `m` has `l(m) = G:lm(m)` and `r(m) = H:rm(m)`, so that
//! `g∘m = g·m` and `m∘h = m·h` are ordinary composites.

use std::collections::HashMap;

use crate::bibundle::{
    compute_pairing, Bibundle, Condition, PrincipalityReport, Side,
};
use crate::calculus::opposite;
use crate::error::{Error, Result};
use crate::finset::FinSet;
use crate::groupoid::{Arrow, FinCategory, FinGroupoid, Obj};

/// The linking category with the sizes of its blocks. Objects are
/// `G_0 ⊔ H_0`, arrows `G_1 ⊔ M ⊔ H_1`, in that order.
#[derive(Debug, Clone)]
pub struct LinkingCategory {
    pub category: FinCategory,
    pub g_objects: usize,
    pub g_arrows: usize,
    pub m_points: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Block {
    G,
    M,
    H,
}

impl LinkingCategory {
    fn block(&self, a: Arrow) -> Block {
        let a = a as usize;
        if a < self.g_arrows {
            Block::G
        } else if a < self.g_arrows + self.m_points {
            Block::M
        } else {
            Block::H
        }
    }

    fn m_arrows(&self) -> std::ops::Range<Arrow> {
        self.g_arrows as u32..(self.g_arrows + self.m_points) as u32
    }

    fn arrows_in(&self, b: Block) -> impl Iterator<Item = Arrow> + '_ {
        (0..self.category.num_arrows() as u32).filter(move |&a| self.block(a) == b)
    }

    fn is_g_object(&self, x: Obj) -> bool {
        (x as usize) < self.g_objects
    }

    fn strip(&self, a: Arrow) -> String {
        let l = self.category.arrows().label(a);
        l.split_once(':').map_or(l, |(_, rest)| rest).to_string()
    }

    fn strip_obj(&self, x: Obj) -> String {
        let l = self.category.objects().label(x);
        l.split_once(':').map_or(l, |(_, rest)| rest).to_string()
    }
}

fn tagged<'a>(tag: &'a str, labels: &'a FinSet) -> impl Iterator<Item = String> + 'a {
    labels.iter().map(move |l| format!("{tag}:{l}"))
}

/// Assembles the linking category. Missing action entries become missing
/// composites, so an invalid bibundle yields an invalid category.
pub fn linking_category(m: &Bibundle) -> LinkingCategory {
    let (g, h) = (m.left(), m.right());
    let (go, ga, hm) = (g.num_objects() as u32, g.num_arrows() as u32, m.len() as u32);
    let objects: Vec<String> = tagged("G", g.objects()).chain(tagged("H", h.objects())).collect();
    let arrows: Vec<String> = tagged("G", g.arrows())
        .chain(tagged("M", m.carrier()))
        .chain(tagged("H", h.arrows()))
        .collect();
    let ma = |p: u32| ga + p;
    let ha = |k: u32| ga + hm + k;
    let mut l = Vec::with_capacity(arrows.len());
    let mut r = Vec::with_capacity(arrows.len());
    for a in 0..ga {
        l.push(g.l(a));
        r.push(g.r(a));
    }
    for p in m.points() {
        l.push(m.lm(p));
        r.push(go + m.rm(p));
    }
    for k in 0..h.num_arrows() as u32 {
        l.push(go + h.l(k));
        r.push(go + h.r(k));
    }
    let mut comp = Vec::new();
    for a in 0..ga {
        for &b in g.l_fiber(g.r(a)) {
            comp.push((a, b, g.mul(a, b)));
        }
    }
    for (a, p, t) in m.left_entries() {
        comp.push((a, ma(p), ma(t)));
    }
    for (p, k, t) in m.right_entries() {
        comp.push((ma(p), ha(k), ma(t)));
    }
    for a in 0..h.num_arrows() as u32 {
        for &b in h.l_fiber(h.r(a)) {
            comp.push((ha(a), ha(b), ha(h.mul(a, b))));
        }
    }
    let unit = (0..go)
        .map(|x| g.unit(x))
        .chain((0..h.num_objects() as u32).map(|y| ha(h.unit(y))))
        .collect();
    let category = FinCategory::from_parts(
        FinSet::trusted(objects),
        FinSet::trusted(arrows),
        l,
        r,
        &comp,
        unit,
    )
    .expect("linking tables are well formed");
    LinkingCategory {
        category,
        g_objects: go as usize,
        g_arrows: ga as usize,
        m_points: hm as usize,
    }
}

/// Reads the actions back out of a linking category.
pub fn bibundle_from_linking(lc: &LinkingCategory, g: &FinGroupoid, h: &FinGroupoid) -> Result<Bibundle> {
    let c = &lc.category;
    let go = lc.g_objects as u32;
    let base = lc.g_arrows as u32;
    let carrier = FinSet::new(lc.m_arrows().map(|a| lc.strip(a)).collect())?;
    let lm = lc.m_arrows().map(|a| c.l(a)).collect();
    let rm = lc.m_arrows().map(|a| c.r(a) - go).collect();
    let mut left = Vec::new();
    let mut right = Vec::new();
    for (a, b, t) in c.comp_triples() {
        match (lc.block(a), lc.block(b)) {
            (Block::G, Block::M) => left.push((a, b - base, t - base)),
            (Block::M, Block::H) => right.push((a - base, b - base - lc.m_points as u32, t - base)),
            _ => {}
        }
    }
    Bibundle::from_entries(g.clone(), h.clone(), carrier, lm, rm, &left, &right)
}

fn ok() -> Condition {
    Condition {
        holds: true,
        witness: Vec::new(),
        note: None,
    }
}

fn fail(witness: Vec<String>) -> Condition {
    Condition {
        holds: false,
        witness,
        note: None,
    }
}

/// P1–P3 computed from the linking category alone: arrow existence,
/// uniqueness of factorizations through the acting block, and existence
/// of factorizations inside a fiber.
pub fn principality_in_linking(lc: &LinkingCategory, side: Side) -> PrincipalityReport {
    let c = &lc.category;
    let acting = match side {
        Side::Right => Block::H,
        Side::Left => Block::G,
    };
    // the object an M-arrow sits over on the base side
    let base_end = |a: Arrow| match side {
        Side::Right => c.l(a),
        Side::Left => c.r(a),
    };
    // composite of M-arrow with an acting arrow, in the order the category allows
    let act = |mm: Arrow, k: Arrow| match side {
        Side::Right => c.comp(mm, k),
        Side::Left => c.comp(k, mm),
    };
    let base_objects: Vec<Obj> = (0..c.num_objects() as u32)
        .filter(|&x| lc.is_g_object(x) == (side == Side::Right))
        .collect();

    let p1 = match base_objects
        .iter()
        .find(|&&x| !lc.m_arrows().any(|a| base_end(a) == x))
    {
        Some(&x) => fail(vec![lc.strip_obj(x)]),
        None => ok(),
    };

    let acting_arrows: Vec<Arrow> = lc.arrows_in(acting).collect();
    let mut factor: HashMap<(Arrow, Arrow), Arrow> = HashMap::new();
    let mut p2 = ok();
    'outer: for a in lc.m_arrows() {
        for &k in &acting_arrows {
            if let Some(t) = act(a, k) {
                if let Some(&k0) = factor.get(&(a, t)) {
                    // two different factorizations of t through a
                    let w = match side {
                        Side::Right => vec![lc.strip(a), lc.strip(k0), lc.strip(k)],
                        Side::Left => vec![lc.strip(k0), lc.strip(k), lc.strip(a)],
                    };
                    p2 = fail(w);
                    break 'outer;
                }
                factor.insert((a, t), k);
            }
        }
    }

    let mut p3 = ok();
    'trans: for a in lc.m_arrows() {
        for b in lc.m_arrows() {
            if base_end(a) == base_end(b) && !acting_arrows.iter().any(|&k| act(a, k) == Some(b)) {
                p3 = fail(vec![lc.strip(a), lc.strip(b)]);
                break 'trans;
            }
        }
    }
    if p3.holds && !p1.holds {
        p3.note = Some("empty fibers are treated as vacuously transitive".into());
    }
    PrincipalityReport { side, p1, p2, p3 }
}

pub fn principality_via_linking(m: &Bibundle, side: Side) -> PrincipalityReport {
    principality_in_linking(&linking_category(m), side)
}

/// The linking groupoid with its block sizes. Arrows are
/// `G_1 ⊔ M ⊔ Mᵒᵖ ⊔ H_1`; `m̄ ∈ Mᵒᵖ` is the inverse of `m`.
#[derive(Debug, Clone)]
pub struct LinkingGroupoid {
    pub groupoid: FinGroupoid,
    pub g_objects: usize,
}

impl LinkingGroupoid {
    /// Full subgroupoid on the `G` objects.
    pub fn restrict_left(&self) -> FinGroupoid {
        let keep: Vec<Obj> = (0..self.g_objects as u32).collect();
        self.groupoid.full_subgroupoid(&keep)
    }

    /// Full subgroupoid on the `H` objects.
    pub fn restrict_right(&self) -> FinGroupoid {
        let keep: Vec<Obj> = (self.g_objects as u32..self.groupoid.num_objects() as u32).collect();
        self.groupoid.full_subgroupoid(&keep)
    }
}

/// Builds the linking groupoid from both pairings. Fails with
/// `NotBiprincipal` when either pairing does not exist.
pub fn linking_groupoid(m: &Bibundle) -> Result<LinkingGroupoid> {
    let hp = compute_pairing(m).map_err(|e| Error::NotBiprincipal(format!("right pairing: {e}")))?;
    let op = opposite(m);
    let gp = compute_pairing(&op).map_err(|e| Error::NotBiprincipal(format!("left pairing: {e}")))?;
    let (g, h) = (m.left(), m.right());
    let (go, ga, n) = (g.num_objects() as u32, g.num_arrows() as u32, m.len() as u32);
    let ma = |p: u32| ga + p;
    let mb = |p: u32| ga + n + p;
    let ha = |k: u32| ga + 2 * n + k;
    let objects: Vec<String> = tagged("G", g.objects()).chain(tagged("H", h.objects())).collect();
    let arrows: Vec<String> = tagged("G", g.arrows())
        .chain(tagged("M", m.carrier()))
        .chain(tagged("Mop", m.carrier()))
        .chain(tagged("H", h.arrows()))
        .collect();
    let mut l = Vec::with_capacity(arrows.len());
    let mut r = Vec::with_capacity(arrows.len());
    for a in 0..ga {
        l.push(g.l(a));
        r.push(g.r(a));
    }
    for p in m.points() {
        l.push(m.lm(p));
        r.push(go + m.rm(p));
    }
    for p in m.points() {
        l.push(go + m.rm(p));
        r.push(m.lm(p));
    }
    for k in 0..h.num_arrows() as u32 {
        l.push(go + h.l(k));
        r.push(go + h.r(k));
    }
    let mut comp = Vec::new();
    for a in 0..ga {
        for &b in g.l_fiber(g.r(a)) {
            comp.push((a, b, g.mul(a, b)));
        }
    }
    for a in 0..h.num_arrows() as u32 {
        for &b in h.l_fiber(h.r(a)) {
            comp.push((ha(a), ha(b), ha(h.mul(a, b))));
        }
    }
    for (a, p, t) in m.left_entries() {
        comp.push((a, ma(p), ma(t)));
    }
    for (p, k, t) in m.right_entries() {
        comp.push((ma(p), ha(k), ma(t)));
    }
    for p in m.points() {
        for q in m.points() {
            // m ∘ m̄' is the G-arrow carrying m' to m
            if m.rm(p) == m.rm(q) {
                comp.push((ma(p), mb(q), gp.get(p, q).expect("pairing is total")));
            }
            // m̄ ∘ m' is the H-pairing
            if m.lm(p) == m.lm(q) {
                comp.push((mb(p), ma(q), ha(hp.get(p, q).expect("pairing is total"))));
            }
        }
        // m̄ ∘ g = (g⁻¹·m)bar
        for &a in g.l_fiber(m.lm(p)) {
            comp.push((mb(p), a, mb(m.lmul(g.inv(a), p))));
        }
        // h ∘ m̄ = (m·h⁻¹)bar
        for &k in h.r_fiber(m.rm(p)) {
            comp.push((ha(k), mb(p), mb(m.rmul(p, h.inv(k)))));
        }
    }
    let unit = (0..go)
        .map(|x| g.unit(x))
        .chain((0..h.num_objects() as u32).map(|y| ha(h.unit(y))))
        .collect();
    let inv = (0..ga)
        .map(|a| g.inv(a))
        .chain(m.points().map(mb))
        .chain(m.points().map(ma))
        .chain((0..h.num_arrows() as u32).map(|k| ha(h.inv(k))))
        .collect();
    let cat = FinCategory::from_parts(
        FinSet::trusted(objects),
        FinSet::trusted(arrows),
        l,
        r,
        &comp,
        unit,
    )?;
    Ok(LinkingGroupoid {
        groupoid: FinGroupoid::from_category(cat, inv)?,
        g_objects: go as usize,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bibundle::{check_principal, validate_bibundle};
    use crate::calculus::{bundlize, cv, identity_bibundle, terminal_morphism};
    use crate::groupoid::{cyclic, pair, trivial, validate_category, validate_groupoid, GroupoidHom};

    fn pair_to_point() -> Bibundle {
        let g = pair(2);
        Bibundle::from_fns(
            g.clone(),
            trivial(1),
            FinSet::new(vec!["a".into(), "b".into()]).unwrap(),
            vec![0, 1],
            vec![0, 0],
            |k, _| g.l(k),
            |p, _| p,
        )
        .unwrap()
    }

    #[test]
    fn linking_category_of_identity() {
        let lc = linking_category(&identity_bibundle(&cyclic(2)));
        assert_eq!(lc.category.num_objects(), 2);
        assert_eq!(lc.category.num_arrows(), 6);
        assert!(validate_category(&lc.category).is_valid());
    }

    #[test]
    fn round_trip_through_linking_category() {
        for m in [identity_bibundle(&pair(2)), terminal_morphism(&cyclic(3)), pair_to_point()] {
            let lc = linking_category(&m);
            let back = bibundle_from_linking(&lc, m.left(), m.right()).unwrap();
            assert_eq!(back, m);
        }
    }

    #[test]
    fn cv_fails_unique_factorization() {
        let rep = principality_via_linking(&cv(&cyclic(2)), Side::Right);
        assert!(!rep.p2.holds);
        assert_eq!(rep.p2.witness.len(), 3);
    }

    #[test]
    fn agrees_with_direct_check_on_fixtures() {
        let phi = GroupoidHom::new(cyclic(4), cyclic(2), vec![0], vec![0, 1, 0, 1]).unwrap();
        for m in [identity_bibundle(&pair(2)), cv(&cyclic(2)), bundlize(&phi).unwrap(), pair_to_point()] {
            for side in [Side::Left, Side::Right] {
                assert_eq!(principality_via_linking(&m, side).flags(), check_principal(&m, side).flags());
            }
        }
    }

    #[test]
    fn linking_groupoid_of_identity() {
        let lg = linking_groupoid(&identity_bibundle(&cyclic(2))).unwrap();
        assert_eq!(lg.groupoid.num_objects(), 2);
        assert_eq!(lg.groupoid.num_arrows(), 8);
        assert!(validate_groupoid(&lg.groupoid).is_valid());
    }

    #[test]
    fn linking_groupoid_restricts_to_a_point() {
        let m = pair_to_point();
        assert!(validate_bibundle(&m).is_valid());
        let lg = linking_groupoid(&m).unwrap();
        assert!(validate_groupoid(&lg.groupoid).is_valid());
        assert_eq!(lg.restrict_right().num_arrows(), 1);
        assert_eq!(lg.restrict_left().num_arrows(), 4);
    }

    #[test]
    fn linking_groupoid_requires_both_pairings() {
        let phi = GroupoidHom::new(cyclic(4), cyclic(2), vec![0], vec![0, 1, 0, 1]).unwrap();
        let err = linking_groupoid(&bundlize(&phi).unwrap()).unwrap_err();
        assert!(matches!(err, Error::NotBiprincipal(_)));
    }
}
