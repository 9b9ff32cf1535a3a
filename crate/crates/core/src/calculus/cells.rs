//! 2-cells between composites: whiskering, products, associator, unitors
//! and the interchange map. Every cell is a function on canonical
//! representatives, so equality of 2-cells is equality of vectors.

use crate::bibundle::Bibundle;
use crate::calculus::compose::Composite;
use crate::calculus::iso::IsoWitness;

fn build(n: usize, f: impl Fn(u32) -> u32) -> IsoWitness {
    IsoWitness::from_forward((0..n as u32).map(f).collect()).expect("2-cell is a bijection")
}

/// `w ∘ C : A∘C → B∘C`, `[a, c] ↦ [w(a), c]`.
pub fn whisker_right(w: &IsoWitness, ac: &Composite, bc: &Composite) -> IsoWitness {
    build(ac.bibundle.len(), |k| {
        let (a, c) = ac.rep(k);
        bc.project(w.apply(a), c)
    })
}

/// `C ∘ w : C∘A → C∘B`, `[c, a] ↦ [c, w(a)]`.
pub fn whisker_left(w: &IsoWitness, ca: &Composite, cb: &Composite) -> IsoWitness {
    build(ca.bibundle.len(), |k| {
        let (c, a) = ca.rep(k);
        cb.project(c, w.apply(a))
    })
}

/// `w1 × w2 : A×C → B×D`, `(a, c) ↦ (w1 a, w2 c)`.
pub fn tensor_cells(w1: &IsoWitness, w2: &IsoWitness) -> IsoWitness {
    let n2 = w2.len() as u32;
    build(w1.len() * w2.len(), |i| w1.apply(i / n2) * n2 + w2.apply(i % n2))
}

/// `(A∘B)∘C → A∘(B∘C)`, `[[a, b], c] ↦ [a, [b, c]]`.
pub fn associator(ab: &Composite, ab_c: &Composite, bc: &Composite, a_bc: &Composite) -> IsoWitness {
    build(ab_c.bibundle.len(), |k| {
        let (x, c) = ab_c.rep(k);
        let (a, b) = ab.rep(x);
        a_bc.project(a, bc.project(b, c))
    })
}

/// `Id_G ∘ M → M`, `[g, m] ↦ g·m`.
pub fn left_unitor(id_m: &Composite, m: &Bibundle) -> IsoWitness {
    build(id_m.bibundle.len(), |k| {
        let (g, p) = id_m.rep(k);
        m.lmul(g, p)
    })
}

/// `M ∘ Id_H → M`, `[m, h] ↦ m·h`.
pub fn right_unitor(m_id: &Composite, m: &Bibundle) -> IsoWitness {
    build(m_id.bibundle.len(), |k| {
        let (p, h) = m_id.rep(k);
        m.rmul(p, h)
    })
}

/// `(A×B)∘(C×D) → (A∘C)×(B∘D)`, `[(a,b), (c,d)] ↦ ([a,c], [b,d])`.
/// `len_b` and `len_d` are the carrier sizes of the second factors `B` and `D`.
pub fn interchange(
    abcd: &Composite,
    len_b: usize,
    len_d: usize,
    ac: &Composite,
    bd: &Composite,
) -> IsoWitness {
    let (nb, nd) = (len_b as u32, len_d as u32);
    let nbd = bd.bibundle.len() as u32;
    build(abcd.bibundle.len(), |k| {
        let (x, y) = abcd.rep(k);
        let (a, b) = (x / nb, x % nb);
        let (c, d) = (y / nd, y % nd);
        ac.project(a, c) * nbd + bd.project(b, d)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::compose::compose;
    use crate::calculus::generators::*;
    use crate::calculus::iso::verify_iso;
    use crate::groupoid::{cyclic, pair, FinGroupoid};

    #[test]
    fn left_unit_of_identity_is_multiplication() {
        let g = cyclic(3);
        let id = identity_bibundle(&g);
        let c = compose(&id, &id).unwrap();
        let w = left_unitor(&c, &id);
        assert!(verify_iso(&c.bibundle, &id, &w).is_valid());
        for k in 0..c.bibundle.len() as u32 {
            let (a, b) = c.rep(k);
            assert_eq!(w.apply(k), g.mul(a, b));
        }
    }

    #[test]
    fn triangle_identity() {
        // (M∘Id)∘N → M∘(Id∘N) → M∘N equals runi ∘ N.
        let g = FinGroupoid::product(&pair(2), &cyclic(2));
        let m = diagonal(&g);
        let n = tensor(&terminal_morphism(&g), &identity_bibundle(&g));
        let id = identity_bibundle(m.right());
        let m_id = compose(&m, &id).unwrap();
        let m_id_n = compose(&m_id.bibundle, &n).unwrap();
        let id_n = compose(&id, &n).unwrap();
        let m_idn = compose(&m, &id_n.bibundle).unwrap();
        let mn = compose(&m, &n).unwrap();
        let ass = associator(&m_id, &m_id_n, &id_n, &m_idn);
        let lhs = ass.then(&whisker_left(&left_unitor(&id_n, &n), &m_idn, &mn));
        let rhs = whisker_right(&right_unitor(&m_id, &m), &m_id_n, &mn);
        assert!(verify_iso(&m_id_n.bibundle, &mn.bibundle, &rhs).is_valid());
        assert_eq!(lhs, rhs);
    }
}
