//! Standard bibundles: identities, bundlizations, diagonal, terminal,
//! flip, evaluation/coevaluation, opposite and cartesian product.

use crate::bibundle::Bibundle;
use crate::error::{Error, Result};
use crate::finset::FinSet;
use crate::groupoid::{check_hom, FinGroupoid, GroupoidHom};

/// `Id_G`: `G` acting on its own arrows by multiplication on both sides.
pub fn identity_bibundle(g: &FinGroupoid) -> Bibundle {
    let n = g.num_arrows() as u32;
    Bibundle::from_fns(
        g.clone(),
        g.clone(),
        g.arrows().clone(),
        (0..n).map(|a| g.l(a)).collect(),
        (0..n).map(|a| g.r(a)).collect(),
        |a, m| g.mul(a, m),
        |m, b| g.mul(m, b),
    )
    .expect("identity bibundle is well formed")
    .with_provenance("id")
}

/// The bundlization `⟨φ⟩ = {(x, h) : φ0(x) = l(h)}` of a homomorphism
/// `φ: G → H`, with `g·(x,h) = (l(g), φ(g)h)` and `(x,h)·h' = (x, hh')`.
/// Points are ordered by `x`, then by `h`.
pub fn bundlize(phi: &GroupoidHom) -> Result<Bibundle> {
    let rep = check_hom(phi);
    if !rep.is_valid() {
        return Err(Error::Malformed(format!("not a homomorphism: {rep}")));
    }
    Ok(bundlize_unchecked(phi))
}

pub(crate) fn bundlize_unchecked(phi: &GroupoidHom) -> Bibundle {
    let (g, h) = (&phi.source, &phi.target);
    let mut pts: Vec<(u32, u32)> = Vec::new();
    // offset of (x, first arrow of the fiber) for each object x
    let mut start = Vec::with_capacity(g.num_objects());
    for x in 0..g.num_objects() as u32 {
        start.push(pts.len() as u32);
        for &a in h.l_fiber(phi.f0[x as usize]) {
            pts.push((x, a));
        }
    }
    let index = |x: u32, a: u32| start[x as usize] + h.l_pos(a);
    let labels = pts
        .iter()
        .map(|&(x, a)| format!("({},{})", g.object_label(x), h.arrow_label(a)))
        .collect();
    Bibundle::from_fns(
        g.clone(),
        h.clone(),
        FinSet::trusted(labels),
        pts.iter().map(|&(x, _)| x).collect(),
        pts.iter().map(|&(_, a)| h.r(a)).collect(),
        |k, m| {
            let (_, a) = pts[m as usize];
            index(g.l(k), h.mul(phi.f1[k as usize], a))
        },
        |m, b| {
            let (x, a) = pts[m as usize];
            index(x, h.mul(a, b))
        },
    )
    .expect("bundlization is well formed")
}

/// `Δ_G`: the `G`-`(G×G)` bibundle on pairs `(g1, g2)` with `l(g1) = l(g2)`.
pub fn diagonal(g: &FinGroupoid) -> Bibundle {
    let gg = FinGroupoid::product(g, g);
    let (no, na) = (g.num_objects() as u32, g.num_arrows() as u32);
    let mut pts = Vec::new();
    for a in 0..g.num_arrows() as u32 {
        for &b in g.l_fiber(g.l(a)) {
            pts.push((a, b));
        }
    }
    let start: Vec<u32> = {
        let mut s = Vec::with_capacity(g.num_arrows());
        let mut acc = 0u32;
        for a in 0..g.num_arrows() as u32 {
            s.push(acc);
            acc += g.l_fiber(g.l(a)).len() as u32;
        }
        s
    };
    let index = |a: u32, b: u32| start[a as usize] + g.l_pos(b);
    let labels = pts
        .iter()
        .map(|&(a, b)| format!("({},{})", g.arrow_label(a), g.arrow_label(b)))
        .collect();
    Bibundle::from_fns(
        g.clone(),
        gg.clone(),
        FinSet::trusted(labels),
        pts.iter().map(|&(a, _)| g.l(a)).collect(),
        pts.iter().map(|&(a, b)| g.r(a) * no + g.r(b)).collect(),
        |k, m| {
            let (a, b) = pts[m as usize];
            index(g.mul(k, a), g.mul(k, b))
        },
        |m, kk| {
            let (a, b) = pts[m as usize];
            index(g.mul(a, kk / na), g.mul(b, kk % na))
        },
    )
    .expect("diagonal is well formed")
    .with_provenance("delta")
}

/// `ε_G`: the `G`-`1` bibundle on `G_0` with `g·x = l(g)`.
pub fn terminal_morphism(g: &FinGroupoid) -> Bibundle {
    let one = FinGroupoid::unit_groupoid();
    let n = g.num_objects() as u32;
    Bibundle::from_fns(
        g.clone(),
        one,
        g.objects().clone(),
        (0..n).collect(),
        vec![0; n as usize],
        |k, _| g.l(k),
        |m, _| m,
    )
    .expect("terminal bibundle is well formed")
    .with_provenance("eps")
}

/// The bundlization of the swap `G×H → H×G`.
pub fn flip(g: &FinGroupoid, h: &FinGroupoid) -> Bibundle {
    let gh = FinGroupoid::product(g, h);
    let hg = FinGroupoid::product(h, g);
    let ng = g.num_arrows() as u32;
    let nh = h.num_arrows() as u32;
    let (og, oh) = (g.num_objects() as u32, h.num_objects() as u32);
    let phi = GroupoidHom {
        f0: (0..og * oh).map(|x| (x % oh) * og + x / oh).collect(),
        f1: (0..ng * nh).map(|a| (a % nh) * ng + a / nh).collect(),
        source: gh,
        target: hg,
    };
    bundlize_unchecked(&phi).with_provenance("tau")
}

/// `Ev_G`: the `(G×G)`-`1` bibundle on `G_1` with `lm(g) = (l g, r g)` and
/// `(g1, g2)·g = g1 g g2⁻¹`.
pub fn ev(g: &FinGroupoid) -> Bibundle {
    let gg = FinGroupoid::product(g, g);
    let n = g.num_arrows() as u32;
    let no = g.num_objects() as u32;
    Bibundle::from_fns(
        gg.clone(),
        FinGroupoid::unit_groupoid(),
        g.arrows().clone(),
        (0..n).map(|a| g.l(a) * no + g.r(a)).collect(),
        vec![0; n as usize],
        |kk, m| {
            g.mul(g.mul(kk / n, m), g.inv(kk % n))
        },
        |m, _| m,
    )
    .expect("evaluation bibundle is well formed")
    .with_provenance("ev")
}

/// `Cv_G`: the `1`-`(G×G)` bibundle on `G_1` with `rm(g) = (l g, r g)` and
/// `g·(g1, g2) = g1⁻¹ g g2`. This is literally `opposite(ev(G))`.
pub fn cv(g: &FinGroupoid) -> Bibundle {
    opposite(&ev(g)).with_provenance("cv")
}

/// `Mᵒᵖ`: moment maps swapped, `h·m = m·h⁻¹` and `m·g = g⁻¹·m`.
pub fn opposite(m: &Bibundle) -> Bibundle {
    let (g, h) = (m.left(), m.right());
    let b = Bibundle::from_fns(
        h.clone(),
        g.clone(),
        m.carrier().clone(),
        m.points().map(|p| m.rm(p)).collect(),
        m.points().map(|p| m.lm(p)).collect(),
        |k, p| m.rmul(p, h.inv(k)),
        |p, k| m.lmul(g.inv(k), p),
    )
    .expect("opposite is well formed");
    match m.provenance() {
        Some(p) => b.with_provenance(format!("op({p})")),
        None => b,
    }
}

/// Cartesian product `M × N`, a `(G×G')`-`(H×H')` bibundle. Point `(a, b)`
/// has index `a·|N| + b`.
pub fn tensor(m: &Bibundle, n: &Bibundle) -> Bibundle {
    let gl = FinGroupoid::product(m.left(), n.left());
    let gr = FinGroupoid::product(m.right(), n.right());
    let nn = n.len() as u32;
    let total = m.len() as u32 * nn;
    let (nla, nra) = (n.left().num_arrows() as u32, n.right().num_arrows() as u32);
    let (nlo, nro) = (n.left().num_objects() as u32, n.right().num_objects() as u32);
    let labels = (0..total)
        .map(|i| format!("({},{})", m.label(i / nn), n.label(i % nn)))
        .collect();
    let b = Bibundle::from_fns(
        gl,
        gr,
        FinSet::trusted(labels),
        (0..total).map(|i| m.lm(i / nn) * nlo + n.lm(i % nn)).collect(),
        (0..total).map(|i| m.rm(i / nn) * nro + n.rm(i % nn)).collect(),
        |k, i| m.lmul(k / nla, i / nn) * nn + n.lmul(k % nla, i % nn),
        |i, k| m.rmul(i / nn, k / nra) * nn + n.rmul(i % nn, k % nra),
    )
    .expect("tensor is well formed");
    match (m.provenance(), n.provenance()) {
        (Some(p), Some(q)) => b.with_provenance(format!("({p} * {q})")),
        _ => b,
    }
}

/// Left-nested cartesian product of a non-empty list.
pub fn tensor_all(parts: &[Bibundle]) -> Bibundle {
    let mut it = parts.iter();
    let first = it.next().expect("tensor of an empty list").clone();
    it.fold(first, |acc, p| tensor(&acc, p))
}

/// Identity bibundle of the unit groupoid: the unit for tensor and composition.
pub fn unit_bibundle() -> Bibundle {
    identity_bibundle(&FinGroupoid::unit_groupoid())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bibundle::{check_principal, validate_bibundle, Side};
    use crate::groupoid::{cyclic, pair, trivial};

    fn fixtures() -> Vec<FinGroupoid> {
        vec![trivial(2), pair(2), cyclic(3), FinGroupoid::product(&pair(2), &cyclic(2))]
    }

    #[test]
    fn generators_are_valid() {
        for g in fixtures() {
            for b in [identity_bibundle(&g), diagonal(&g), terminal_morphism(&g), flip(&g, &g), ev(&g), cv(&g)] {
                let rep = validate_bibundle(&b);
                assert!(rep.is_valid(), "{b:?}: {rep}");
            }
        }
    }

    #[test]
    fn generator_sizes() {
        assert_eq!(diagonal(&cyclic(2)).len(), 4);
        assert_eq!(terminal_morphism(&pair(3)).len(), 3);
    }

    #[test]
    fn ev_of_cyclic_two() {
        let g = cyclic(2);
        let e = ev(&g);
        // (1,1) in Z/2 x Z/2 has index 1·2 + 1
        let one_one = 3;
        for m in 0..2 {
            assert_eq!(e.lmul(one_one, m), m);
        }
    }

    #[test]
    fn cv_is_not_right_principal_for_a_nontrivial_group() {
        let rep = check_principal(&cv(&cyclic(2)), Side::Right);
        assert!(!rep.p2.holds);
    }

    #[test]
    fn terminal_is_right_principal() {
        for g in fixtures() {
            assert!(check_principal(&terminal_morphism(&g), Side::Right).holds());
        }
    }

    #[test]
    fn bundlizations_are_right_principal() {
        let phi = GroupoidHom::new(cyclic(4), cyclic(2), vec![0], vec![0, 1, 0, 1]).unwrap();
        let b = bundlize(&phi).unwrap();
        assert_eq!(b.len(), 2);
        assert!(check_principal(&b, Side::Right).holds());
        assert!(!check_principal(&b, Side::Left).p2.holds);
    }

    #[test]
    fn opposite_is_an_involution() {
        for g in fixtures() {
            let d = diagonal(&g);
            assert_eq!(opposite(&opposite(&d)), d);
            assert!(validate_bibundle(&opposite(&d)).is_valid());
        }
    }

    #[test]
    fn tensor_sizes_and_validity() {
        let a = diagonal(&cyclic(2));
        let b = terminal_morphism(&pair(2));
        let t = tensor(&a, &b);
        assert_eq!(t.len(), a.len() * b.len());
        assert!(validate_bibundle(&t).is_valid());
    }
}
