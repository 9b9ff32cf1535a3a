//! Standard fixture groupoids and seeded random generators.
//!
//! Random bibundles are assembled orbit by orbit. An orbit is given by
//! objects `x ∈ G_0`, `y ∈ H_0` and pairs `(k1, k2) ∈ Aut(x) × Aut(y)`;
//! its points are the pairs `(a, b)` with `r(a) = x`, `l(b) = y`, modulo
//! `(a, b) ~ (a·k1, k2·b)`. Every bibundle is a disjoint union of such orbits.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bibundle::{Bibundle, Point};
use crate::finset::FinSet;
use crate::groupoid::{action_groupoid, cyclic, disjoint_union, pair, trivial, Arrow, FinGroupoid, GroupoidHom, Obj};

/// The generator used everywhere a seed is accepted.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `Z/n` acting on `Z/m` by translation; requires `m | n`.
pub fn translation_action(n: usize, m: usize) -> FinGroupoid {
    assert!(m >= 1 && n.is_multiple_of(m), "translation action needs m | n");
    let set = FinSet::range("", m);
    action_groupoid(&cyclic(n), &set, |k, z| (k + z) % m as u32).expect("translation is an action")
}

/// `Z/n` acting on `m` points through the permutation `perm` (of order dividing `n`).
pub fn permutation_action(n: usize, perm: &[u32]) -> FinGroupoid {
    let set = FinSet::range("", perm.len());
    action_groupoid(&cyclic(n), &set, |k, z| (0..k).fold(z, |p, _| perm[p as usize])).expect("permutation action")
}

/// Named groupoids used throughout the test suites: `Triv(1..3)`,
/// `Pair(2..3)`, `Cyc(2..5)` and four action groupoids of `Z/2`, `Z/3`.
pub fn standard_groupoids() -> Vec<(String, FinGroupoid)> {
    let mut out = Vec::new();
    for n in 1..=3 {
        out.push((format!("Triv({n})"), trivial(n)));
    }
    for n in 2..=3 {
        out.push((format!("Pair({n})"), pair(n)));
    }
    for n in 2..=5 {
        out.push((format!("Cyc({n})"), cyclic(n)));
    }
    out.push(("Z/2 on 2 points".into(), translation_action(2, 2)));
    out.push(("Z/2 on 3 points".into(), permutation_action(2, &[1, 0, 2])));
    out.push(("Z/3 on 3 points".into(), translation_action(3, 3)));
    out.push(("Z/3 on 4 points".into(), permutation_action(3, &[1, 2, 0, 3])));
    out
}

/// Elements of the isotropy group at `x`.
pub fn isotropy(g: &FinGroupoid, x: Obj) -> Vec<Arrow> {
    g.l_fiber(x).iter().copied().filter(|&a| g.r(a) == x).collect()
}

/// Connected components, each listed from its least object.
pub fn components(g: &FinGroupoid) -> Vec<Vec<Obj>> {
    let mut comp = vec![usize::MAX; g.num_objects()];
    let mut out: Vec<Vec<Obj>> = Vec::new();
    for x in 0..g.num_objects() as u32 {
        if comp[x as usize] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut members: Vec<Obj> = g.l_fiber(x).iter().map(|&a| g.r(a)).collect();
        members.sort_unstable();
        members.dedup();
        for &y in &members {
            comp[y as usize] = id;
        }
        out.push(members);
    }
    out
}

/// All homomorphisms between the isotropy groups `Aut_G(x) → Aut_H(y)`,
/// each as a map indexed like [`isotropy`]`(g, x)`.
pub fn isotropy_homs(g: &FinGroupoid, x: Obj, h: &FinGroupoid, y: Obj) -> Vec<Vec<Arrow>> {
    let src = isotropy(g, x);
    let dst = isotropy(h, y);
    let pos = |a: Arrow| src.iter().position(|&b| b == a).unwrap();
    // greedy generating set
    let mut gens = Vec::new();
    let mut reached = vec![false; src.len()];
    reached[pos(g.unit(x))] = true;
    for (i, &a) in src.iter().enumerate() {
        if reached[i] {
            continue;
        }
        gens.push(a);
        let mut frontier: Vec<Arrow> = src.iter().copied().filter(|&b| reached[pos(b)]).collect();
        while let Some(u) = frontier.pop() {
            for &k in &gens {
                let w = g.mul(u, k);
                if !reached[pos(w)] {
                    reached[pos(w)] = true;
                    frontier.push(w);
                }
            }
        }
    }
    let mut out = Vec::new();
    let mut images = vec![0; gens.len()];
    loop {
        // extend the generator images along words, rejecting inconsistencies
        let mut f = vec![u32::MAX; src.len()];
        f[pos(g.unit(x))] = h.unit(y);
        let mut queue = vec![g.unit(x)];
        let mut ok = true;
        while let Some(u) = queue.pop() {
            for (k, &img) in gens.iter().zip(&images) {
                let w = g.mul(u, *k);
                let fw = h.mul(f[pos(u)], dst[img]);
                match f[pos(w)] {
                    v if v == u32::MAX => {
                        f[pos(w)] = fw;
                        queue.push(w);
                    }
                    v if v != fw => ok = false,
                    _ => {}
                }
            }
        }
        if ok {
            out.push(f);
        }
        // next assignment of generator images
        let mut i = 0;
        while i < images.len() {
            images[i] += 1;
            if images[i] < dst.len() {
                break;
            }
            images[i] = 0;
            i += 1;
        }
        if i == images.len() {
            return out;
        }
    }
}

/// One orbit of a `G`-`H` bibundle. `moves` generate the identification
/// `(a, b) ~ (a·k1, k2·b)`; they need not form a group.
#[derive(Debug, Clone)]
pub struct OrbitSpec {
    pub x: Obj,
    pub y: Obj,
    pub moves: Vec<(Arrow, Arrow)>,
}

fn find(parent: &mut [u32], mut i: u32) -> u32 {
    while parent[i as usize] != i {
        parent[i as usize] = parent[parent[i as usize] as usize];
        i = parent[i as usize];
    }
    i
}

/// Builds the disjoint union of the given orbits. Points are labelled
/// `o{i}[a,b]` by the least pair of their class.
pub fn orbit_bibundle(g: &FinGroupoid, h: &FinGroupoid, orbits: &[OrbitSpec]) -> Bibundle {
    // points: (orbit, a, b) for class representatives
    let mut reps: Vec<(usize, Arrow, Arrow)> = Vec::new();
    let mut class_of: Vec<Vec<u32>> = Vec::new();
    let mut base: Vec<u32> = Vec::new();
    for (oi, o) in orbits.iter().enumerate() {
        let af = g.r_fiber(o.x);
        let bf = h.l_fiber(o.y);
        let nb = bf.len() as u32;
        let idx = |a: Arrow, b: Arrow| g.r_pos(a) * nb + h.l_pos(b);
        let total = af.len() as u32 * nb;
        let mut parent: Vec<u32> = (0..total).collect();
        for &a in af {
            for &b in bf {
                for &(k1, k2) in &o.moves {
                    let (p, q) = (find(&mut parent, idx(a, b)), find(&mut parent, idx(g.mul(a, k1), h.mul(k2, b))));
                    if p != q {
                        let (lo, hi) = (p.min(q), p.max(q));
                        parent[hi as usize] = lo;
                    }
                }
            }
        }
        base.push(reps.len() as u32);
        let mut local = vec![u32::MAX; total as usize];
        let mut classes = vec![0u32; total as usize];
        for &a in af {
            for &b in bf {
                let root = find(&mut parent, idx(a, b));
                if local[root as usize] == u32::MAX {
                    local[root as usize] = reps.len() as u32;
                    reps.push((oi, a, b));
                }
                classes[idx(a, b) as usize] = local[root as usize];
            }
        }
        class_of.push(classes);
    }
    let point = |oi: usize, a: Arrow, b: Arrow| -> Point {
        let nb = h.l_fiber(orbits[oi].y).len() as u32;
        class_of[oi][(g.r_pos(a) * nb + h.l_pos(b)) as usize]
    };
    let labels = reps
        .iter()
        .map(|&(oi, a, b)| format!("o{oi}[{},{}]", g.arrow_label(a), h.arrow_label(b)))
        .collect();
    Bibundle::from_fns(
        g.clone(),
        h.clone(),
        FinSet::trusted(labels),
        reps.iter().map(|&(_, a, _)| g.l(a)).collect(),
        reps.iter().map(|&(_, _, b)| h.r(b)).collect(),
        |k, m| {
            let (oi, a, b) = reps[m as usize];
            point(oi, g.mul(k, a), b)
        },
        |m, k| {
            let (oi, a, b) = reps[m as usize];
            point(oi, a, h.mul(b, k))
        },
    )
    .expect("orbit construction yields a bibundle")
}

/// Applies a uniformly random relabelling of the carrier.
pub fn shuffle_points<R: Rng>(rng: &mut R, b: &Bibundle) -> Bibundle {
    let mut perm: Vec<Point> = b.points().collect();
    perm.shuffle(rng);
    b.permuted(&perm)
}

/// A random `G`-`H` bibundle with at most `max_points` points (possibly
/// empty), built from random orbits and then shuffled.
pub fn random_bibundle<R: Rng>(rng: &mut R, g: &FinGroupoid, h: &FinGroupoid, max_points: usize) -> Bibundle {
    let mut orbits = Vec::new();
    let mut size = 0;
    let attempts = rng.gen_range(1..=4);
    for _ in 0..attempts {
        let x = rng.gen_range(0..g.num_objects()) as Obj;
        let y = rng.gen_range(0..h.num_objects()) as Obj;
        let (ix, iy) = (isotropy(g, x), isotropy(h, y));
        let moves = (0..rng.gen_range(0..=2))
            .map(|_| (*ix.choose(rng).unwrap(), *iy.choose(rng).unwrap()))
            .collect();
        let candidate = OrbitSpec { x, y, moves };
        let n = orbit_bibundle(g, h, std::slice::from_ref(&candidate)).len();
        if size + n <= max_points {
            size += n;
            orbits.push(candidate);
        }
    }
    shuffle_points(rng, &orbit_bibundle(g, h, &orbits))
}

/// A random right-principal `G`-`H` bibundle: one orbit per component of
/// `G`, identified along the graph of a random isotropy homomorphism.
pub fn random_right_principal<R: Rng>(rng: &mut R, g: &FinGroupoid, h: &FinGroupoid) -> Bibundle {
    let mut orbits = Vec::new();
    for comp in components(g) {
        let x = comp[0];
        let y = rng.gen_range(0..h.num_objects()) as Obj;
        let homs = isotropy_homs(g, x, h, y);
        let rho = homs.choose(rng).expect("the trivial homomorphism exists");
        let moves = isotropy(g, x)
            .into_iter()
            .zip(rho)
            .map(|(k, &rk)| (k, h.inv(rk)))
            .collect();
        orbits.push(OrbitSpec { x, y, moves });
    }
    shuffle_points(rng, &orbit_bibundle(g, h, &orbits))
}

/// A random groupoid homomorphism `G → H`.
pub fn random_hom<R: Rng>(rng: &mut R, g: &FinGroupoid, h: &FinGroupoid) -> GroupoidHom {
    let mut f0 = vec![0; g.num_objects()];
    let mut f1 = vec![0; g.num_arrows()];
    for comp in components(g) {
        let x = comp[0];
        let y = rng.gen_range(0..h.num_objects()) as Obj;
        let aut = isotropy(g, x);
        let homs = isotropy_homs(g, x, h, y);
        let rho = homs.choose(rng).unwrap().clone();
        // s[x'] : x → x' in G and t[x'] : y → f0(x') in H
        let mut s = vec![u32::MAX; g.num_objects()];
        let mut t = vec![u32::MAX; g.num_objects()];
        let targets: Vec<Arrow> = h.r_fiber(y).to_vec();
        for &xp in &comp {
            s[xp as usize] = if xp == x { g.unit(x) } else { *g.r_fiber(x).iter().find(|&&a| g.l(a) == xp).unwrap() };
            let tp = if xp == x { h.unit(y) } else { *targets.choose(rng).unwrap() };
            t[xp as usize] = tp;
            f0[xp as usize] = h.l(tp);
        }
        for &xp in &comp {
            for &a in g.r_fiber(xp) {
                let xpp = g.l(a);
                let k = g.mul(g.mul(g.inv(s[xpp as usize]), a), s[xp as usize]);
                let rk = rho[aut.iter().position(|&b| b == k).unwrap()];
                f1[a as usize] = h.mul(h.mul(t[xpp as usize], rk), h.inv(t[xp as usize]));
            }
        }
    }
    GroupoidHom::new(g.clone(), h.clone(), f0, f1).expect("maps are in range")
}

/// A random groupoid with at most `max_arrows` arrows, as a disjoint union
/// of trivial, pair, cyclic, pair×cyclic and cyclic-action components.
pub fn random_groupoid<R: Rng>(rng: &mut R, max_arrows: usize) -> FinGroupoid {
    assert!(max_arrows >= 1);
    let mut parts = Vec::new();
    let mut budget = rng.gen_range(1..=max_arrows);
    while budget > 0 {
        let g = match rng.gen_range(0..5) {
            0 => trivial(1),
            1 => pair(rng.gen_range(2..=3)),
            2 => cyclic(rng.gen_range(2..=4)),
            3 => FinGroupoid::product(&pair(2), &cyclic(2)).to_table(),
            _ => {
                let n = rng.gen_range(2..=3);
                let m = rng.gen_range(2..=4);
                // a permutation of m points made of fixed points and n-cycles
                let mut perm: Vec<u32> = (0..m as u32).collect();
                let mut start = 0;
                while start + n <= m && rng.gen_bool(0.7) {
                    for i in 0..n {
                        perm[start + i] = (start + (i + 1) % n) as u32;
                    }
                    start += n;
                }
                permutation_action(n, &perm)
            }
        };
        if g.num_arrows() > budget {
            if parts.is_empty() {
                parts.push(trivial(1));
                budget -= 1;
            }
            if budget == 0 || rng.gen_bool(0.5) {
                break;
            }
            continue;
        }
        budget -= g.num_arrows();
        parts.push(g);
    }
    if parts.len() == 1 {
        parts.pop().unwrap()
    } else {
        disjoint_union(&parts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bibundle::{check_principal, validate_bibundle, Side};
    use crate::groupoid::{check_hom, validate_groupoid};

    #[test]
    fn fixtures_are_valid() {
        for (name, g) in standard_groupoids() {
            assert!(validate_groupoid(&g).is_valid(), "{name}");
        }
    }

    #[test]
    fn isotropy_hom_counts() {
        // Hom(Z/4, Z/2) has 2 elements, Hom(Z/2, Z/3) only the trivial one
        assert_eq!(isotropy_homs(&cyclic(4), 0, &cyclic(2), 0).len(), 2);
        assert_eq!(isotropy_homs(&cyclic(2), 0, &cyclic(3), 0).len(), 1);
        assert_eq!(isotropy_homs(&cyclic(4), 0, &cyclic(4), 0).len(), 4);
    }

    #[test]
    fn random_generators_are_valid() {
        let mut r = rng(7);
        for _ in 0..60 {
            let g = random_groupoid(&mut r, 10);
            let h = random_groupoid(&mut r, 10);
            assert!(validate_groupoid(&g).is_valid());
            let b = random_bibundle(&mut r, &g, &h, 16);
            assert!(b.len() <= 16);
            assert!(validate_bibundle(&b).is_valid());
            let p = random_right_principal(&mut r, &g, &h);
            assert!(validate_bibundle(&p).is_valid());
            assert!(check_principal(&p, Side::Right).holds());
            let phi = random_hom(&mut r, &g, &h);
            assert!(check_hom(&phi).is_valid());
        }
    }

    #[test]
    fn same_seed_same_output() {
        let a = random_groupoid(&mut rng(3), 12);
        let b = random_groupoid(&mut rng(3), 12);
        assert_eq!(a, b);
        let ba = random_bibundle(&mut rng(5), &a, &a, 12);
        let bb = random_bibundle(&mut rng(5), &b, &b, 12);
        assert_eq!(ba, bb);
    }
}
