//! Brute-force oracles shared by the integration tests. They only read
//! tables through the public accessors and never call the library's
//! principality, pairing or Morita code.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use bibucalc::bibundle::{Bibundle, Point};
use bibucalc::calculus::{compose_bb, find_iso, identity_bibundle};
use bibucalc::groupoid::{Arrow, FinGroupoid, GroupoidHom, Obj};
use bibucalc::FinSet;

/// Every arrow `k` of the right groupoid with `m·k = m` is a unit, and any
/// two points over the same left object are related by some `k`.
pub fn free_and_transitive(b: &Bibundle) -> bool {
    let h = b.right();
    let n = b.len() as u32;
    for m in 0..n {
        for k in 0..h.num_arrows() as u32 {
            if b.act_right(m, k) == Some(m) && h.l(k) != h.r(k) {
                return false;
            }
            if b.act_right(m, k) == Some(m) && h.unit(h.l(k)) != k {
                return false;
            }
        }
        for m2 in 0..n {
            if b.lm(m) == b.lm(m2) && !(0..h.num_arrows() as u32).any(|k| b.act_right(m, k) == Some(m2)) {
                return false;
            }
        }
    }
    true
}

/// Surjective left moment map.
pub fn left_moment_surjective(b: &Bibundle) -> bool {
    let seen: BTreeSet<Obj> = (0..b.len() as u32).map(|m| b.lm(m)).collect();
    seen.len() == b.left().num_objects()
}

/// Mirror of [`free_and_transitive`] for the left action.
pub fn left_free_and_transitive(b: &Bibundle) -> bool {
    let g = b.left();
    let n = b.len() as u32;
    for m in 0..n {
        for k in 0..g.num_arrows() as u32 {
            if b.act_left(k, m) == Some(m) && g.unit(g.l(k)) != k {
                return false;
            }
        }
        for m2 in 0..n {
            if b.rm(m) == b.rm(m2) && !(0..g.num_arrows() as u32).any(|k| b.act_left(k, m) == Some(m2)) {
                return false;
            }
        }
    }
    true
}

pub type Table = HashMap<(Point, Point), Arrow>;

/// All total tables on `{(m, m') : l(m) = l(m')}` satisfying the pairing
/// axioms, found by backtracking over every moment-compatible arrow.
/// Stops after `cap` tables.
pub fn pairing_tables(b: &Bibundle, cap: usize) -> Vec<Table> {
    let n = b.len() as u32;
    let h = b.right();
    let mut keys: Vec<(Point, Point)> = (0..n).map(|m| (m, m)).collect();
    for m in 0..n {
        for m2 in 0..n {
            if m != m2 && b.lm(m) == b.lm(m2) {
                keys.push((m, m2));
            }
        }
    }
    let cands: Vec<Vec<Arrow>> = keys
        .iter()
        .map(|&(m, m2)| {
            (0..h.num_arrows() as u32)
                .filter(|&k| h.l(k) == b.rm(m) && h.r(k) == b.rm(m2))
                .collect()
        })
        .collect();
    let mut table = Table::new();
    let mut out = Vec::new();
    search(b, &keys, &cands, 0, &mut table, &mut out, cap);
    out
}

fn search(
    b: &Bibundle,
    keys: &[(Point, Point)],
    cands: &[Vec<Arrow>],
    i: usize,
    table: &mut Table,
    out: &mut Vec<Table>,
    cap: usize,
) {
    if out.len() >= cap {
        return;
    }
    if i == keys.len() {
        out.push(table.clone());
        return;
    }
    for &k in &cands[i] {
        table.insert(keys[i], k);
        if consistent(b, table) {
            search(b, keys, cands, i + 1, table, out, cap);
        }
        table.remove(&keys[i]);
    }
}

/// Checks every axiom instance whose entries are all present.
fn consistent(b: &Bibundle, t: &Table) -> bool {
    let (g, h) = (b.left(), b.right());
    for (&(m, m2), &k) in t {
        if m == m2 && k != h.unit(b.rm(m)) {
            return false;
        }
        if let Some(&k2) = t.get(&(m2, m)) {
            if k != h.inv(k2) {
                return false;
            }
        }
        for c in 0..h.num_arrows() as u32 {
            if let Some(m3) = b.act_right(m2, c) {
                if let Some(&k3) = t.get(&(m, m3)) {
                    if k3 != h.mul(k, c) {
                        return false;
                    }
                }
            }
        }
        for (&(p, p3), &k3) in t {
            if p == m && p3 != m2 && k3 == k {
                return false;
            }
        }
        for a in 0..g.num_arrows() as u32 {
            if let (Some(am), Some(am2)) = (b.act_left(a, m), b.act_left(g.inv(a), m2)) {
                if let (Some(x), Some(y)) = (t.get(&(am, m2)), t.get(&(m, am2))) {
                    if x != y {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Connected components, each as a sorted object list.
pub fn components(g: &FinGroupoid) -> Vec<Vec<Obj>> {
    let n = g.num_objects();
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            i = p[i];
        }
        i
    }
    for a in 0..g.num_arrows() as u32 {
        let (x, y) = (root(&mut parent, g.l(a) as usize), root(&mut parent, g.r(a) as usize));
        parent[x.max(y)] = x.min(y);
    }
    let mut comps: Vec<Vec<Obj>> = Vec::new();
    let mut index = HashMap::new();
    for x in 0..n {
        let r = root(&mut parent, x);
        let i = *index.entry(r).or_insert_with(|| {
            comps.push(Vec::new());
            comps.len() - 1
        });
        comps[i].push(x as Obj);
    }
    comps
}

fn automorphisms(g: &FinGroupoid, x: Obj) -> Vec<Arrow> {
    (0..g.num_arrows() as u32).filter(|&a| g.l(a) == x && g.r(a) == x).collect()
}

/// All subgroups of `Aut_H(y) × Aut_G(x)` up to conjugacy, by closing
/// every subgroup found so far under one more element.
pub fn subgroups(h: &FinGroupoid, y: Obj, g: &FinGroupoid, x: Obj) -> Vec<BTreeSet<(Arrow, Arrow)>> {
    let elems: Vec<(Arrow, Arrow)> = automorphisms(h, y)
        .into_iter()
        .flat_map(|a| automorphisms(g, x).into_iter().map(move |b| (a, b)))
        .collect();
    let mul = |p: (Arrow, Arrow), q: (Arrow, Arrow)| (h.mul(p.0, q.0), g.mul(p.1, q.1));
    let inv = |p: (Arrow, Arrow)| (h.inv(p.0), g.inv(p.1));
    let closure = |mut s: BTreeSet<(Arrow, Arrow)>| {
        loop {
            let add: Vec<_> = s
                .iter()
                .flat_map(|&p| s.iter().map(move |&q| (p, q)))
                .map(|(p, q)| mul(p, q))
                .filter(|r| !s.contains(r))
                .collect();
            if add.is_empty() {
                return s;
            }
            s.extend(add);
        }
    };
    let canon = |s: &BTreeSet<(Arrow, Arrow)>| {
        elems
            .iter()
            .map(|&c| s.iter().map(|&p| mul(mul(c, p), inv(c))).collect::<BTreeSet<_>>())
            .min()
            .unwrap()
    };
    let unit = (h.unit(y), g.unit(x));
    let mut found: Vec<BTreeSet<(Arrow, Arrow)>> = vec![BTreeSet::from([unit])];
    let mut seen: BTreeSet<BTreeSet<(Arrow, Arrow)>> = BTreeSet::from([found[0].clone()]);
    let mut i = 0;
    while i < found.len() {
        for &p in &elems {
            let mut s = found[i].clone();
            if s.insert(p) {
                let s = closure(s);
                if seen.insert(canon(&s)) {
                    seen.insert(s.clone());
                    found.push(s);
                }
            }
        }
        i += 1;
    }
    found
}

/// One transitive `H`-`G` bibundle: pairs `(a, b)` with `r(a) = y`,
/// `l(b) = x`, modulo `(a, b) ~ (a·k1⁻¹, k2·b)` for `(k1, k2) ∈ K`.
#[derive(Clone, Debug)]
pub struct OrbitType {
    pub y: Obj,
    pub x: Obj,
    pub k: BTreeSet<(Arrow, Arrow)>,
}

/// Disjoint union of the given orbits.
pub fn orbit_sum(h: &FinGroupoid, g: &FinGroupoid, types: &[OrbitType]) -> Bibundle {
    let mut reps: Vec<(usize, Arrow, Arrow)> = Vec::new();
    let mut point: HashMap<(usize, Arrow, Arrow), Point> = HashMap::new();
    for (t, o) in types.iter().enumerate() {
        for a in (0..h.num_arrows() as u32).filter(|&a| h.r(a) == o.y) {
            for b in (0..g.num_arrows() as u32).filter(|&b| g.l(b) == o.x) {
                if point.contains_key(&(t, a, b)) {
                    continue;
                }
                let id = reps.len() as Point;
                reps.push((t, a, b));
                for &(k1, k2) in &o.k {
                    point.insert((t, h.mul(a, h.inv(k1)), g.mul(k2, b)), id);
                }
            }
        }
    }
    let labels = reps.iter().map(|(t, a, b)| format!("{t}:{a}:{b}")).collect();
    Bibundle::from_fns(
        h.clone(),
        g.clone(),
        FinSet::new(labels).unwrap(),
        reps.iter().map(|&(_, a, _)| h.l(a)).collect(),
        reps.iter().map(|&(_, _, b)| g.r(b)).collect(),
        |k, m| {
            let (t, a, b) = reps[m as usize];
            point[&(t, h.mul(k, a), b)]
        },
        |m, k| {
            let (t, a, b) = reps[m as usize];
            point[&(t, a, g.mul(b, k))]
        },
    )
    .expect("orbit sums are bibundles")
}

fn fiber_counts(b: &Bibundle) -> Vec<usize> {
    let (nl, nr) = (b.left().num_objects(), b.right().num_objects());
    let mut v = vec![0; nl * nr];
    for m in 0..b.len() as u32 {
        v[b.lm(m) as usize * nr + b.rm(m) as usize] += 1;
    }
    v
}

/// Searches all `H`-`G` bibundles with at most `max_points` points for a
/// weak inverse of `M: G → H`. Candidates are multisets of orbit types;
/// a multiset is only assembled when the fiber counts of both composites
/// match those of the identities.
pub fn brute_force_inverse(m: &Bibundle, max_points: usize) -> Option<Bibundle> {
    let (g, h) = (m.left(), m.right());
    let mut types = Vec::new();
    for hc in components(h) {
        for gc in components(g) {
            for k in subgroups(h, hc[0], g, gc[0]) {
                types.push(OrbitType { y: hc[0], x: gc[0], k });
            }
        }
    }
    let id_g = identity_bibundle(g);
    let id_h = identity_bibundle(h);
    let (tg, th) = (fiber_counts(&id_g), fiber_counts(&id_h));
    let stats: Vec<(usize, Vec<usize>, Vec<usize>)> = types
        .iter()
        .map(|t| {
            let o = orbit_sum(h, g, std::slice::from_ref(t));
            let a = fiber_counts(&compose_bb(m, &o).unwrap());
            let b = fiber_counts(&compose_bb(&o, m).unwrap());
            (o.len(), a, b)
        })
        .collect();
    let mut chosen = Vec::new();
    let mut acc = (0, vec![0; tg.len()], vec![0; th.len()]);
    let mut found = None;
    multisets(&stats, 0, max_points, &tg, &th, &mut acc, &mut chosen, &mut |sel| {
        let parts: Vec<OrbitType> = sel.iter().map(|&i| types[i].clone()).collect();
        let n = orbit_sum(h, g, &parts);
        let ok = find_iso(&compose_bb(m, &n).unwrap(), &id_g).is_some()
            && find_iso(&compose_bb(&n, m).unwrap(), &id_h).is_some();
        if ok {
            found = Some(n);
        }
        ok
    });
    found
}

#[allow(clippy::too_many_arguments)]
fn multisets(
    stats: &[(usize, Vec<usize>, Vec<usize>)],
    from: usize,
    budget: usize,
    tg: &[usize],
    th: &[usize],
    acc: &mut (usize, Vec<usize>, Vec<usize>),
    chosen: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if acc.1 == tg && acc.2 == th && visit(chosen) {
        return true;
    }
    for i in from..stats.len() {
        let (n, a, b) = &stats[i];
        if acc.0 + n > budget {
            continue;
        }
        let fits = acc.1.iter().zip(a).zip(tg).all(|((x, y), t)| x + y <= *t)
            && acc.2.iter().zip(b).zip(th).all(|((x, y), t)| x + y <= *t);
        // orbits that add nothing to either composite cannot help
        let adds = a.iter().chain(b).any(|&c| c > 0);
        if !fits || !adds {
            continue;
        }
        acc.0 += n;
        acc.1.iter_mut().zip(a).for_each(|(x, y)| *x += y);
        acc.2.iter_mut().zip(b).for_each(|(x, y)| *x += y);
        chosen.push(i);
        let done = multisets(stats, i, budget, tg, th, acc, chosen, visit);
        chosen.pop();
        acc.0 -= n;
        acc.1.iter_mut().zip(a).for_each(|(x, y)| *x -= y);
        acc.2.iter_mut().zip(b).for_each(|(x, y)| *x -= y);
        if done {
            return true;
        }
    }
    false
}

/// The projection `G × H → G` (`first`) or `G × H → H`.
pub fn projection(gh: &FinGroupoid, first: bool) -> GroupoidHom {
    let factors = gh.factors();
    let i = if first { 0 } else { 1 };
    let target = factors[i].clone();
    let f0 = (0..gh.num_objects() as u32).map(|x| gh.split_object(x)[i]).collect();
    let f1 = (0..gh.num_arrows() as u32).map(|a| gh.split_arrow(a)[i]).collect();
    GroupoidHom::new(gh.clone(), target, f0, f1).unwrap()
}

/// Moment pairs of the classes of `M ×_{H_0} N` under
/// `(m·h⁻¹, h·n) ~ (m, n)`, sorted. Computed by union-find.
pub fn naive_composite_shape(m: &Bibundle, n: &Bibundle) -> Vec<(Obj, Obj)> {
    let h = m.right();
    let mut pairs = Vec::new();
    for a in 0..m.len() as u32 {
        for b in 0..n.len() as u32 {
            if m.rm(a) == n.lm(b) {
                pairs.push((a, b));
            }
        }
    }
    let index: HashMap<(Point, Point), usize> = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut parent: Vec<usize> = (0..pairs.len()).collect();
    fn root(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            i = p[i];
        }
        i
    }
    for (i, &(a, b)) in pairs.iter().enumerate() {
        for k in 0..h.num_arrows() as u32 {
            if let (Some(ak), Some(kb)) = (m.act_right(a, h.inv(k)), n.act_left(k, b)) {
                let j = index[&(ak, kb)];
                let (x, y) = (root(&mut parent, i), root(&mut parent, j));
                parent[x.max(y)] = x.min(y);
            }
        }
    }
    let mut shape: Vec<(Obj, Obj)> = (0..pairs.len())
        .filter(|&i| root(&mut parent, i) == i)
        .map(|i| (m.lm(pairs[i].0), n.rm(pairs[i].1)))
        .collect();
    shape.sort_unstable();
    shape
}
