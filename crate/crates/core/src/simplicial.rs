//! Truncated simplicial sets, nerves of finite categories and Kan conditions.
//!
//! A chain `(f1, …, fn)` with `r(f_i) = l(f_{i+1})` is an `n`-simplex with
//! vertices `v0 = l(f1)`, `v_i = r(f_i)`. The face `d_i` deletes `v_i`:
//! `d0` drops `f1`, `dn` drops `fn`, inner faces compose `f_i f_{i+1}`.
//! Degeneracy `s_j` inserts the identity at `v_j`.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result, ValidationReport};
use crate::finset::FinSet;
use crate::groupoid::{Arrow, FinCategory};

/// Truncation level used when none is given.
pub const DEFAULT_LEVEL: usize = 3;

/// Levels `X_0 … X_k` with all face and degeneracy maps between them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSSet {
    levels: Vec<FinSet>,
    /// `faces[n][i][x] = d_i x` for `x ∈ X_n`, `1 ≤ n ≤ k`.
    faces: Vec<Vec<Vec<u32>>>,
    /// `degens[n][j][x] = s_j x` for `x ∈ X_n`, `n < k`.
    degens: Vec<Vec<Vec<u32>>>,
}

impl TruncatedSSet {
    /// Assembles a truncated simplicial set from tables, checking only
    /// shapes and ranges. Use [`validate_simplicial`] for the identities.
    pub fn from_parts(levels: Vec<FinSet>, faces: Vec<Vec<Vec<u32>>>, degens: Vec<Vec<Vec<u32>>>) -> Result<Self> {
        let k = levels
            .len()
            .checked_sub(1)
            .ok_or_else(|| Error::Malformed("a simplicial set needs at least X_0".into()))?;
        if faces.len() != k + 1 || degens.len() != k + 1 {
            return Err(Error::Malformed(format!("expected face and degeneracy tables for levels 0..={k}")));
        }
        for n in 0..=k {
            let want_faces = if n == 0 { 0 } else { n + 1 };
            let want_degens = if n == k { 0 } else { n + 1 };
            if faces[n].len() != want_faces || degens[n].len() != want_degens {
                return Err(Error::Malformed(format!("level {n} has the wrong number of face or degeneracy maps")));
            }
            for (maps, target) in [(&faces[n], n.wrapping_sub(1)), (&degens[n], n + 1)] {
                for map in maps.iter() {
                    if map.len() != levels[n].len() {
                        return Err(Error::Malformed(format!("a map out of level {n} is not total")));
                    }
                    if map.iter().any(|&y| y as usize >= levels[target].len()) {
                        return Err(Error::OutOfRange(format!("a map out of level {n} leaves level {target}")));
                    }
                }
            }
        }
        Ok(TruncatedSSet { levels, faces, degens })
    }

    /// Top stored level `k`.
    pub fn top(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, n: usize) -> &FinSet {
        &self.levels[n]
    }

    pub fn len(&self, n: usize) -> usize {
        self.levels[n].len()
    }

    pub fn face(&self, n: usize, i: usize, x: u32) -> u32 {
        self.faces[n][i][x as usize]
    }

    pub fn degeneracy(&self, n: usize, j: usize, x: u32) -> u32 {
        self.degens[n][j][x as usize]
    }

    pub fn face_table(&self, n: usize, i: usize) -> &[u32] {
        &self.faces[n][i]
    }

    pub fn degeneracy_table(&self, n: usize, j: usize) -> &[u32] {
        &self.degens[n][j]
    }
}

/// Checks the simplicial identities on all stored levels.
pub fn validate_simplicial(x: &TruncatedSSet) -> ValidationReport {
    let mut rep = ValidationReport::new();
    let k = x.top();
    let lab = |n: usize, p: u32| x.level(n).label(p).to_string();
    for n in 2..=k {
        for p in 0..x.len(n) as u32 {
            for j in 1..=n {
                for i in 0..j {
                    if x.face(n - 1, i, x.face(n, j, p)) != x.face(n - 1, j - 1, x.face(n, i, p)) {
                        rep.push("face-face", vec![lab(n, p)], format!("d{i} d{j} != d{} d{i}", j - 1));
                    }
                }
            }
        }
    }
    for n in 0..k {
        for p in 0..x.len(n) as u32 {
            for j in 0..=n {
                let s = x.degeneracy(n, j, p);
                for i in 0..=n + 1 {
                    let lhs = x.face(n + 1, i, s);
                    let (axiom, rhs) = if i == j || i == j + 1 {
                        ("face-degeneracy-identity", p)
                    } else if i < j {
                        ("face-degeneracy-below", x.degeneracy(n - 1, j - 1, x.face(n, i, p)))
                    } else {
                        ("face-degeneracy-above", x.degeneracy(n - 1, j, x.face(n, i - 1, p)))
                    };
                    if lhs != rhs {
                        rep.push(axiom, vec![lab(n, p)], format!("d{i} s{j} fails"));
                    }
                }
                if n + 1 < k {
                    for i in 0..=j {
                        if x.degeneracy(n + 1, i, s) != x.degeneracy(n + 1, j + 1, x.degeneracy(n, i, p)) {
                            rep.push("degeneracy-degeneracy", vec![lab(n, p)], format!("s{i} s{j} != s{} s{i}", j + 1));
                        }
                    }
                }
            }
        }
    }
    rep
}

fn chain_label(c: &FinCategory, chain: &[Arrow]) -> String {
    let parts: Vec<&str> = chain.iter().map(|&a| c.arrows().label(a)).collect();
    format!("[{}]", parts.join("|"))
}

/// The nerve of a finite category truncated at level `k`. Level `n ≥ 1`
/// lists composable chains in lexicographic order of arrow indices.
pub fn nerve(c: &FinCategory, k: usize) -> Result<TruncatedSSet> {
    if k < 1 {
        return Err(Error::OutOfRange("nerve truncation level must be at least 1".into()));
    }
    let no = c.num_objects() as u32;
    let mut chains: Vec<Vec<Vec<Arrow>>> = vec![Vec::new(); k + 1];
    chains[1] = (0..c.num_arrows() as u32).map(|a| vec![a]).collect();
    for n in 2..=k {
        let mut next = Vec::new();
        for ch in &chains[n - 1] {
            let last = *ch.last().unwrap();
            for b in 0..c.num_arrows() as u32 {
                if c.r(last) == c.l(b) {
                    let mut v = ch.clone();
                    v.push(b);
                    next.push(v);
                }
            }
        }
        chains[n] = next;
    }
    let index: Vec<HashMap<Vec<Arrow>, u32>> = chains
        .iter()
        .map(|lv| lv.iter().enumerate().map(|(i, ch)| (ch.clone(), i as u32)).collect())
        .collect();
    let compose = |a: Arrow, b: Arrow| c.comp(a, b).ok_or_else(|| Error::Malformed("nerve needs a total composition".into()));

    let mut faces = vec![Vec::new(); k + 1];
    let mut degens = vec![Vec::new(); k + 1];
    // level 1 faces land in objects
    faces[1] = vec![
        (0..c.num_arrows() as u32).map(|a| c.r(a)).collect(),
        (0..c.num_arrows() as u32).map(|a| c.l(a)).collect(),
    ];
    for n in 2..=k {
        let mut maps = vec![Vec::with_capacity(chains[n].len()); n + 1];
        for ch in &chains[n] {
            for (i, map) in maps.iter_mut().enumerate() {
                let f: Vec<Arrow> = if i == 0 {
                    ch[1..].to_vec()
                } else if i == n {
                    ch[..n - 1].to_vec()
                } else {
                    let mut v = ch[..i - 1].to_vec();
                    v.push(compose(ch[i - 1], ch[i])?);
                    v.extend_from_slice(&ch[i + 1..]);
                    v
                };
                map.push(index[n - 1][&f]);
            }
        }
        faces[n] = maps;
    }
    degens[0] = vec![(0..no).map(|x| index[1][&vec![c.unit(x)]]).collect()];
    for n in 1..k {
        let mut maps = vec![Vec::with_capacity(chains[n].len()); n + 1];
        for ch in &chains[n] {
            for (j, map) in maps.iter_mut().enumerate() {
                let v_j = if j == 0 { c.l(ch[0]) } else { c.r(ch[j - 1]) };
                let mut v = ch[..j].to_vec();
                v.push(c.unit(v_j));
                v.extend_from_slice(&ch[j..]);
                map.push(index[n + 1][&v]);
            }
        }
        degens[n] = maps;
    }
    let mut levels = vec![c.objects().clone()];
    for lv in chains.iter().skip(1) {
        levels.push(FinSet::trusted(lv.iter().map(|ch| chain_label(c, ch)).collect()));
    }
    TruncatedSSet::from_parts(levels, faces, degens)
}

/// The horns `Λⁿᵢ` of `X`: tuples `(y_j)_{j≠i}` of `(n−1)`-simplices with
/// `d_a y_b = d_{b−1} y_a` for `a < b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HornSet {
    pub n: usize,
    pub i: usize,
    /// Each horn lists its faces in increasing order of `j`, skipping `i`.
    pub horns: Vec<Vec<u32>>,
}

impl HornSet {
    pub fn len(&self) -> usize {
        self.horns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.horns.is_empty()
    }

    /// Face indices `j ≠ i` in the order horns store them.
    pub fn face_indices(&self) -> Vec<usize> {
        (0..=self.n).filter(|&j| j != self.i).collect()
    }
}

fn check_range(x: &TruncatedSSet, n: usize, i: usize) -> Result<()> {
    if n < 1 || n > x.top() || i > n {
        return Err(Error::OutOfRange(format!(
            "horn ({n},{i}) needs 1 <= n <= {} and 0 <= i <= n",
            x.top()
        )));
    }
    Ok(())
}

/// Whether a face tuple (indexed like [`HornSet::face_indices`]) is compatible.
pub fn is_horn(x: &TruncatedSSet, n: usize, i: usize, faces: &[u32]) -> bool {
    let js: Vec<usize> = (0..=n).filter(|&j| j != i).collect();
    if faces.len() != js.len() || faces.iter().any(|&y| y as usize >= x.len(n - 1)) {
        return false;
    }
    if n < 2 {
        return true;
    }
    for (pb, &b) in js.iter().enumerate() {
        for (pa, &a) in js.iter().enumerate().take(pb) {
            if x.face(n - 1, a, faces[pb]) != x.face(n - 1, b - 1, faces[pa]) {
                return false;
            }
        }
    }
    true
}

/// Enumerates every horn by backtracking over the faces in order.
pub fn horn_set(x: &TruncatedSSet, n: usize, i: usize) -> Result<HornSet> {
    check_range(x, n, i)?;
    let js: Vec<usize> = (0..=n).filter(|&j| j != i).collect();
    let mut horns = Vec::new();
    let mut cur: Vec<u32> = Vec::with_capacity(n);
    fn rec(x: &TruncatedSSet, n: usize, js: &[usize], cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let pb = cur.len();
        if pb == js.len() {
            out.push(cur.clone());
            return;
        }
        let b = js[pb];
        'cand: for y in 0..x.len(n - 1) as u32 {
            if n >= 2 {
                for (pa, &a) in js.iter().enumerate().take(pb) {
                    if x.face(n - 1, a, y) != x.face(n - 1, b - 1, cur[pa]) {
                        continue 'cand;
                    }
                }
            }
            cur.push(y);
            rec(x, n, js, cur, out);
            cur.pop();
        }
    }
    rec(x, n, &js, &mut cur, &mut horns);
    Ok(HornSet { n, i, horns })
}

/// A horn that is not filled (or, for the strict condition, filled more than once).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HornWitness {
    /// `(j, label of y_j)` for each face of the horn.
    pub faces: Vec<(usize, String)>,
    pub fillers: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KanResult {
    pub n: usize,
    pub i: usize,
    pub strict: bool,
    pub holds: bool,
    pub horns: usize,
    pub witness: Option<HornWitness>,
}

/// Kan condition for `Λⁿᵢ`: the restriction `X_n → Λⁿᵢ(X)` is surjective
/// (weak) or bijective (strict). On failure the first offending horn is
/// returned.
pub fn kan_check(x: &TruncatedSSet, n: usize, i: usize, strict: bool) -> Result<KanResult> {
    let hs = horn_set(x, n, i)?;
    let pos: HashMap<&[u32], usize> = hs.horns.iter().enumerate().map(|(p, h)| (h.as_slice(), p)).collect();
    let mut count = vec![0usize; hs.len()];
    let js = hs.face_indices();
    for s in 0..x.len(n) as u32 {
        let restr: Vec<u32> = js.iter().map(|&j| x.face(n, j, s)).collect();
        let p = pos[restr.as_slice()];
        count[p] += 1;
    }
    let bad = count.iter().position(|&c| c == 0 || (strict && c > 1));
    let witness = bad.map(|p| HornWitness {
        faces: js
            .iter()
            .zip(&hs.horns[p])
            .map(|(&j, &y)| (j, x.level(n - 1).label(y).to_string()))
            .collect(),
        fillers: count[p],
    });
    Ok(KanResult {
        n,
        i,
        strict,
        holds: witness.is_none(),
        horns: hs.len(),
        witness,
    })
}

/// Kan-condition patterns observed up to a truncation level. These are
/// evidence about the stored levels only, not a full classification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub level: usize,
    pub vertices: usize,
    /// `Kan!(n,i)` for `0 < i < n`, `2 ≤ n ≤ level`.
    pub is_nerve_of_category: bool,
    /// `Kan!(n,i)` for all `0 ≤ i ≤ n`, `2 ≤ n ≤ level`.
    pub is_1_groupoid_nerve: bool,
    /// Least `m` with `Kan(n,i)` for `1 ≤ n ≤ level` and `Kan!(n,i)` for
    /// `m < n ≤ level`; absent if some weak condition fails.
    pub groupoid_level: Option<usize>,
    /// `groupoid_level` when there is a single vertex.
    pub group_candidate: Option<usize>,
    /// First failing condition of each kind, for reporting.
    pub failures: Vec<KanResult>,
}

#[allow(clippy::needless_range_loop)]
pub fn classify(x: &TruncatedSSet, level: usize) -> Result<Classification> {
    if level < 2 || level > x.top() {
        return Err(Error::OutOfRange(format!("classification level must be in 2..={}", x.top())));
    }
    let mut weak_ok = true;
    let mut strict_from = vec![true; level + 2];
    let mut inner = true;
    let mut outer = true;
    let mut failures = Vec::new();
    for n in 1..=level {
        for i in 0..=n {
            let weak = kan_check(x, n, i, false)?;
            let strict = kan_check(x, n, i, true)?;
            if !weak.holds {
                weak_ok = false;
                if failures.iter().all(|f: &KanResult| f.strict) {
                    failures.push(weak);
                }
            }
            if !strict.holds {
                strict_from[n] = false;
                if n >= 2 {
                    if 0 < i && i < n {
                        inner = false;
                    } else {
                        outer = false;
                    }
                }
                if failures.iter().all(|f| !f.strict) {
                    failures.push(strict);
                }
            }
        }
    }
    let groupoid_level = weak_ok.then(|| (0..=level).find(|&m| (m + 1..=level).all(|n| strict_from[n])).unwrap_or(level));
    let vertices = x.len(0);
    Ok(Classification {
        level,
        vertices,
        is_nerve_of_category: inner,
        is_1_groupoid_nerve: inner && outer,
        groupoid_level,
        group_candidate: if vertices == 1 { groupoid_level } else { None },
        failures,
    })
}

/// The poset `0 → 1`: two objects and one non-identity arrow `a`.
pub fn arrow_category() -> FinCategory {
    FinCategory::from_parts(
        FinSet::new(vec!["0".into(), "1".into()]).unwrap(),
        FinSet::new(vec!["id0".into(), "id1".into(), "a".into()]).unwrap(),
        vec![0, 1, 1],
        vec![0, 1, 0],
        &[(0, 0, 0), (1, 1, 1), (1, 2, 2), (2, 0, 2)],
        vec![0, 1],
    )
    .expect("arrow category tables are consistent")
}

/// The free monoid on one generator with `a^i a^j = a^min(i+j, top)`,
/// as a one-object category with arrows `1, a, …, a^top`.
pub fn truncated_free_monoid(top: usize) -> FinCategory {
    let labels = (0..=top)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "a".to_string(),
            _ => format!("a^{i}"),
        })
        .collect();
    let n = top as u32 + 1;
    let comp: Vec<(u32, u32, u32)> =
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j, (i + j).min(top as u32)))).collect();
    FinCategory::from_parts(
        FinSet::new(vec!["*".into()]).unwrap(),
        FinSet::new(labels).unwrap(),
        vec![0; n as usize],
        vec![0; n as usize],
        &comp,
        vec![0],
    )
    .expect("truncated monoid tables are consistent")
}
