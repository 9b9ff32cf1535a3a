//! Bibundles: a carrier with commuting left and right groupoid actions,
//! principality conditions and the groupoid-valued pairing.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result, ValidationReport};
use crate::finset::FinSet;
use crate::groupoid::{Arrow, FinGroupoid, Obj, NONE};

pub type Point = u32;

/// A partial action stored densely: row `m` holds one slot per arrow that
/// can act on `m`, indexed by the arrow's position in the relevant fiber.
#[derive(Debug, Clone, PartialEq, Eq)]
struct ActionTable {
    offsets: Vec<u32>,
    targets: Vec<Point>,
}

/// A `G`-`H` bibundle. `left` acts with `g·m` defined iff `r(g) = lm(m)`,
/// `right` acts with `m·h` defined iff `rm(m) = l(h)`.
#[derive(Clone)]
pub struct Bibundle {
    left: FinGroupoid,
    right: FinGroupoid,
    carrier: FinSet,
    lm: Vec<Obj>,
    rm: Vec<Obj>,
    lact: ActionTable,
    ract: ActionTable,
    provenance: Option<String>,
}

impl fmt::Debug for Bibundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Bibundle({} -> {}, {} points{})",
            self.left.name(),
            self.right.name(),
            self.len(),
            self.provenance.as_deref().map(|p| format!(", {p}")).unwrap_or_default()
        )
    }
}

impl PartialEq for Bibundle {
    /// Literal equality of all tables; provenance is ignored.
    fn eq(&self, other: &Self) -> bool {
        self.left == other.left
            && self.right == other.right
            && self.carrier == other.carrier
            && self.lm == other.lm
            && self.rm == other.rm
            && self.lact == other.lact
            && self.ract == other.ract
    }
}

impl Eq for Bibundle {}

fn check_moments(left: &FinGroupoid, right: &FinGroupoid, carrier: &FinSet, lm: &[Obj], rm: &[Obj]) -> Result<()> {
    if lm.len() != carrier.len() || rm.len() != carrier.len() {
        return Err(Error::Malformed("moment maps must be total on the carrier".into()));
    }
    if lm.iter().any(|&x| x as usize >= left.num_objects()) || rm.iter().any(|&x| x as usize >= right.num_objects()) {
        return Err(Error::Malformed("moment map value is not an object".into()));
    }
    Ok(())
}

impl Bibundle {
    fn offsets(lm: &[Obj], fiber_len: impl Fn(Obj) -> usize) -> Vec<u32> {
        let mut offsets = Vec::with_capacity(lm.len() + 1);
        let mut acc = 0u32;
        offsets.push(0);
        for &x in lm {
            acc += fiber_len(x) as u32;
            offsets.push(acc);
        }
        offsets
    }

    /// Builds a bibundle from total action functions. The functions are only
    /// called on composable pairs. Axioms are not checked.
    pub fn from_fns(
        left: FinGroupoid,
        right: FinGroupoid,
        carrier: FinSet,
        lm: Vec<Obj>,
        rm: Vec<Obj>,
        lact: impl Fn(Arrow, Point) -> Point,
        ract: impl Fn(Point, Arrow) -> Point,
    ) -> Result<Self> {
        check_moments(&left, &right, &carrier, &lm, &rm)?;
        let n = carrier.len() as u32;
        let loff = Self::offsets(&lm, |x| left.r_fiber(x).len());
        let mut ltargets = Vec::with_capacity(*loff.last().unwrap() as usize);
        for m in 0..n {
            for &g in left.r_fiber(lm[m as usize]) {
                ltargets.push(lact(g, m));
            }
        }
        let roff = Self::offsets(&rm, |x| right.l_fiber(x).len());
        let mut rtargets = Vec::with_capacity(*roff.last().unwrap() as usize);
        for m in 0..n {
            for &h in right.l_fiber(rm[m as usize]) {
                rtargets.push(ract(m, h));
            }
        }
        if ltargets.iter().chain(&rtargets).any(|&p| p >= n) {
            return Err(Error::Malformed("action value is not a carrier point".into()));
        }
        Ok(Bibundle {
            left,
            right,
            carrier,
            lm,
            rm,
            lact: ActionTable {
                offsets: loff,
                targets: ltargets,
            },
            ract: ActionTable {
                offsets: roff,
                targets: rtargets,
            },
            provenance: None,
        })
    }

    /// Builds a bibundle from listed action entries `(g, m, m')` and
    /// `(m, h, m')`. Entries outside the action domain or conflicting with
    /// each other are structural errors; missing entries are left undefined
    /// and show up as axiom violations in [`validate_bibundle`].
    pub fn from_entries(
        left: FinGroupoid,
        right: FinGroupoid,
        carrier: FinSet,
        lm: Vec<Obj>,
        rm: Vec<Obj>,
        left_entries: &[(Arrow, Point, Point)],
        right_entries: &[(Point, Arrow, Point)],
    ) -> Result<Self> {
        check_moments(&left, &right, &carrier, &lm, &rm)?;
        let n = carrier.len() as u32;
        let loff = Self::offsets(&lm, |x| left.r_fiber(x).len());
        let mut ltargets = vec![NONE; *loff.last().unwrap() as usize];
        for &(g, m, t) in left_entries {
            if g as usize >= left.num_arrows() || m >= n || t >= n {
                return Err(Error::Malformed("left action entry out of range".into()));
            }
            if left.r(g) != lm[m as usize] {
                return Err(Error::Malformed(format!(
                    "left action entry ({}, {}) outside the domain r(g) = l(m)",
                    left.arrow_label(g),
                    carrier.label(m)
                )));
            }
            let slot = &mut ltargets[(loff[m as usize] + left.r_pos(g)) as usize];
            if *slot != NONE && *slot != t {
                return Err(Error::Malformed(format!(
                    "conflicting left action entries for ({}, {})",
                    left.arrow_label(g),
                    carrier.label(m)
                )));
            }
            *slot = t;
        }
        let roff = Self::offsets(&rm, |x| right.l_fiber(x).len());
        let mut rtargets = vec![NONE; *roff.last().unwrap() as usize];
        for &(m, h, t) in right_entries {
            if h as usize >= right.num_arrows() || m >= n || t >= n {
                return Err(Error::Malformed("right action entry out of range".into()));
            }
            if right.l(h) != rm[m as usize] {
                return Err(Error::Malformed(format!(
                    "right action entry ({}, {}) outside the domain r(m) = l(h)",
                    carrier.label(m),
                    right.arrow_label(h)
                )));
            }
            let slot = &mut rtargets[(roff[m as usize] + right.l_pos(h)) as usize];
            if *slot != NONE && *slot != t {
                return Err(Error::Malformed(format!(
                    "conflicting right action entries for ({}, {})",
                    carrier.label(m),
                    right.arrow_label(h)
                )));
            }
            *slot = t;
        }
        Ok(Bibundle {
            left,
            right,
            carrier,
            lm,
            rm,
            lact: ActionTable {
                offsets: loff,
                targets: ltargets,
            },
            ract: ActionTable {
                offsets: roff,
                targets: rtargets,
            },
            provenance: None,
        })
    }

    pub fn with_provenance(mut self, p: impl Into<String>) -> Self {
        self.provenance = Some(p.into());
        self
    }

    pub fn provenance(&self) -> Option<&str> {
        self.provenance.as_deref()
    }

    pub fn left(&self) -> &FinGroupoid {
        &self.left
    }

    pub fn right(&self) -> &FinGroupoid {
        &self.right
    }

    pub fn carrier(&self) -> &FinSet {
        &self.carrier
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    pub fn label(&self, m: Point) -> &str {
        self.carrier.label(m)
    }

    pub fn lm(&self, m: Point) -> Obj {
        self.lm[m as usize]
    }

    pub fn rm(&self, m: Point) -> Obj {
        self.rm[m as usize]
    }

    pub fn points(&self) -> std::ops::Range<Point> {
        0..self.len() as u32
    }

    /// `g·m`, or `None` when `r(g) != lm(m)` or the entry is missing.
    pub fn act_left(&self, g: Arrow, m: Point) -> Option<Point> {
        if self.left.r(g) != self.lm(m) {
            return None;
        }
        let t = self.lact.targets[(self.lact.offsets[m as usize] + self.left.r_pos(g)) as usize];
        (t != NONE).then_some(t)
    }

    /// `m·h`, or `None` when `rm(m) != l(h)` or the entry is missing.
    pub fn act_right(&self, m: Point, h: Arrow) -> Option<Point> {
        if self.right.l(h) != self.rm(m) {
            return None;
        }
        let t = self.ract.targets[(self.ract.offsets[m as usize] + self.right.l_pos(h)) as usize];
        (t != NONE).then_some(t)
    }

    /// `g·m` for a pair known to be in the action domain.
    pub fn lmul(&self, g: Arrow, m: Point) -> Point {
        self.act_left(g, m).unwrap_or_else(|| {
            panic!("left action undefined at ({}, {})", self.left.arrow_label(g), self.label(m))
        })
    }

    /// `m·h` for a pair known to be in the action domain.
    pub fn rmul(&self, m: Point, h: Arrow) -> Point {
        self.act_right(m, h).unwrap_or_else(|| {
            panic!("right action undefined at ({}, {})", self.label(m), self.right.arrow_label(h))
        })
    }

    /// Points in the `lm`-fiber over `x`.
    pub fn l_fiber(&self, x: Obj) -> Vec<Point> {
        self.points().filter(|&m| self.lm(m) == x).collect()
    }

    /// Points in the `rm`-fiber over `y`.
    pub fn r_fiber(&self, y: Obj) -> Vec<Point> {
        self.points().filter(|&m| self.rm(m) == y).collect()
    }

    /// All left action entries `(g, m, g·m)` that are defined.
    pub fn left_entries(&self) -> Vec<(Arrow, Point, Point)> {
        let mut out = Vec::new();
        for m in self.points() {
            for &g in self.left.r_fiber(self.lm(m)) {
                if let Some(t) = self.act_left(g, m) {
                    out.push((g, m, t));
                }
            }
        }
        out
    }

    /// All right action entries `(m, h, m·h)` that are defined.
    pub fn right_entries(&self) -> Vec<(Point, Arrow, Point)> {
        let mut out = Vec::new();
        for m in self.points() {
            for &h in self.right.l_fiber(self.rm(m)) {
                if let Some(t) = self.act_right(m, h) {
                    out.push((m, h, t));
                }
            }
        }
        out
    }

    /// Same actions with carrier points renamed by `perm` (old index ->
    /// new index) and the carrier reordered accordingly.
    pub fn permuted(&self, perm: &[Point]) -> Bibundle {
        let n = self.len();
        let mut inv = vec![0u32; n];
        for (old, &new) in perm.iter().enumerate() {
            inv[new as usize] = old as u32;
        }
        let labels = (0..n).map(|i| self.label(inv[i]).to_string()).collect();
        Bibundle::from_fns(
            self.left.clone(),
            self.right.clone(),
            FinSet::trusted(labels),
            (0..n).map(|i| self.lm(inv[i])).collect(),
            (0..n).map(|i| self.rm(inv[i])).collect(),
            |g, m| perm[self.lmul(g, inv[m as usize]) as usize],
            |m, h| perm[self.rmul(inv[m as usize], h) as usize],
        )
        .expect("permutation preserves shape")
    }

    /// Same bibundle with new carrier labels.
    pub fn relabeled(&self, labels: Vec<String>) -> Result<Bibundle> {
        let mut b = self.clone();
        if labels.len() != self.len() {
            return Err(Error::Malformed("relabeling must keep the carrier size".into()));
        }
        b.carrier = FinSet::new(labels)?;
        Ok(b)
    }
}

/// Checks the bibundle axioms exhaustively.
pub fn validate_bibundle(b: &Bibundle) -> ValidationReport {
    let mut rep = ValidationReport::new();
    let (g, h) = (b.left(), b.right());
    let gl = |a: Arrow| g.arrow_label(a).to_string();
    let hl = |a: Arrow| h.arrow_label(a).to_string();
    let ml = |m: Point| b.label(m).to_string();
    for m in b.points() {
        for &a in g.r_fiber(b.lm(m)) {
            match b.act_left(a, m) {
                None => rep.push("left-total", vec![gl(a), ml(m)], "g·m undefined"),
                Some(t) => {
                    if b.lm(t) != g.l(a) {
                        rep.push("left-moment", vec![gl(a), ml(m)], "l(g·m) = l(g) fails");
                    }
                    if b.rm(t) != b.rm(m) {
                        rep.push("left-preserves-r", vec![gl(a), ml(m)], "r(g·m) = r(m) fails");
                    }
                }
            }
        }
        for &c in h.l_fiber(b.rm(m)) {
            match b.act_right(m, c) {
                None => rep.push("right-total", vec![ml(m), hl(c)], "m·h undefined"),
                Some(t) => {
                    if b.rm(t) != h.r(c) {
                        rep.push("right-moment", vec![ml(m), hl(c)], "r(m·h) = r(h) fails");
                    }
                    if b.lm(t) != b.lm(m) {
                        rep.push("right-preserves-l", vec![ml(m), hl(c)], "l(m·h) = l(m) fails");
                    }
                }
            }
        }
    }
    if !rep.is_valid() {
        return rep;
    }
    for m in b.points() {
        if b.lmul(g.unit(b.lm(m)), m) != m {
            rep.push("left-unit", vec![ml(m)], "1·m = m fails");
        }
        if b.rmul(m, h.unit(b.rm(m))) != m {
            rep.push("right-unit", vec![ml(m)], "m·1 = m fails");
        }
        for &a2 in g.r_fiber(b.lm(m)) {
            let am = b.lmul(a2, m);
            for &a1 in g.r_fiber(g.l(a2)) {
                if b.lmul(a1, am) != b.lmul(g.mul(a1, a2), m) {
                    rep.push("left-composition", vec![gl(a1), gl(a2), ml(m)], "g·(g'·m) = (gg')·m fails");
                }
            }
        }
        for &c1 in h.l_fiber(b.rm(m)) {
            let mc = b.rmul(m, c1);
            for &c2 in h.l_fiber(h.r(c1)) {
                if b.rmul(mc, c2) != b.rmul(m, h.mul(c1, c2)) {
                    rep.push("right-composition", vec![ml(m), hl(c1), hl(c2)], "(m·h)·h' = m·(hh') fails");
                }
            }
        }
        for &a in g.r_fiber(b.lm(m)) {
            for &c in h.l_fiber(b.rm(m)) {
                if b.rmul(b.lmul(a, m), c) != b.lmul(a, b.rmul(m, c)) {
                    rep.push("commuting", vec![gl(a), ml(m), hl(c)], "(g·m)·h = g·(m·h) fails");
                }
            }
        }
    }
    rep
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// One principality condition with the labels witnessing its failure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Condition {
    pub holds: bool,
    pub witness: Vec<String>,
    pub note: Option<String>,
}

impl Condition {
    fn ok() -> Self {
        Condition {
            holds: true,
            witness: Vec::new(),
            note: None,
        }
    }

    fn fail(witness: Vec<String>) -> Self {
        Condition {
            holds: false,
            witness,
            note: None,
        }
    }
}

/// P1 (surjective moment map), P2 (free action), P3 (transitive on fibers).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrincipalityReport {
    pub side: Side,
    pub p1: Condition,
    pub p2: Condition,
    pub p3: Condition,
}

impl PrincipalityReport {
    pub fn holds(&self) -> bool {
        self.p1.holds && self.p2.holds && self.p3.holds
    }

    pub fn flags(&self) -> (bool, bool, bool) {
        (self.p1.holds, self.p2.holds, self.p3.holds)
    }
}

/// Checks right (resp. left) principality. For `Side::Right`: `lm` is
/// surjective, the right action is free, and it is transitive on each
/// `lm`-fiber. `Side::Left` is the mirror image.
pub fn check_principal(b: &Bibundle, side: Side) -> PrincipalityReport {
    let (base, actor) = match side {
        Side::Right => (b.left(), b.right()),
        Side::Left => (b.right(), b.left()),
    };
    let base_moment = |m: Point| match side {
        Side::Right => b.lm(m),
        Side::Left => b.rm(m),
    };
    // Arrows acting on m, and the action itself, seen from the acting side.
    let acting = |m: Point| -> &[Arrow] {
        match side {
            Side::Right => actor.l_fiber(b.rm(m)),
            Side::Left => actor.r_fiber(b.lm(m)),
        }
    };
    let act = |m: Point, k: Arrow| match side {
        Side::Right => b.rmul(m, k),
        Side::Left => b.lmul(k, m),
    };

    let mut fibers: Vec<Vec<Point>> = vec![Vec::new(); base.num_objects()];
    for m in b.points() {
        fibers[base_moment(m) as usize].push(m);
    }

    let p1 = match fibers.iter().position(Vec::is_empty) {
        Some(x) => Condition::fail(vec![base.object_label(x as u32).to_string()]),
        None => Condition::ok(),
    };

    let mut p2 = Condition::ok();
    'free: for m in b.points() {
        for &k in acting(m) {
            if !actor.is_identity(k) && act(m, k) == m {
                p2 = Condition::fail(pair_witness(b, side, m, actor.arrow_label(k)));
                break 'free;
            }
        }
    }

    let mut p3 = Condition::ok();
    'trans: for fiber in &fibers {
        let Some(&first) = fiber.first() else { continue };
        let mut seen = vec![false; b.len()];
        let mut stack = vec![first];
        seen[first as usize] = true;
        while let Some(m) = stack.pop() {
            for &k in acting(m) {
                let t = act(m, k);
                if !seen[t as usize] {
                    seen[t as usize] = true;
                    stack.push(t);
                }
            }
        }
        if let Some(&miss) = fiber.iter().find(|&&m| !seen[m as usize]) {
            p3 = Condition::fail(vec![b.label(first).to_string(), b.label(miss).to_string()]);
            break 'trans;
        }
    }
    if p3.holds && !p1.holds {
        p3.note = Some("empty fibers are treated as vacuously transitive".into());
    }
    PrincipalityReport { side, p1, p2, p3 }
}

fn pair_witness(b: &Bibundle, side: Side, m: Point, k: &str) -> Vec<String> {
    match side {
        Side::Right => vec![b.label(m).to_string(), k.to_string()],
        Side::Left => vec![k.to_string(), b.label(m).to_string()],
    }
}

pub fn is_biprincipal(b: &Bibundle) -> bool {
    check_principal(b, Side::Right).holds() && check_principal(b, Side::Left).holds()
}

/// The `H`-valued pairing `⟨m, m'⟩`, defined on pairs with `lm(m) = lm(m')`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pairing {
    table: HashMap<(Point, Point), Arrow>,
}

impl Pairing {
    pub fn from_table(table: HashMap<(Point, Point), Arrow>) -> Self {
        Pairing { table }
    }

    pub fn get(&self, m: Point, m2: Point) -> Option<Arrow> {
        self.table.get(&(m, m2)).copied()
    }

    pub fn table(&self) -> &HashMap<(Point, Point), Arrow> {
        &self.table
    }

    /// Entries sorted by `(m, m')`.
    pub fn entries(&self) -> Vec<(Point, Point, Arrow)> {
        let mut v: Vec<_> = self.table.iter().map(|(&(a, b), &h)| (a, b, h)).collect();
        v.sort_unstable();
        v
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }
}

/// Why no pairing exists. Freeness failures are reported in preference to
/// transitivity failures.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum NoPairing {
    /// `m·h = m` with `h` not an identity.
    NotFree { m: String, h: String },
    /// `m` and `m'` share a fiber but no arrow moves one to the other.
    NotTransitive { m: String, m2: String },
}

impl fmt::Display for NoPairing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NoPairing::NotFree { m, h } => write!(f, "action not free: {m}·{h} = {m}"),
            NoPairing::NotTransitive { m, m2 } => write!(f, "action not transitive: no h with {m}·h = {m2}"),
        }
    }
}

/// Computes the unique pairing `m·⟨m, m'⟩ = m'` when the right action is
/// free and transitive on the `lm`-fibers.
pub fn compute_pairing(b: &Bibundle) -> Result<Pairing, NoPairing> {
    let h = b.right();
    let mut table = HashMap::new();
    for m in b.points() {
        for &k in h.l_fiber(b.rm(m)) {
            let t = b.rmul(m, k);
            if !h.is_identity(k) && t == m {
                return Err(NoPairing::NotFree {
                    m: b.label(m).to_string(),
                    h: h.arrow_label(k).to_string(),
                });
            }
            if let Some(&k0) = table.get(&(m, t)) {
                // m·k0 = m·k, so k0 k^-1 fixes m.
                let stab = h.mul(k0, h.inv(k));
                return Err(NoPairing::NotFree {
                    m: b.label(m).to_string(),
                    h: h.arrow_label(stab).to_string(),
                });
            }
            table.insert((m, t), k);
        }
    }
    for m in b.points() {
        for m2 in b.points() {
            if b.lm(m) == b.lm(m2) && !table.contains_key(&(m, m2)) {
                return Err(NoPairing::NotTransitive {
                    m: b.label(m).to_string(),
                    m2: b.label(m2).to_string(),
                });
            }
        }
    }
    Ok(Pairing { table })
}

/// Verifies properties H1–H4 of a pairing table (both clauses of H3).
pub fn check_pairing_axioms(b: &Bibundle, p: &Pairing) -> ValidationReport {
    let mut rep = ValidationReport::new();
    let (g, h) = (b.left(), b.right());
    let ml = |m: Point| b.label(m).to_string();
    let same_fiber = |m: Point, m2: Point| b.lm(m) == b.lm(m2);
    for m in b.points() {
        for m2 in b.points() {
            if !same_fiber(m, m2) {
                continue;
            }
            match p.get(m, m2) {
                None => rep.push("pairing-total", vec![ml(m), ml(m2)], "<m, m'> undefined"),
                Some(k) => {
                    if h.l(k) != b.rm(m) || h.r(k) != b.rm(m2) {
                        rep.push("pairing-moment", vec![ml(m), ml(m2)], "<m, m'> must go from r(m') to r(m)");
                    }
                }
            }
        }
    }
    if !rep.is_valid() {
        return rep;
    }
    let pr = |m: Point, m2: Point| p.get(m, m2).expect("total");
    for m in b.points() {
        if pr(m, m) != h.unit(b.rm(m)) {
            rep.push("H3", vec![ml(m)], "<m, m> = 1_r(m) fails");
        }
        for m2 in b.points() {
            if !same_fiber(m, m2) {
                continue;
            }
            let k = pr(m, m2);
            for &c in h.l_fiber(b.rm(m2)) {
                if pr(m, b.rmul(m2, c)) != h.mul(k, c) {
                    rep.push(
                        "H1",
                        vec![ml(m), ml(m2), h.arrow_label(c).to_string()],
                        "<m, m'·h> = <m, m'> h fails",
                    );
                }
            }
            if k != h.inv(pr(m2, m)) {
                rep.push("H2", vec![ml(m), ml(m2)], "<m, m'> = <m', m>^-1 fails");
            }
            for m3 in b.points() {
                if m3 != m2 && same_fiber(m, m3) && pr(m, m3) == k {
                    rep.push("H3", vec![ml(m), ml(m2), ml(m3)], "<m, m'> = <m, m''> with m' != m''");
                }
            }
            for &a in g.r_fiber(b.lm(m)) {
                if g.l(a) != b.lm(m2) {
                    continue;
                }
                let lhs = pr(b.lmul(a, m), m2);
                let rhs = pr(m, b.lmul(g.inv(a), m2));
                if lhs != rhs {
                    rep.push(
                        "H4",
                        vec![g.arrow_label(a).to_string(), ml(m), ml(m2)],
                        "<g·m, m'> = <m, g^-1·m'> fails",
                    );
                }
            }
        }
    }
    rep
}
