//! Finite categories and groupoids given by explicit tables.
//!
//! Convention used throughout the crate: `l` is the target and `r` the
//! source of an arrow, and `comp(g, g')` is defined iff `r(g) == l(g')`,
//! with `l(gg') = l(g)` and `r(gg') = r(g')`.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result, ValidationReport};
use crate::finset::FinSet;

pub type Obj = u32;
pub type Arrow = u32;

/// Marker for an undefined entry in a dense table.
pub const NONE: u32 = u32::MAX;

/// A finite category stored as dense tables. Composition is an `n × n`
/// table with [`NONE`] for pairs that are not composable (or missing).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinCategory {
    objects: FinSet,
    arrows: FinSet,
    l: Vec<Obj>,
    r: Vec<Obj>,
    comp: Vec<Arrow>,
    unit: Vec<Arrow>,
}

impl FinCategory {
    /// Assembles a category from raw tables. Only structural problems are
    /// errors (indices out of range, composites listed for non-composable
    /// pairs, conflicting entries); axioms are checked by [`validate_category`].
    pub fn from_parts(
        objects: FinSet,
        arrows: FinSet,
        l: Vec<Obj>,
        r: Vec<Obj>,
        comp: &[(Arrow, Arrow, Arrow)],
        unit: Vec<Arrow>,
    ) -> Result<Self> {
        let (no, na) = (objects.len(), arrows.len());
        if l.len() != na || r.len() != na {
            return Err(Error::Malformed("moment maps must be total on arrows".into()));
        }
        if unit.len() != no {
            return Err(Error::Malformed("unit map must be total on objects".into()));
        }
        if l.iter().chain(&r).any(|&x| x as usize >= no) {
            return Err(Error::Malformed("moment map value is not an object".into()));
        }
        if unit.iter().any(|&a| a as usize >= na) {
            return Err(Error::Malformed("unit value is not an arrow".into()));
        }
        let mut table = vec![NONE; na * na];
        for &(a, b, c) in comp {
            if a as usize >= na || b as usize >= na || c as usize >= na {
                return Err(Error::Malformed("composition entry is not an arrow".into()));
            }
            if r[a as usize] != l[b as usize] {
                return Err(Error::Malformed(format!(
                    "composite listed for non-composable pair ({}, {})",
                    arrows.label(a),
                    arrows.label(b)
                )));
            }
            let slot = &mut table[a as usize * na + b as usize];
            if *slot != NONE && *slot != c {
                return Err(Error::Malformed(format!(
                    "conflicting composites for ({}, {})",
                    arrows.label(a),
                    arrows.label(b)
                )));
            }
            *slot = c;
        }
        Ok(FinCategory {
            objects,
            arrows,
            l,
            r,
            comp: table,
            unit,
        })
    }

    pub fn objects(&self) -> &FinSet {
        &self.objects
    }

    pub fn arrows(&self) -> &FinSet {
        &self.arrows
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn l(&self, a: Arrow) -> Obj {
        self.l[a as usize]
    }

    pub fn r(&self, a: Arrow) -> Obj {
        self.r[a as usize]
    }

    pub fn unit(&self, x: Obj) -> Arrow {
        self.unit[x as usize]
    }

    pub fn comp(&self, a: Arrow, b: Arrow) -> Option<Arrow> {
        let c = self.comp[a as usize * self.arrows.len() + b as usize];
        (c != NONE).then_some(c)
    }

    /// All composable pairs with their composite (or `None` when missing).
    pub fn composable_pairs(&self) -> impl Iterator<Item = (Arrow, Arrow, Option<Arrow>)> + '_ {
        let na = self.arrows.len() as u32;
        (0..na).flat_map(move |a| {
            (0..na)
                .filter(move |&b| self.r(a) == self.l(b))
                .map(move |b| (a, b, self.comp(a, b)))
        })
    }

    /// Restriction to the objects in `keep` and all arrows between them.
    pub fn full_subcategory(&self, keep: &[Obj]) -> FinCategory {
        let mut obj_map = vec![NONE; self.num_objects()];
        for (i, &x) in keep.iter().enumerate() {
            obj_map[x as usize] = i as u32;
        }
        let kept: Vec<Arrow> = (0..self.num_arrows() as u32)
            .filter(|&a| obj_map[self.l(a) as usize] != NONE && obj_map[self.r(a) as usize] != NONE)
            .collect();
        let mut arr_map = vec![NONE; self.num_arrows()];
        for (i, &a) in kept.iter().enumerate() {
            arr_map[a as usize] = i as u32;
        }
        let n = kept.len();
        let mut comp = vec![NONE; n * n];
        for (i, &a) in kept.iter().enumerate() {
            for (j, &b) in kept.iter().enumerate() {
                if let Some(c) = self.comp(a, b) {
                    comp[i * n + j] = arr_map[c as usize];
                }
            }
        }
        FinCategory {
            objects: FinSet::trusted(keep.iter().map(|&x| self.objects.label(x).to_string()).collect()),
            arrows: FinSet::trusted(kept.iter().map(|&a| self.arrows.label(a).to_string()).collect()),
            l: kept.iter().map(|&a| obj_map[self.l(a) as usize]).collect(),
            r: kept.iter().map(|&a| obj_map[self.r(a) as usize]).collect(),
            comp,
            unit: keep.iter().map(|&x| arr_map[self.unit(x) as usize]).collect(),
        }
    }

    /// The composition table as label triples, in arrow order.
    pub fn comp_triples(&self) -> Vec<(Arrow, Arrow, Arrow)> {
        self.composable_pairs()
            .filter_map(|(a, b, c)| c.map(|c| (a, b, c)))
            .collect()
    }
}

/// Checks the category axioms exhaustively.
pub fn validate_category(c: &FinCategory) -> ValidationReport {
    let mut rep = ValidationReport::new();
    let lab = |a: Arrow| c.arrows.label(a).to_string();
    for x in 0..c.num_objects() as u32 {
        let u = c.unit(x);
        if c.l(u) != x || c.r(u) != x {
            rep.push("unit-moment", vec![c.objects.label(x).to_string()], "l(1_x) = r(1_x) = x fails");
        }
    }
    for (a, b, ab) in c.composable_pairs() {
        match ab {
            None => rep.push("composition-total", vec![lab(a), lab(b)], "composable pair has no composite"),
            Some(ab) => {
                if c.l(ab) != c.l(a) || c.r(ab) != c.r(b) {
                    rep.push("composition-moment", vec![lab(a), lab(b)], "l(gg') = l(g), r(gg') = r(g') fails");
                }
            }
        }
    }
    for a in 0..c.num_arrows() as u32 {
        if c.comp(c.unit(c.l(a)), a) != Some(a) {
            rep.push("left-unit", vec![lab(a)], "1_{l(g)} g = g fails");
        }
        if c.comp(a, c.unit(c.r(a))) != Some(a) {
            rep.push("right-unit", vec![lab(a)], "g 1_{r(g)} = g fails");
        }
    }
    if rep.violates("composition-total") || rep.violates("composition-moment") {
        return rep;
    }
    for (a, b, ab) in c.composable_pairs() {
        let ab = ab.expect("total");
        for d in 0..c.num_arrows() as u32 {
            if c.r(b) != c.l(d) {
                continue;
            }
            let lhs = c.comp(ab, d);
            let rhs = c.comp(b, d).and_then(|bd| c.comp(a, bd));
            if lhs != rhs {
                rep.push("associativity", vec![lab(a), lab(b), lab(d)], "(gg')g'' = g(g'g'') fails");
            }
        }
    }
    rep
}

/// Lazily built per-object fibers of the moment maps, sorted ascending, and
/// the position of every arrow inside its own fibers.
#[derive(Debug)]
struct Fibers {
    l_fib: Vec<Vec<Arrow>>,
    r_fib: Vec<Vec<Arrow>>,
    l_pos: Vec<u32>,
    r_pos: Vec<u32>,
}

#[derive(Debug)]
enum Kind {
    Table { cat: FinCategory, inv: Vec<Arrow> },
    /// Cartesian product of table groupoids with mixed-radix indexing, first
    /// factor most significant. An empty list is the one-arrow unit groupoid.
    Product {
        factors: Vec<FinGroupoid>,
        obj_radix: Vec<u32>,
        arr_radix: Vec<u32>,
        l: Vec<Obj>,
        r: Vec<Obj>,
        inv: Vec<Arrow>,
        unit: Vec<Arrow>,
        objects: OnceLock<FinSet>,
        arrows: OnceLock<FinSet>,
    },
}

#[derive(Debug)]
struct Inner {
    kind: Kind,
    fibers: OnceLock<Fibers>,
}

/// A finite groupoid. Cheap to clone; values are immutable.
#[derive(Clone)]
pub struct FinGroupoid(Arc<Inner>);

impl fmt::Debug for FinGroupoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinGroupoid({}, {} objects, {} arrows)", self.name(), self.num_objects(), self.num_arrows())
    }
}

fn mixed_decode(mut idx: u32, radix: &[u32], out: &mut Vec<u32>) {
    out.clear();
    out.resize(radix.len(), 0);
    for i in (0..radix.len()).rev() {
        out[i] = idx % radix[i];
        idx /= radix[i];
    }
}

fn mixed_encode(parts: impl IntoIterator<Item = u32>, radix: &[u32]) -> u32 {
    parts.into_iter().zip(radix).fold(0, |acc, (p, &b)| acc * b + p)
}

fn tuple_label<'a>(parts: impl Iterator<Item = &'a str>) -> String {
    let v: Vec<&str> = parts.collect();
    format!("({})", v.join(","))
}

impl FinGroupoid {
    fn from_kind(kind: Kind) -> Self {
        FinGroupoid(Arc::new(Inner {
            kind,
            fibers: OnceLock::new(),
        }))
    }

    /// Builds a groupoid from raw tables without checking axioms. Pair with
    /// [`validate_groupoid`] before trusting the result.
    pub fn from_category(cat: FinCategory, inv: Vec<Arrow>) -> Result<Self> {
        if inv.len() != cat.num_arrows() || inv.iter().any(|&a| a as usize >= cat.num_arrows()) {
            return Err(Error::Malformed("inverse map must be total on arrows".into()));
        }
        Ok(Self::from_kind(Kind::Table { cat, inv }))
    }

    /// Builds a groupoid from raw tables and rejects it unless every axiom holds.
    pub fn from_category_checked(cat: FinCategory, inv: Vec<Arrow>) -> Result<Self> {
        let g = Self::from_category(cat, inv)?;
        let rep = validate_groupoid(&g);
        if !rep.is_valid() {
            return Err(Error::Malformed(format!("groupoid axioms fail: {rep}")));
        }
        Ok(g)
    }

    /// The one-object, one-arrow groupoid, i.e. the empty cartesian product.
    pub fn unit_groupoid() -> Self {
        Self::product_of(Vec::new())
    }

    /// Cartesian product of a list of groupoids. Nested products are
    /// flattened and a single factor is returned unchanged.
    pub fn product_of(parts: Vec<FinGroupoid>) -> Self {
        let mut factors = Vec::new();
        for p in parts {
            match &p.0.kind {
                Kind::Table { .. } => factors.push(p),
                Kind::Product { factors: fs, .. } => factors.extend(fs.iter().cloned()),
            }
        }
        if factors.len() == 1 {
            return factors.pop().unwrap();
        }
        let obj_radix: Vec<u32> = factors.iter().map(|f| f.num_objects() as u32).collect();
        let arr_radix: Vec<u32> = factors.iter().map(|f| f.num_arrows() as u32).collect();
        let na: usize = arr_radix.iter().map(|&x| x as usize).product();
        let no: usize = obj_radix.iter().map(|&x| x as usize).product();
        let mut l = Vec::with_capacity(na);
        let mut r = Vec::with_capacity(na);
        let mut inv = Vec::with_capacity(na);
        let mut parts = Vec::new();
        for a in 0..na as u32 {
            mixed_decode(a, &arr_radix, &mut parts);
            l.push(mixed_encode(parts.iter().zip(&factors).map(|(&p, f)| f.l(p)), &obj_radix));
            r.push(mixed_encode(parts.iter().zip(&factors).map(|(&p, f)| f.r(p)), &obj_radix));
            inv.push(mixed_encode(parts.iter().zip(&factors).map(|(&p, f)| f.inv(p)), &arr_radix));
        }
        let mut unit = Vec::with_capacity(no);
        for x in 0..no as u32 {
            mixed_decode(x, &obj_radix, &mut parts);
            unit.push(mixed_encode(parts.iter().zip(&factors).map(|(&p, f)| f.unit(p)), &arr_radix));
        }
        Self::from_kind(Kind::Product {
            factors,
            obj_radix,
            arr_radix,
            l,
            r,
            inv,
            unit,
            objects: OnceLock::new(),
            arrows: OnceLock::new(),
        })
    }

    pub fn product(a: &FinGroupoid, b: &FinGroupoid) -> Self {
        Self::product_of(vec![a.clone(), b.clone()])
    }

    /// `G^n` as a flattened product; `G^0` is the unit groupoid.
    pub fn power(&self, n: usize) -> Self {
        Self::product_of(vec![self.clone(); n])
    }

    /// The factors of a product, or `[self]` for a table groupoid.
    pub fn factors(&self) -> Vec<FinGroupoid> {
        match &self.0.kind {
            Kind::Table { .. } => vec![self.clone()],
            Kind::Product { factors, .. } => factors.clone(),
        }
    }

    pub fn is_product(&self) -> bool {
        matches!(self.0.kind, Kind::Product { .. })
    }

    /// Splits an arrow of a product into its components (one per factor).
    pub fn split_arrow(&self, a: Arrow) -> Vec<Arrow> {
        match &self.0.kind {
            Kind::Table { .. } => vec![a],
            Kind::Product { arr_radix, .. } => {
                let mut v = Vec::new();
                mixed_decode(a, arr_radix, &mut v);
                v
            }
        }
    }

    pub fn join_arrow(&self, parts: &[Arrow]) -> Arrow {
        match &self.0.kind {
            Kind::Table { .. } => parts[0],
            Kind::Product { arr_radix, .. } => mixed_encode(parts.iter().copied(), arr_radix),
        }
    }

    pub fn split_object(&self, x: Obj) -> Vec<Obj> {
        match &self.0.kind {
            Kind::Table { .. } => vec![x],
            Kind::Product { obj_radix, .. } => {
                let mut v = Vec::new();
                mixed_decode(x, obj_radix, &mut v);
                v
            }
        }
    }

    pub fn join_object(&self, parts: &[Obj]) -> Obj {
        match &self.0.kind {
            Kind::Table { .. } => parts[0],
            Kind::Product { obj_radix, .. } => mixed_encode(parts.iter().copied(), obj_radix),
        }
    }

    pub fn num_objects(&self) -> usize {
        match &self.0.kind {
            Kind::Table { cat, .. } => cat.num_objects(),
            Kind::Product { unit, .. } => unit.len(),
        }
    }

    pub fn num_arrows(&self) -> usize {
        match &self.0.kind {
            Kind::Table { cat, .. } => cat.num_arrows(),
            Kind::Product { l, .. } => l.len(),
        }
    }

    pub fn l(&self, a: Arrow) -> Obj {
        match &self.0.kind {
            Kind::Table { cat, .. } => cat.l(a),
            Kind::Product { l, .. } => l[a as usize],
        }
    }

    pub fn r(&self, a: Arrow) -> Obj {
        match &self.0.kind {
            Kind::Table { cat, .. } => cat.r(a),
            Kind::Product { r, .. } => r[a as usize],
        }
    }

    pub fn inv(&self, a: Arrow) -> Arrow {
        match &self.0.kind {
            Kind::Table { inv, .. } => inv[a as usize],
            Kind::Product { inv, .. } => inv[a as usize],
        }
    }

    pub fn unit(&self, x: Obj) -> Arrow {
        match &self.0.kind {
            Kind::Table { cat, .. } => cat.unit(x),
            Kind::Product { unit, .. } => unit[x as usize],
        }
    }

    /// `gg'`, defined iff `r(g) == l(g')`.
    pub fn comp(&self, a: Arrow, b: Arrow) -> Option<Arrow> {
        match &self.0.kind {
            Kind::Table { cat, .. } => cat.comp(a, b),
            Kind::Product {
                factors, arr_radix, ..
            } => {
                let mut out = 0u32;
                let (mut x, mut y) = (a, b);
                let mut scale = 1u32;
                for (f, &base) in factors.iter().zip(arr_radix).rev() {
                    let c = f.comp(x % base, y % base)?;
                    out += c * scale;
                    scale *= base;
                    x /= base;
                    y /= base;
                }
                Some(out)
            }
        }
    }

    /// Composite of arrows known to be composable.
    pub fn mul(&self, a: Arrow, b: Arrow) -> Arrow {
        self.comp(a, b).unwrap_or_else(|| {
            panic!(
                "arrows {} and {} are not composable",
                self.arrow_label(a),
                self.arrow_label(b)
            )
        })
    }

    pub fn objects(&self) -> &FinSet {
        match &self.0.kind {
            Kind::Table { cat, .. } => cat.objects(),
            Kind::Product {
                factors, objects, unit, ..
            } => objects.get_or_init(|| {
                let n = unit.len() as u32;
                FinSet::trusted(
                    (0..n)
                        .map(|x| {
                            let parts = self.split_object(x);
                            tuple_label(parts.iter().zip(factors).map(|(&p, f)| f.object_label(p)))
                        })
                        .collect(),
                )
            }),
        }
    }

    pub fn arrows(&self) -> &FinSet {
        match &self.0.kind {
            Kind::Table { cat, .. } => cat.arrows(),
            Kind::Product {
                factors, arrows, l, ..
            } => arrows.get_or_init(|| {
                let n = l.len() as u32;
                FinSet::trusted(
                    (0..n)
                        .map(|a| {
                            let parts = self.split_arrow(a);
                            tuple_label(parts.iter().zip(factors).map(|(&p, f)| f.arrow_label(p)))
                        })
                        .collect(),
                )
            }),
        }
    }

    pub fn object_label(&self, x: Obj) -> &str {
        self.objects().label(x)
    }

    pub fn arrow_label(&self, a: Arrow) -> &str {
        self.arrows().label(a)
    }

    /// Short human-readable description used in messages.
    pub fn name(&self) -> String {
        match &self.0.kind {
            Kind::Table { cat, .. } => format!("<{}|{}>", cat.num_objects(), cat.num_arrows()),
            Kind::Product { factors, .. } => {
                let v: Vec<String> = factors.iter().map(|f| f.name()).collect();
                format!("({})", v.join(" x "))
            }
        }
    }

    fn fibers(&self) -> &Fibers {
        self.0.fibers.get_or_init(|| {
            let no = self.num_objects();
            let na = self.num_arrows();
            let mut l_fib = vec![Vec::new(); no];
            let mut r_fib = vec![Vec::new(); no];
            let mut l_pos = vec![0; na];
            let mut r_pos = vec![0; na];
            for a in 0..na as u32 {
                let (x, y) = (self.l(a) as usize, self.r(a) as usize);
                l_pos[a as usize] = l_fib[x].len() as u32;
                l_fib[x].push(a);
                r_pos[a as usize] = r_fib[y].len() as u32;
                r_fib[y].push(a);
            }
            Fibers {
                l_fib,
                r_fib,
                l_pos,
                r_pos,
            }
        })
    }

    /// Arrows with `l(g) = x`, ascending.
    pub fn l_fiber(&self, x: Obj) -> &[Arrow] {
        &self.fibers().l_fib[x as usize]
    }

    /// Arrows with `r(g) = x`, ascending.
    pub fn r_fiber(&self, x: Obj) -> &[Arrow] {
        &self.fibers().r_fib[x as usize]
    }

    pub fn l_pos(&self, a: Arrow) -> u32 {
        self.fibers().l_pos[a as usize]
    }

    pub fn r_pos(&self, a: Arrow) -> u32 {
        self.fibers().r_pos[a as usize]
    }

    /// Arrows from `y` to `x`, i.e. `l = x` and `r = y`.
    pub fn hom(&self, x: Obj, y: Obj) -> impl Iterator<Item = Arrow> + '_ {
        self.l_fiber(x).iter().copied().filter(move |&a| self.r(a) == y)
    }

    pub fn is_identity(&self, a: Arrow) -> bool {
        self.unit(self.l(a)) == a
    }

    /// Materializes the underlying category (with explicit composition table).
    pub fn to_category(&self) -> FinCategory {
        match &self.0.kind {
            Kind::Table { cat, .. } => cat.clone(),
            Kind::Product { .. } => {
                let na = self.num_arrows();
                let mut comp = vec![NONE; na * na];
                for a in 0..na as u32 {
                    for &b in self.l_fiber(self.r(a)) {
                        comp[a as usize * na + b as usize] = self.mul(a, b);
                    }
                }
                FinCategory {
                    objects: self.objects().clone(),
                    arrows: self.arrows().clone(),
                    l: (0..na as u32).map(|a| self.l(a)).collect(),
                    r: (0..na as u32).map(|a| self.r(a)).collect(),
                    comp,
                    unit: (0..self.num_objects() as u32).map(|x| self.unit(x)).collect(),
                }
            }
        }
    }

    /// The same groupoid as a single table (products are materialized).
    pub fn to_table(&self) -> FinGroupoid {
        match &self.0.kind {
            Kind::Table { .. } => self.clone(),
            Kind::Product { inv, .. } => Self::from_kind(Kind::Table {
                cat: self.to_category(),
                inv: inv.clone(),
            }),
        }
    }

    /// Restriction to the objects in `keep` and all arrows between them.
    pub fn full_subgroupoid(&self, keep: &[Obj]) -> FinGroupoid {
        let cat = self.to_category();
        let sub = cat.full_subcategory(keep);
        let inv = (0..sub.num_arrows() as u32)
            .map(|i| {
                let a = cat.arrows().index_of(sub.arrows().label(i)).unwrap();
                sub.arrows().index_of(cat.arrows().label(self.inv(a))).unwrap()
            })
            .collect();
        Self::from_kind(Kind::Table { cat: sub, inv })
    }

    /// Opposite groupoid: moment maps swapped, composition reversed, labels kept.
    pub fn opposite(&self) -> FinGroupoid {
        match &self.0.kind {
            Kind::Table { cat, inv } => {
                let na = cat.num_arrows();
                let mut comp = vec![NONE; na * na];
                for a in 0..na {
                    for b in 0..na {
                        comp[a * na + b] = cat.comp[b * na + a];
                    }
                }
                Self::from_kind(Kind::Table {
                    cat: FinCategory {
                        objects: cat.objects.clone(),
                        arrows: cat.arrows.clone(),
                        l: cat.r.clone(),
                        r: cat.l.clone(),
                        comp,
                        unit: cat.unit.clone(),
                    },
                    inv: inv.clone(),
                })
            }
            Kind::Product { factors, .. } => {
                Self::product_of(factors.iter().map(|f| f.opposite()).collect())
            }
        }
    }

    pub fn ptr_eq(&self, other: &FinGroupoid) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }
}

impl PartialEq for FinGroupoid {
    fn eq(&self, other: &Self) -> bool {
        if self.ptr_eq(other) {
            return true;
        }
        match (&self.0.kind, &other.0.kind) {
            (Kind::Table { cat: c1, inv: i1 }, Kind::Table { cat: c2, inv: i2 }) => c1 == c2 && i1 == i2,
            (Kind::Product { factors: f1, .. }, Kind::Product { factors: f2, .. }) => f1 == f2,
            _ => {
                self.num_arrows() == other.num_arrows()
                    && self.num_objects() == other.num_objects()
                    && self.to_category() == other.to_category()
                    && (0..self.num_arrows() as u32).all(|a| self.inv(a) == other.inv(a))
            }
        }
    }
}

impl Eq for FinGroupoid {}

/// Checks every groupoid axiom. Products are valid iff all factors are.
pub fn validate_groupoid(g: &FinGroupoid) -> ValidationReport {
    match &g.0.kind {
        Kind::Table { cat, inv } => {
            let mut rep = validate_category(cat);
            for a in 0..cat.num_arrows() as u32 {
                let ai = inv[a as usize];
                let ok = cat.comp(a, ai) == Some(cat.unit(cat.l(a)))
                    && cat.comp(ai, a) == Some(cat.unit(cat.r(a)));
                if !ok {
                    rep.push(
                        "inverse",
                        vec![cat.arrows().label(a).to_string()],
                        format!(
                            "g inv(g) = 1_l(g) and inv(g) g = 1_r(g) fail with inv = {}",
                            cat.arrows().label(ai)
                        ),
                    );
                }
            }
            rep
        }
        Kind::Product { factors, .. } => {
            let mut rep = ValidationReport::new();
            for f in factors {
                rep.merge(validate_groupoid(f));
            }
            rep
        }
    }
}

pub(crate) fn table_groupoid(
    objects: Vec<String>,
    arrows: Vec<String>,
    l: Vec<Obj>,
    r: Vec<Obj>,
    mul: impl Fn(Arrow, Arrow) -> Arrow,
    inv: Vec<Arrow>,
    unit: Vec<Arrow>,
) -> FinGroupoid {
    let na = arrows.len();
    let mut comp = vec![NONE; na * na];
    for a in 0..na {
        for b in 0..na {
            if r[a] == l[b] {
                comp[a * na + b] = mul(a as u32, b as u32);
            }
        }
    }
    FinGroupoid::from_kind(Kind::Table {
        cat: FinCategory {
            objects: FinSet::trusted(objects),
            arrows: FinSet::trusted(arrows),
            l,
            r,
            comp,
            unit,
        },
        inv,
    })
}

/// `Triv(n)`: `n` objects and only identity arrows.
pub fn trivial(n: usize) -> FinGroupoid {
    let ids: Vec<u32> = (0..n as u32).collect();
    table_groupoid(
        (0..n).map(|i| i.to_string()).collect(),
        (0..n).map(|i| format!("id{i}")).collect(),
        ids.clone(),
        ids.clone(),
        |a, _| a,
        ids.clone(),
        ids,
    )
}

/// `Pair(n)`: one arrow `(i,j)` from `j` to `i` for every pair, `(i,j)(j,k) = (i,k)`.
pub fn pair(n: usize) -> FinGroupoid {
    let nn = n as u32;
    let idx = move |i: u32, j: u32| i * nn + j;
    let arrows = (0..n).flat_map(|i| (0..n).map(move |j| format!("({i},{j})"))).collect();
    let l = (0..nn * nn).map(|a| a / nn).collect();
    let r = (0..nn * nn).map(|a| a % nn).collect();
    table_groupoid(
        (0..n).map(|i| i.to_string()).collect(),
        arrows,
        l,
        r,
        move |a, b| idx(a / nn, b % nn),
        (0..nn * nn).map(|a| idx(a % nn, a / nn)).collect(),
        (0..nn).map(|i| idx(i, i)).collect(),
    )
}

/// One-object groupoid of a finite group given by its multiplication table.
/// Arrow 0 need not be the identity; the identity is located from the table.
pub fn one_object(labels: Vec<String>, mul: &[Vec<u32>]) -> Result<FinGroupoid> {
    let n = labels.len();
    if mul.len() != n || mul.iter().any(|row| row.len() != n || row.iter().any(|&c| c as usize >= n)) {
        return Err(Error::Malformed("group table must be n x n with entries in range".into()));
    }
    let e = (0..n)
        .find(|&e| (0..n).all(|a| mul[e][a] as usize == a && mul[a][e] as usize == a))
        .ok_or_else(|| Error::Malformed("group table has no identity".into()))? as u32;
    let mut inv = Vec::with_capacity(n);
    for a in 0..n {
        let b = (0..n)
            .find(|&b| mul[a][b] == e && mul[b][a] == e)
            .ok_or_else(|| Error::Malformed(format!("element {} has no inverse", labels[a])))?;
        inv.push(b as u32);
    }
    let g = table_groupoid(
        vec!["*".into()],
        labels,
        vec![0; n],
        vec![0; n],
        |a, b| mul[a as usize][b as usize],
        inv,
        vec![e],
    );
    let rep = validate_groupoid(&g);
    if !rep.is_valid() {
        return Err(Error::Malformed(format!("group table fails: {rep}")));
    }
    Ok(g)
}

/// `Cyc(n)`: the cyclic group `Z/n` as a one-object groupoid, arrows `0..n`.
pub fn cyclic(n: usize) -> FinGroupoid {
    assert!(n >= 1, "cyclic group of order 0");
    let nn = n as u32;
    table_groupoid(
        vec!["*".into()],
        (0..n).map(|k| k.to_string()).collect(),
        vec![0; n],
        vec![0; n],
        move |a, b| (a + b) % nn,
        (0..nn).map(|a| (nn - a) % nn).collect(),
        vec![0],
    )
}

/// Action groupoid of a group (one-object groupoid) acting on a set.
/// Arrows are `(k,z)` ordered group-element-major, with `l(k,z) = k·z`,
/// `r(k,z) = z` and `(k1,z1)(k2,z2) = (k1k2, z2)` when `z1 = k2·z2`.
pub fn action_groupoid(
    group: &FinGroupoid,
    carrier: &FinSet,
    act: impl Fn(Arrow, u32) -> u32,
) -> Result<FinGroupoid> {
    if group.num_objects() != 1 {
        return Err(Error::GroupoidMismatch("acting groupoid must have one object".into()));
    }
    let (ng, nz) = (group.num_arrows() as u32, carrier.len() as u32);
    let table: Vec<u32> = (0..ng).flat_map(|k| (0..nz).map(move |z| (k, z))).map(|(k, z)| act(k, z)).collect();
    if let Some(&bad) = table.iter().find(|&&v| v >= nz) {
        return Err(Error::OutOfRange(format!("action value {bad} is not a carrier point")));
    }
    let at = |k: u32, z: u32| table[(k * nz + z) as usize];
    let e = group.unit(0);
    for z in 0..nz {
        if at(e, z) != z {
            return Err(Error::ActionLaw(format!("identity moves {}", carrier.label(z))));
        }
        for k1 in 0..ng {
            for k2 in 0..ng {
                if at(group.mul(k1, k2), z) != at(k1, at(k2, z)) {
                    return Err(Error::ActionLaw(format!(
                        "({} {})·{} differs from {}·({}·{})",
                        group.arrow_label(k1),
                        group.arrow_label(k2),
                        carrier.label(z),
                        group.arrow_label(k1),
                        group.arrow_label(k2),
                        carrier.label(z)
                    )));
                }
            }
        }
    }
    let arrows = (0..ng)
        .flat_map(|k| (0..nz).map(move |z| (k, z)))
        .map(|(k, z)| format!("({},{})", group.arrow_label(k), carrier.label(z)))
        .collect();
    let idx = move |k: u32, z: u32| k * nz + z;
    Ok(table_groupoid(
        carrier.labels().to_vec(),
        arrows,
        (0..ng * nz).map(|a| at(a / nz, a % nz)).collect(),
        (0..ng * nz).map(|a| a % nz).collect(),
        |a, b| idx(group.mul(a / nz, b / nz), b % nz),
        (0..ng * nz).map(|a| idx(group.inv(a / nz), at(a / nz, a % nz))).collect(),
        (0..nz).map(|z| idx(e, z)).collect(),
    ))
}

/// Disjoint union; labels of part `i` get the suffix `@i`.
pub fn disjoint_union(parts: &[FinGroupoid]) -> FinGroupoid {
    let mut objects = Vec::new();
    let mut arrows = Vec::new();
    let (mut l, mut r, mut inv, mut unit) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    let mut arrow_off = Vec::with_capacity(parts.len());
    let mut owner = Vec::new();
    for (i, g) in parts.iter().enumerate() {
        let (ao, oo) = (arrows.len() as u32, objects.len() as u32);
        arrow_off.push(ao);
        objects.extend(g.objects().iter().map(|x| format!("{x}@{i}")));
        for a in 0..g.num_arrows() as u32 {
            arrows.push(format!("{}@{i}", g.arrow_label(a)));
            l.push(g.l(a) + oo);
            r.push(g.r(a) + oo);
            inv.push(g.inv(a) + ao);
            owner.push(i);
        }
        unit.extend((0..g.num_objects() as u32).map(|x| g.unit(x) + ao));
    }
    table_groupoid(
        objects,
        arrows,
        l,
        r,
        |a, b| {
            let i = owner[a as usize];
            let ao = arrow_off[i];
            parts[i].mul(a - ao, b - ao) + ao
        },
        inv,
        unit,
    )
}

/// A groupoid homomorphism given by its object and arrow maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupoidHom {
    pub source: FinGroupoid,
    pub target: FinGroupoid,
    pub f0: Vec<Obj>,
    pub f1: Vec<Arrow>,
}

impl GroupoidHom {
    pub fn new(source: FinGroupoid, target: FinGroupoid, f0: Vec<Obj>, f1: Vec<Arrow>) -> Result<Self> {
        if f0.len() != source.num_objects() || f1.len() != source.num_arrows() {
            return Err(Error::Malformed("homomorphism maps must be total".into()));
        }
        if f0.iter().any(|&x| x as usize >= target.num_objects())
            || f1.iter().any(|&a| a as usize >= target.num_arrows())
        {
            return Err(Error::Malformed("homomorphism value outside the target".into()));
        }
        Ok(GroupoidHom { source, target, f0, f1 })
    }

    pub fn identity(g: &FinGroupoid) -> Self {
        GroupoidHom {
            source: g.clone(),
            target: g.clone(),
            f0: (0..g.num_objects() as u32).collect(),
            f1: (0..g.num_arrows() as u32).collect(),
        }
    }

    /// `g ↦ (g, g)` into `G × G`.
    pub fn diagonal(g: &FinGroupoid) -> Self {
        let gg = FinGroupoid::product(g, g);
        let (no, na) = (g.num_objects() as u32, g.num_arrows() as u32);
        GroupoidHom {
            f0: (0..no).map(|x| x * no + x).collect(),
            f1: (0..na).map(|a| a * na + a).collect(),
            source: g.clone(),
            target: gg,
        }
    }

    /// The unique homomorphism to the unit groupoid.
    pub fn terminal(g: &FinGroupoid) -> Self {
        GroupoidHom {
            source: g.clone(),
            target: FinGroupoid::unit_groupoid(),
            f0: vec![0; g.num_objects()],
            f1: vec![0; g.num_arrows()],
        }
    }

    /// Diagrammatic composite: first `self`, then `next`.
    pub fn then(&self, next: &GroupoidHom) -> Result<GroupoidHom> {
        if self.target != next.source {
            return Err(Error::GroupoidMismatch("homomorphisms are not composable".into()));
        }
        Ok(GroupoidHom {
            source: self.source.clone(),
            target: next.target.clone(),
            f0: self.f0.iter().map(|&x| next.f0[x as usize]).collect(),
            f1: self.f1.iter().map(|&a| next.f1[a as usize]).collect(),
        })
    }
}

/// Checks the homomorphism laws exhaustively.
pub fn check_hom(phi: &GroupoidHom) -> ValidationReport {
    let (s, t) = (&phi.source, &phi.target);
    let mut rep = ValidationReport::new();
    for a in 0..s.num_arrows() as u32 {
        let fa = phi.f1[a as usize];
        if t.l(fa) != phi.f0[s.l(a) as usize] || t.r(fa) != phi.f0[s.r(a) as usize] {
            rep.push("hom-moment", vec![s.arrow_label(a).to_string()], "f0 l = l f1 or f0 r = r f1 fails");
        }
    }
    for x in 0..s.num_objects() as u32 {
        if phi.f1[s.unit(x) as usize] != t.unit(phi.f0[x as usize]) {
            rep.push("hom-unit", vec![s.object_label(x).to_string()], "f1(1_x) = 1_f0(x) fails");
        }
    }
    if rep.violates("hom-moment") {
        return rep;
    }
    for a in 0..s.num_arrows() as u32 {
        for &b in s.l_fiber(s.r(a)) {
            let lhs = phi.f1[s.mul(a, b) as usize];
            let rhs = t.comp(phi.f1[a as usize], phi.f1[b as usize]);
            if rhs != Some(lhs) {
                rep.push(
                    "hom-composition",
                    vec![s.arrow_label(a).to_string(), s.arrow_label(b).to_string()],
                    "f1(gg') = f1(g) f1(g') fails",
                );
            }
        }
    }
    rep
}
