//! JSON interchange. Every carrier is a label list and every map is keyed
//! by labels, so files never depend on internal indices.
//!
//! Groupoids referenced from other files may be given inline, as a path
//! relative to the referencing file, or as `{"product": [ref, …]}`.

use std::fs;
use std::path::{Path, PathBuf};

use indexmap::IndexMap;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::bibundle::{validate_bibundle, Bibundle};
use crate::error::{Error, Result};
use crate::finset::FinSet;
use crate::group::StackyGroupData;
use crate::groupoid::{validate_category, validate_groupoid, FinCategory, FinGroupoid, GroupoidHom};
use crate::simplicial::TruncatedSSet;

pub type LabelMap = IndexMap<String, String>;

/// Tables of a finite category; with `inv` present it describes a groupoid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CategoryFile {
    pub objects: Vec<String>,
    pub arrows: Vec<String>,
    pub l: LabelMap,
    pub r: LabelMap,
    pub comp: Vec<[String; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inv: Option<LabelMap>,
    pub unit: LabelMap,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupoidRef {
    Path(String),
    Product { product: Vec<GroupoidRef> },
    Inline(Box<CategoryFile>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BibundleFile {
    #[serde(rename = "leftGroupoid")]
    pub left_groupoid: GroupoidRef,
    #[serde(rename = "rightGroupoid")]
    pub right_groupoid: GroupoidRef,
    pub carrier: Vec<String>,
    #[serde(rename = "lM")]
    pub lm: LabelMap,
    #[serde(rename = "rM")]
    pub rm: LabelMap,
    #[serde(rename = "leftAct")]
    pub left_act: Vec<[String; 3]>,
    #[serde(rename = "rightAct")]
    pub right_act: Vec<[String; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BibundleRef {
    Path(String),
    Inline(Box<BibundleFile>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HomFile {
    pub source: GroupoidRef,
    pub target: GroupoidRef,
    pub objects: LabelMap,
    pub arrows: LabelMap,
}

/// A group object: its base groupoid and structure bibundles.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StackySpecFile {
    pub name: String,
    pub groupoid: GroupoidRef,
    pub mu: BibundleRef,
    pub e: BibundleRef,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inv: Option<BibundleRef>,
}

/// Levels as label lists; `faces[n-1][i]` is `d_i` on level `n`,
/// `degeneracies[n][j]` is `s_j` on level `n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SSetFile {
    pub levels: Vec<Vec<String>>,
    pub faces: Vec<Vec<LabelMap>>,
    pub degeneracies: Vec<Vec<LabelMap>>,
}

fn io_err(path: &Path, source: std::io::Error) -> Error {
    Error::Io {
        path: path.display().to_string(),
        source,
    }
}

/// Reads and deserializes a JSON file.
pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    serde_json::from_str(&text).map_err(|source| Error::Json {
        path: path.display().to_string(),
        source,
    })
}

/// Writes pretty JSON with a trailing newline, creating parent directories.
pub fn write_json<T: Serialize + ?Sized>(path: &Path, value: &T) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
    }
    let mut text = to_json_string(value);
    text.push('\n');
    fs::write(path, text).map_err(|e| io_err(path, e))
}

pub fn to_json_string<T: Serialize + ?Sized>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report types serialize")
}

fn base_dir(path: &Path) -> PathBuf {
    path.parent().map(Path::to_path_buf).unwrap_or_default()
}

fn look(set: &FinSet, label: &str, context: &str) -> Result<u32> {
    set.lookup(label, context)
}

fn map_total(map: &LabelMap, dom: &FinSet, cod: &FinSet, what: &str) -> Result<Vec<u32>> {
    let mut out = vec![u32::MAX; dom.len()];
    for (k, v) in map {
        out[look(dom, k, what)? as usize] = look(cod, v, what)?;
    }
    if let Some(i) = out.iter().position(|&v| v == u32::MAX) {
        return Err(Error::Malformed(format!("{what} is missing `{}`", dom.label(i as u32))));
    }
    Ok(out)
}

// ---------------------------------------------------------------- categories

impl CategoryFile {
    pub fn to_category(&self) -> Result<FinCategory> {
        let objects = FinSet::new(self.objects.clone())?;
        let arrows = FinSet::new(self.arrows.clone())?;
        let l = map_total(&self.l, &arrows, &objects, "l")?;
        let r = map_total(&self.r, &arrows, &objects, "r")?;
        let unit = map_total(&self.unit, &objects, &arrows, "unit")?;
        let comp = self
            .comp
            .iter()
            .map(|[a, b, c]| Ok((look(&arrows, a, "comp")?, look(&arrows, b, "comp")?, look(&arrows, c, "comp")?)))
            .collect::<Result<Vec<_>>>()?;
        FinCategory::from_parts(objects, arrows, l, r, &comp, unit)
    }

    /// Structural conversion; the axioms are not checked.
    pub fn to_groupoid(&self) -> Result<FinGroupoid> {
        let cat = self.to_category()?;
        let inv = match &self.inv {
            Some(m) => map_total(m, cat.arrows(), cat.arrows(), "inv")?,
            None => return Err(Error::Malformed("groupoid file has no `inv` table".into())),
        };
        FinGroupoid::from_category(cat, inv)
    }

    pub fn from_category(c: &FinCategory) -> Self {
        let lab = |a: u32| c.arrows().label(a).to_string();
        let obj = |x: u32| c.objects().label(x).to_string();
        CategoryFile {
            objects: c.objects().labels().to_vec(),
            arrows: c.arrows().labels().to_vec(),
            l: (0..c.num_arrows() as u32).map(|a| (lab(a), obj(c.l(a)))).collect(),
            r: (0..c.num_arrows() as u32).map(|a| (lab(a), obj(c.r(a)))).collect(),
            comp: c.comp_triples().into_iter().map(|(a, b, k)| [lab(a), lab(b), lab(k)]).collect(),
            inv: None,
            unit: (0..c.num_objects() as u32).map(|x| (obj(x), lab(c.unit(x)))).collect(),
        }
    }

    pub fn from_groupoid(g: &FinGroupoid) -> Self {
        let mut f = Self::from_category(&g.to_category());
        f.inv = Some(
            (0..g.num_arrows() as u32)
                .map(|a| (g.arrow_label(a).to_string(), g.arrow_label(g.inv(a)).to_string()))
                .collect(),
        );
        f
    }
}

impl GroupoidRef {
    /// Products stay products; everything else is written inline.
    pub fn of(g: &FinGroupoid) -> Self {
        if g.is_product() {
            GroupoidRef::Product {
                product: g.factors().iter().map(GroupoidRef::of).collect(),
            }
        } else {
            GroupoidRef::Inline(Box::new(CategoryFile::from_groupoid(g)))
        }
    }

    /// Resolves the reference; paths are relative to `base`.
    pub fn resolve(&self, base: &Path) -> Result<FinGroupoid> {
        match self {
            GroupoidRef::Path(p) => read_groupoid(&base.join(p)),
            GroupoidRef::Product { product } => Ok(FinGroupoid::product_of(
                product.iter().map(|r| r.resolve(base)).collect::<Result<_>>()?,
            )),
            GroupoidRef::Inline(f) => f.to_groupoid(),
        }
    }
}

/// Reads a groupoid file without checking axioms.
pub fn read_groupoid(path: &Path) -> Result<FinGroupoid> {
    read_json::<GroupoidRef>(path)?.resolve(&base_dir(path))
}

/// Reads a groupoid file and rejects it unless every axiom holds.
pub fn load_groupoid(path: &Path) -> Result<FinGroupoid> {
    let g = read_groupoid(path)?;
    let rep = validate_groupoid(&g);
    if !rep.is_valid() {
        return Err(Error::Malformed(format!("{}: {rep}", path.display())));
    }
    Ok(g)
}

pub fn save_groupoid(path: &Path, g: &FinGroupoid) -> Result<()> {
    write_json(path, &GroupoidRef::of(g))
}

pub fn read_category(path: &Path) -> Result<FinCategory> {
    read_json::<CategoryFile>(path)?.to_category()
}

pub fn load_category(path: &Path) -> Result<FinCategory> {
    let c = read_category(path)?;
    let rep = validate_category(&c);
    if !rep.is_valid() {
        return Err(Error::Malformed(format!("{}: {rep}", path.display())));
    }
    Ok(c)
}

pub fn save_category(path: &Path, c: &FinCategory) -> Result<()> {
    write_json(path, &CategoryFile::from_category(c))
}

// ---------------------------------------------------------------- bibundles

impl BibundleFile {
    pub fn to_bibundle(&self, base: &Path) -> Result<Bibundle> {
        let left = self.left_groupoid.resolve(base)?;
        let right = self.right_groupoid.resolve(base)?;
        let carrier = FinSet::new(self.carrier.clone())?;
        let lm = map_total(&self.lm, &carrier, left.objects(), "lM")?;
        let rm = map_total(&self.rm, &carrier, right.objects(), "rM")?;
        let le = self
            .left_act
            .iter()
            .map(|[g, m, t]| {
                Ok((look(left.arrows(), g, "leftAct")?, look(&carrier, m, "leftAct")?, look(&carrier, t, "leftAct")?))
            })
            .collect::<Result<Vec<_>>>()?;
        let re = self
            .right_act
            .iter()
            .map(|[m, h, t]| {
                Ok((
                    look(&carrier, m, "rightAct")?,
                    look(right.arrows(), h, "rightAct")?,
                    look(&carrier, t, "rightAct")?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        let b = Bibundle::from_entries(left, right, carrier, lm, rm, &le, &re)?;
        Ok(match &self.provenance {
            Some(p) => b.with_provenance(p.clone()),
            None => b,
        })
    }

    pub fn from_bibundle(b: &Bibundle) -> Self {
        let (g, h) = (b.left(), b.right());
        BibundleFile {
            left_groupoid: GroupoidRef::of(g),
            right_groupoid: GroupoidRef::of(h),
            carrier: b.carrier().labels().to_vec(),
            lm: b.points().map(|m| (b.label(m).into(), g.object_label(b.lm(m)).into())).collect(),
            rm: b.points().map(|m| (b.label(m).into(), h.object_label(b.rm(m)).into())).collect(),
            left_act: b
                .left_entries()
                .into_iter()
                .map(|(k, m, t)| [g.arrow_label(k).into(), b.label(m).into(), b.label(t).into()])
                .collect(),
            right_act: b
                .right_entries()
                .into_iter()
                .map(|(m, k, t)| [b.label(m).into(), h.arrow_label(k).into(), b.label(t).into()])
                .collect(),
            provenance: b.provenance().map(str::to_string),
        }
    }
}

impl BibundleRef {
    pub fn resolve(&self, base: &Path) -> Result<Bibundle> {
        match self {
            BibundleRef::Path(p) => read_bibundle(&base.join(p)),
            BibundleRef::Inline(f) => f.to_bibundle(base),
        }
    }
}

/// Reads a bibundle file; missing action entries are kept undefined.
pub fn read_bibundle(path: &Path) -> Result<Bibundle> {
    read_json::<BibundleFile>(path)?.to_bibundle(&base_dir(path))
}

/// Reads a bibundle file and rejects it unless both groupoids and the
/// bibundle itself satisfy every axiom.
pub fn load_bibundle(path: &Path) -> Result<Bibundle> {
    let b = read_bibundle(path)?;
    let mut rep = validate_groupoid(b.left());
    rep.merge(validate_groupoid(b.right()));
    rep.merge(validate_bibundle(&b));
    if !rep.is_valid() {
        return Err(Error::Malformed(format!("{}: {rep}", path.display())));
    }
    Ok(b)
}

pub fn save_bibundle(path: &Path, b: &Bibundle) -> Result<()> {
    write_json(path, &BibundleFile::from_bibundle(b))
}

// ---------------------------------------------------------------- homomorphisms

pub fn read_hom(path: &Path) -> Result<GroupoidHom> {
    let f: HomFile = read_json(path)?;
    let base = base_dir(path);
    let (s, t) = (f.source.resolve(&base)?, f.target.resolve(&base)?);
    let f0 = map_total(&f.objects, s.objects(), t.objects(), "objects")?;
    let f1 = map_total(&f.arrows, s.arrows(), t.arrows(), "arrows")?;
    GroupoidHom::new(s, t, f0, f1)
}

pub fn save_hom(path: &Path, phi: &GroupoidHom) -> Result<()> {
    let (s, t) = (&phi.source, &phi.target);
    let f = HomFile {
        source: GroupoidRef::of(s),
        target: GroupoidRef::of(t),
        objects: (0..s.num_objects())
            .map(|x| (s.object_label(x as u32).into(), t.object_label(phi.f0[x]).into()))
            .collect(),
        arrows: (0..s.num_arrows())
            .map(|a| (s.arrow_label(a as u32).into(), t.arrow_label(phi.f1[a]).into()))
            .collect(),
    };
    write_json(path, &f)
}

// ---------------------------------------------------------------- group objects

/// Reads a group-object spec; the structure bibundles are validated.
pub fn load_stacky(path: &Path) -> Result<StackyGroupData> {
    let f: StackySpecFile = read_json(path)?;
    let base = base_dir(path);
    let g = f.groupoid.resolve(&base)?;
    let checked = |r: &BibundleRef| -> Result<Bibundle> {
        let b = r.resolve(&base)?;
        let rep = validate_bibundle(&b);
        if !rep.is_valid() {
            return Err(Error::Malformed(format!("structure bibundle: {rep}")));
        }
        Ok(b)
    };
    let rep = validate_groupoid(&g);
    if !rep.is_valid() {
        return Err(Error::Malformed(format!("base groupoid: {rep}")));
    }
    let inv = f.inv.as_ref().map(checked).transpose()?;
    StackyGroupData::new(f.name, g, checked(&f.mu)?, checked(&f.e)?, inv)
}

/// Writes a group object as five files in `dir`: the base groupoid, the
/// three structure bibundles and the spec file that references them.
/// Returns the path of the spec file.
pub fn save_stacky(dir: &Path, stem: &str, d: &StackyGroupData) -> Result<PathBuf> {
    let gname = format!("{stem}_groupoid.json");
    save_groupoid(&dir.join(&gname), &d.base)?;
    let gref = GroupoidRef::Path(gname);
    let unit = GroupoidRef::Product { product: Vec::new() };
    let square = GroupoidRef::Product {
        product: vec![gref.clone(), gref.clone()],
    };
    let write = |what: &str, b: &Bibundle, l: GroupoidRef| -> Result<BibundleRef> {
        let mut f = BibundleFile::from_bibundle(b);
        f.left_groupoid = l;
        f.right_groupoid = gref.clone();
        let name = format!("{stem}_{what}.json");
        write_json(&dir.join(&name), &f)?;
        Ok(BibundleRef::Path(name))
    };
    let mu = write("mu", &d.mu, square)?;
    let e = write("e", &d.e, unit)?;
    let inv = d.inv.as_ref().map(|i| write("inv", i, gref.clone())).transpose()?;
    let spec = StackySpecFile {
        name: d.name.clone(),
        groupoid: gref.clone(),
        mu,
        e,
        inv,
    };
    let path = dir.join(format!("{stem}.json"));
    write_json(&path, &spec)?;
    Ok(path)
}

// ---------------------------------------------------------------- simplicial sets

impl SSetFile {
    pub fn from_sset(x: &TruncatedSSet) -> Self {
        let k = x.top();
        let table = |n: usize, m: usize, map: &[u32]| -> LabelMap {
            (0..x.len(n) as u32)
                .map(|p| (x.level(n).label(p).to_string(), x.level(m).label(map[p as usize]).to_string()))
                .collect()
        };
        SSetFile {
            levels: (0..=k).map(|n| x.level(n).labels().to_vec()).collect(),
            faces: (1..=k).map(|n| (0..=n).map(|i| table(n, n - 1, x.face_table(n, i))).collect()).collect(),
            degeneracies: (0..k).map(|n| (0..=n).map(|j| table(n, n + 1, x.degeneracy_table(n, j))).collect()).collect(),
        }
    }

    pub fn to_sset(&self) -> Result<TruncatedSSet> {
        let levels = self.levels.iter().map(|l| FinSet::new(l.clone())).collect::<Result<Vec<_>>>()?;
        let k = levels.len().saturating_sub(1);
        if self.faces.len() != k || self.degeneracies.len() != k {
            return Err(Error::Malformed(format!("expected {k} levels of faces and degeneracies")));
        }
        let mut faces = vec![Vec::new()];
        for (n, maps) in self.faces.iter().enumerate().map(|(i, m)| (i + 1, m)) {
            faces.push(
                maps.iter()
                    .map(|m| map_total(m, &levels[n], &levels[n - 1], "face"))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        let mut degens = Vec::new();
        for (n, maps) in self.degeneracies.iter().enumerate() {
            degens.push(
                maps.iter()
                    .map(|m| map_total(m, &levels[n], &levels[n + 1], "degeneracy"))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        degens.push(Vec::new());
        TruncatedSSet::from_parts(levels, faces, degens)
    }
}

pub fn read_sset(path: &Path) -> Result<TruncatedSSet> {
    read_json::<SSetFile>(path)?.to_sset()
}

pub fn save_sset(path: &Path, x: &TruncatedSSet) -> Result<()> {
    write_json(path, &SSetFile::from_sset(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::{diagonal, tensor, terminal_morphism};
    use crate::group::kronecker_finite;
    use crate::groupoid::{cyclic, pair};
    use crate::simplicial::{arrow_category, nerve};

    #[test]
    fn groupoid_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        for g in [pair(3), cyclic(4), FinGroupoid::product(&pair(2), &cyclic(2))] {
            let p = dir.path().join("g.json");
            save_groupoid(&p, &g).unwrap();
            assert_eq!(load_groupoid(&p).unwrap(), g);
        }
    }

    #[test]
    fn bibundle_round_trip_with_products() {
        let dir = tempfile::tempdir().unwrap();
        let b = tensor(&diagonal(&pair(2)), &terminal_morphism(&cyclic(2)));
        let p = dir.path().join("b.json");
        save_bibundle(&p, &b).unwrap();
        let back = load_bibundle(&p).unwrap();
        assert_eq!(back, b);
        assert_eq!(back.provenance(), b.provenance());
    }

    #[test]
    fn unknown_label_is_reported() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("g.json");
        let mut f = CategoryFile::from_groupoid(&cyclic(2));
        f.inv.as_mut().unwrap().insert("1".into(), "7".into());
        write_json(&p, &GroupoidRef::Inline(Box::new(f))).unwrap();
        let err = read_groupoid(&p).unwrap_err();
        assert!(matches!(err, Error::UnknownLabel { .. }), "{err}");
    }

    #[test]
    fn stacky_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let d = kronecker_finite(4, 2).unwrap();
        let spec = save_stacky(dir.path(), "k", &d).unwrap();
        assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 5);
        let back = load_stacky(&spec).unwrap();
        assert_eq!(back.mu, d.mu);
        assert_eq!(back.e, d.e);
        assert_eq!(back.inv, d.inv);
    }

    #[test]
    fn sset_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let x = nerve(&arrow_category(), 3).unwrap();
        let p = dir.path().join("x.json");
        save_sset(&p, &x).unwrap();
        assert_eq!(read_sset(&p).unwrap(), x);
    }
}
