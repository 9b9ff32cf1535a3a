//! The `bibucalc` command line.
//!
//! Every verb produces a verdict. Exit code 0 means the property holds
//! (or the input is valid), 1 means it fails and a witness file was
//! written to `--out`, 2 means a structural or usage error.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::bibundle::{check_principal, compute_pairing, validate_bibundle, Bibundle, Side};
use crate::calculus::{bundlize, compose_bb, find_iso, is_weak_isomorphism};
use crate::diagram::{check_identity, evaluate_str, DiagramEnv};
use crate::error::{Error, Result, ValidationReport};
use crate::fixtures;
use crate::group::{self, check_coherence, check_group, preinverse};
use crate::groupoid::{check_hom, cyclic, pair, trivial, validate_category, validate_groupoid};
use crate::io;
use crate::linking::{linking_category, linking_groupoid};
use crate::simplicial::{kan_check, nerve, validate_simplicial, DEFAULT_LEVEL};

/// Directory searched for relative input paths that do not exist as given.
pub const FIXTURE_ENV: &str = "BIBUCALC_FIXTURES";

#[derive(Parser, Debug)]
#[command(name = "bibucalc", version, about = "Finite groupoids, bibundles and their calculus")]
pub struct Cli {
    /// Emit the report and run manifest as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for randomized generators.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Size bound for generators (arrows of random groupoids).
    #[arg(long, global = true, default_value_t = 8)]
    pub max_size: usize,
    /// Directory for artifacts, witnesses and the run manifest.
    #[arg(long, global = true, default_value = "bibucalc-out")]
    pub out: PathBuf,
    #[command(subcommand)]
    pub verb: Verb,
}

#[derive(Subcommand, Debug)]
pub enum Verb {
    /// Check the axioms of one input file.
    Validate(ValidateArgs),
    /// Compose two bibundles, left one first.
    Compose {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
    },
    /// Check principality on one side.
    Principal {
        #[arg(long)]
        bibundle: PathBuf,
        #[arg(long, value_enum, default_value_t = SideArg::Right)]
        side: SideArg,
    },
    /// Compute the right pairing of a bibundle.
    Pairing {
        #[arg(long)]
        bibundle: PathBuf,
    },
    /// Build the linking category or linking groupoid.
    Linking {
        #[arg(long)]
        bibundle: PathBuf,
        /// Build the linking groupoid (requires a biprincipal bibundle).
        #[arg(long, conflicts_with = "category")]
        groupoid: bool,
        /// Build the linking category (the default).
        #[arg(long)]
        category: bool,
    },
    /// Decide whether a bibundle is a Morita equivalence.
    Morita {
        #[arg(long)]
        bibundle: PathBuf,
    },
    /// Evaluate a string-diagram expression.
    EvalDiagram {
        #[arg(long)]
        groupoid: PathBuf,
        /// Bindings `NAME=file.json`.
        #[arg(long)]
        bind: Vec<String>,
        expr: String,
    },
    /// Decide whether two expressions evaluate to isomorphic bibundles.
    Check {
        #[arg(long)]
        groupoid: PathBuf,
        #[arg(long)]
        bind: Vec<String>,
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
    },
    /// Turn a groupoid homomorphism into a right-principal bibundle.
    Bundlize {
        #[arg(long)]
        hom: PathBuf,
    },
    /// Decide whether a monoid object is a group.
    CheckGroup {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Compute the preinverse of a monoid object.
    Preinverse {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Check the coherence loops of a monoid object.
    Coherence {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Check a Kan condition on a simplicial set or a nerve.
    Kan {
        #[arg(long, required_unless_present = "category")]
        sset: Option<PathBuf>,
        /// Use the nerve of this category instead of a simplicial set file.
        #[arg(long, conflicts_with = "sset")]
        category: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_LEVEL)]
        level: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        strict: bool,
    },
    /// Write a fixture family to `--out`.
    GenFixture(GenArgs),
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct ValidateArgs {
    #[arg(long)]
    pub groupoid: Option<PathBuf>,
    #[arg(long)]
    pub category: Option<PathBuf>,
    #[arg(long)]
    pub bibundle: Option<PathBuf>,
    #[arg(long)]
    pub hom: Option<PathBuf>,
    #[arg(long)]
    pub sset: Option<PathBuf>,
    #[arg(long)]
    pub spec: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[arg(value_enum)]
    pub family: Family,
    /// Size parameter: objects, group order or `N`.
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    /// Subgroup generator for `kronecker-finite`.
    #[arg(long, default_value_t = 1)]
    pub q: usize,
    /// Number of points for `action` (must divide `n`); defaults to `n`.
    #[arg(long)]
    pub m: Option<usize>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Trivial,
    Pair,
    Cyclic,
    Action,
    #[value(alias = "kronecker_finite")]
    KroneckerFinite,
    RandomGroupoid,
    RandomRightPrincipalBibundle,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SideArg {
    Left,
    Right,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Left => Side::Left,
            SideArg::Right => Side::Right,
        }
    }
}

/// Inputs, seed, verdicts and written files of one invocation. Identical
/// inputs and seed give an identical manifest.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub inputs: Vec<InputDigest>,
    pub seed: u64,
    pub verdicts: Vec<(String, bool)>,
    pub artifacts: Vec<String>,
    pub witnesses: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

/// What `main` should print and return.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Verdict {
    check: String,
    holds: bool,
    summary: String,
    report: Value,
    /// Written only when the verdict fails.
    witness: Option<Value>,
    artifacts: Vec<(String, Value)>,
}

impl Verdict {
    fn new(check: &str, holds: bool, summary: String, report: Value) -> Self {
        Verdict {
            check: check.to_string(),
            holds,
            summary,
            report,
            witness: None,
            artifacts: Vec::new(),
        }
    }

    fn witness(mut self, w: Value) -> Self {
        self.witness = Some(w);
        self
    }

    fn artifact(mut self, name: impl Into<String>, v: Value) -> Self {
        self.artifacts.push((name.into(), v));
        self
    }
}

struct Ctx {
    inputs: Vec<InputDigest>,
}

impl Ctx {
    fn input(&mut self, p: &Path) -> Result<PathBuf> {
        let found = resolve_input(p);
        let bytes = std::fs::read(&found).map_err(|source| Error::Io {
            path: found.display().to_string(),
            source,
        })?;
        self.inputs.push(InputDigest {
            path: p.display().to_string(),
            sha256: hex::encode(Sha256::digest(&bytes)),
        });
        Ok(found)
    }
}

/// Relative paths that do not exist are looked up in `$BIBUCALC_FIXTURES`.
pub fn resolve_input(p: &Path) -> PathBuf {
    if p.exists() || p.is_absolute() {
        return p.to_path_buf();
    }
    match std::env::var_os(FIXTURE_ENV) {
        Some(dir) if Path::new(&dir).join(p).exists() => Path::new(&dir).join(p),
        _ => p.to_path_buf(),
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn bibundle_value(b: &Bibundle) -> Value {
    to_value(&io::BibundleFile::from_bibundle(b))
}

fn report_verdict(check: &str, rep: &ValidationReport) -> Verdict {
    let summary = if rep.is_valid() {
        format!("{check}: valid")
    } else {
        format!("{check}: invalid\n{rep}")
    };
    let v = Verdict::new(check, rep.is_valid(), summary, to_value(rep));
    if rep.is_valid() {
        v
    } else {
        v.witness(to_value(rep))
    }
}

fn env_with_bindings(ctx: &mut Ctx, groupoid: &Path, binds: &[String]) -> Result<DiagramEnv> {
    let g = io::load_groupoid(&ctx.input(groupoid)?)?;
    let mut env = DiagramEnv::new(g);
    for b in binds {
        let (name, file) = b
            .split_once('=')
            .ok_or_else(|| Error::Malformed(format!("binding `{b}` is not NAME=file")))?;
        let m = io::load_bibundle(&ctx.input(Path::new(file))?)?;
        env.bind(name.trim(), m)?;
    }
    Ok(env)
}

fn principal_summary(b: &Bibundle, side: Side) -> (bool, Value, String) {
    let rep = check_principal(b, side);
    let (p1, p2, p3) = rep.flags();
    let s = format!("principal ({side:?}): P1 {p1}, P2 {p2}, P3 {p3}");
    (rep.holds(), to_value(&rep), s)
}

fn run_verb(cli: &Cli, ctx: &mut Ctx) -> Result<Verdict> {
    Ok(match &cli.verb {
        Verb::Validate(a) => {
            if let Some(p) = &a.groupoid {
                report_verdict("groupoid", &validate_groupoid(&io::read_groupoid(&ctx.input(p)?)?))
            } else if let Some(p) = &a.category {
                report_verdict("category", &validate_category(&io::read_category(&ctx.input(p)?)?))
            } else if let Some(p) = &a.bibundle {
                let b = io::read_bibundle(&ctx.input(p)?)?;
                let mut rep = validate_groupoid(b.left());
                rep.merge(validate_groupoid(b.right()));
                rep.merge(validate_bibundle(&b));
                report_verdict("bibundle", &rep)
            } else if let Some(p) = &a.hom {
                report_verdict("hom", &check_hom(&io::read_hom(&ctx.input(p)?)?))
            } else if let Some(p) = &a.sset {
                report_verdict("simplicial set", &validate_simplicial(&io::read_sset(&ctx.input(p)?)?))
            } else {
                let p = a.spec.as_ref().expect("clap enforces one input");
                let d = io::load_stacky(&ctx.input(p)?)?;
                Verdict::new("spec", true, format!("spec `{}`: valid", d.name), json!({ "name": d.name }))
            }
        }
        Verb::Compose { left, right } => {
            let m = io::load_bibundle(&ctx.input(left)?)?;
            let n = io::load_bibundle(&ctx.input(right)?)?;
            let provenance = format!(
                "{} ; {}",
                m.provenance().map_or_else(|| left.display().to_string(), str::to_string),
                n.provenance().map_or_else(|| right.display().to_string(), str::to_string)
            );
            let c = compose_bb(&m, &n)?.with_provenance(provenance);
            let (rp, rv, rs) = principal_summary(&c, Side::Right);
            let report = json!({ "points": c.len(), "right_principal": rp, "principality": rv });
            // composing always succeeds; principality of the result is reported
            Verdict::new("compose", true, format!("composite with {} points; {rs}", c.len()), report)
                .artifact("composite.json", bibundle_value(&c))
        }
        Verb::Principal { bibundle, side } => {
            let b = io::load_bibundle(&ctx.input(bibundle)?)?;
            let (holds, report, summary) = principal_summary(&b, (*side).into());
            let v = Verdict::new("principal", holds, summary, report.clone());
            if holds {
                v
            } else {
                v.witness(report)
            }
        }
        Verb::Pairing { bibundle } => {
            let b = io::load_bibundle(&ctx.input(bibundle)?)?;
            match compute_pairing(&b) {
                Ok(p) => {
                    let table: Vec<[&str; 3]> = p
                        .entries()
                        .into_iter()
                        .map(|(m, n, h)| [b.label(m), b.label(n), b.right().arrow_label(h)])
                        .collect();
                    let report = json!({ "pairing": table });
                    Verdict::new("pairing", true, format!("pairing with {} entries", table.len()), report.clone())
                        .artifact("pairing.json", report)
                }
                Err(e) => {
                    let report = to_value(&e);
                    Verdict::new("pairing", false, format!("no pairing: {e}"), report.clone()).witness(report)
                }
            }
        }
        Verb::Linking { bibundle, groupoid, .. } => {
            let b = io::load_bibundle(&ctx.input(bibundle)?)?;
            if *groupoid {
                match linking_groupoid(&b) {
                    Ok(lg) => {
                        let rep = validate_groupoid(&lg.groupoid);
                        let file = io::CategoryFile::from_groupoid(&lg.groupoid);
                        report_verdict("linking groupoid", &rep).artifact("linking_groupoid.json", to_value(&file))
                    }
                    Err(e) => {
                        let w = json!({ "error": e.to_string() });
                        Verdict::new("linking groupoid", false, e.to_string(), w.clone()).witness(w)
                    }
                }
            } else {
                let lc = linking_category(&b);
                let rep = validate_category(&lc.category);
                let file = io::CategoryFile::from_category(&lc.category);
                report_verdict("linking category", &rep).artifact("linking_category.json", to_value(&file))
            }
        }
        Verb::Morita { bibundle } => {
            let b = io::load_bibundle(&ctx.input(bibundle)?)?;
            let w = is_weak_isomorphism(&b);
            let report = json!({ "holds": w.holds, "right": w.right, "left": w.left });
            let mut v = Verdict::new(
                "morita",
                w.holds,
                format!("weak isomorphism: {}", w.holds),
                report.clone(),
            );
            match &w.inverse {
                Some((inv, _, _)) => v = v.artifact("inverse.json", bibundle_value(inv)),
                None => v = v.witness(report),
            }
            v
        }
        Verb::EvalDiagram { groupoid, bind, expr } => {
            let env = env_with_bindings(ctx, groupoid, bind)?;
            let b = evaluate_str(expr, &env)?;
            let (rp, _, _) = principal_summary(&b, Side::Right);
            Verdict::new(
                "eval-diagram",
                true,
                format!("`{expr}` has {} points; right principal {rp}", b.len()),
                json!({ "points": b.len(), "right_principal": rp }),
            )
            .artifact("diagram.json", bibundle_value(&b))
        }
        Verb::Check { groupoid, bind, lhs, rhs } => {
            let env = env_with_bindings(ctx, groupoid, bind)?;
            let c = check_identity(lhs, rhs, &env)?;
            let witness = c.witness.as_ref().map(|w| w.labeled(&c.lhs, &c.rhs));
            let report = json!({
                "lhs": lhs, "rhs": rhs,
                "lhs_points": c.lhs.len(), "rhs_points": c.rhs.len(),
                "holds": c.holds(), "witness": witness,
            });
            let v = Verdict::new("check", c.holds(), format!("`{lhs}` ≅ `{rhs}`: {}", c.holds()), report);
            if c.holds() {
                v
            } else {
                v.witness(json!({ "lhs": bibundle_value(&c.lhs), "rhs": bibundle_value(&c.rhs) }))
            }
        }
        Verb::Bundlize { hom } => {
            let phi = io::read_hom(&ctx.input(hom)?)?;
            let rep = check_hom(&phi);
            if !rep.is_valid() {
                return Err(Error::Malformed(format!("homomorphism: {rep}")));
            }
            let b = bundlize(&phi)?;
            Verdict::new("bundlize", true, format!("bundlization with {} points", b.len()), json!({ "points": b.len() }))
                .artifact("bundlization.json", bibundle_value(&b))
        }
        Verb::CheckGroup { spec } => {
            let mut d = io::load_stacky(&ctx.input(spec)?)?;
            let rep = check_group(&mut d)?;
            let report = to_value(&rep);
            let mut summary = format!("`{}` is a group: {}", d.name, rep.holds);
            if let Some(same) = rep.inverse_is_preinverse {
                let _ = write!(summary, "; inverse ≅ preinverse: {same}");
            }
            let v = Verdict::new("check-group", rep.holds, summary, report.clone());
            if rep.holds {
                v
            } else {
                v.witness(report)
            }
        }
        Verb::Preinverse { spec } => {
            let d = io::load_stacky(&ctx.input(spec)?)?;
            let s = preinverse(&d)?;
            let w = is_weak_isomorphism(&s);
            let matches = d.inv.as_ref().map(|i| find_iso(&s, i).is_some());
            let report = json!({ "points": s.len(), "weak_isomorphism": w.holds, "matches_inverse": matches });
            let holds = w.holds && matches != Some(false);
            let v = Verdict::new(
                "preinverse",
                holds,
                format!("preinverse has {} points; weak isomorphism {}", s.len(), w.holds),
                report.clone(),
            )
            .artifact("preinverse.json", bibundle_value(&s));
            if holds {
                v
            } else {
                v.witness(json!({ "report": report, "right": w.right, "left": w.left }))
            }
        }
        Verb::Coherence { spec } => {
            let mut d = io::load_stacky(&ctx.input(spec)?)?;
            let rep = check_coherence(&mut d)?;
            let report = to_value(&rep);
            let summary = format!(
                "coherence: dodecagon {}, triangle {}, pentagon {}",
                rep.dodecagon, rep.triangle, rep.pentagon
            );
            let v = Verdict::new("coherence", rep.holds, summary, report.clone());
            if rep.holds {
                v
            } else {
                v.witness(report)
            }
        }
        Verb::Kan { sset, category, level, n, i, strict } => {
            let x = match (sset, category) {
                (Some(p), _) => io::read_sset(&ctx.input(p)?)?,
                (None, Some(p)) => nerve(&io::load_category(&ctx.input(p)?)?, *level)?,
                (None, None) => unreachable!("clap requires one source"),
            };
            let rep = validate_simplicial(&x);
            if !rep.is_valid() {
                return Err(Error::Malformed(format!("simplicial set: {rep}")));
            }
            let k = kan_check(&x, *n, *i, *strict)?;
            let kind = if *strict { "strict " } else { "" };
            let mut summary = format!("{kind}Kan({n},{i}): {} over {} horns", k.holds, k.horns);
            if let Some(w) = &k.witness {
                let _ = write!(summary, "; horn {:?} has {} fillers", w.faces, w.fillers);
            }
            let report = to_value(&k);
            let v = Verdict::new("kan", k.holds, summary, report.clone());
            if k.holds {
                v
            } else {
                v.witness(report)
            }
        }
        Verb::GenFixture(a) => gen_fixture(cli, a)?,
    })
}

fn check_range(what: &str, v: usize, lo: usize, hi: usize) -> Result<()> {
    if v < lo || v > hi {
        return Err(Error::OutOfRange(format!("{what} = {v} not in {lo}..={hi}")));
    }
    Ok(())
}

/// Writes a fixture family into `--out` and re-validates every file.
fn gen_fixture(cli: &Cli, a: &GenArgs) -> Result<Verdict> {
    let dir = &cli.out;
    let mut rng = fixtures::rng(cli.seed);
    let mut files: Vec<PathBuf> = Vec::new();
    let groupoid = |name: String, g: &crate::FinGroupoid| -> Result<PathBuf> {
        let p = dir.join(name);
        io::save_groupoid(&p, g)?;
        io::load_groupoid(&p)?;
        Ok(p)
    };
    match a.family {
        Family::Trivial => {
            check_range("n", a.n, 1, 64)?;
            files.push(groupoid(format!("trivial_{}.json", a.n), &trivial(a.n))?);
        }
        Family::Pair => {
            check_range("n", a.n, 1, 16)?;
            files.push(groupoid(format!("pair_{}.json", a.n), &pair(a.n))?);
        }
        Family::Cyclic => {
            check_range("n", a.n, 1, 64)?;
            files.push(groupoid(format!("cyclic_{}.json", a.n), &cyclic(a.n))?);
        }
        Family::Action => {
            check_range("n", a.n, 1, 32)?;
            let m = a.m.unwrap_or(a.n);
            check_range("m", m, 1, a.n)?;
            if !a.n.is_multiple_of(m) {
                return Err(Error::OutOfRange(format!("m = {m} must divide n = {}", a.n)));
            }
            let g = fixtures::translation_action(a.n, m);
            files.push(groupoid(format!("action_{}_{m}.json", a.n), &g)?);
        }
        Family::KroneckerFinite => {
            check_range("n", a.n, 1, 12)?;
            check_range("q", a.q, 1, a.n)?;
            let d = group::kronecker_finite(a.n, a.q)?;
            let stem = format!("kronecker_{}_{}", a.n, a.q);
            let spec = io::save_stacky(dir, &stem, &d)?;
            io::load_stacky(&spec)?;
            for part in ["groupoid", "mu", "e", "inv"] {
                files.push(dir.join(format!("{stem}_{part}.json")));
            }
            files.push(spec);
        }
        Family::RandomGroupoid => {
            check_range("max-size", cli.max_size, 1, 64)?;
            let g = fixtures::random_groupoid(&mut rng, cli.max_size);
            files.push(groupoid(format!("random_groupoid_{}.json", cli.seed), &g)?);
        }
        Family::RandomRightPrincipalBibundle => {
            check_range("max-size", cli.max_size, 1, 64)?;
            let g = fixtures::random_groupoid(&mut rng, cli.max_size);
            let h = fixtures::random_groupoid(&mut rng, cli.max_size);
            let b = fixtures::random_right_principal(&mut rng, &g, &h);
            let p = dir.join(format!("random_right_principal_{}.json", cli.seed));
            io::save_bibundle(&p, &b)?;
            let back = io::load_bibundle(&p)?;
            if !check_principal(&back, Side::Right).holds() {
                return Err(Error::Malformed("generated bibundle is not right principal".into()));
            }
            files.push(p);
        }
    }
    let names: Vec<String> = files.iter().map(|p| p.display().to_string()).collect();
    let summary = format!("wrote {}", names.join(", "));
    Ok(Verdict::new("gen-fixture", true, summary, json!({ "files": names })))
}

fn write_value(path: &Path, v: &Value) -> Result<()> {
    io::write_json(path, v)
}

/// Parses `argv` (including the program name) and runs one verb.
pub fn dispatch<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    match execute(&cli) {
        Ok(o) => o,
        Err(e) => {
            let stdout = if cli.json {
                format!("{}\n", json!({ "error": e.to_string(), "exit": 2 }))
            } else {
                String::new()
            };
            Outcome {
                code: 2,
                stdout,
                stderr: format!("error: {e}\n"),
            }
        }
    }
}

fn command_name(v: &Verb) -> &'static str {
    match v {
        Verb::Validate(_) => "validate",
        Verb::Compose { .. } => "compose",
        Verb::Principal { .. } => "principal",
        Verb::Pairing { .. } => "pairing",
        Verb::Linking { .. } => "linking",
        Verb::Morita { .. } => "morita",
        Verb::EvalDiagram { .. } => "eval-diagram",
        Verb::Check { .. } => "check",
        Verb::Bundlize { .. } => "bundlize",
        Verb::CheckGroup { .. } => "check-group",
        Verb::Preinverse { .. } => "preinverse",
        Verb::Coherence { .. } => "coherence",
        Verb::Kan { .. } => "kan",
        Verb::GenFixture(_) => "gen-fixture",
    }
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let mut ctx = Ctx { inputs: Vec::new() };
    let v = run_verb(cli, &mut ctx)?;
    let mut manifest = RunManifest {
        command: command_name(&cli.verb).to_string(),
        inputs: ctx.inputs,
        seed: cli.seed,
        verdicts: vec![(v.check.clone(), v.holds)],
        artifacts: Vec::new(),
        witnesses: Vec::new(),
    };
    for (name, value) in &v.artifacts {
        let p = cli.out.join(name);
        write_value(&p, value)?;
        manifest.artifacts.push(p.display().to_string());
    }
    if !v.holds {
        let p = cli.out.join(format!("{}_witness.json", manifest.command));
        write_value(&p, v.witness.as_ref().unwrap_or(&v.report))?;
        manifest.witnesses.push(p.display().to_string());
    }
    write_value(&cli.out.join("manifest.json"), &to_value(&manifest))?;
    let stdout = if cli.json {
        let doc = json!({ "manifest": manifest, "holds": v.holds, "report": v.report });
        format!("{}\n", serde_json::to_string_pretty(&doc).expect("json"))
    } else {
        let mut s = format!("{}\n", v.summary);
        for w in &manifest.witnesses {
            let _ = writeln!(s, "witness written to {w}");
        }
        s
    };
    Ok(Outcome {
        code: if v.holds { 0 } else { 1 },
        stdout,
        stderr: String::new(),
    })
}
