//! Composition `M ∘ N = (M ×_{H0} N) / H` with canonical representatives.

use crate::bibundle::{Bibundle, Point};
use crate::error::{Error, Result};
use crate::finset::FinSet;

/// A composed bibundle together with its quotient map.
///
/// Pairs `(m, n)` with `rm(m) = lm(n)` are enumerated `m`-major, `n`
/// ascending; each orbit of the diagonal action `(m·h, h⁻¹·n)` is
/// represented by its least pair, and carrier points are ordered by
/// their representatives.
#[derive(Debug, Clone)]
pub struct Composite {
    pub bibundle: Bibundle,
    reps: Vec<(Point, Point)>,
    class: Vec<Point>,
    pair_off: Vec<u32>,
    npos: Vec<u32>,
}

impl Composite {
    /// The class `[m, n]` of a composable pair.
    pub fn project(&self, m: Point, n: Point) -> Point {
        self.class[(self.pair_off[m as usize] + self.npos[n as usize]) as usize]
    }

    /// Least pair of the class.
    pub fn rep(&self, c: Point) -> (Point, Point) {
        self.reps[c as usize]
    }

    pub fn num_pairs(&self) -> usize {
        self.class.len()
    }
}

/// Composes a `G`-`H` bibundle with an `H`-`K` bibundle (left to right).
pub fn compose(m: &Bibundle, n: &Bibundle) -> Result<Composite> {
    if m.right() != n.left() {
        return Err(Error::GroupoidMismatch(format!(
            "cannot compose: right groupoid {} differs from left groupoid {}",
            m.right().name(),
            n.left().name()
        )));
    }
    let h = m.right();
    let mut nfib: Vec<Vec<Point>> = vec![Vec::new(); h.num_objects()];
    let mut npos = vec![0u32; n.len()];
    for p in n.points() {
        let f = &mut nfib[n.lm(p) as usize];
        npos[p as usize] = f.len() as u32;
        f.push(p);
    }
    let mut pair_off = Vec::with_capacity(m.len());
    let mut total = 0u32;
    for p in m.points() {
        pair_off.push(total);
        total += nfib[m.rm(p) as usize].len() as u32;
    }
    let idx = |a: Point, b: Point| (pair_off[a as usize] + npos[b as usize]) as usize;

    let mut class = vec![u32::MAX; total as usize];
    let mut reps = Vec::new();
    for a in m.points() {
        for &b in &nfib[m.rm(a) as usize] {
            if class[idx(a, b)] != u32::MAX {
                continue;
            }
            let c = reps.len() as u32;
            reps.push((a, b));
            for &k in h.l_fiber(m.rm(a)) {
                let a2 = m.rmul(a, k);
                let b2 = n.lmul(h.inv(k), b);
                class[idx(a2, b2)] = c;
            }
        }
    }

    let labels = reps
        .iter()
        .map(|&(a, b)| format!("[{},{}]", m.label(a), n.label(b)))
        .collect();
    let bib = Bibundle::from_fns(
        m.left().clone(),
        n.right().clone(),
        FinSet::trusted(labels),
        reps.iter().map(|&(a, _)| m.lm(a)).collect(),
        reps.iter().map(|&(_, b)| n.rm(b)).collect(),
        |g, c| {
            let (a, b) = reps[c as usize];
            class[idx(m.lmul(g, a), b)]
        },
        |c, k| {
            let (a, b) = reps[c as usize];
            class[idx(a, n.rmul(b, k))]
        },
    )?;
    let bib = match (m.provenance(), n.provenance()) {
        (Some(p), Some(q)) => bib.with_provenance(format!("({p} ; {q})")),
        _ => bib,
    };
    Ok(Composite {
        bibundle: bib,
        reps,
        class,
        pair_off,
        npos,
    })
}

/// Composition returning only the bibundle.
pub fn compose_bb(m: &Bibundle, n: &Bibundle) -> Result<Bibundle> {
    Ok(compose(m, n)?.bibundle)
}

/// Left-to-right composite of a non-empty chain.
pub fn compose_chain(parts: &[Bibundle]) -> Result<Bibundle> {
    let (first, rest) = parts
        .split_first()
        .ok_or_else(|| Error::Malformed("empty composition chain".into()))?;
    rest.iter().try_fold(first.clone(), |acc, p| compose_bb(&acc, p))
}
