//! The bibundle calculus: composition, generators, 2-cells and iso search.

pub mod cells;
pub mod compose;
pub mod generators;
pub mod iso;

pub use compose::{compose, compose_bb, compose_chain, Composite};
pub use generators::{
    bundlize, cv, diagonal, ev, flip, identity_bibundle, opposite, tensor, tensor_all, terminal_morphism,
    unit_bibundle,
};
pub use iso::{find_all_isos, find_iso, is_weak_isomorphism, verify_iso, IsoWitness, WeakIso};

use crate::bibundle::Bibundle;
use crate::error::Result;

/// Witness `(M∘N)∘L → M∘(N∘L)`, with its domain and codomain.
pub fn associator_witness(m: &Bibundle, n: &Bibundle, l: &Bibundle) -> Result<(Bibundle, Bibundle, IsoWitness)> {
    let mn = compose(m, n)?;
    let mn_l = compose(&mn.bibundle, l)?;
    let nl = compose(n, l)?;
    let m_nl = compose(m, &nl.bibundle)?;
    let w = cells::associator(&mn, &mn_l, &nl, &m_nl);
    Ok((mn_l.bibundle, m_nl.bibundle, w))
}

/// Witness `Id_G ∘ M → M`, `[g, m] ↦ g·m`, with its domain.
pub fn left_unit_witness(m: &Bibundle) -> Result<(Bibundle, IsoWitness)> {
    let c = compose(&identity_bibundle(m.left()), m)?;
    let w = cells::left_unitor(&c, m);
    Ok((c.bibundle, w))
}

/// Witness `M ∘ Id_H → M`, `[m, h] ↦ m·h`, with its domain.
pub fn right_unit_witness(m: &Bibundle) -> Result<(Bibundle, IsoWitness)> {
    let c = compose(m, &identity_bibundle(m.right()))?;
    let w = cells::right_unitor(&c, m);
    Ok((c.bibundle, w))
}

/// Composite of the five associators around the pentagon for `M, N, L, K`:
/// `((MN)L)K → (MN)(LK) → M(N(LK))` against
/// `((MN)L)K → (M(NL))K → M((NL)K) → M(N(LK))`. Both sides are returned.
pub fn pentagon_paths(m: &Bibundle, n: &Bibundle, l: &Bibundle, k: &Bibundle) -> Result<(IsoWitness, IsoWitness)> {
    let mn = compose(m, n)?;
    let mn_l = compose(&mn.bibundle, l)?;
    let mnl_k = compose(&mn_l.bibundle, k)?;
    let lk = compose(l, k)?;
    let mn_lk = compose(&mn.bibundle, &lk.bibundle)?;
    let n_lk = compose(n, &lk.bibundle)?;
    let m_nlk = compose(m, &n_lk.bibundle)?;
    let nl = compose(n, l)?;
    let m_nl = compose(m, &nl.bibundle)?;
    let mnl_k2 = compose(&m_nl.bibundle, k)?;
    let nl_k = compose(&nl.bibundle, k)?;
    let m_nl_k = compose(m, &nl_k.bibundle)?;

    let top = cells::associator(&mn_l, &mnl_k, &lk, &mn_lk).then(&cells::associator(&mn, &mn_lk, &n_lk, &m_nlk));
    let a1 = cells::whisker_right(&cells::associator(&mn, &mn_l, &nl, &m_nl), &mnl_k, &mnl_k2);
    let a2 = cells::associator(&m_nl, &mnl_k2, &nl_k, &m_nl_k);
    let a3 = cells::whisker_left(&cells::associator(&nl, &nl_k, &lk, &n_lk), &m_nl_k, &m_nlk);
    let bottom = a1.then(&a2).then(&a3);
    Ok((top, bottom))
}
