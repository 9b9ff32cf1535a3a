//! Arity checking and evaluation of diagram expressions over one base groupoid.

use std::collections::BTreeMap;

use crate::bibundle::Bibundle;
use crate::calculus::{self, find_iso, IsoWitness};
use crate::diagram::parse::{parse, print, Expr, Node};
use crate::error::{Error, Result};
use crate::groupoid::FinGroupoid;

/// Built-in generators and their `(inputs, outputs)` arities.
pub const BUILTINS: &[(&str, usize, usize)] = &[
    ("id", 1, 1),
    ("tau", 2, 2),
    ("delta", 1, 2),
    ("eps", 1, 0),
    ("ev", 2, 0),
    ("cv", 0, 2),
    ("mu", 2, 1),
    ("e", 0, 1),
    ("inv", 1, 1),
];

/// Names whose meaning comes from a binding rather than from `G` itself.
const STRUCTURE: &[&str] = &["mu", "e", "inv"];

/// The base groupoid and the bibundles bound to names.
#[derive(Debug, Clone)]
pub struct DiagramEnv {
    base: FinGroupoid,
    bindings: BTreeMap<String, (Bibundle, usize, usize)>,
}

/// If `g` is literally `base^k`, returns `k`.
pub fn power_of(base: &FinGroupoid, g: &FinGroupoid) -> Option<usize> {
    let bf = base.factors();
    let gf = g.factors();
    if bf.is_empty() {
        return gf.is_empty().then_some(0);
    }
    if !gf.len().is_multiple_of(bf.len()) {
        return None;
    }
    gf.chunks(bf.len()).all(|c| c == bf.as_slice()).then_some(gf.len() / bf.len())
}

impl DiagramEnv {
    pub fn new(base: FinGroupoid) -> Self {
        DiagramEnv {
            base,
            bindings: BTreeMap::new(),
        }
    }

    pub fn base(&self) -> &FinGroupoid {
        &self.base
    }

    /// Binds `name` to a bibundle between powers of the base groupoid.
    pub fn bind(&mut self, name: &str, b: Bibundle) -> Result<()> {
        if BUILTINS.iter().any(|(n, _, _)| *n == name) && !STRUCTURE.contains(&name) {
            return Err(Error::Malformed(format!("`{name}` is a built-in generator and cannot be rebound")));
        }
        let m = power_of(&self.base, b.left())
            .ok_or_else(|| Error::GroupoidMismatch(format!("left groupoid of `{name}` is not a power of G")))?;
        let n = power_of(&self.base, b.right())
            .ok_or_else(|| Error::GroupoidMismatch(format!("right groupoid of `{name}` is not a power of G")))?;
        if let Some(&(_, bm, bn)) = BUILTINS.iter().find(|(n2, _, _)| *n2 == name) {
            if (m, n) != (bm, bn) {
                return Err(Error::Arity(format!("`{name}` must be {bm}->{bn}, got {m}->{n}")));
            }
        }
        self.bindings.insert(name.to_string(), (b, m, n));
        Ok(())
    }

    pub fn with(mut self, name: &str, b: Bibundle) -> Result<Self> {
        self.bind(name, b)?;
        Ok(self)
    }

    pub fn binding(&self, name: &str) -> Option<&Bibundle> {
        self.bindings.get(name).map(|(b, _, _)| b)
    }

    fn arity(&self, name: &str) -> Option<(usize, usize)> {
        if let Some(&(_, m, n)) = self.bindings.get(name) {
            return Some((m, n));
        }
        BUILTINS.iter().find(|(n, _, _)| *n == name).map(|&(_, m, n)| (m, n))
    }
}

/// Global `(inputs, outputs)` arity of an expression.
pub fn typecheck(e: &Expr, env: &DiagramEnv) -> Result<(usize, usize)> {
    match &e.node {
        Node::Gen(n) => env.arity(n).ok_or_else(|| Error::Unbound(n.clone())),
        Node::Tensor(a, b) => {
            let (am, an) = typecheck(a, env)?;
            let (bm, bn) = typecheck(b, env)?;
            Ok((am + bm, an + bn))
        }
        Node::Seq(a, b) => {
            let (am, an) = typecheck(a, env)?;
            let (bm, bn) = typecheck(b, env)?;
            if an != bm {
                return Err(Error::Arity(format!(
                    "{}:{}: `{}` has {} outputs but `{}` has {} inputs",
                    e.span.line,
                    e.span.column,
                    print(a),
                    an,
                    print(b),
                    bm
                )));
            }
            Ok((am, bn))
        }
    }
}

fn generator(name: &str, env: &DiagramEnv) -> Result<Bibundle> {
    if let Some(b) = env.binding(name) {
        return Ok(b.clone());
    }
    let g = &env.base;
    Ok(match name {
        "id" => calculus::identity_bibundle(g),
        "tau" => calculus::flip(g, g),
        "delta" => calculus::diagonal(g),
        "eps" => calculus::terminal_morphism(g),
        "ev" => calculus::ev(g),
        "cv" => calculus::cv(g),
        other => return Err(Error::Unbound(other.to_string())),
    })
}

fn eval_node(e: &Expr, env: &DiagramEnv) -> Result<Bibundle> {
    match &e.node {
        Node::Gen(n) => generator(n, env),
        Node::Tensor(a, b) => Ok(calculus::tensor(&eval_node(a, env)?, &eval_node(b, env)?)),
        Node::Seq(a, b) => calculus::compose_bb(&eval_node(a, env)?, &eval_node(b, env)?),
    }
}

/// Evaluates eagerly: generators become bibundles, `*` is the cartesian
/// product and `;` is composition. The result is a `G^m`-`G^n` bibundle.
pub fn evaluate(e: &Expr, env: &DiagramEnv) -> Result<Bibundle> {
    typecheck(e, env)?;
    Ok(eval_node(e, env)?.with_provenance(print(e)))
}

pub fn evaluate_str(text: &str, env: &DiagramEnv) -> Result<Bibundle> {
    evaluate(&parse(text)?, env)
}

/// Both sides of an identity and the witness found, if any.
#[derive(Debug, Clone)]
pub struct IdentityCheck {
    pub lhs: Bibundle,
    pub rhs: Bibundle,
    pub witness: Option<IsoWitness>,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.witness.is_some()
    }
}

/// Evaluates both sides and searches for a biequivariant isomorphism.
pub fn check_identity(lhs: &str, rhs: &str, env: &DiagramEnv) -> Result<IdentityCheck> {
    let (le, re) = (parse(lhs)?, parse(rhs)?);
    let la = typecheck(&le, env)?;
    let ra = typecheck(&re, env)?;
    if la != ra {
        return Err(Error::Arity(format!(
            "sides differ: `{lhs}` is {}->{} but `{rhs}` is {}->{}",
            la.0, la.1, ra.0, ra.1
        )));
    }
    let l = evaluate(&le, env)?;
    let r = evaluate(&re, env)?;
    let witness = find_iso(&l, &r);
    Ok(IdentityCheck { lhs: l, rhs: r, witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::{cyclic, pair};

    #[test]
    fn arities() {
        let env = DiagramEnv::new(cyclic(2));
        assert_eq!(typecheck(&parse("mu").unwrap(), &env).unwrap(), (2, 1));
        assert_eq!(typecheck(&parse("cv ; (eps * eps)").unwrap(), &env).unwrap(), (0, 0));
        let err = typecheck(&parse("id ; mu").unwrap(), &env).unwrap_err();
        assert!(err.to_string().contains("1 outputs") && err.to_string().contains("2 inputs"), "{err}");
        assert!(matches!(typecheck(&parse("zz").unwrap(), &env), Err(Error::Unbound(_))));
    }

    #[test]
    fn evaluation_is_arity_sound() {
        let g = pair(2);
        let env = DiagramEnv::new(g.clone());
        for (s, m, n) in [("id", 1, 1), ("delta ; (id * eps)", 1, 1), ("cv * id", 1, 3), ("ev", 2, 0)] {
            let b = evaluate_str(s, &env).unwrap();
            assert_eq!(b.left(), &g.power(m), "{s}");
            assert_eq!(b.right(), &g.power(n), "{s}");
        }
    }

    #[test]
    fn coarse_moduli_of_pair3_is_one_point() {
        let env = DiagramEnv::new(pair(3));
        assert_eq!(evaluate_str("cv ; (eps * eps)", &env).unwrap().len(), 1);
    }

    #[test]
    fn unbound_structure_generator() {
        let env = DiagramEnv::new(cyclic(2));
        assert!(matches!(evaluate_str("mu", &env), Err(Error::Unbound(_))));
    }

    #[test]
    fn mismatched_sides() {
        let env = DiagramEnv::new(cyclic(2));
        assert!(matches!(check_identity("id", "delta", &env), Err(Error::Arity(_))));
    }

    #[test]
    fn flip_is_an_involution() {
        let env = DiagramEnv::new(cyclic(3));
        assert!(check_identity("tau ; tau", "id * id", &env).unwrap().holds());
    }
}
