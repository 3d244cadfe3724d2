//! Alternating prenex forms `∀y_i ∃z_i … ∀y_1 ∃z_1 M` and their truth by levels.

use crate::model::Model;
use crate::verify::find_verification;
use crate::Env;
use lnc_syntax::{Expr, Name, NameSupply, QuantKind};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrefixFormula {
    /// `(y, z)` blocks, outermost (index `i`) first.
    pub blocks: Vec<(Name, Name)>,
    /// Quantifier-free matrix.
    pub matrix: Expr,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum PrefixError {
    #[error("operator terms must be eliminated first: {0}")]
    Qlo(String),
    #[error("sorted quantifier over `{0}` has no prefix form here")]
    Sorted(String),
    #[error("schematic formula: {0}")]
    Schematic(String),
    #[error("{0} is not a formula")]
    NotFormula(String),
    #[error("cannot extend an {index}-formula to level {target}")]
    BelowIndex { index: usize, target: usize },
    #[error("level truth needs a finite domain")]
    InfiniteDomain,
}

impl PrefixFormula {
    /// Number of `∀∃` blocks.
    pub fn index(&self) -> usize {
        self.blocks.len()
    }

    pub fn to_formula(&self) -> Expr {
        self.blocks.iter().rev().fold(self.matrix.clone(), |acc, (y, z)| {
            Expr::forall(y, Expr::exists(z, acc))
        })
    }

    fn supply(&self, prefix: &str) -> NameSupply {
        NameSupply::avoiding(prefix, &[&self.to_formula()])
    }
}

/// Renames binders apart and turns bounded quantifiers into unbounded ones
/// over a guard: `∀x<t φ` as `∀x (x≮t ∨ φ)`, `∃x<t φ` as `∃x (x<t ∧ φ)`.
fn normalize(e: &Expr, names: &mut NameSupply) -> Result<Expr, PrefixError> {
    match e {
        Expr::Atom { .. } => {
            if e.contains_qlo() {
                Err(PrefixError::Qlo(e.to_string()))
            } else {
                Ok(e.clone())
            }
        }
        Expr::And(a, b) => Ok(Expr::and(normalize(a, names)?, normalize(b, names)?)),
        Expr::Or(a, b) => Ok(Expr::or(normalize(a, names)?, normalize(b, names)?)),
        Expr::Quant {
            kind,
            var,
            sort,
            bound,
            body,
        } => {
            if let Some(s) = sort {
                return Err(PrefixError::Sorted(s.to_string()));
            }
            let fresh = names.fresh();
            let x = Expr::Var(fresh.clone());
            let body = normalize(&body.subst(var, &x), names)?;
            let body = match bound {
                None => body,
                Some(t) => {
                    if t.contains_qlo() {
                        return Err(PrefixError::Qlo(t.to_string()));
                    }
                    match kind {
                        QuantKind::Forall => Expr::or(Expr::neg_atom("lt", vec![x, (**t).clone()]), body),
                        QuantKind::Exists => Expr::and(Expr::lt(x, (**t).clone()), body),
                    }
                }
            };
            Ok(Expr::quant(*kind, &fresh, None, body))
        }
        Expr::Hole { .. } | Expr::Neg(_) => Err(PrefixError::Schematic(e.to_string())),
        _ => Err(PrefixError::NotFormula(e.to_string())),
    }
}

/// Pulls quantifiers out; sound because every binder is already distinct
/// and domains are nonempty.
fn prenex(e: &Expr) -> (Vec<(QuantKind, Name)>, Expr) {
    match e {
        Expr::And(a, b) | Expr::Or(a, b) => {
            let (mut qa, ma) = prenex(a);
            let (qb, mb) = prenex(b);
            qa.extend(qb);
            let m = if matches!(e, Expr::And(..)) {
                Expr::and(ma, mb)
            } else {
                Expr::or(ma, mb)
            };
            (qa, m)
        }
        Expr::Quant { kind, var, body, .. } => {
            let (mut q, m) = prenex(body);
            q.insert(0, (*kind, var.clone()));
            (q, m)
        }
        _ => (Vec::new(), e.clone()),
    }
}

pub fn to_prefix(phi: &Expr) -> Result<PrefixFormula, PrefixError> {
    if !phi.is_formula() {
        return Err(PrefixError::NotFormula(phi.to_string()));
    }
    let mut bound = NameSupply::avoiding("_p", &[phi]);
    let (quants, matrix) = prenex(&normalize(phi, &mut bound)?);
    let mut dummies = NameSupply::avoiding("_d", &[phi]);
    let mut blocks = Vec::new();
    let mut open: Option<Name> = None;
    for (kind, var) in quants {
        match (kind, open.take()) {
            (QuantKind::Forall, None) => open = Some(var),
            (QuantKind::Forall, Some(y)) => {
                blocks.push((y, dummies.fresh()));
                open = Some(var);
            }
            (QuantKind::Exists, Some(y)) => blocks.push((y, var)),
            (QuantKind::Exists, None) => blocks.push((dummies.fresh(), var)),
        }
    }
    if let Some(y) = open {
        blocks.push((y, dummies.fresh()));
    }
    Ok(PrefixFormula { blocks, matrix })
}

/// Prepends `j - i` blocks of unused variables.
pub fn j_extension(phi: &PrefixFormula, j: usize) -> Result<PrefixFormula, PrefixError> {
    let i = phi.index();
    if j < i {
        return Err(PrefixError::BelowIndex { index: i, target: j });
    }
    let mut names = phi.supply("_e");
    let mut blocks: Vec<(Name, Name)> = (0..j - i).map(|_| (names.fresh(), names.fresh())).collect();
    blocks.extend(phi.blocks.iter().cloned());
    Ok(PrefixFormula {
        blocks,
        matrix: phi.matrix.clone(),
    })
}

/// `n`-truth: a 0-formula is 0-true iff it has a verification; an
/// `(i)`-formula `∀y ∃z Ψ` is `i`-true iff every `y` has a `z` making `Ψ`
/// `(i-1)`-true. Formulas of lower index are read through their `n`-extension.
pub fn n_true(model: &dyn Model, phi: &PrefixFormula, env: &Env, n: usize) -> Result<bool, PrefixError> {
    let dom = model.domain(None);
    let Some(size) = dom.len() else {
        return Err(PrefixError::InfiniteDomain);
    };
    let ext = j_extension(phi, n)?;
    fn level(model: &dyn Model, phi: &PrefixFormula, k: usize, env: &Env, size: u64) -> bool {
        let Some((y, z)) = phi.blocks.get(k) else {
            return find_verification(model, &phi.matrix, env, u64::MAX)
                .ok()
                .flatten()
                .is_some();
        };
        let dom = model.domain(None);
        (0..size).all(|a| {
            let with_y = env.clone().with(y, dom.nth(a));
            (0..size).any(|b| level(model, phi, k + 1, &with_y.clone().with(z, dom.nth(b)), size))
        })
    }
    Ok(level(model, &ext, 0, env, size))
}

/// Shorthand for `n_true` at the formula's own index.
pub fn index_true(model: &dyn Model, phi: &PrefixFormula, env: &Env) -> Result<bool, PrefixError> {
    n_true(model, phi, env, phi.index())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::model_for;
    use lnc_languages::{make_std, Tag};
    use lnc_syntax::name;

    fn bound_name(k: usize) -> Name {
        name(&format!("_p{k}"))
    }

    #[test]
    fn quantifier_free_has_index_zero() {
        let f = make_std(&Tag::Fin(2)).unwrap();
        let e = f.parse("(= 0 1)").unwrap();
        let p = to_prefix(&e).unwrap();
        assert_eq!(p.index(), 0);
        assert_eq!(p.matrix, e);
    }

    #[test]
    fn forall_exists_has_index_one() {
        let f = make_std(&Tag::Fin(2)).unwrap();
        let e = f.parse("(forall y (exists z (= y z)))").unwrap();
        let p = to_prefix(&e).unwrap();
        assert_eq!(p.index(), 1);
        assert_eq!(p.blocks[0], (bound_name(0), bound_name(1)));
    }

    #[test]
    fn lone_existentials_get_dummy_universals() {
        let f = make_std(&Tag::Fin(2)).unwrap();
        let e = f.parse("(exists a (exists b (= a b)))").unwrap();
        let p = to_prefix(&e).unwrap();
        assert_eq!(p.index(), 2);
        let m = model_for(&f, &[]);
        assert!(index_true(m.as_ref(), &p, &Env::new()).unwrap());
    }

    #[test]
    fn extension_prepends_and_preserves_truth() {
        let f = make_std(&Tag::Fin(3)).unwrap();
        let m = model_for(&f, &[]);
        let e = f.parse("(forall (x (lt x (+ 1 1))) (exists y (= (+ x y) 0)))").unwrap();
        let p = to_prefix(&e).unwrap();
        let q = j_extension(&p, p.index() + 2).unwrap();
        assert_eq!(q.index(), p.index() + 2);
        assert_eq!(q.blocks[2..], p.blocks[..]);
        let t = index_true(m.as_ref(), &p, &Env::new()).unwrap();
        assert_eq!(index_true(m.as_ref(), &q, &Env::new()).unwrap(), t);
        assert!(t);
        assert!(j_extension(&p, 0).is_err() || p.index() == 0);
    }

    #[test]
    fn operators_are_rejected() {
        let f = make_std(&Tag::Fin(2)).unwrap();
        let e = f.parse("(= (elt x (= x 0)) 0)").unwrap();
        assert!(matches!(to_prefix(&e), Err(PrefixError::Qlo(_))));
    }
}
