//! Finite certificates of truth for quantifier-free and existential formulas.

use crate::model::{Domain, Model, Prim};
use crate::value::Value;
use crate::Env;
use lnc_syntax::{Expr, Polarity, QuantKind};
use std::collections::BTreeMap;
use thiserror::Error;

/// Position of a node: child indices from the root.
pub type Path = Vec<usize>;

/// Truth-values for subformula occurrences and values for subterm
/// occurrences; for `∃x ψ`, a witness for `x` and a verification of `ψ`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Verification {
    pub formulas: BTreeMap<Path, bool>,
    pub terms: BTreeMap<Path, Value>,
    pub witness: Option<(Value, Box<Verification>)>,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum FragmentError {
    #[error("`{0}` is neither quantifier-free nor an existential over a quantifier-free formula")]
    NotSigma1(String),
}

fn is_quantifier_free(e: &Expr) -> bool {
    !e.any_node(&|n| matches!(n, Expr::Quant { .. } | Expr::Qlo { .. } | Expr::Hole { .. } | Expr::Neg(_)))
}

/// Leading unbounded existentials and the quantifier-free rest.
fn split_sigma1(phi: &Expr) -> Result<(Vec<&str>, &Expr), FragmentError> {
    let mut vars = Vec::new();
    let mut e = phi;
    while let Expr::Quant {
        kind: QuantKind::Exists,
        var,
        sort: None,
        bound: None,
        body,
    } = e
    {
        vars.push(&**var);
        e = body;
    }
    if e.is_formula() && is_quantifier_free(e) {
        Ok((vars, e))
    } else {
        Err(FragmentError::NotSigma1(phi.to_string()))
    }
}

fn child(path: &[usize], i: usize) -> Path {
    let mut p = path.to_vec();
    p.push(i);
    p
}

/// Checks every constraint and that the root is true.
pub fn verify(model: &dyn Model, phi: &Expr, env: &Env, v: &Verification) -> Result<bool, FragmentError> {
    let (vars, matrix) = split_sigma1(phi)?;
    let mut env = env.clone();
    let mut v = v;
    for x in vars {
        let Some((a, inner)) = &v.witness else {
            return Ok(false);
        };
        if !model.domain(None).contains(a) {
            return Ok(false);
        }
        env.set(x, a.clone());
        v = inner;
    }
    Ok(v.formulas.get(&Vec::new()) == Some(&true) && consistent_formula(model, matrix, &[], &env, v))
}

fn consistent_formula(model: &dyn Model, e: &Expr, path: &[usize], env: &Env, v: &Verification) -> bool {
    let Some(&val) = v.formulas.get(path) else {
        return false;
    };
    match e {
        Expr::And(a, b) | Expr::Or(a, b) => {
            let (p0, p1) = (child(path, 0), child(path, 1));
            if !consistent_formula(model, a, &p0, env, v) || !consistent_formula(model, b, &p1, env, v) {
                return false;
            }
            let (x, y) = (v.formulas[&p0], v.formulas[&p1]);
            val == if matches!(e, Expr::And(..)) { x && y } else { x || y }
        }
        Expr::Atom {
            rel,
            polarity,
            args,
        } => {
            let mut vals = Vec::new();
            for (i, a) in args.iter().enumerate() {
                let p = child(path, i);
                if !consistent_term(model, a, &p, env, v) {
                    return false;
                }
                vals.push(v.terms[&p].clone());
            }
            let positive = if &**rel == "def" {
                true
            } else {
                match model.relation(rel, &vals) {
                    Prim::Done(b) => b,
                    _ => return false,
                }
            };
            val == (positive == (*polarity == Polarity::Positive))
        }
        _ => false,
    }
}

fn consistent_term(model: &dyn Model, e: &Expr, path: &[usize], env: &Env, v: &Verification) -> bool {
    let Some(val) = v.terms.get(path) else {
        return false;
    };
    let expected = match e {
        Expr::Var(x) => env.get(x).cloned(),
        Expr::Const(c) => model.constant(c),
        Expr::Quote(inner) => Some(Value::Syn((**inner).clone())),
        Expr::App { func, args } => {
            let mut vals = Vec::new();
            for (i, a) in args.iter().enumerate() {
                let p = child(path, i);
                if !consistent_term(model, a, &p, env, v) {
                    return false;
                }
                vals.push(v.terms[&p].clone());
            }
            match model.function(func, &vals, u64::MAX) {
                Prim::Done(r) => Some(r),
                _ => None,
            }
        }
        _ => None,
    };
    expected.as_ref() == Some(val)
}

/// Searches witnesses in a fixed order (by largest coordinate, then
/// lexicographically) and returns the first verification found within `fuel`
/// node computations.
pub fn find_verification(
    model: &dyn Model,
    phi: &Expr,
    env: &Env,
    fuel: u64,
) -> Result<Option<Verification>, FragmentError> {
    let (vars, matrix) = split_sigma1(phi)?;
    let mut fuel = fuel;
    let dom = model.domain(None);
    let found = for_each_tuple(&dom, vars.len(), &mut |tuple| {
        let mut env = env.clone();
        for (x, a) in vars.iter().zip(tuple) {
            env.set(x, a.clone());
        }
        let mut v = Verification::default();
        match compute_formula(model, matrix, &[], &env, &mut v, &mut fuel) {
            None => Some(None),
            Some(true) => Some(Some(wrap(v, tuple))),
            Some(false) => None,
        }
    });
    Ok(found.flatten())
}

fn wrap(inner: Verification, tuple: &[Value]) -> Verification {
    tuple.iter().rev().fold(inner, |acc, a| Verification {
        witness: Some((a.clone(), Box::new(acc))),
        ..Verification::default()
    })
}

/// Calls `f` on tuples of length `n` until it returns `Some`.
fn for_each_tuple<R>(dom: &Domain, n: usize, f: &mut dyn FnMut(&[Value]) -> Option<R>) -> Option<R> {
    if n == 0 {
        return f(&[]);
    }
    let mut shell = 0u64;
    loop {
        if dom.len().is_some_and(|c| shell >= c) {
            return None;
        }
        // Tuples whose largest index is exactly `shell`.
        let mut idx = vec![0u64; n];
        'odometer: loop {
            if idx.contains(&shell) {
                let tuple: Vec<Value> = idx.iter().map(|&i| dom.nth(i)).collect();
                if let Some(r) = f(&tuple) {
                    return Some(r);
                }
            }
            for k in (0..n).rev() {
                if idx[k] < shell {
                    idx[k] += 1;
                    idx[k + 1..].iter_mut().for_each(|i| *i = 0);
                    continue 'odometer;
                }
            }
            break;
        }
        shell += 1;
    }
}

fn spend(fuel: &mut u64) -> Option<()> {
    *fuel = fuel.checked_sub(1)?;
    Some(())
}

fn compute_formula(
    model: &dyn Model,
    e: &Expr,
    path: &[usize],
    env: &Env,
    v: &mut Verification,
    fuel: &mut u64,
) -> Option<bool> {
    spend(fuel)?;
    let val = match e {
        Expr::And(a, b) | Expr::Or(a, b) => {
            let x = compute_formula(model, a, &child(path, 0), env, v, fuel)?;
            let y = compute_formula(model, b, &child(path, 1), env, v, fuel)?;
            if matches!(e, Expr::And(..)) {
                x && y
            } else {
                x || y
            }
        }
        Expr::Atom {
            rel,
            polarity,
            args,
        } => {
            let mut vals = Vec::new();
            for (i, a) in args.iter().enumerate() {
                vals.push(compute_term(model, a, &child(path, i), env, v, fuel)?);
            }
            let positive = if &**rel == "def" {
                true
            } else {
                match model.relation(rel, &vals) {
                    Prim::Done(b) => b,
                    _ => return None,
                }
            };
            positive == (*polarity == Polarity::Positive)
        }
        _ => return None,
    };
    v.formulas.insert(path.to_vec(), val);
    Some(val)
}

fn compute_term(
    model: &dyn Model,
    e: &Expr,
    path: &[usize],
    env: &Env,
    v: &mut Verification,
    fuel: &mut u64,
) -> Option<Value> {
    spend(fuel)?;
    let val = match e {
        Expr::Var(x) => env.get(x).cloned()?,
        Expr::Const(c) => model.constant(c)?,
        Expr::Quote(inner) => Value::Syn((**inner).clone()),
        Expr::App { func, args } => {
            let mut vals = Vec::new();
            for (i, a) in args.iter().enumerate() {
                vals.push(compute_term(model, a, &child(path, i), env, v, fuel)?);
            }
            match model.function(func, &vals, fuel.saturating_mul(64)) {
                Prim::Done(r) => r,
                _ => return None,
            }
        }
        _ => return None,
    };
    v.terms.insert(path.to_vec(), val.clone());
    Some(val)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{model_for, ArithModel};
    use lnc_languages::{make_std, Tag};

    fn gnt() -> (lnc_languages::StdLanguage, ArithModel) {
        let g = make_std(&Tag::Gnt).unwrap();
        let m = ArithModel::new(g.spec.clone());
        (g, m)
    }

    #[test]
    fn conjunction_of_identities() {
        let (g, m) = gnt();
        let e = g.parse("(and (= 0 0) (= 1 1))").unwrap();
        let v = find_verification(&m, &e, &Env::new(), 100).unwrap().unwrap();
        assert!(verify(&m, &e, &Env::new(), &v).unwrap());
    }

    #[test]
    fn existential_witness() {
        let (g, m) = gnt();
        let e = g.parse("(exists n (= n (+ 1 1)))").unwrap();
        let v = find_verification(&m, &e, &Env::new(), 1000).unwrap().unwrap();
        assert_eq!(v.witness.as_ref().unwrap().0, Value::Nat(2));
        assert!(verify(&m, &e, &Env::new(), &v).unwrap());
        assert_eq!(find_verification(&m, &e, &Env::new(), 0).unwrap(), None);
    }

    #[test]
    fn false_label_on_true_atom_is_rejected() {
        let (g, m) = gnt();
        let e = g.parse("(or (= 0 0) (= 0 1))").unwrap();
        let mut v = find_verification(&m, &e, &Env::new(), 100).unwrap().unwrap();
        v.formulas.insert(vec![0], false);
        assert!(!verify(&m, &e, &Env::new(), &v).unwrap());
    }

    #[test]
    fn pairs_of_witnesses() {
        let f = make_std(&Tag::Fin(3)).unwrap();
        let m = model_for(&f, &[]);
        let e = f.parse("(exists a (exists b (and (= (+ a b) 1) (lt b a))))").unwrap();
        let v = find_verification(m.as_ref(), &e, &Env::new(), 10_000).unwrap().unwrap();
        assert!(verify(m.as_ref(), &e, &Env::new(), &v).unwrap());
        let none = f.parse("(exists a (= a (+ a 1)))").unwrap();
        assert_eq!(find_verification(m.as_ref(), &none, &Env::new(), 10_000).unwrap(), None);
    }

    #[test]
    fn quantified_matrix_is_outside_the_fragment() {
        let (g, m) = gnt();
        let e = g.parse("(forall (n (lt n 1)) (= n 0))").unwrap();
        assert!(find_verification(&m, &e, &Env::new(), 100).is_err());
    }
}
