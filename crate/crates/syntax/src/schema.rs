//! Instantiation of schematic formulas: placeholders are replaced by concrete
//! terms and formulas, `$`-binders are renamed apart.

use crate::expr::{fresh_name, name, Expr, Name};
use crate::negate::{resolve_negations, NotNegatable};
use crate::spec::{LanguageSpec, QloDecl};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

/// The value of a placeholder applied to `params.len()` arguments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Abstraction {
    pub params: Vec<Name>,
    pub body: Expr,
}

impl Abstraction {
    pub fn constant(body: Expr) -> Self {
        Abstraction {
            params: Vec::new(),
            body,
        }
    }

    pub fn apply(&self, args: &[Expr]) -> Expr {
        let pairs: Vec<(Name, Expr)> = self.params.iter().cloned().zip(args.iter().cloned()).collect();
        self.body.subst_many(&pairs)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Instantiation {
    pub holes: BTreeMap<Name, Abstraction>,
    /// Values for `$`-variables; unmapped ones become fresh names.
    pub vars: BTreeMap<Name, Expr>,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum InstantiateError {
    #[error("placeholder `{0}` has no value")]
    Unbound(String),
    #[error("placeholder `{name}` expects {expected} arguments, got {got}")]
    Arity {
        name: String,
        expected: usize,
        got: usize,
    },
    #[error("binder `{0}` must be instantiated by a variable")]
    BinderNotVariable(String),
    #[error(transparent)]
    Negation(#[from] NotNegatable),
}

impl Instantiation {
    pub fn hole(mut self, n: &str, a: Abstraction) -> Self {
        self.holes.insert(name(n), a);
        self
    }

    pub fn var(mut self, n: &str, e: Expr) -> Self {
        self.vars.insert(name(n), e);
        self
    }

    fn names(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        for a in self.holes.values() {
            a.body.all_names(&mut out);
            out.extend(a.params.iter().cloned());
        }
        for e in self.vars.values() {
            e.all_names(&mut out);
        }
        out
    }
}

/// Substitutes every placeholder in `schema`, then resolves schematic negations.
pub fn instantiate(
    spec: &LanguageSpec,
    schema: &Expr,
    inst: &Instantiation,
) -> Result<Expr, InstantiateError> {
    let mut avoid = inst.names();
    schema.all_names(&mut avoid);
    let mut renames = inst.vars.clone();
    let raw = go(schema, inst, &mut renames, &mut avoid)?;
    Ok(resolve_negations(spec, &raw)?)
}

fn go(
    e: &Expr,
    inst: &Instantiation,
    renames: &mut BTreeMap<Name, Expr>,
    avoid: &mut BTreeSet<Name>,
) -> Result<Expr, InstantiateError> {
    let all = |xs: &[Expr], renames: &mut BTreeMap<Name, Expr>, avoid: &mut BTreeSet<Name>| {
        xs.iter()
            .map(|x| go(x, inst, renames, avoid))
            .collect::<Result<Vec<_>, _>>()
    };
    Ok(match e {
        Expr::Var(v) if v.starts_with('$') => match renames.get(v) {
            Some(x) => x.clone(),
            None => {
                let f = fresh_name("_v", avoid);
                avoid.insert(f.clone());
                renames.insert(v.clone(), Expr::Var(f.clone()));
                Expr::Var(f)
            }
        },
        Expr::Var(_) | Expr::Const(_) | Expr::Quote(_) => e.clone(),
        Expr::Hole { name: n, args } => {
            let a = inst
                .holes
                .get(n)
                .ok_or_else(|| InstantiateError::Unbound(n.to_string()))?;
            if a.params.len() != args.len() {
                return Err(InstantiateError::Arity {
                    name: n.to_string(),
                    expected: a.params.len(),
                    got: args.len(),
                });
            }
            let args = all(args, renames, avoid)?;
            a.apply(&args)
        }
        Expr::Neg(inner) => Expr::Neg(Box::new(go(inner, inst, renames, avoid)?)),
        Expr::App { func, args } => Expr::App {
            func: func.clone(),
            args: all(args, renames, avoid)?,
        },
        Expr::Atom {
            rel,
            polarity,
            args,
        } => Expr::Atom {
            rel: rel.clone(),
            polarity: *polarity,
            args: all(args, renames, avoid)?,
        },
        Expr::And(a, b) => Expr::and(go(a, inst, renames, avoid)?, go(b, inst, renames, avoid)?),
        Expr::Or(a, b) => Expr::or(go(a, inst, renames, avoid)?, go(b, inst, renames, avoid)?),
        Expr::Quant {
            kind,
            var,
            sort,
            bound,
            body,
        } => {
            let bound = match bound {
                Some(b) => Some(Box::new(go(b, inst, renames, avoid)?)),
                None => None,
            };
            let var = binder(var, renames, avoid)?;
            Expr::Quant {
                kind: *kind,
                var,
                sort: sort.clone(),
                bound,
                body: Box::new(go(body, inst, renames, avoid)?),
            }
        }
        Expr::Qlo {
            op,
            binders,
            terms,
            formulas,
        } => {
            let terms = all(terms, renames, avoid)?;
            let binders = binders
                .iter()
                .map(|b| binder(b, renames, avoid))
                .collect::<Result<Vec<_>, _>>()?;
            Expr::Qlo {
                op: op.clone(),
                binders,
                terms,
                formulas: all(formulas, renames, avoid)?,
            }
        }
    })
}

fn binder(
    var: &Name,
    renames: &mut BTreeMap<Name, Expr>,
    avoid: &mut BTreeSet<Name>,
) -> Result<Name, InstantiateError> {
    if !var.starts_with('$') {
        return Ok(var.clone());
    }
    match renames.get(var) {
        Some(Expr::Var(v)) => Ok(v.clone()),
        Some(_) => Err(InstantiateError::BinderNotVariable(var.to_string())),
        None => {
            let f = fresh_name("_v", avoid);
            avoid.insert(f.clone());
            renames.insert(var.clone(), Expr::Var(f.clone()));
            Ok(f)
        }
    }
}

/// Placeholder values that read an operator application `qlo` into its Θ.
pub fn qlo_instantiation(decl: &QloDecl, qlo: &Expr, value: &Expr) -> Option<Instantiation> {
    let Expr::Qlo {
        binders,
        terms,
        formulas,
        ..
    } = qlo
    else {
        return None;
    };
    let mut inst = Instantiation::default().hole(QloDecl::result_hole(), Abstraction::constant(value.clone()));
    for (i, t) in terms.iter().enumerate() {
        inst = inst.hole(&QloDecl::term_hole(i), Abstraction::constant(t.clone()));
    }
    for (i, f) in formulas.iter().enumerate().take(decl.formula_slots) {
        inst = inst.hole(
            &QloDecl::formula_hole(i),
            Abstraction {
                params: binders.clone(),
                body: f.clone(),
            },
        );
    }
    Some(inst)
}

/// Θ for `qlo = value`, with concrete slots.
pub fn theta_instance(spec: &LanguageSpec, qlo: &Expr, value: &Expr) -> Result<Expr, InstantiateError> {
    let Expr::Qlo { op, .. } = qlo else {
        return Err(InstantiateError::Unbound("operator".into()));
    };
    let decl = spec
        .qlo(op)
        .ok_or_else(|| InstantiateError::Unbound(op.to_string()))?;
    let inst = qlo_instantiation(decl, qlo, value).expect("operator node");
    instantiate(spec, &decl.theta, &inst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spec::{elt_decl, QuantTemplate, PRIMARY_SORT};

    fn spec() -> LanguageSpec {
        let mut s = LanguageSpec::minimal("s");
        s.add_constant("0", PRIMARY_SORT);
        s.quantifiers.extend([QuantTemplate::Forall, QuantTemplate::Exists]);
        s.qlos.push(elt_decl());
        s
    }

    #[test]
    fn elt_theta_instance() {
        let s = spec();
        // elt{x : x = y}, value 0
        let q = Expr::qlo1("elt", "x", vec![], Expr::eq(Expr::var("x"), Expr::var("y")));
        let got = theta_instance(&s, &q, &Expr::constant("0")).unwrap();
        let want = Expr::and(
            Expr::eq(Expr::constant("0"), Expr::var("y")),
            Expr::forall(
                "_v0",
                Expr::or(
                    Expr::eq(Expr::constant("0"), Expr::var("_v0")),
                    Expr::neg_atom("=", vec![Expr::var("_v0"), Expr::var("y")]),
                ),
            ),
        );
        assert_eq!(got, want);
    }

    #[test]
    fn binder_renaming_avoids_parameters() {
        let s = spec();
        // The formula mentions `_v0` freely; the instantiated binder must differ.
        let q = Expr::qlo1("elt", "x", vec![], Expr::eq(Expr::var("x"), Expr::var("_v0")));
        let got = theta_instance(&s, &q, &Expr::var("z")).unwrap();
        assert!(got.occurs_free("_v0"));
        match got {
            Expr::And(_, b) => assert!(matches!(*b, Expr::Quant { ref var, .. } if &**var != "_v0")),
            _ => panic!(),
        }
    }

    #[test]
    fn missing_placeholder() {
        let s = spec();
        let r = instantiate(&s, &Expr::hole("?q", vec![]), &Instantiation::default());
        assert_eq!(r, Err(InstantiateError::Unbound("?q".into())));
    }
}
