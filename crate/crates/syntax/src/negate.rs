use crate::expr::Expr;
use crate::spec::{LanguageSpec, QuantTemplate};
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum NotNegatable {
    #[error("relation `{0}` is not negatable")]
    Relation(String),
    #[error("dual quantifier template `{}` is not enabled", .0.keyword())]
    Quantifier(QuantTemplate),
    #[error("`{0}` is not a formula")]
    NotFormula(String),
}

/// De Morgan negation. Negative atoms flip back to positive, so this is an
/// involution on negatable formulas.
pub fn negate(spec: &LanguageSpec, phi: &Expr) -> Result<Expr, NotNegatable> {
    Ok(match phi {
        Expr::Atom {
            rel,
            polarity,
            args,
        } => {
            let negatable = spec.relation(rel).is_some_and(|r| r.negatable);
            if !negatable {
                return Err(NotNegatable::Relation(rel.to_string()));
            }
            Expr::Atom {
                rel: rel.clone(),
                polarity: polarity.flip(),
                args: args.clone(),
            }
        }
        Expr::And(a, b) => Expr::or(negate(spec, a)?, negate(spec, b)?),
        Expr::Or(a, b) => Expr::and(negate(spec, a)?, negate(spec, b)?),
        Expr::Quant {
            kind,
            var,
            sort,
            bound,
            body,
        } => {
            let sorted_ok = sort
                .as_ref()
                .is_some_and(|s| spec.sort(s).is_some_and(|d| d.quantifiable));
            let dual = QuantTemplate::of(*kind, bound.is_some()).dual();
            if !sorted_ok && !spec.allows(dual) {
                return Err(NotNegatable::Quantifier(dual));
            }
            Expr::Quant {
                kind: kind.dual(),
                var: var.clone(),
                sort: sort.clone(),
                bound: bound.clone(),
                body: Box::new(negate(spec, body)?),
            }
        }
        Expr::Hole { .. } => Expr::Neg(Box::new(phi.clone())),
        Expr::Neg(inner) => (**inner).clone(),
        other => return Err(NotNegatable::NotFormula(crate::render::display(other))),
    })
}

pub fn is_negatable(spec: &LanguageSpec, phi: &Expr) -> bool {
    negate(spec, phi).is_ok()
}

/// `φ ∨ ¬φ`, the formula asserting that `φ` has a definite truth-value.
pub fn definiteness_formula(spec: &LanguageSpec, phi: &Expr) -> Result<Expr, NotNegatable> {
    Ok(Expr::or(phi.clone(), negate(spec, phi)?))
}

/// Negatable, built only from strongly negatable atoms, and free of operator terms.
pub fn strongly_negatable(spec: &LanguageSpec, phi: &Expr) -> bool {
    if !is_negatable(spec, phi) || phi.contains_qlo() {
        return false;
    }
    !phi.any_node(&|e| match e {
        Expr::Atom { rel, .. } => !spec.relation(rel).is_some_and(|r| r.strongly_negatable),
        _ => false,
    })
}

/// Replaces `Neg` nodes whose operand has become concrete by its de Morgan negation.
pub fn resolve_negations(spec: &LanguageSpec, e: &Expr) -> Result<Expr, NotNegatable> {
    let go = |x: &Expr| resolve_negations(spec, x);
    Ok(match e {
        Expr::Neg(inner) => {
            let inner = go(inner)?;
            match inner {
                Expr::Hole { .. } => Expr::Neg(Box::new(inner)),
                other => negate(spec, &other)?,
            }
        }
        Expr::And(a, b) => Expr::and(go(a)?, go(b)?),
        Expr::Or(a, b) => Expr::or(go(a)?, go(b)?),
        Expr::Quant {
            kind,
            var,
            sort,
            bound,
            body,
        } => Expr::Quant {
            kind: *kind,
            var: var.clone(),
            sort: sort.clone(),
            bound: match bound {
                Some(b) => Some(Box::new(go(b)?)),
                None => None,
            },
            body: Box::new(go(body)?),
        },
        Expr::Atom {
            rel,
            polarity,
            args,
        } => Expr::Atom {
            rel: rel.clone(),
            polarity: *polarity,
            args: args.iter().map(go).collect::<Result<_, _>>()?,
        },
        Expr::App { func, args } => Expr::App {
            func: func.clone(),
            args: args.iter().map(go).collect::<Result<_, _>>()?,
        },
        Expr::Hole { name, args } => Expr::Hole {
            name: name.clone(),
            args: args.iter().map(go).collect::<Result<_, _>>()?,
        },
        Expr::Qlo {
            op,
            binders,
            terms,
            formulas,
        } => Expr::Qlo {
            op: op.clone(),
            binders: binders.clone(),
            terms: terms.iter().map(go).collect::<Result<_, _>>()?,
            formulas: formulas.iter().map(go).collect::<Result<_, _>>()?,
        },
        Expr::Var(_) | Expr::Const(_) | Expr::Quote(_) => e.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spec::{fst_decl, FunctionDecl, RelationDecl, PRIMARY_SORT};

    fn spec(full: bool) -> LanguageSpec {
        let mut s = LanguageSpec::minimal("n");
        s.relations.push(RelationDecl::new("lt", 2).strong());
        s.functions.push(FunctionDecl::new("+", 2));
        s.add_constant("0", PRIMARY_SORT);
        s.add_constant("1", PRIMARY_SORT);
        s.quantifiers.extend([
            QuantTemplate::BoundedForall,
            QuantTemplate::BoundedExists,
            QuantTemplate::Exists,
        ]);
        if full {
            s.quantifiers.insert(QuantTemplate::Forall);
        }
        s.qlos.push(fst_decl());
        s
    }

    fn n_is_zero() -> Expr {
        Expr::eq(Expr::var("n"), Expr::constant("0"))
    }

    #[test]
    fn unbounded_exists_without_forall() {
        let e = Expr::exists("n", n_is_zero());
        assert_eq!(
            negate(&spec(false), &e),
            Err(NotNegatable::Quantifier(QuantTemplate::Forall))
        );
    }

    #[test]
    fn unbounded_exists_with_forall() {
        let e = Expr::exists("n", n_is_zero());
        let n = negate(&spec(true), &e).unwrap();
        assert_eq!(
            n,
            Expr::forall("n", Expr::neg_atom("=", vec![Expr::var("n"), Expr::constant("0")]))
        );
        assert_eq!(negate(&spec(true), &n).unwrap(), e);
    }

    #[test]
    fn definiteness() {
        let s = spec(false);
        let z = Expr::eq(Expr::constant("0"), Expr::constant("0"));
        let d = definiteness_formula(&s, &z).unwrap();
        assert_eq!(
            d,
            Expr::or(z.clone(), Expr::neg_atom("=", vec![Expr::constant("0"), Expr::constant("0")]))
        );
        assert!(is_negatable(&s, &d));
        assert!(definiteness_formula(&s, &Expr::defined(Expr::constant("0"))).is_err());
    }

    #[test]
    fn strong_negatability() {
        let s = spec(false);
        let one = Expr::constant("1");
        let two = Expr::app("+", vec![one.clone(), one.clone()]);
        assert!(strongly_negatable(&s, &Expr::lt(one, two)));
        let f = Expr::qlo1("fst", "n", vec![], Expr::eq(Expr::var("n"), Expr::var("n")));
        assert!(!strongly_negatable(&s, &Expr::eq(f, Expr::constant("0"))));
        assert!(!strongly_negatable(&s, &Expr::defined(Expr::var("t"))));
    }

    #[test]
    fn schematic_negation_resolves() {
        let s = spec(false);
        let schema = Expr::Neg(Box::new(n_is_zero()));
        assert_eq!(
            resolve_negations(&s, &schema).unwrap(),
            negate(&s, &n_is_zero()).unwrap()
        );
    }
}
