//! Translation of the first meta level back into its base language.
//!
//! Only quoted arguments are handled: `𝕋(⌜φ⌝ | ⌜x⌝ = a)` becomes `φ[x := a]`
//! and `ℝ(⌜t⌝ | ..)` becomes `t[..]`. Truth or reference applied to a
//! computed code has no translation here.

use crate::{meta_symbols, StdLanguage, Tag};
use lnc_syntax::{Expr, Name};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TranslateError {
    #[error("`{0}` is not a first-level meta language")]
    NotMeta(Tag),
    #[error("argument of `{symbol}` is not a quoted literal: {arg}")]
    Unresolved { symbol: String, arg: String },
    #[error("assignment `{0}` does not name a quoted variable")]
    BadAssignment(String),
}

/// One row of the translation table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableEntry {
    pub primitive: String,
    pub translation: String,
}

pub fn translation_table(lang: &StdLanguage) -> Result<Vec<TableEntry>, TranslateError> {
    check_level(lang)?;
    let (t, r) = meta_symbols(1);
    Ok(vec![
        TableEntry {
            primitive: format!("{t}(⌜φ⌝ | ⌜x⌝ = a)"),
            translation: "φ[x := a]".into(),
        },
        TableEntry {
            primitive: format!("¬{t}(⌜φ⌝ | ⌜x⌝ = a)"),
            translation: "¬φ[x := a]".into(),
        },
        TableEntry {
            primitive: format!("{r}(⌜s⌝ | ⌜x⌝ = a)"),
            translation: "s[x := a]".into(),
        },
    ])
}

fn check_level(lang: &StdLanguage) -> Result<(), TranslateError> {
    match &lang.tag {
        Tag::MetaOf(b) if b.meta_level() == 0 => Ok(()),
        t => Err(TranslateError::NotMeta(t.clone())),
    }
}

/// Rewrites every truth and reference primitive of `e` into base syntax.
pub fn translate(lang: &StdLanguage, e: &Expr) -> Result<Expr, TranslateError> {
    check_level(lang)?;
    let base = lang.meta_base().expect("meta tag has a base");
    let (truth, reference) = meta_symbols(1);
    go(&base, &truth, &reference, e)
}

fn go(base: &StdLanguage, truth: &str, reference: &str, e: &Expr) -> Result<Expr, TranslateError> {
    let rec = |x: &Expr| go(base, truth, reference, x);
    let all = |xs: &[Expr]| xs.iter().map(rec).collect::<Result<Vec<_>, _>>();
    Ok(match e {
        Expr::Atom {
            rel,
            polarity,
            args,
        } if &**rel == truth => {
            let phi = disquote(truth, args)?;
            match polarity {
                lnc_syntax::Polarity::Positive => phi,
                lnc_syntax::Polarity::Negative => lnc_syntax::negate(&base.spec, &phi).map_err(|_| {
                    TranslateError::Unresolved {
                        symbol: truth.into(),
                        arg: phi.to_string(),
                    }
                })?,
            }
        }
        Expr::App { func, args } if &**func == reference => disquote(reference, args)?,
        Expr::Atom {
            rel,
            polarity,
            args,
        } => Expr::Atom {
            rel: rel.clone(),
            polarity: *polarity,
            args: all(args)?,
        },
        Expr::App { func, args } => Expr::App {
            func: func.clone(),
            args: all(args)?,
        },
        Expr::And(a, b) => Expr::and(rec(a)?, rec(b)?),
        Expr::Or(a, b) => Expr::or(rec(a)?, rec(b)?),
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
                Some(b) => Some(Box::new(rec(b)?)),
                None => None,
            },
            body: Box::new(rec(body)?),
        },
        Expr::Qlo {
            op,
            binders,
            terms,
            formulas,
        } => Expr::Qlo {
            op: op.clone(),
            binders: binders.clone(),
            terms: all(terms)?,
            formulas: all(formulas)?,
        },
        Expr::Neg(inner) => Expr::Neg(Box::new(rec(inner)?)),
        Expr::Var(_) | Expr::Const(_) | Expr::Quote(_) | Expr::Hole { .. } => e.clone(),
    })
}

/// `[⌜e⌝, ⌜x1⌝, a1, ..]` to `e[x1 := a1, ..]`. Values stay in meta syntax
/// and are translated by the caller's recursion when they contain primitives.
fn disquote(symbol: &str, args: &[Expr]) -> Result<Expr, TranslateError> {
    let Some(Expr::Quote(body)) = args.first() else {
        return Err(TranslateError::Unresolved {
            symbol: symbol.into(),
            arg: args.first().map(|a| a.to_string()).unwrap_or_default(),
        });
    };
    let mut pairs: Vec<(Name, Expr)> = Vec::new();
    for pair in args[1..].chunks(2) {
        match pair {
            [Expr::Quote(v), value] => match &**v {
                Expr::Var(x) => pairs.push((x.clone(), value.clone())),
                other => return Err(TranslateError::BadAssignment(other.to_string())),
            },
            other => {
                return Err(TranslateError::BadAssignment(
                    other.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(", "),
                ))
            }
        }
    }
    Ok(body.subst_many(&pairs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::make_std;
    use lnc_syntax::well_formed;

    fn meta() -> StdLanguage {
        make_std(&Tag::MetaOf(Box::new(Tag::Gnt))).unwrap()
    }

    #[test]
    fn disquotes_truth() {
        let m = meta();
        let e = m.parse("(and (true (quote (= 0 0))) (lt 0 1))").unwrap();
        let t = translate(&m, &e).unwrap();
        assert_eq!(t.to_string(), "0=0 ∧ 0<1");
        let g = make_std(&Tag::Gnt).unwrap();
        assert!(well_formed(&g.spec, &t).ok());
    }

    #[test]
    fn negated_truth_uses_base_negation() {
        let m = meta();
        let e = m.parse("(not (true (quote (lt 0 x)) (quote x) 1))").unwrap();
        assert_eq!(translate(&m, &e).unwrap().to_string(), "0≮1");
    }

    #[test]
    fn reference_disquotes() {
        let m = meta();
        let e = m.parse("(= (ref (quote (+ 1 y)) (quote y) 1) (+ 1 1))").unwrap();
        assert_eq!(translate(&m, &e).unwrap().to_string(), "1+1=1+1");
    }

    #[test]
    fn computed_codes_are_unresolved() {
        let m = meta();
        let e = m.parse("(true x)").unwrap();
        assert!(matches!(translate(&m, &e), Err(TranslateError::Unresolved { .. })));
    }

    #[test]
    fn table_only_for_first_level() {
        assert_eq!(translation_table(&meta()).unwrap().len(), 3);
        let g = make_std(&Tag::Gnt).unwrap();
        assert!(translation_table(&g).is_err());
    }
}
