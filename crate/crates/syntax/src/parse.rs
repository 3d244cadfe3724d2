//! Spec-aware conversion between S-expressions and [`Expr`].
//!
//! ```text
//! term    := SYMBOL                     constant if declared, otherwise a variable
//!          | (FUNC term ...)
//!          | (QLO BINDER term ... formula ...)   BINDER is a symbol, or a list when k > 1
//!          | (quote expr)
//! formula := (REL term ...)             e.g. (= a b), (lt a b), (def t)
//!          | (not formula)              an atom gets negative polarity
//!          | (and formula formula ...) | (or formula formula ...)
//!          | (forall x formula)  | (forall (x (lt x t)) formula)  | (forall (x SORT) formula)
//!          | (exists ...)        as forall
//! schema  := ?name | (?name expr ...)  placeholders, and `$x` variables
//! ```

use crate::expr::{name, Expr, Polarity, QuantKind};
use crate::sexp::{self, Sexp, SexpError};
use crate::spec::LanguageSpec;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error(transparent)]
    Sexp(#[from] SexpError),
    #[error("unknown head `{0}`")]
    UnknownHead(String),
    #[error("numeral `{0}` is not a declared constant")]
    UndeclaredNumeral(String),
    #[error("placeholder `{0}` outside a schema")]
    Placeholder(String),
    #[error("malformed `{form}`: {msg}")]
    Malformed { form: String, msg: String },
}

const KEYWORDS: &[&str] = &["not", "and", "or", "forall", "exists", "quote"];

fn malformed(form: &Sexp, msg: &str) -> ParseError {
    ParseError::Malformed {
        form: form.to_string(),
        msg: msg.to_string(),
    }
}

pub fn parse_expr(spec: &LanguageSpec, text: &str) -> Result<Expr, ParseError> {
    parse_sexp(spec, &sexp::parse(text)?)
}

pub fn parse_schema(spec: &LanguageSpec, text: &str) -> Result<Expr, ParseError> {
    parse_schema_sexp(spec, &sexp::parse(text)?)
}

pub fn parse_sexp(spec: &LanguageSpec, s: &Sexp) -> Result<Expr, ParseError> {
    Parser { spec, schema: false }.expr(s)
}

pub fn parse_schema_sexp(spec: &LanguageSpec, s: &Sexp) -> Result<Expr, ParseError> {
    Parser { spec, schema: true }.expr(s)
}

struct Parser<'a> {
    spec: &'a LanguageSpec,
    schema: bool,
}

impl Parser<'_> {
    fn expr(&self, s: &Sexp) -> Result<Expr, ParseError> {
        match s {
            Sexp::Atom(a) => self.symbol(a),
            Sexp::List(items) => {
                let head = items
                    .first()
                    .and_then(Sexp::as_atom)
                    .ok_or_else(|| malformed(s, "expected a symbol in head position"))?;
                let rest = &items[1..];
                self.compound(s, head, rest)
            }
        }
    }

    fn symbol(&self, a: &str) -> Result<Expr, ParseError> {
        if a.starts_with('?') {
            if !self.schema {
                return Err(ParseError::Placeholder(a.to_string()));
            }
            return Ok(Expr::hole(a, vec![]));
        }
        if a.starts_with('$') && !self.schema {
            return Err(ParseError::Placeholder(a.to_string()));
        }
        if self.spec.constant(a).is_some() {
            return Ok(Expr::constant(a));
        }
        if a.starts_with(|c: char| c.is_ascii_digit()) {
            return Err(ParseError::UndeclaredNumeral(a.to_string()));
        }
        if KEYWORDS.contains(&a) {
            return Err(ParseError::Malformed {
                form: a.to_string(),
                msg: "keyword used as a symbol".into(),
            });
        }
        Ok(Expr::var(a))
    }

    fn all(&self, items: &[Sexp]) -> Result<Vec<Expr>, ParseError> {
        items.iter().map(|i| self.expr(i)).collect()
    }

    fn compound(&self, whole: &Sexp, head: &str, rest: &[Sexp]) -> Result<Expr, ParseError> {
        match head {
            "not" => {
                let [inner] = rest else {
                    return Err(malformed(whole, "`not` takes one argument"));
                };
                Ok(match self.expr(inner)? {
                    Expr::Atom {
                        rel,
                        polarity: Polarity::Positive,
                        args,
                    } => Expr::Atom {
                        rel,
                        polarity: Polarity::Negative,
                        args,
                    },
                    other => Expr::Neg(Box::new(other)),
                })
            }
            "and" | "or" => {
                if rest.len() < 2 {
                    return Err(malformed(whole, "needs at least two arguments"));
                }
                let mut parts = self.all(rest)?;
                let mut acc = parts.pop().expect("non-empty");
                while let Some(prev) = parts.pop() {
                    acc = if head == "and" {
                        Expr::and(prev, acc)
                    } else {
                        Expr::or(prev, acc)
                    };
                }
                Ok(acc)
            }
            "forall" | "exists" => {
                let kind = if head == "forall" {
                    QuantKind::Forall
                } else {
                    QuantKind::Exists
                };
                let [binder, body] = rest else {
                    return Err(malformed(whole, "expected a binder and a body"));
                };
                let body = Box::new(self.expr(body)?);
                match binder {
                    Sexp::Atom(v) => Ok(Expr::Quant {
                        kind,
                        var: self.binder_name(whole, v)?,
                        sort: None,
                        bound: None,
                        body,
                    }),
                    Sexp::List(parts) => {
                        let (v, spec) = match parts.as_slice() {
                            [Sexp::Atom(v), spec] => (v, spec),
                            _ => return Err(malformed(whole, "binder must be (x BOUND) or (x SORT)")),
                        };
                        let var = self.binder_name(whole, v)?;
                        match spec {
                            Sexp::Atom(sort) if self.spec.sort(sort).is_some() => Ok(Expr::Quant {
                                kind,
                                var,
                                sort: Some(name(sort)),
                                bound: None,
                                body,
                            }),
                            Sexp::List(b) => match b.as_slice() {
                                [Sexp::Atom(lt), Sexp::Atom(x), t] if lt == "lt" && x == v => {
                                    Ok(Expr::Quant {
                                        kind,
                                        var,
                                        sort: None,
                                        bound: Some(Box::new(self.expr(t)?)),
                                        body,
                                    })
                                }
                                _ => Err(malformed(whole, "bound must read (lt x t)")),
                            },
                            _ => Err(malformed(whole, "unknown sort in binder")),
                        }
                    }
                }
            }
            "quote" => {
                let [inner] = rest else {
                    return Err(malformed(whole, "`quote` takes one argument"));
                };
                Ok(Expr::quote(self.expr(inner)?))
            }
            h if h.starts_with('?') => {
                if !self.schema {
                    return Err(ParseError::Placeholder(h.to_string()));
                }
                Ok(Expr::hole(h, self.all(rest)?))
            }
            h if self.spec.relation(h).is_some() => Ok(Expr::atom(h, self.all(rest)?)),
            h if self.spec.function(h).is_some() => Ok(Expr::app(h, self.all(rest)?)),
            h if self.spec.qlo(h).is_some() => {
                let decl = self.spec.qlo(h).expect("checked");
                let Some((binder, slots)) = rest.split_first() else {
                    return Err(malformed(whole, "missing binder"));
                };
                let binders = match (decl.binders, binder) {
                    (1, Sexp::Atom(v)) => vec![self.binder_name(whole, v)?],
                    (_, Sexp::List(vs)) if decl.binders != 1 => vs
                        .iter()
                        .map(|v| match v {
                            Sexp::Atom(v) => self.binder_name(whole, v),
                            _ => Err(malformed(whole, "binder must be a symbol")),
                        })
                        .collect::<Result<_, _>>()?,
                    _ => return Err(malformed(whole, "binder shape does not match the operator")),
                };
                if binders.len() != decl.binders {
                    return Err(malformed(whole, "wrong number of binders"));
                }
                if slots.len() != decl.term_slots + decl.formula_slots {
                    return Err(malformed(whole, "wrong number of slots"));
                }
                let (terms, formulas) = slots.split_at(decl.term_slots);
                Ok(Expr::Qlo {
                    op: name(h),
                    binders,
                    terms: self.all(terms)?,
                    formulas: self.all(formulas)?,
                })
            }
            h => Err(ParseError::UnknownHead(h.to_string())),
        }
    }

    fn binder_name(&self, whole: &Sexp, v: &str) -> Result<crate::expr::Name, ParseError> {
        match self.symbol(v)? {
            Expr::Var(n) => Ok(n),
            _ => Err(malformed(whole, "binder must be a variable")),
        }
    }
}

fn atom(s: &str) -> Sexp {
    Sexp::atom(s)
}

/// Canonical S-expression for `e`; the inverse of parsing under any spec declaring its symbols.
pub fn print_sexp(e: &Expr) -> Sexp {
    match e {
        Expr::Var(v) | Expr::Const(v) => atom(v),
        Expr::Hole { name: n, args } if args.is_empty() => atom(n),
        Expr::App { func, args } | Expr::Hole { name: func, args } => {
            Sexp::list(std::iter::once(atom(func)).chain(args.iter().map(print_sexp)))
        }
        Expr::Qlo {
            op,
            binders,
            terms,
            formulas,
        } => {
            let binder = if binders.len() == 1 {
                atom(&binders[0])
            } else {
                Sexp::list(binders.iter().map(|b| atom(b)))
            };
            Sexp::list(
                [atom(op), binder]
                    .into_iter()
                    .chain(terms.iter().map(print_sexp))
                    .chain(formulas.iter().map(print_sexp)),
            )
        }
        Expr::Quote(inner) => Sexp::list([atom("quote"), print_sexp(inner)]),
        Expr::Atom {
            rel,
            polarity,
            args,
        } => {
            let a = Sexp::list(std::iter::once(atom(rel)).chain(args.iter().map(print_sexp)));
            match polarity {
                Polarity::Positive => a,
                Polarity::Negative => Sexp::list([atom("not"), a]),
            }
        }
        Expr::Neg(inner) => Sexp::list([atom("not"), print_sexp(inner)]),
        Expr::And(a, b) => Sexp::list([atom("and"), print_sexp(a), print_sexp(b)]),
        Expr::Or(a, b) => Sexp::list([atom("or"), print_sexp(a), print_sexp(b)]),
        Expr::Quant {
            kind,
            var,
            sort,
            bound,
            body,
        } => {
            let kw = match kind {
                QuantKind::Forall => "forall",
                QuantKind::Exists => "exists",
            };
            let binder = match (sort, bound) {
                (Some(s), _) => Sexp::list([atom(var), atom(s)]),
                (None, Some(t)) => Sexp::list([
                    atom(var),
                    Sexp::list([atom("lt"), atom(var), print_sexp(t)]),
                ]),
                (None, None) => atom(var),
            };
            Sexp::list([atom(kw), binder, print_sexp(body)])
        }
    }
}

pub fn print(e: &Expr) -> String {
    print_sexp(e).to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spec::{fst_decl, FunctionDecl, QuantTemplate, RelationDecl, PRIMARY_SORT};

    fn spec() -> LanguageSpec {
        let mut s = LanguageSpec::minimal("t");
        s.relations.push(RelationDecl::new("lt", 2).strong());
        s.functions.push(FunctionDecl::new("+", 2));
        s.add_constant("0", PRIMARY_SORT);
        s.add_constant("1", PRIMARY_SORT);
        s.quantifiers.extend(QuantTemplate::ALL);
        s.qlos.push(fst_decl());
        s.quote_sort = Some(name(PRIMARY_SORT));
        s
    }

    #[test]
    fn constants_and_variables() {
        let s = spec();
        assert_eq!(parse_expr(&s, "0").unwrap(), Expr::constant("0"));
        assert_eq!(parse_expr(&s, "n").unwrap(), Expr::var("n"));
        assert_eq!(
            parse_expr(&s, "7"),
            Err(ParseError::UndeclaredNumeral("7".into()))
        );
    }

    #[test]
    fn negated_atom_takes_polarity() {
        let s = spec();
        let e = parse_expr(&s, "(not (= 0 1))").unwrap();
        assert_eq!(e, Expr::neg_atom("=", vec![Expr::constant("0"), Expr::constant("1")]));
    }

    #[test]
    fn bounded_and_sorted_binders() {
        let s = spec();
        let e = parse_expr(&s, "(forall (x (lt x (+ 1 1))) (= x x))").unwrap();
        assert!(matches!(e, Expr::Quant { bound: Some(_), .. }));
        assert!(parse_expr(&s, "(forall (x (lt y 1)) (= x x))").is_err());
        let e = parse_expr(&s, "(exists (x obj) (= x x))").unwrap();
        assert!(matches!(e, Expr::Quant { sort: Some(_), .. }));
    }

    #[test]
    fn unknown_head_is_rejected() {
        assert_eq!(
            parse_expr(&spec(), "(frob 1)"),
            Err(ParseError::UnknownHead("frob".into()))
        );
    }

    #[test]
    fn placeholders_only_in_schemas() {
        let s = spec();
        assert!(parse_expr(&s, "(?phi x)").is_err());
        let e = parse_schema(&s, "(and (?phi $x) (not ?psi))").unwrap();
        assert!(e.is_schematic());
    }

    #[test]
    fn round_trip_examples() {
        let s = spec();
        for text in [
            "(= (+ 1 1) 0)",
            "(not (lt x 0))",
            "(and (def (fst n (= n 1))) (or (= 0 0) (= 1 1)))",
            "(forall (x (lt x 1)) (exists y (= x y)))",
            "(= (quote (= 0 0)) x)",
        ] {
            let e = parse_expr(&s, text).unwrap();
            assert_eq!(print(&e), text);
        }
    }
}
