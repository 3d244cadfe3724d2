//! Proofs with shorthand: local function and relation definitions that
//! extend the language and the axiom system before checking.

use crate::axioms::{AxiomSystem, Rule};
use crate::check::{check_proof, Verdict};
use crate::proof::{Proof, ProofFormatError};
use lnc_syntax::parse::parse_sexp;
use lnc_syntax::sexp::{self, Sexp};
use lnc_syntax::spec::{FunctionDecl, RelationDecl};
use lnc_syntax::wf::{well_formed_formula, well_formed_term};
use lnc_syntax::{name, Expr, LanguageSpec, Name, ParseError};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DefKind {
    Function,
    Relation,
}

/// `f(x₁..xₙ) ≔ T` or `R(x₁..xₙ) ≔ Φ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Definition {
    pub kind: DefKind,
    pub symbol: Name,
    pub params: Vec<Name>,
    pub body: Expr,
}

impl Definition {
    pub fn function(symbol: &str, params: &[&str], body: Expr) -> Self {
        Definition {
            kind: DefKind::Function,
            symbol: name(symbol),
            params: params.iter().map(|p| name(p)).collect(),
            body,
        }
    }

    pub fn relation(symbol: &str, params: &[&str], body: Expr) -> Self {
        Definition {
            kind: DefKind::Relation,
            ..Definition::function(symbol, params, body)
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ShorthandError {
    #[error("`{0}` already has a meaning")]
    Clash(String),
    #[error("definition of `{0}` refers to itself or to a later definition")]
    Recursive(String),
    #[error("definition of `{symbol}`: {msg}")]
    IllFormed { symbol: String, msg: String },
    #[error(transparent)]
    Format(#[from] ProofFormatError),
}

fn declared(spec: &LanguageSpec, sym: &str) -> bool {
    spec.relation(sym).is_some() || spec.function(sym).is_some() || spec.constant(sym).is_some() || spec.qlo(sym).is_some()
}

fn mentions(e: &Expr, sym: &str) -> bool {
    let mut found = false;
    e.walk(&mut |n| match n {
        Expr::App { func: s, .. } | Expr::Atom { rel: s, .. } | Expr::Qlo { op: s, .. } => found |= &**s == sym,
        _ => {}
    });
    found
}

/// The language and axioms extended by `defs`, in order.
///
/// A function definition contributes `T(t₁..tₙ)↓ ⇒ f(t₁..tₙ) = T(t₁..tₙ)`;
/// a relation definition contributes `Φ ⇒ R` and `R ⇒ Φ`. Defined relations
/// are not negatable.
pub fn augment(a: &AxiomSystem, defs: &[Definition]) -> Result<AxiomSystem, ShorthandError> {
    let mut out = a.clone();
    for (n, d) in defs.iter().enumerate() {
        let sym = d.symbol.to_string();
        let ill = |msg: String| ShorthandError::IllFormed { symbol: sym.clone(), msg };
        if declared(&out.lang.spec, &sym) || defs[..n].iter().any(|e| e.symbol == d.symbol) {
            return Err(ShorthandError::Clash(sym));
        }
        if defs[n..].iter().any(|later| mentions(&d.body, &later.symbol)) {
            return Err(ShorthandError::Recursive(sym));
        }
        let distinct: BTreeSet<&Name> = d.params.iter().collect();
        if distinct.len() != d.params.len() {
            return Err(ill("parameters must be distinct".into()));
        }
        if let Some(v) = d.body.free_vars().into_iter().find(|v| !d.params.contains(v)) {
            return Err(ill(format!("free variable `{v}` is not a parameter")));
        }
        let spec = &out.lang.spec;
        let report = match d.kind {
            DefKind::Function => well_formed_term(spec, &d.body),
            DefKind::Relation => well_formed_formula(spec, &d.body),
        };
        if let Some(diag) = report.first() {
            return Err(ill(diag.to_string()));
        }
        let holes: Vec<Expr> = (1..=d.params.len()).map(|i| Expr::hole(&format!("?t{i}"), vec![])).collect();
        let pairs: Vec<(Name, Expr)> = d.params.iter().cloned().zip(holes.iter().cloned()).collect();
        let body = d.body.subst_many(&pairs);
        match d.kind {
            DefKind::Function => {
                out.lang.spec.functions.push(FunctionDecl::new(&sym, d.params.len()));
                let head = Expr::app(&sym, holes);
                out.push(Rule {
                    name: format!("{sym}-def"),
                    premises: vec![Expr::defined(body.clone())],
                    conclusion: Expr::eq(head, body),
                });
            }
            DefKind::Relation => {
                out.lang.spec.relations.push(RelationDecl::new(&sym, d.params.len()));
                let head = Expr::atom(&sym, holes);
                out.push(Rule {
                    name: format!("{sym}-intro"),
                    premises: vec![body.clone()],
                    conclusion: head.clone(),
                });
                out.push(Rule {
                    name: format!("{sym}-elim"),
                    premises: vec![head],
                    conclusion: body,
                });
            }
        }
    }
    if !defs.is_empty() {
        out.name = format!("{}+defs", a.name);
    }
    Ok(out)
}

pub fn check_shorthand_proof(a: &AxiomSystem, defs: &[Definition], proof: &Proof) -> Result<Verdict, ShorthandError> {
    Ok(check_proof(&augment(a, defs)?, proof))
}

/// Reads `(shorthand (define (f x) T) (define-rel (R x) Φ) ... (proof ...))`.
///
/// Each definition may use the ones before it; the proof is parsed in the
/// fully extended language.
pub fn parse_shorthand(a: &AxiomSystem, text: &str) -> Result<(Vec<Definition>, Proof), ShorthandError> {
    let doc = sexp::parse(text).map_err(ProofFormatError::from)?;
    let malformed = |s: &Sexp, msg: &str| {
        ShorthandError::Format(ProofFormatError::Malformed {
            form: s.to_string(),
            msg: msg.to_string(),
        })
    };
    let items = doc
        .as_list()
        .filter(|_| doc.head() == Some("shorthand"))
        .ok_or_else(|| malformed(&doc, "expected (shorthand ...)"))?;
    let mut defs = Vec::new();
    let mut current = a.clone();
    for item in &items[1..] {
        match (item.head(), item.as_list().unwrap_or(&[])) {
            (Some(kw @ ("define" | "define-rel")), [_, head, body]) => {
                let parts = head.as_list().ok_or_else(|| malformed(item, "definition head is (symbol params..)"))?;
                let atoms: Option<Vec<&str>> = parts.iter().map(Sexp::as_atom).collect();
                let atoms = atoms.filter(|a| !a.is_empty()).ok_or_else(|| malformed(item, "definition head is atoms"))?;
                let body = parse_sexp(&current.lang.spec, body).map_err(|e| match e {
                    ParseError::UnknownHead(h) if h == atoms[0] => ShorthandError::Recursive(h),
                    other => ProofFormatError::from(other).into(),
                })?;
                let d = if kw == "define" {
                    Definition::function(atoms[0], &atoms[1..], body)
                } else {
                    Definition::relation(atoms[0], &atoms[1..], body)
                };
                current = augment(&current, std::slice::from_ref(&d))?;
                defs.push(d);
            }
            (Some("proof"), _) => {
                let p = Proof::from_sexp(&current.lang.spec, item)?;
                return Ok((defs, p));
            }
            _ => return Err(malformed(item, "expected a definition or the proof")),
        }
    }
    Err(malformed(&doc, "missing (proof ...)"))
}
