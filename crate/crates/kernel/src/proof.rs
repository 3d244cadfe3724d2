//! Proofs: steps, dependence, justifications, and the S-expression file format.
//!
//! ```text
//! (proof (vars x)
//!   (assume φ)
//!   (then φ (by and-elim-left) (depends 1))
//!   (fix y (lt y t) (depends 1))
//!   (find y (lt y t) φ (depends 1 2))
//!   (case 1 φ (depends 3))
//!   (fix-ind m φ (depends 1))
//!   (then φ generalization (depends 1 2 3)))
//! ```
//!
//! Step numbers in files are 1-based; in memory they are 0-based.

use crate::matching::Bindings;
use lnc_syntax::parse::parse_sexp;
use lnc_syntax::schema::Abstraction;
use lnc_syntax::sexp::{self, Sexp};
use lnc_syntax::parse::print_sexp;
use lnc_syntax::{length, name, Expr, LanguageSpec, Name, ParseError};
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Justification {
    /// An axiom schema or inference rule of the axiom system, with optional explicit placeholder values.
    By { rule: String, with: Bindings },
    Generalization,
    Specification,
    Cases,
    Induction,
    /// `𝕋(φ), φ ⇒ ψ ⊢ 𝕋(ψ)`, where the embedded proof derives ψ from φ in the base system.
    Reflection(Box<Proof>),
}

impl Justification {
    pub fn by(rule: &str) -> Self {
        Justification::By {
            rule: rule.to_string(),
            with: Bindings::default(),
        }
    }

    pub fn by_with(rule: &str, with: Bindings) -> Self {
        Justification::By {
            rule: rule.to_string(),
            with,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StepKind {
    Assume(Expr),
    Then { formula: Expr, by: Justification },
    Fix { var: Name, bound: Option<Expr> },
    Find { var: Name, bound: Option<Expr>, formula: Expr },
    Case { index: u8, formula: Expr },
    FixInd { var: Name, formula: Expr },
}

impl StepKind {
    pub fn conclusion(&self) -> Option<&Expr> {
        match self {
            StepKind::Assume(f)
            | StepKind::Then { formula: f, .. }
            | StepKind::Find { formula: f, .. }
            | StepKind::Case { formula: f, .. }
            | StepKind::FixInd { formula: f, .. } => Some(f),
            StepKind::Fix { .. } => None,
        }
    }

    /// The variable a Fix, Find or induction step introduces.
    pub fn introduces(&self) -> Option<&Name> {
        match self {
            StepKind::Fix { var, .. } | StepKind::Find { var, .. } | StepKind::FixInd { var, .. } => Some(var),
            _ => None,
        }
    }

    pub fn is_inference(&self) -> bool {
        matches!(self, StepKind::Then { .. })
    }

    pub fn is_hypothesis(&self) -> bool {
        matches!(self, StepKind::Assume(_))
    }

    pub fn is_intermediate(&self) -> bool {
        !self.is_inference() && !self.is_hypothesis()
    }

    pub fn keyword(&self) -> &'static str {
        match self {
            StepKind::Assume(_) => "assume",
            StepKind::Then { .. } => "then",
            StepKind::Fix { .. } => "fix",
            StepKind::Find { .. } => "find",
            StepKind::Case { .. } => "case",
            StepKind::FixInd { .. } => "fix-ind",
        }
    }

    /// Tokens in the step's sentence, as in `Find x < t such that φ`.
    pub fn length(&self) -> usize {
        let bound = |b: &Option<Expr>| b.as_ref().map_or(0, |t| 1 + length(t));
        match self {
            StepKind::Assume(f) => 1 + length(f),
            StepKind::Then { formula, by } => {
                1 + length(formula)
                    + match by {
                        Justification::Reflection(p) => p.length(),
                        _ => 0,
                    }
            }
            StepKind::Fix { bound: b, .. } => 2 + bound(b),
            StepKind::Find { bound: b, formula, .. } => 3 + bound(b) + length(formula),
            StepKind::Case { formula, .. } => 3 + length(formula),
            StepKind::FixInd { formula, .. } => 3 + length(formula),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub kind: StepKind,
    /// Earlier steps this one depends on (0-based).
    pub depends: BTreeSet<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Proof {
    pub global_vars: Vec<Name>,
    pub steps: Vec<Step>,
}

impl Proof {
    pub fn hypotheses(&self) -> Vec<&Expr> {
        self.steps
            .iter()
            .take_while(|s| s.kind.is_hypothesis())
            .filter_map(|s| s.kind.conclusion())
            .collect()
    }

    pub fn conclusion(&self) -> Option<&Expr> {
        self.steps.last().and_then(|s| s.kind.conclusion())
    }

    /// Sum of the step lengths.
    pub fn length(&self) -> usize {
        self.steps.iter().map(|s| s.kind.length()).sum()
    }

    pub fn to_sexp(&self) -> Sexp {
        let mut items = vec![Sexp::atom("proof")];
        items.push(Sexp::list(
            std::iter::once(Sexp::atom("vars")).chain(self.global_vars.iter().map(|v| Sexp::atom(&**v))),
        ));
        for s in &self.steps {
            items.push(step_sexp(s));
        }
        Sexp::List(items)
    }

    pub fn to_text(&self) -> String {
        self.to_sexp().pretty(100)
    }

    pub fn from_sexp(spec: &LanguageSpec, s: &Sexp) -> Result<Proof, ProofFormatError> {
        let items = s
            .as_list()
            .filter(|_| s.head() == Some("proof"))
            .ok_or_else(|| bad(s, "expected (proof ...)"))?;
        let mut proof = Proof::default();
        for item in &items[1..] {
            if item.head() == Some("vars") {
                for v in &item.as_list().unwrap()[1..] {
                    let v = v.as_atom().ok_or_else(|| bad(item, "variable names are atoms"))?;
                    proof.global_vars.push(name(v));
                }
                continue;
            }
            let index = proof.steps.len();
            proof.steps.push(parse_step(spec, item, index)?);
        }
        Ok(proof)
    }

    pub fn from_text(spec: &LanguageSpec, text: &str) -> Result<Proof, ProofFormatError> {
        Proof::from_sexp(spec, &sexp::parse(text)?)
    }
}

impl fmt::Display for Proof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.steps.iter().enumerate() {
            let deps: Vec<String> = s.depends.iter().map(|d| (d + 1).to_string()).collect();
            let body = match &s.kind {
                StepKind::Assume(p) => format!("Assume {p}"),
                StepKind::Then { formula, by } => format!("Then {formula}   [{}]", justification_label(by)),
                StepKind::Fix { var, bound: None } => format!("Fix {var}"),
                StepKind::Fix { var, bound: Some(t) } => format!("Fix {var} < {t}"),
                StepKind::Find { var, bound: None, formula } => format!("Find {var} such that {formula}"),
                StepKind::Find { var, bound: Some(t), formula } => {
                    format!("Find {var} < {t} such that {formula}")
                }
                StepKind::Case { index, formula } => format!("Case {index}: {formula}"),
                StepKind::FixInd { var, formula } => format!("Fix {var} such that {formula}"),
            };
            writeln!(f, "{:>3}. {body}   ({})", i + 1, deps.join(","))?;
        }
        Ok(())
    }
}

fn justification_label(j: &Justification) -> String {
    match j {
        Justification::By { rule, .. } => rule.clone(),
        Justification::Generalization => "generalization".into(),
        Justification::Specification => "specification".into(),
        Justification::Cases => "cases".into(),
        Justification::Induction => "induction".into(),
        Justification::Reflection(_) => "reflection".into(),
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ProofFormatError {
    #[error(transparent)]
    Sexp(#[from] sexp::SexpError),
    #[error(transparent)]
    Expr(#[from] ParseError),
    #[error("malformed `{form}`: {msg}")]
    Malformed { form: String, msg: String },
}

fn bad(s: &Sexp, msg: &str) -> ProofFormatError {
    ProofFormatError::Malformed {
        form: s.to_string(),
        msg: msg.to_string(),
    }
}

fn bound_sexp(var: &Name, t: &Expr) -> Sexp {
    Sexp::list([Sexp::atom("lt"), Sexp::atom(&**var), print_sexp(t)])
}

fn step_sexp(s: &Step) -> Sexp {
    let mut items = vec![Sexp::atom(s.kind.keyword())];
    match &s.kind {
        StepKind::Assume(f) => items.push(print_sexp(f)),
        StepKind::Then { formula, by } => {
            items.push(print_sexp(formula));
            items.push(justification_sexp(by));
        }
        StepKind::Fix { var, bound } => {
            items.push(Sexp::atom(&**var));
            if let Some(t) = bound {
                items.push(bound_sexp(var, t));
            }
        }
        StepKind::Find { var, bound, formula } => {
            items.push(Sexp::atom(&**var));
            if let Some(t) = bound {
                items.push(bound_sexp(var, t));
            }
            items.push(print_sexp(formula));
        }
        StepKind::Case { index, formula } => {
            items.push(Sexp::atom(index.to_string()));
            items.push(print_sexp(formula));
        }
        StepKind::FixInd { var, formula } => {
            items.push(Sexp::atom(&**var));
            items.push(print_sexp(formula));
        }
    }
    if !s.depends.is_empty() {
        items.push(Sexp::list(
            std::iter::once(Sexp::atom("depends")).chain(s.depends.iter().map(|d| Sexp::atom((d + 1).to_string()))),
        ));
    }
    Sexp::List(items)
}

fn justification_sexp(j: &Justification) -> Sexp {
    match j {
        Justification::By { rule, with } => {
            let mut items = vec![Sexp::atom("by"), Sexp::atom(rule)];
            if !with.is_empty() {
                let mut w = vec![Sexp::atom("with")];
                for (h, a) in &with.holes {
                    if a.params.is_empty() {
                        w.push(Sexp::list([Sexp::atom(&**h), print_sexp(&a.body)]));
                    } else {
                        w.push(Sexp::list([
                            Sexp::atom(&**h),
                            Sexp::list(a.params.iter().map(|p| Sexp::atom(&**p))),
                            print_sexp(&a.body),
                        ]));
                    }
                }
                for (p, v) in &with.vars {
                    w.push(Sexp::list([Sexp::atom(&**p), Sexp::atom(&**v)]));
                }
                items.push(Sexp::List(w));
            }
            Sexp::List(items)
        }
        Justification::Reflection(p) => Sexp::list([Sexp::atom("reflection"), p.to_sexp()]),
        other => Sexp::atom(justification_label(other)),
    }
}

fn parse_bound(spec: &LanguageSpec, var: &str, s: &Sexp) -> Result<Expr, ProofFormatError> {
    match s.as_list() {
        Some([lt, v, t]) if lt.as_atom() == Some("lt") && v.as_atom() == Some(var) => Ok(parse_sexp(spec, t)?),
        _ => Err(bad(s, "bound must read (lt VAR TERM)")),
    }
}

fn parse_step(spec: &LanguageSpec, s: &Sexp, index: usize) -> Result<Step, ProofFormatError> {
    let items = s.as_list().ok_or_else(|| bad(s, "a step is a list"))?;
    let mut args: Vec<&Sexp> = items.iter().skip(1).collect();
    let mut depends = BTreeSet::new();
    if let Some(last) = args.last() {
        if last.head() == Some("depends") {
            for d in &last.as_list().unwrap()[1..] {
                let n: usize = d
                    .as_atom()
                    .and_then(|a| a.parse().ok())
                    .filter(|n| *n >= 1)
                    .ok_or_else(|| bad(s, "step numbers are positive integers"))?;
                depends.insert(n - 1);
            }
            args.pop();
        }
    }
    let var = |x: &Sexp| x.as_atom().map(name).ok_or_else(|| bad(s, "expected a variable"));
    let expr = |x: &Sexp| parse_sexp(spec, x).map_err(ProofFormatError::from);
    let kind = match (s.head(), args.as_slice()) {
        (Some("assume"), [f]) => StepKind::Assume(expr(f)?),
        (Some("then"), [f, j]) => StepKind::Then {
            formula: expr(f)?,
            by: parse_justification(spec, j)?,
        },
        (Some("fix"), [x]) => StepKind::Fix { var: var(x)?, bound: None },
        (Some("fix"), [x, b]) => {
            let v = var(x)?;
            StepKind::Fix {
                bound: Some(parse_bound(spec, &v, b)?),
                var: v,
            }
        }
        (Some("find"), [x, f]) => StepKind::Find {
            var: var(x)?,
            bound: None,
            formula: expr(f)?,
        },
        (Some("find"), [x, b, f]) => {
            let v = var(x)?;
            StepKind::Find {
                bound: Some(parse_bound(spec, &v, b)?),
                var: v,
                formula: expr(f)?,
            }
        }
        (Some("case"), [i, f]) => StepKind::Case {
            index: match i.as_atom() {
                Some("1") => 1,
                Some("2") => 2,
                _ => return Err(bad(s, "case index is 1 or 2")),
            },
            formula: expr(f)?,
        },
        (Some("fix-ind"), [x, f]) => StepKind::FixInd {
            var: var(x)?,
            formula: expr(f)?,
        },
        _ => return Err(bad(s, &format!("unrecognised step {}", index + 1))),
    };
    Ok(Step { kind, depends })
}

fn parse_justification(spec: &LanguageSpec, s: &Sexp) -> Result<Justification, ProofFormatError> {
    match s.as_atom() {
        Some("generalization") => return Ok(Justification::Generalization),
        Some("specification") => return Ok(Justification::Specification),
        Some("cases") => return Ok(Justification::Cases),
        Some("induction") => return Ok(Justification::Induction),
        Some(_) => return Err(bad(s, "unknown justification")),
        None => {}
    }
    let items = s.as_list().unwrap();
    match (s.head(), items) {
        (Some("reflection"), [_, p]) => Ok(Justification::Reflection(Box::new(Proof::from_sexp(spec, p)?))),
        (Some("by"), [_, rule, rest @ ..]) => {
            let rule = rule.as_atom().ok_or_else(|| bad(s, "rule names are atoms"))?.to_string();
            let mut with = Bindings::default();
            if let [w] = rest {
                if w.head() != Some("with") {
                    return Err(bad(s, "expected (with ...)"));
                }
                for entry in &w.as_list().unwrap()[1..] {
                    with = parse_binding(spec, entry, with)?;
                }
            } else if !rest.is_empty() {
                return Err(bad(s, "trailing items after rule name"));
            }
            Ok(Justification::By { rule, with })
        }
        _ => Err(bad(s, "unknown justification")),
    }
}

fn parse_binding(spec: &LanguageSpec, s: &Sexp, b: Bindings) -> Result<Bindings, ProofFormatError> {
    let items = s.as_list().ok_or_else(|| bad(s, "binding is a list"))?;
    let key = items.first().and_then(Sexp::as_atom).ok_or_else(|| bad(s, "binding key"))?;
    match items {
        [_, v] if key.starts_with('$') => {
            let v = v.as_atom().ok_or_else(|| bad(s, "variable placeholders take variables"))?;
            Ok(b.var(key, v))
        }
        [_, body] if key.starts_with('?') => Ok(b.hole(key, Abstraction::constant(parse_sexp(spec, body)?))),
        [_, params, body] if key.starts_with('?') => {
            let params = params
                .as_list()
                .ok_or_else(|| bad(s, "parameter list"))?
                .iter()
                .map(|p| p.as_atom().map(name).ok_or_else(|| bad(s, "parameters are variables")))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(b.hole(
                key,
                Abstraction {
                    params,
                    body: parse_sexp(spec, body)?,
                },
            ))
        }
        _ => Err(bad(s, "binding reads (?h [params] body) or ($x y)")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use lnc_languages::{make_std, Tag};

    #[test]
    fn file_round_trip() {
        let g = make_std(&Tag::Gnt).unwrap();
        let text = "(proof (vars y) (assume (and (= y 0) (lt 0 1))) \
                    (then (= y 0) (by and-elim-left) (depends 1)) \
                    (fix x (lt x (+ 1 1)) (depends 1 2)) \
                    (then (= x x) (by eq-refl (with (?t x))) (depends 1 2 3)) \
                    (then (forall (x (lt x (+ 1 1))) (= x x)) generalization (depends 1 2)))";
        let p = Proof::from_text(&g.spec, text).unwrap();
        assert_eq!(p.steps.len(), 5);
        assert_eq!(p.steps[1].depends, BTreeSet::from([0]));
        let again = Proof::from_text(&g.spec, &p.to_text()).unwrap();
        assert_eq!(p, again);
    }

    #[test]
    fn length_sums_steps() {
        let g = make_std(&Tag::Gnt).unwrap();
        let p = Proof::from_text(&g.spec, "(proof (vars) (assume (= 0 0)) (fix x) (fix y (lt y 1)))").unwrap();
        // `Assume 0 = 0`, `Fix x`, `Fix y < 1`
        assert_eq!(p.length(), 4 + 2 + 4);
    }

    #[test]
    fn rejects_bad_bound() {
        let g = make_std(&Tag::Gnt).unwrap();
        assert!(Proof::from_text(&g.spec, "(proof (fix x (lt y 1)))").is_err());
    }
}
