//! Language specifications: the templates a syntax admits plus the flags
//! (negatable, strongly negatable) that the semantics and axiomatizations read.

use crate::expr::{name, Expr, Name};
use crate::parse::{parse_schema_sexp, print_sexp, ParseError};
use crate::sexp::{self, Sexp};
use std::collections::BTreeSet;
use thiserror::Error;

pub const PRIMARY_SORT: &str = "obj";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SortDecl {
    pub name: Name,
    /// Whether quantifiers may range over this sort.
    pub quantifiable: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationDecl {
    pub symbol: Name,
    pub arity: usize,
    pub negatable: bool,
    pub strongly_negatable: bool,
    /// Per-argument sorts; empty means every argument is of the primary sort.
    pub arg_sorts: Vec<Name>,
    /// Trailing `(quote var) value` pairs are allowed after the fixed arguments.
    pub assignment_args: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionDecl {
    pub symbol: Name,
    pub arity: usize,
    pub arg_sorts: Vec<Name>,
    pub result_sort: Name,
    pub assignment_args: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstantDecl {
    pub symbol: Name,
    pub sort: Name,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QuantTemplate {
    BoundedForall,
    BoundedExists,
    Forall,
    Exists,
}

impl QuantTemplate {
    pub const ALL: [QuantTemplate; 4] = [
        QuantTemplate::BoundedForall,
        QuantTemplate::BoundedExists,
        QuantTemplate::Forall,
        QuantTemplate::Exists,
    ];

    pub fn of(kind: crate::expr::QuantKind, bounded: bool) -> Self {
        use crate::expr::QuantKind::*;
        match (kind, bounded) {
            (Forall, true) => QuantTemplate::BoundedForall,
            (Exists, true) => QuantTemplate::BoundedExists,
            (Forall, false) => QuantTemplate::Forall,
            (Exists, false) => QuantTemplate::Exists,
        }
    }

    pub fn dual(self) -> Self {
        match self {
            QuantTemplate::BoundedForall => QuantTemplate::BoundedExists,
            QuantTemplate::BoundedExists => QuantTemplate::BoundedForall,
            QuantTemplate::Forall => QuantTemplate::Exists,
            QuantTemplate::Exists => QuantTemplate::Forall,
        }
    }

    pub fn is_bounded(self) -> bool {
        matches!(self, QuantTemplate::BoundedForall | QuantTemplate::BoundedExists)
    }

    pub fn keyword(self) -> &'static str {
        match self {
            QuantTemplate::BoundedForall => "bounded-forall",
            QuantTemplate::BoundedExists => "bounded-exists",
            QuantTemplate::Forall => "forall",
            QuantTemplate::Exists => "exists",
        }
    }

    pub fn from_keyword(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|t| t.keyword() == s)
    }
}

/// A quantifier-like operator together with its reductive schematic formula.
///
/// In `theta`, `?s` stands for the operator's value, `?t1..?tn` for the term
/// slots, `(?phi1 v1 .. vk)` .. for the formula slots applied to `k`
/// variables, and `$`-variables are binders renamed apart on instantiation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QloDecl {
    pub symbol: Name,
    pub binders: usize,
    pub term_slots: usize,
    pub formula_slots: usize,
    pub theta: Expr,
}

impl QloDecl {
    pub fn result_hole() -> &'static str {
        "?s"
    }

    pub fn term_hole(i: usize) -> String {
        format!("?t{}", i + 1)
    }

    pub fn formula_hole(i: usize) -> String {
        format!("?phi{}", i + 1)
    }

    /// Formula slots that Θ uses under a negation; their arguments must be negatable.
    pub fn negated_slots(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        self.theta.walk(&mut |e| {
            if let Expr::Neg(inner) = e {
                if let Expr::Hole { name: n, .. } = &**inner {
                    if let Some(i) = n.strip_prefix("?phi").and_then(|d| d.parse::<usize>().ok()) {
                        out.insert(i - 1);
                    }
                }
            }
        });
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LanguageSpec {
    pub name: Name,
    pub sorts: Vec<SortDecl>,
    pub relations: Vec<RelationDecl>,
    pub functions: Vec<FunctionDecl>,
    pub constants: Vec<ConstantDecl>,
    pub quantifiers: BTreeSet<QuantTemplate>,
    pub qlos: Vec<QloDecl>,
    /// Sort of quoted expressions; `None` when the syntax has no quotation.
    pub quote_sort: Option<Name>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SpecError {
    #[error("missing required relation `{0}`")]
    MissingRelation(&'static str),
    #[error("relation `{0}` is strongly negatable but not negatable")]
    StrongWithoutNegatable(Name),
    #[error("symbol `{0}` declared twice")]
    Duplicate(Name),
    #[error("sort `{0}` is not declared")]
    UnknownSort(Name),
    #[error("operator `{op}`: {msg}")]
    BadTheta { op: Name, msg: String },
    #[error("malformed language description: {0}")]
    Malformed(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

impl RelationDecl {
    pub fn new(symbol: &str, arity: usize) -> Self {
        RelationDecl {
            symbol: name(symbol),
            arity,
            negatable: false,
            strongly_negatable: false,
            arg_sorts: Vec::new(),
            assignment_args: false,
        }
    }

    pub fn negatable(mut self) -> Self {
        self.negatable = true;
        self
    }

    pub fn strong(mut self) -> Self {
        self.negatable = true;
        self.strongly_negatable = true;
        self
    }

    pub fn sorts(mut self, sorts: &[&str]) -> Self {
        self.arg_sorts = sorts.iter().map(|s| name(s)).collect();
        self
    }

    pub fn with_assignments(mut self) -> Self {
        self.assignment_args = true;
        self
    }

    pub fn arg_sort(&self, i: usize) -> Name {
        self.arg_sorts
            .get(i)
            .cloned()
            .unwrap_or_else(|| name(PRIMARY_SORT))
    }
}

impl FunctionDecl {
    pub fn new(symbol: &str, arity: usize) -> Self {
        FunctionDecl {
            symbol: name(symbol),
            arity,
            arg_sorts: Vec::new(),
            result_sort: name(PRIMARY_SORT),
            assignment_args: false,
        }
    }

    pub fn with_assignments(mut self) -> Self {
        self.assignment_args = true;
        self
    }

    pub fn arg_sort(&self, i: usize) -> Name {
        self.arg_sorts
            .get(i)
            .cloned()
            .unwrap_or_else(|| name(PRIMARY_SORT))
    }
}

impl LanguageSpec {
    /// A spec with just the primary sort and the mandatory `=` and `def` relations.
    pub fn minimal(spec_name: &str) -> Self {
        LanguageSpec {
            name: name(spec_name),
            sorts: vec![SortDecl {
                name: name(PRIMARY_SORT),
                quantifiable: true,
            }],
            relations: vec![RelationDecl::new("=", 2).strong(), RelationDecl::new("def", 1)],
            functions: Vec::new(),
            constants: Vec::new(),
            quantifiers: BTreeSet::new(),
            qlos: Vec::new(),
            quote_sort: None,
        }
    }

    pub fn relation(&self, sym: &str) -> Option<&RelationDecl> {
        self.relations.iter().find(|r| &*r.symbol == sym)
    }

    pub fn function(&self, sym: &str) -> Option<&FunctionDecl> {
        self.functions.iter().find(|f| &*f.symbol == sym)
    }

    pub fn constant(&self, sym: &str) -> Option<&ConstantDecl> {
        self.constants.iter().find(|c| &*c.symbol == sym)
    }

    pub fn qlo(&self, sym: &str) -> Option<&QloDecl> {
        self.qlos.iter().find(|q| &*q.symbol == sym)
    }

    pub fn sort(&self, sym: &str) -> Option<&SortDecl> {
        self.sorts.iter().find(|s| &*s.name == sym)
    }

    pub fn allows(&self, t: QuantTemplate) -> bool {
        self.quantifiers.contains(&t)
    }

    /// Every quantifier template's dual is enabled and every relation is strongly negatable.
    pub fn is_classical(&self) -> bool {
        self.quantifiers.iter().all(|t| self.allows(t.dual()))
            && self
                .relations
                .iter()
                .filter(|r| &*r.symbol != "def")
                .all(|r| r.strongly_negatable)
    }

    pub fn add_constant(&mut self, sym: &str, sort: &str) {
        self.constants.push(ConstantDecl {
            symbol: name(sym),
            sort: name(sort),
        });
    }

    /// Adds an `elt` / `elt_lt` operator for each quantifier pair that is fully enabled.
    pub fn add_elt_operators(&mut self) {
        use QuantTemplate::*;
        if self.allows(Forall) && self.allows(Exists) && self.qlo("elt").is_none() {
            self.qlos.push(elt_decl());
        }
        if self.allows(BoundedForall) && self.allows(BoundedExists) && self.qlo("elt_lt").is_none()
        {
            self.qlos.push(elt_lt_decl());
        }
    }

    /// Checks the structural invariants every spec must satisfy.
    pub fn validate(&self) -> Result<(), SpecError> {
        let mut seen = BTreeSet::new();
        let symbols = self
            .relations
            .iter()
            .map(|r| &r.symbol)
            .chain(self.functions.iter().map(|f| &f.symbol))
            .chain(self.constants.iter().map(|c| &c.symbol))
            .chain(self.qlos.iter().map(|q| &q.symbol));
        for s in symbols {
            if !seen.insert(s.clone()) {
                return Err(SpecError::Duplicate(s.clone()));
            }
        }
        match self.relation("=") {
            Some(r) if r.arity == 2 && r.strongly_negatable => {}
            _ => return Err(SpecError::MissingRelation("=")),
        }
        match self.relation("def") {
            Some(r) if r.arity == 1 && !r.negatable => {}
            _ => return Err(SpecError::MissingRelation("def")),
        }
        if self.quantifiers.iter().any(|t| t.is_bounded()) && self.relation("lt").is_none() {
            return Err(SpecError::MissingRelation("lt"));
        }
        for r in &self.relations {
            if r.strongly_negatable && !r.negatable {
                return Err(SpecError::StrongWithoutNegatable(r.symbol.clone()));
            }
            for s in &r.arg_sorts {
                self.check_sort(s)?;
            }
        }
        for f in &self.functions {
            for s in f.arg_sorts.iter().chain(std::iter::once(&f.result_sort)) {
                self.check_sort(s)?;
            }
        }
        for c in &self.constants {
            self.check_sort(&c.sort)?;
        }
        if let Some(s) = &self.quote_sort {
            self.check_sort(s)?;
        }
        for q in &self.qlos {
            self.check_theta(q)?;
        }
        Ok(())
    }

    fn check_sort(&self, s: &Name) -> Result<(), SpecError> {
        match self.sort(s) {
            Some(_) => Ok(()),
            None => Err(SpecError::UnknownSort(s.clone())),
        }
    }

    fn check_theta(&self, q: &QloDecl) -> Result<(), SpecError> {
        let bad = |msg: String| SpecError::BadTheta {
            op: q.symbol.clone(),
            msg,
        };
        if q.theta.contains_qlo() {
            return Err(bad("reductive formula uses an operator".into()));
        }
        let mut expected: BTreeSet<String> = BTreeSet::new();
        expected.insert(QloDecl::result_hole().to_string());
        expected.extend((0..q.term_slots).map(QloDecl::term_hole));
        expected.extend((0..q.formula_slots).map(QloDecl::formula_hole));
        let mut found: BTreeSet<String> = BTreeSet::new();
        let mut arity_ok = true;
        q.theta.walk(&mut |e| {
            if let Expr::Hole { name: n, args } = e {
                found.insert(n.to_string());
                let want = if n.starts_with("?phi") { q.binders } else { 0 };
                if args.len() != want {
                    arity_ok = false;
                }
            }
        });
        if found != expected {
            return Err(bad(format!(
                "placeholders {:?} differ from declared {:?}",
                found, expected
            )));
        }
        if !arity_ok {
            return Err(bad("formula placeholder applied to the wrong number of binders".into()));
        }
        let report = crate::wf::well_formed_schema(self, &q.theta);
        if let Some(d) = report.diagnostics.first() {
            return Err(bad(d.to_string()));
        }
        if !q.theta.is_formula() {
            return Err(bad("reductive formula is not a formula".into()));
        }
        Ok(())
    }

    /// Canonical S-expression description.
    pub fn to_sexp(&self) -> Sexp {
        let mut items = vec![atom("language"), atom(&self.name)];
        let sorts = self
            .sorts
            .iter()
            .map(|s| {
                let mut v = vec![atom(&s.name)];
                if s.quantifiable {
                    v.push(atom("quantifiable"));
                }
                Sexp::List(v)
            })
            .collect::<Vec<_>>();
        items.push(Sexp::List(
            std::iter::once(atom("sorts")).chain(sorts).collect(),
        ));
        if let Some(s) = &self.quote_sort {
            items.push(Sexp::list(vec![atom("quote-sort"), atom(s)]));
        }
        for r in &self.relations {
            let mut v = vec![
                atom("relation"),
                atom(&r.symbol),
                atom(&r.arity.to_string()),
            ];
            if r.strongly_negatable {
                v.push(atom("strong"));
            } else if r.negatable {
                v.push(atom("negatable"));
            }
            if !r.arg_sorts.is_empty() {
                v.push(sort_list(&r.arg_sorts));
            }
            if r.assignment_args {
                v.push(atom("assignments"));
            }
            items.push(Sexp::List(v));
        }
        for f in &self.functions {
            let mut v = vec![
                atom("function"),
                atom(&f.symbol),
                atom(&f.arity.to_string()),
            ];
            if !f.arg_sorts.is_empty() {
                v.push(sort_list(&f.arg_sorts));
            }
            if &*f.result_sort != PRIMARY_SORT {
                v.push(Sexp::list(vec![atom("result"), atom(&f.result_sort)]));
            }
            if f.assignment_args {
                v.push(atom("assignments"));
            }
            items.push(Sexp::List(v));
        }
        for c in &self.constants {
            let mut v = vec![atom("constant"), atom(&c.symbol)];
            if &*c.sort != PRIMARY_SORT {
                v.push(atom(&c.sort));
            }
            items.push(Sexp::List(v));
        }
        items.push(Sexp::List(
            std::iter::once(atom("quantifiers"))
                .chain(self.quantifiers.iter().map(|t| atom(t.keyword())))
                .collect(),
        ));
        for q in &self.qlos {
            items.push(Sexp::list(vec![
                atom("qlo"),
                atom(&q.symbol),
                atom(&q.binders.to_string()),
                atom(&q.term_slots.to_string()),
                atom(&q.formula_slots.to_string()),
                print_sexp(&q.theta),
            ]));
        }
        Sexp::List(items)
    }

    pub fn from_sexp(s: &Sexp) -> Result<Self, SpecError> {
        let malformed = |m: &str| SpecError::Malformed(m.to_string());
        let items = s.as_list().ok_or_else(|| malformed("expected a list"))?;
        if items.first().and_then(Sexp::as_atom) != Some("language") {
            return Err(malformed("expected (language NAME ...)"));
        }
        let spec_name = items
            .get(1)
            .and_then(Sexp::as_atom)
            .ok_or_else(|| malformed("missing language name"))?;
        let mut spec = LanguageSpec {
            name: name(spec_name),
            sorts: Vec::new(),
            relations: Vec::new(),
            functions: Vec::new(),
            constants: Vec::new(),
            quantifiers: BTreeSet::new(),
            qlos: Vec::new(),
            quote_sort: None,
        };
        let mut pending_qlos = Vec::new();
        for item in &items[2..] {
            let parts = item.as_list().ok_or_else(|| malformed("expected a clause"))?;
            let head = parts.first().and_then(Sexp::as_atom).unwrap_or("");
            let atom_at = |i: usize| parts.get(i).and_then(Sexp::as_atom);
            let num_at = |i: usize| -> Result<usize, SpecError> {
                atom_at(i)
                    .and_then(|a| a.parse().ok())
                    .ok_or_else(|| malformed("expected a count"))
            };
            match head {
                "sorts" => {
                    for s in &parts[1..] {
                        let l = s.as_list().ok_or_else(|| malformed("bad sort"))?;
                        let n = l.first().and_then(Sexp::as_atom).ok_or_else(|| malformed("bad sort"))?;
                        spec.sorts.push(SortDecl {
                            name: name(n),
                            quantifiable: l.get(1).and_then(Sexp::as_atom) == Some("quantifiable"),
                        });
                    }
                }
                "quote-sort" => {
                    spec.quote_sort = Some(name(atom_at(1).ok_or_else(|| malformed("bad quote-sort"))?));
                }
                "relation" => {
                    let sym = atom_at(1).ok_or_else(|| malformed("relation symbol"))?;
                    let mut r = RelationDecl::new(sym, num_at(2)?);
                    for flag in &parts[3..] {
                        match flag {
                            Sexp::Atom(a) if a == "strong" => r = r.strong(),
                            Sexp::Atom(a) if a == "negatable" => r = r.negatable(),
                            Sexp::Atom(a) if a == "assignments" => r.assignment_args = true,
                            Sexp::List(_) => r.arg_sorts = parse_sort_list(flag)?,
                            _ => return Err(malformed("unknown relation flag")),
                        }
                    }
                    spec.relations.push(r);
                }
                "function" => {
                    let sym = atom_at(1).ok_or_else(|| malformed("function symbol"))?;
                    let mut f = FunctionDecl::new(sym, num_at(2)?);
                    for flag in &parts[3..] {
                        match flag {
                            Sexp::Atom(a) if a == "assignments" => f.assignment_args = true,
                            Sexp::List(l) if l.first().and_then(Sexp::as_atom) == Some("result") => {
                                f.result_sort = name(
                                    l.get(1).and_then(Sexp::as_atom).ok_or_else(|| malformed("result sort"))?,
                                )
                            }
                            Sexp::List(_) => f.arg_sorts = parse_sort_list(flag)?,
                            _ => return Err(malformed("unknown function flag")),
                        }
                    }
                    spec.functions.push(f);
                }
                "constant" => {
                    let sym = atom_at(1).ok_or_else(|| malformed("constant symbol"))?;
                    spec.add_constant(sym, atom_at(2).unwrap_or(PRIMARY_SORT));
                }
                "quantifiers" => {
                    for p in &parts[1..] {
                        let t = p
                            .as_atom()
                            .and_then(QuantTemplate::from_keyword)
                            .ok_or_else(|| malformed("unknown quantifier template"))?;
                        spec.quantifiers.insert(t);
                    }
                }
                "qlo" => {
                    let sym = atom_at(1).ok_or_else(|| malformed("qlo symbol"))?;
                    let theta = parts.get(5).ok_or_else(|| malformed("qlo theta"))?;
                    pending_qlos.push((sym.to_string(), num_at(2)?, num_at(3)?, num_at(4)?, theta.clone()));
                }
                _ => return Err(malformed("unknown clause")),
            }
        }
        // Operators are declared first so Θ may mention them in diagnostics.
        for (sym, binders, term_slots, formula_slots, _) in &pending_qlos {
            spec.qlos.push(QloDecl {
                symbol: name(sym),
                binders: *binders,
                term_slots: *term_slots,
                formula_slots: *formula_slots,
                theta: Expr::hole("?s", vec![]),
            });
        }
        for (i, (_, _, _, _, theta)) in pending_qlos.iter().enumerate() {
            let parsed = parse_schema_sexp(&spec, theta)?;
            spec.qlos[i].theta = parsed;
        }
        spec.validate()?;
        Ok(spec)
    }

    pub fn to_text(&self) -> String {
        self.to_sexp().pretty(80)
    }

    pub fn from_text(text: &str) -> Result<Self, SpecError> {
        let s = sexp::parse(text).map_err(|e| SpecError::Parse(ParseError::Sexp(e)))?;
        Self::from_sexp(&s)
    }
}

fn atom(s: &str) -> Sexp {
    Sexp::atom(s)
}

fn sort_list(sorts: &[Name]) -> Sexp {
    Sexp::List(
        std::iter::once(atom("sorts"))
            .chain(sorts.iter().map(|s| atom(s)))
            .collect(),
    )
}

fn parse_sort_list(s: &Sexp) -> Result<Vec<Name>, SpecError> {
    let l = s.as_list().unwrap_or(&[]);
    if l.first().and_then(Sexp::as_atom) != Some("sorts") {
        return Err(SpecError::Malformed("expected (sorts ...)".into()));
    }
    l[1..]
        .iter()
        .map(|a| {
            a.as_atom()
                .map(name)
                .ok_or_else(|| SpecError::Malformed("bad sort name".into()))
        })
        .collect()
}

fn s_var(v: &str) -> Expr {
    Expr::var(v)
}

fn phi(arg: Expr) -> Expr {
    Expr::hole("?phi1", vec![arg])
}

fn not_phi(arg: Expr) -> Expr {
    Expr::Neg(Box::new(phi(arg)))
}

/// `elt{x : φ(x)} = s  ⇔  φ(s) ∧ ∀x (s = x ∨ ¬φ(x))`
pub fn elt_decl() -> QloDecl {
    let s = Expr::hole("?s", vec![]);
    QloDecl {
        symbol: name("elt"),
        binders: 1,
        term_slots: 0,
        formula_slots: 1,
        theta: Expr::and(
            phi(s.clone()),
            Expr::forall("$x", Expr::or(Expr::eq(s, s_var("$x")), not_phi(s_var("$x")))),
        ),
    }
}

/// `elt{x < t : φ(x)} = s  ⇔  s < t ∧ φ(s) ∧ ∀x < t (s = x ∨ ¬φ(x))`
pub fn elt_lt_decl() -> QloDecl {
    let s = Expr::hole("?s", vec![]);
    let t = Expr::hole("?t1", vec![]);
    QloDecl {
        symbol: name("elt_lt"),
        binders: 1,
        term_slots: 1,
        formula_slots: 1,
        theta: Expr::and(
            Expr::lt(s.clone(), t.clone()),
            Expr::and(
                phi(s.clone()),
                Expr::forall_lt(
                    "$x",
                    t,
                    Expr::or(Expr::eq(s, s_var("$x")), not_phi(s_var("$x"))),
                ),
            ),
        ),
    }
}

/// `fst{n : φ(n)} = s  ⇔  φ(s) ∧ ∀n < s ¬φ(n)`
pub fn fst_decl() -> QloDecl {
    let s = Expr::hole("?s", vec![]);
    QloDecl {
        symbol: name("fst"),
        binders: 1,
        term_slots: 0,
        formula_slots: 1,
        theta: Expr::and(phi(s.clone()), Expr::forall_lt("$n", s, not_phi(s_var("$n")))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arithmetic() -> LanguageSpec {
        let mut s = LanguageSpec::minimal("arith");
        s.relations.push(RelationDecl::new("lt", 2).strong());
        s.functions.push(FunctionDecl::new("+", 2));
        s.add_constant("0", PRIMARY_SORT);
        s.add_constant("1", PRIMARY_SORT);
        s.quantifiers.extend([QuantTemplate::BoundedForall, QuantTemplate::BoundedExists, QuantTemplate::Exists]);
        s.qlos.push(fst_decl());
        s.add_elt_operators();
        s
    }

    #[test]
    fn minimal_spec_validates() {
        LanguageSpec::minimal("m").validate().unwrap();
    }

    #[test]
    fn bounded_quantifiers_need_lt() {
        let mut s = LanguageSpec::minimal("m");
        s.quantifiers.insert(QuantTemplate::BoundedExists);
        assert_eq!(s.validate(), Err(SpecError::MissingRelation("lt")));
    }

    #[test]
    fn strong_implies_negatable() {
        let mut s = LanguageSpec::minimal("m");
        let mut r = RelationDecl::new("p", 1);
        r.strongly_negatable = true;
        s.relations.push(r);
        assert!(matches!(s.validate(), Err(SpecError::StrongWithoutNegatable(_))));
    }

    #[test]
    fn elt_added_only_for_full_pairs() {
        let s = arithmetic();
        assert!(s.qlo("elt_lt").is_some());
        assert!(s.qlo("elt").is_none());
        s.validate().unwrap();
    }

    #[test]
    fn theta_with_missing_placeholder_is_rejected() {
        let mut s = arithmetic();
        s.qlos.push(QloDecl {
            symbol: name("bad"),
            binders: 1,
            term_slots: 1,
            formula_slots: 1,
            theta: Expr::hole("?phi1", vec![Expr::hole("?s", vec![])]),
        });
        assert!(matches!(s.validate(), Err(SpecError::BadTheta { .. })));
    }

    #[test]
    fn text_round_trip() {
        let s = arithmetic();
        let text = s.to_text();
        let back = LanguageSpec::from_text(&text).unwrap();
        assert_eq!(back, s);
        assert_eq!(back.to_text(), text);
    }

    #[test]
    fn negated_slots_found() {
        assert_eq!(fst_decl().negated_slots().into_iter().collect::<Vec<_>>(), vec![0]);
    }
}
