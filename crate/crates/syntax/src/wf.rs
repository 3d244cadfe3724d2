use crate::expr::{Class, Expr, Name, Polarity};
use crate::negate::negate;
use crate::spec::{LanguageSpec, QuantTemplate, PRIMARY_SORT};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    /// Child indices from the root to the offending node.
    pub path: Vec<usize>,
    pub node: String,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {:?} (`{}`)", self.message, self.path, self.node)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WfReport {
    pub diagnostics: Vec<Diagnostic>,
}

impl WfReport {
    pub fn ok(&self) -> bool {
        self.diagnostics.is_empty()
    }

    pub fn first(&self) -> Option<&Diagnostic> {
        self.diagnostics.first()
    }
}

/// Checks `e` against the templates of `spec`. Diagnostics come in pre-order,
/// so the first one names the first violating node.
pub fn well_formed(spec: &LanguageSpec, e: &Expr) -> WfReport {
    run(spec, e, false, Class::Either)
}

/// Like [`well_formed`] but admits placeholders (`?name`, `$x`, schematic negation).
pub fn well_formed_schema(spec: &LanguageSpec, e: &Expr) -> WfReport {
    run(spec, e, true, Class::Either)
}

pub fn well_formed_formula(spec: &LanguageSpec, e: &Expr) -> WfReport {
    run(spec, e, false, Class::Formula)
}

pub fn well_formed_term(spec: &LanguageSpec, e: &Expr) -> WfReport {
    run(spec, e, false, Class::Term)
}

fn run(spec: &LanguageSpec, e: &Expr, schema: bool, want: Class) -> WfReport {
    let mut c = Checker {
        spec,
        schema,
        path: Vec::new(),
        scope: Vec::new(),
        out: Vec::new(),
    };
    c.check(e, want);
    WfReport { diagnostics: c.out }
}

struct Checker<'a> {
    spec: &'a LanguageSpec,
    schema: bool,
    path: Vec<usize>,
    scope: Vec<(Name, Name)>,
    out: Vec<Diagnostic>,
}

impl Checker<'_> {
    fn report(&mut self, e: &Expr, msg: impl Into<String>) {
        self.out.push(Diagnostic {
            path: self.path.clone(),
            node: crate::render::display(e),
            message: msg.into(),
        });
    }

    fn child(&mut self, i: usize, e: &Expr, want: Class) {
        self.path.push(i);
        self.check(e, want);
        self.path.pop();
    }

    fn child_sorted(&mut self, i: usize, e: &Expr, sort: &Name) {
        self.child(i, e, Class::Term);
        if let Some(actual) = self.sort_of(e) {
            if actual != *sort {
                self.path.push(i);
                self.report(e, format!("expected sort `{sort}`, found `{actual}`"));
                self.path.pop();
            }
        }
    }

    /// Sort of a term when it can be determined locally.
    fn sort_of(&self, e: &Expr) -> Option<Name> {
        match e {
            Expr::Var(v) => self
                .scope
                .iter()
                .rev()
                .find(|(n, _)| n == v)
                .map(|(_, s)| s.clone()),
            Expr::Const(c) => self.spec.constant(c).map(|d| d.sort.clone()),
            Expr::App { func, .. } => self.spec.function(func).map(|d| d.result_sort.clone()),
            Expr::Qlo { .. } => Some(crate::expr::name(PRIMARY_SORT)),
            Expr::Quote(_) => self.spec.quote_sort.clone(),
            _ => None,
        }
    }

    fn check(&mut self, e: &Expr, want: Class) {
        let class = e.class();
        if want != Class::Either && class != Class::Either && class != want {
            let msg = match want {
                Class::Term => "expected a term, found a formula",
                _ => "expected a formula, found a term",
            };
            self.report(e, msg);
            return;
        }
        match e {
            Expr::Var(v) => {
                if v.starts_with('$') && !self.schema {
                    self.report(e, "variable placeholder outside a schema");
                }
            }
            Expr::Const(c) => {
                if self.spec.constant(c).is_none() {
                    self.report(e, "undeclared constant");
                }
            }
            Expr::App { func, args } => {
                let Some(decl) = self.spec.function(func).cloned() else {
                    self.report(e, "undeclared function");
                    return;
                };
                if !arity_ok(decl.arity, decl.assignment_args, args) {
                    self.report(e, "wrong number of arguments");
                    return;
                }
                self.check_args(&decl.arg_sorts, decl.arity, args);
            }
            Expr::Qlo {
                op,
                binders,
                terms,
                formulas,
            } => {
                let Some(decl) = self.spec.qlo(op).cloned() else {
                    self.report(e, "undeclared quantifier-like operator");
                    return;
                };
                if binders.len() != decl.binders
                    || terms.len() != decl.term_slots
                    || formulas.len() != decl.formula_slots
                {
                    self.report(e, "operator slots do not match its declaration");
                    return;
                }
                let mut seen = binders.clone();
                seen.sort();
                seen.dedup();
                if seen.len() != binders.len() {
                    self.report(e, "repeated bound variable");
                }
                for (i, t) in terms.iter().enumerate() {
                    self.child(i, t, Class::Term);
                }
                let depth = self.scope.len();
                self.scope
                    .extend(binders.iter().map(|b| (b.clone(), crate::expr::name(PRIMARY_SORT))));
                let negated = decl.negated_slots();
                for (i, f) in formulas.iter().enumerate() {
                    self.child(terms.len() + i, f, Class::Formula);
                    if negated.contains(&i) && negate(self.spec, f).is_err() {
                        self.path.push(terms.len() + i);
                        self.report(f, "operator requires a negatable formula");
                        self.path.pop();
                    }
                }
                self.scope.truncate(depth);
            }
            Expr::Quote(inner) => {
                if self.spec.quote_sort.is_none() {
                    self.report(e, "quotation not available");
                    return;
                }
                let saved = std::mem::take(&mut self.scope);
                self.child(0, inner, Class::Either);
                self.scope = saved;
            }
            Expr::Atom {
                rel,
                polarity,
                args,
            } => {
                let Some(decl) = self.spec.relation(rel).cloned() else {
                    self.report(e, "undeclared relation");
                    return;
                };
                if !arity_ok(decl.arity, decl.assignment_args, args) {
                    self.report(e, "wrong number of arguments");
                    return;
                }
                if *polarity == Polarity::Negative && !decl.negatable {
                    self.report(e, "relation is not negatable");
                }
                if &**rel == "=" {
                    // Equality is logical: any sort, as long as both sides agree.
                    self.child(0, &args[0], Class::Term);
                    self.child(1, &args[1], Class::Term);
                    if let (Some(a), Some(b)) = (self.sort_of(&args[0]), self.sort_of(&args[1])) {
                        if a != b {
                            self.report(e, format!("equation between sorts `{a}` and `{b}`"));
                        }
                    }
                    return;
                }
                self.check_args(&decl.arg_sorts, decl.arity, args);
            }
            Expr::And(a, b) | Expr::Or(a, b) => {
                self.child(0, a, Class::Formula);
                self.child(1, b, Class::Formula);
            }
            Expr::Quant {
                kind,
                var,
                sort,
                bound,
                body,
            } => {
                let var_sort = match sort {
                    Some(s) => {
                        match self.spec.sort(s) {
                            Some(d) if d.quantifiable => {}
                            Some(_) => self.report(e, "sort is not quantifiable"),
                            None => self.report(e, "undeclared sort"),
                        }
                        if bound.is_some() {
                            self.report(e, "sorted quantifier cannot be bounded");
                        }
                        s.clone()
                    }
                    None => {
                        let t = QuantTemplate::of(*kind, bound.is_some());
                        if !self.spec.allows(t) {
                            self.report(e, "quantifier template not enabled");
                        }
                        crate::expr::name(PRIMARY_SORT)
                    }
                };
                if var.starts_with('$') && !self.schema {
                    self.report(e, "variable placeholder outside a schema");
                }
                if let Some(t) = bound {
                    self.child(0, t, Class::Term);
                }
                self.scope.push((var.clone(), var_sort));
                self.child(1, body, Class::Formula);
                self.scope.pop();
            }
            Expr::Hole { args, .. } => {
                if !self.schema {
                    self.report(e, "placeholder outside a schema");
                    return;
                }
                for (i, a) in args.iter().enumerate() {
                    self.child(i, a, Class::Either);
                }
            }
            Expr::Neg(inner) => {
                if !self.schema {
                    self.report(e, "schematic negation outside a schema");
                    return;
                }
                self.child(0, inner, Class::Formula);
            }
        }
    }

    fn check_args(&mut self, sorts: &[Name], arity: usize, args: &[Expr]) {
        let primary = crate::expr::name(PRIMARY_SORT);
        for (i, a) in args.iter().enumerate() {
            if i < arity {
                let s = sorts.get(i).cloned().unwrap_or_else(|| primary.clone());
                self.child_sorted(i, a, &s);
            } else if (i - arity) % 2 == 0 {
                if !matches!(a, Expr::Quote(v) if matches!(**v, Expr::Var(_))) {
                    self.path.push(i);
                    self.report(a, "assignment must name a quoted variable");
                    self.path.pop();
                }
            } else {
                self.child(i, a, Class::Term);
            }
        }
    }
}

fn arity_ok(arity: usize, assignments: bool, args: &[Expr]) -> bool {
    if assignments {
        args.len() >= arity && (args.len() - arity) % 2 == 0
    } else {
        args.len() == arity
    }
}
