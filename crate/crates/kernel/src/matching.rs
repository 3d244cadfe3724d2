//! First-order matching of schematic formulas against concrete ones.
//!
//! Placeholders are `?`-holes (terms or formulas, possibly applied to
//! arguments) and `$`-variables (binders, or free variable placeholders).
//! A hole applied to distinct bound variables is solved by abstraction; any
//! other applied hole waits until its value is known from elsewhere or is
//! supplied explicitly. Every solution is re-checked by instantiation.

use lnc_syntax::schema::Abstraction;
use lnc_syntax::{negate, Expr, LanguageSpec, Name, NameSupply};
use std::collections::BTreeMap;
use thiserror::Error;

/// Values for the placeholders of one schema.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Bindings {
    pub holes: BTreeMap<Name, Abstraction>,
    pub vars: BTreeMap<Name, Name>,
}

impl Bindings {
    pub fn hole(mut self, n: &str, a: Abstraction) -> Self {
        self.holes.insert(lnc_syntax::name(n), a);
        self
    }

    pub fn var(mut self, placeholder: &str, v: &str) -> Self {
        self.vars.insert(lnc_syntax::name(placeholder), lnc_syntax::name(v));
        self
    }

    pub fn is_empty(&self) -> bool {
        self.holes.is_empty() && self.vars.is_empty()
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum InstantiateError {
    #[error("placeholder `{0}` has no value")]
    Unbound(String),
    #[error("placeholder `{name}` takes {expected} arguments, got {got}")]
    Arity { name: String, expected: usize, got: usize },
    #[error("negation of a non-negatable formula: {0}")]
    NotNegatable(String),
}

fn is_placeholder_var(v: &str) -> bool {
    v.starts_with('$')
}

/// Replaces every placeholder, inside quotations too, then resolves schematic negation.
/// `$`-variables without a value get fresh names.
pub fn instantiate(spec: &LanguageSpec, schema: &Expr, b: &Bindings) -> Result<Expr, InstantiateError> {
    let mut names = NameSupply::avoiding("_v", &[schema]);
    for a in b.holes.values() {
        names.avoid(&a.body);
    }
    for v in b.vars.values() {
        names.avoid(&Expr::Var(v.clone()));
    }
    let mut vars = b.vars.clone();
    Inst { spec, b, vars: &mut vars, names: &mut names }.go(schema)
}

struct Inst<'a> {
    spec: &'a LanguageSpec,
    b: &'a Bindings,
    vars: &'a mut BTreeMap<Name, Name>,
    names: &'a mut NameSupply,
}

impl Inst<'_> {
    fn var(&mut self, v: &Name) -> Name {
        if !is_placeholder_var(v) {
            return v.clone();
        }
        if let Some(x) = self.vars.get(v) {
            return x.clone();
        }
        let f = self.names.fresh();
        self.vars.insert(v.clone(), f.clone());
        f
    }

    fn all(&mut self, xs: &[Expr]) -> Result<Vec<Expr>, InstantiateError> {
        xs.iter().map(|x| self.go(x)).collect()
    }

    fn go(&mut self, e: &Expr) -> Result<Expr, InstantiateError> {
        Ok(match e {
            Expr::Var(v) => Expr::Var(self.var(v)),
            Expr::Const(_) => e.clone(),
            Expr::Quote(inner) => Expr::quote(self.go(inner)?),
            Expr::Hole { name, args } => {
                let a = self
                    .b
                    .holes
                    .get(name)
                    .ok_or_else(|| InstantiateError::Unbound(name.to_string()))?;
                if a.params.len() != args.len() {
                    return Err(InstantiateError::Arity {
                        name: name.to_string(),
                        expected: a.params.len(),
                        got: args.len(),
                    });
                }
                let args = self.all(args)?;
                a.apply(&args)
            }
            Expr::Neg(inner) => {
                let inner = self.go(inner)?;
                negate(self.spec, &inner).map_err(|_| InstantiateError::NotNegatable(lnc_syntax::display(&inner)))?
            }
            Expr::App { func, args } => Expr::App {
                func: func.clone(),
                args: self.all(args)?,
            },
            Expr::Atom { rel, polarity, args } => Expr::Atom {
                rel: rel.clone(),
                polarity: *polarity,
                args: self.all(args)?,
            },
            Expr::And(a, b) => Expr::and(self.go(a)?, self.go(b)?),
            Expr::Or(a, b) => Expr::or(self.go(a)?, self.go(b)?),
            Expr::Quant { kind, var, sort, bound, body } => {
                let bound = match bound {
                    Some(t) => Some(Box::new(self.go(t)?)),
                    None => None,
                };
                Expr::Quant {
                    kind: *kind,
                    var: self.var(var),
                    sort: sort.clone(),
                    bound,
                    body: Box::new(self.go(body)?),
                }
            }
            Expr::Qlo { op, binders, terms, formulas } => {
                let terms = self.all(terms)?;
                let binders = binders.iter().map(|v| self.var(v)).collect();
                Expr::Qlo {
                    op: op.clone(),
                    binders,
                    terms,
                    formulas: self.all(formulas)?,
                }
            }
        })
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum MatchError {
    #[error("`{target}` is not an instance of `{pattern}`")]
    Mismatch { pattern: String, target: String },
    #[error("placeholder `{0}` cannot be determined by matching; give it explicitly")]
    Undetermined(String),
}

#[derive(Debug, Clone)]
struct Pending {
    pattern: Expr,
    target: Expr,
    scope: Vec<(Name, Name)>,
    quoted: bool,
}

/// Incremental matcher: feed it (pattern, target) pairs, then [`Matcher::finish`].
#[derive(Debug, Clone)]
pub struct Matcher<'a> {
    spec: &'a LanguageSpec,
    pub bindings: Bindings,
    pending: Vec<Pending>,
}

impl<'a> Matcher<'a> {
    pub fn new(spec: &'a LanguageSpec, seed: Bindings) -> Self {
        Matcher {
            spec,
            bindings: seed,
            pending: Vec::new(),
        }
    }

    /// Matches `pattern` against `target`; on failure the matcher is left unusable.
    pub fn unify(&mut self, pattern: &Expr, target: &Expr) -> Result<(), MatchError> {
        let mut scope = Vec::new();
        if self.go(pattern, target, &mut scope, false) {
            self.retry()
        } else {
            Err(self.mismatch(pattern, target))
        }
    }

    fn mismatch(&self, p: &Expr, t: &Expr) -> MatchError {
        MatchError::Mismatch {
            pattern: lnc_syntax::display(p),
            target: lnc_syntax::display(t),
        }
    }

    /// Re-runs deferred applied holes until no more progress is possible.
    fn retry(&mut self) -> Result<(), MatchError> {
        loop {
            let before = self.pending.len();
            let work = std::mem::take(&mut self.pending);
            for mut p in work {
                if !self.go(&p.pattern, &p.target, &mut p.scope, p.quoted) {
                    return Err(self.mismatch(&p.pattern, &p.target));
                }
            }
            if self.pending.len() >= before {
                return Ok(());
            }
        }
    }

    /// Fails if any applied hole is still undetermined.
    pub fn finish(mut self) -> Result<Bindings, MatchError> {
        self.retry()?;
        match self.pending.first() {
            Some(p) => Err(MatchError::Undetermined(match &p.pattern {
                Expr::Hole { name, .. } => name.to_string(),
                other => lnc_syntax::display(other),
            })),
            None => Ok(self.bindings),
        }
    }

    /// Names of holes that no constraint has fixed yet.
    pub fn open_holes(&self, schema: &Expr) -> Vec<(Name, usize)> {
        let mut out = Vec::new();
        schema.walk(&mut |e| {
            if let Expr::Hole { name, args } = e {
                if !self.bindings.holes.contains_key(name) && !out.iter().any(|(n, _)| n == name) {
                    out.push((name.clone(), args.len()));
                }
            }
        });
        out
    }

    fn bind_var(&mut self, placeholder: &Name, target: &Name) -> bool {
        match self.bindings.vars.get(placeholder) {
            Some(v) => v == target,
            None => {
                self.bindings.vars.insert(placeholder.clone(), target.clone());
                true
            }
        }
    }

    fn captured(value: &Expr, scope: &[(Name, Name)], allowed: &[Name]) -> bool {
        value
            .free_vars()
            .iter()
            .any(|v| scope.iter().any(|(_, t)| t == v) && !allowed.contains(v))
    }

    fn go(&mut self, p: &Expr, t: &Expr, scope: &mut Vec<(Name, Name)>, quoted: bool) -> bool {
        match (p, t) {
            (Expr::Var(pv), _) if is_placeholder_var(pv) => {
                let Expr::Var(tv) = t else { return false };
                if !quoted {
                    if let Some((_, bound)) = scope.iter().rev().find(|(q, _)| q == pv) {
                        return bound == tv;
                    }
                    if scope.iter().any(|(_, b)| b == tv) {
                        return false;
                    }
                }
                self.bind_var(pv, tv)
            }
            (Expr::Var(a), Expr::Var(b)) => {
                a == b && (quoted || !scope.iter().any(|(_, x)| x == b) || scope.iter().any(|(q, x)| q == a && x == b))
            }
            (Expr::Const(a), Expr::Const(b)) => a == b,
            (Expr::Quote(a), Expr::Quote(b)) => self.go(a, b, scope, true),
            (Expr::Hole { name, args }, _) => self.hole(name, args, p, t, scope, quoted),
            (Expr::Neg(inner), _) => match negate(self.spec, t) {
                Ok(nt) => self.go(inner, &nt, scope, quoted),
                Err(_) => false,
            },
            (Expr::App { func: f, args: a }, Expr::App { func: g, args: b }) => {
                f == g && a.len() == b.len() && a.iter().zip(b).all(|(x, y)| self.go(x, y, scope, quoted))
            }
            (
                Expr::Atom { rel: r, polarity: pp, args: a },
                Expr::Atom { rel: s, polarity: tp, args: b },
            ) => r == s && pp == tp && a.len() == b.len() && a.iter().zip(b).all(|(x, y)| self.go(x, y, scope, quoted)),
            (Expr::And(a, b), Expr::And(c, d)) | (Expr::Or(a, b), Expr::Or(c, d)) => {
                self.go(a, c, scope, quoted) && self.go(b, d, scope, quoted)
            }
            (
                Expr::Quant { kind: k1, var: v1, sort: s1, bound: b1, body: body1 },
                Expr::Quant { kind: k2, var: v2, sort: s2, bound: b2, body: body2 },
            ) => {
                if k1 != k2 || s1 != s2 {
                    return false;
                }
                let bounds_ok = match (b1, b2) {
                    (None, None) => true,
                    (Some(x), Some(y)) => self.go(x, y, scope, quoted),
                    _ => false,
                };
                bounds_ok && self.binder(v1, v2) && {
                    scope.push((v1.clone(), v2.clone()));
                    let ok = self.go(body1, body2, scope, quoted);
                    scope.pop();
                    ok
                }
            }
            (
                Expr::Qlo { op: o1, binders: bs1, terms: t1, formulas: f1 },
                Expr::Qlo { op: o2, binders: bs2, terms: t2, formulas: f2 },
            ) => {
                if o1 != o2 || bs1.len() != bs2.len() || t1.len() != t2.len() || f1.len() != f2.len() {
                    return false;
                }
                if !t1.iter().zip(t2).all(|(x, y)| self.go(x, y, scope, quoted)) {
                    return false;
                }
                if !bs1.iter().zip(bs2).all(|(a, b)| self.binder(a, b)) {
                    return false;
                }
                let depth = scope.len();
                scope.extend(bs1.iter().cloned().zip(bs2.iter().cloned()));
                let ok = f1.iter().zip(f2).all(|(x, y)| self.go(x, y, scope, quoted));
                scope.truncate(depth);
                ok
            }
            _ => false,
        }
    }

    fn binder(&mut self, pattern: &Name, target: &Name) -> bool {
        if is_placeholder_var(pattern) {
            self.bind_var(pattern, target)
        } else {
            pattern == target
        }
    }

    fn hole(
        &mut self,
        name: &Name,
        args: &[Expr],
        p: &Expr,
        t: &Expr,
        scope: &mut Vec<(Name, Name)>,
        quoted: bool,
    ) -> bool {
        if let Some(a) = self.bindings.holes.get(name).cloned() {
            if a.params.len() != args.len() {
                return false;
            }
            if args.is_empty() {
                return a.body.alpha_eq(t);
            }
            // Plug the argument patterns in and keep matching.
            let pairs: Vec<(Name, Expr)> = a.params.iter().cloned().zip(args.iter().cloned()).collect();
            let plugged = a.body.subst_many(&pairs);
            return self.go(&plugged, t, scope, quoted);
        }
        let ctx: &[(Name, Name)] = if quoted { &[] } else { scope };
        if args.is_empty() {
            if Self::captured(t, ctx, &[]) {
                return false;
            }
            self.bindings.holes.insert(name.clone(), Abstraction::constant(t.clone()));
            return true;
        }
        // Abstraction over distinct bound variables.
        let mut params = Vec::new();
        for a in args {
            let Expr::Var(pv) = a else { break };
            let Some((_, tv)) = scope.iter().rev().find(|(q, _)| q == pv) else { break };
            if params.contains(tv) {
                break;
            }
            params.push(tv.clone());
        }
        if params.len() == args.len() && !quoted {
            if Self::captured(t, ctx, &params) {
                return false;
            }
            self.bindings.holes.insert(name.clone(), Abstraction { params, body: t.clone() });
            return true;
        }
        self.pending.push(Pending {
            pattern: p.clone(),
            target: t.clone(),
            scope: scope.clone(),
            quoted,
        });
        true
    }
}
