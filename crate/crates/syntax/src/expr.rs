use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

/// Interned-ish symbol: cheap to clone, compared by content.
pub type Name = Arc<str>;

pub fn name(s: &str) -> Name {
    Arc::from(s)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Polarity {
    Positive,
    Negative,
}

impl Polarity {
    pub fn flip(self) -> Self {
        match self {
            Polarity::Positive => Polarity::Negative,
            Polarity::Negative => Polarity::Positive,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QuantKind {
    Forall,
    Exists,
}

impl QuantKind {
    pub fn dual(self) -> Self {
        match self {
            QuantKind::Forall => QuantKind::Exists,
            QuantKind::Exists => QuantKind::Forall,
        }
    }
}

/// Terms and formulas share one tree; the root variant decides the class.
///
/// `Hole` and `Neg` only occur in schematic formulas (axiom schemas, QLO
/// reductive formulas). Variable placeholders are ordinary `Var`s whose name
/// starts with `$`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Expr {
    Var(Name),
    Const(Name),
    App {
        func: Name,
        args: Vec<Expr>,
    },
    Qlo {
        op: Name,
        binders: Vec<Name>,
        terms: Vec<Expr>,
        formulas: Vec<Expr>,
    },
    /// A string literal naming an expression.
    Quote(Box<Expr>),
    Atom {
        rel: Name,
        polarity: Polarity,
        args: Vec<Expr>,
    },
    And(Box<Expr>, Box<Expr>),
    Or(Box<Expr>, Box<Expr>),
    Quant {
        kind: QuantKind,
        var: Name,
        /// Non-primary sort of the bound variable, if any.
        sort: Option<Name>,
        bound: Option<Box<Expr>>,
        body: Box<Expr>,
    },
    Hole {
        name: Name,
        args: Vec<Expr>,
    },
    Neg(Box<Expr>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Class {
    Term,
    Formula,
    /// A placeholder whose class depends on where it sits.
    Either,
}

impl Expr {
    pub fn var(s: &str) -> Expr {
        Expr::Var(name(s))
    }

    pub fn constant(s: &str) -> Expr {
        Expr::Const(name(s))
    }

    pub fn app(f: &str, args: Vec<Expr>) -> Expr {
        Expr::App { func: name(f), args }
    }

    pub fn atom(rel: &str, args: Vec<Expr>) -> Expr {
        Expr::Atom {
            rel: name(rel),
            polarity: Polarity::Positive,
            args,
        }
    }

    pub fn neg_atom(rel: &str, args: Vec<Expr>) -> Expr {
        Expr::Atom {
            rel: name(rel),
            polarity: Polarity::Negative,
            args,
        }
    }

    pub fn eq(a: Expr, b: Expr) -> Expr {
        Expr::atom("=", vec![a, b])
    }

    pub fn lt(a: Expr, b: Expr) -> Expr {
        Expr::atom("lt", vec![a, b])
    }

    pub fn defined(t: Expr) -> Expr {
        Expr::atom("def", vec![t])
    }

    pub fn and(a: Expr, b: Expr) -> Expr {
        Expr::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Expr, b: Expr) -> Expr {
        Expr::Or(Box::new(a), Box::new(b))
    }

    /// Right-nested conjunction; `None` for an empty list.
    pub fn and_all(items: impl IntoIterator<Item = Expr>) -> Option<Expr> {
        let mut items: Vec<Expr> = items.into_iter().collect();
        let mut acc = items.pop()?;
        while let Some(prev) = items.pop() {
            acc = Expr::and(prev, acc);
        }
        Some(acc)
    }

    pub fn quant(kind: QuantKind, var: &str, bound: Option<Expr>, body: Expr) -> Expr {
        Expr::Quant {
            kind,
            var: name(var),
            sort: None,
            bound: bound.map(Box::new),
            body: Box::new(body),
        }
    }

    pub fn forall(var: &str, body: Expr) -> Expr {
        Expr::quant(QuantKind::Forall, var, None, body)
    }

    pub fn exists(var: &str, body: Expr) -> Expr {
        Expr::quant(QuantKind::Exists, var, None, body)
    }

    pub fn forall_lt(var: &str, bound: Expr, body: Expr) -> Expr {
        Expr::quant(QuantKind::Forall, var, Some(bound), body)
    }

    pub fn exists_lt(var: &str, bound: Expr, body: Expr) -> Expr {
        Expr::quant(QuantKind::Exists, var, Some(bound), body)
    }

    pub fn qlo1(op: &str, binder: &str, terms: Vec<Expr>, formula: Expr) -> Expr {
        Expr::Qlo {
            op: name(op),
            binders: vec![name(binder)],
            terms,
            formulas: vec![formula],
        }
    }

    pub fn hole(n: &str, args: Vec<Expr>) -> Expr {
        Expr::Hole { name: name(n), args }
    }

    pub fn quote(e: Expr) -> Expr {
        Expr::Quote(Box::new(e))
    }

    pub fn class(&self) -> Class {
        match self {
            Expr::Var(_) | Expr::Const(_) | Expr::App { .. } | Expr::Qlo { .. } | Expr::Quote(_) => {
                Class::Term
            }
            Expr::Atom { .. } | Expr::And(..) | Expr::Or(..) | Expr::Quant { .. } | Expr::Neg(_) => {
                Class::Formula
            }
            Expr::Hole { .. } => Class::Either,
        }
    }

    pub fn is_term(&self) -> bool {
        self.class() == Class::Term
    }

    pub fn is_formula(&self) -> bool {
        self.class() == Class::Formula
    }

    /// Number of tree nodes.
    pub fn node_count(&self) -> usize {
        let mut n = 0;
        self.walk(&mut |_| n += 1);
        n
    }

    /// Pre-order traversal of every node, including inside quotes.
    pub fn walk<'a>(&'a self, f: &mut impl FnMut(&'a Expr)) {
        f(self);
        match self {
            Expr::Var(_) | Expr::Const(_) => {}
            Expr::App { args, .. } | Expr::Atom { args, .. } | Expr::Hole { args, .. } => {
                args.iter().for_each(|a| a.walk(f))
            }
            Expr::Qlo { terms, formulas, .. } => {
                terms.iter().for_each(|a| a.walk(f));
                formulas.iter().for_each(|a| a.walk(f));
            }
            Expr::Quote(e) | Expr::Neg(e) => e.walk(f),
            Expr::And(a, b) | Expr::Or(a, b) => {
                a.walk(f);
                b.walk(f);
            }
            Expr::Quant { bound, body, .. } => {
                if let Some(b) = bound {
                    b.walk(f);
                }
                body.walk(f);
            }
        }
    }

    /// True if any node satisfies `pred` (quotes are opaque).
    pub fn any_node(&self, pred: &impl Fn(&Expr) -> bool) -> bool {
        if pred(self) {
            return true;
        }
        match self {
            Expr::Var(_) | Expr::Const(_) | Expr::Quote(_) => false,
            Expr::App { args, .. } | Expr::Atom { args, .. } | Expr::Hole { args, .. } => {
                args.iter().any(|a| a.any_node(pred))
            }
            Expr::Qlo { terms, formulas, .. } => {
                terms.iter().any(|a| a.any_node(pred)) || formulas.iter().any(|a| a.any_node(pred))
            }
            Expr::Neg(e) => e.any_node(pred),
            Expr::And(a, b) | Expr::Or(a, b) => a.any_node(pred) || b.any_node(pred),
            Expr::Quant { bound, body, .. } => {
                bound.as_ref().is_some_and(|b| b.any_node(pred)) || body.any_node(pred)
            }
        }
    }

    pub fn contains_qlo(&self) -> bool {
        self.any_node(&|e| matches!(e, Expr::Qlo { .. }))
    }

    pub fn contains_quantifier(&self) -> bool {
        self.any_node(&|e| matches!(e, Expr::Quant { .. } | Expr::Qlo { .. }))
    }

    pub fn is_schematic(&self) -> bool {
        let mut found = false;
        self.walk(&mut |e| match e {
            Expr::Hole { .. } | Expr::Neg(_) => found = true,
            Expr::Var(v) if v.starts_with('$') => found = true,
            _ => {}
        });
        found
    }

    /// Free variables in order of first occurrence (quotes are closed).
    pub fn free_vars(&self) -> Vec<Name> {
        let mut out = Vec::new();
        let mut bound = Vec::new();
        collect_free(self, &mut bound, &mut out);
        out
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    pub fn occurs_free(&self, v: &str) -> bool {
        self.free_vars().iter().any(|x| &**x == v)
    }

    /// Every name used anywhere (variables, binders, symbols), for fresh-name generation.
    pub fn all_names(&self, out: &mut BTreeSet<Name>) {
        self.walk(&mut |e| match e {
            Expr::Var(v) | Expr::Const(v) => {
                out.insert(v.clone());
            }
            Expr::Quant { var, .. } => {
                out.insert(var.clone());
            }
            Expr::Qlo { binders, .. } => out.extend(binders.iter().cloned()),
            _ => {}
        });
    }

    /// Capture-avoiding substitution of `replacement` for free `var`.
    pub fn subst(&self, var: &str, replacement: &Expr) -> Expr {
        let fv: BTreeSet<Name> = replacement.free_vars().into_iter().collect();
        let mut avoid = BTreeSet::new();
        self.all_names(&mut avoid);
        replacement.all_names(&mut avoid);
        subst_inner(self, var, replacement, &fv, &mut avoid)
    }

    /// Simultaneous capture-avoiding substitution.
    pub fn subst_many(&self, pairs: &[(Name, Expr)]) -> Expr {
        if pairs.is_empty() {
            return self.clone();
        }
        // Route through fresh intermediates so earlier replacements are not rewritten.
        let mut avoid = BTreeSet::new();
        self.all_names(&mut avoid);
        for (v, e) in pairs {
            avoid.insert(v.clone());
            e.all_names(&mut avoid);
        }
        let temps: Vec<Name> = pairs
            .iter()
            .map(|_| {
                let t = fresh_name("_s", &avoid);
                avoid.insert(t.clone());
                t
            })
            .collect();
        let mut out = self.clone();
        for ((v, _), t) in pairs.iter().zip(&temps) {
            out = out.subst(v, &Expr::Var(t.clone()));
        }
        for ((_, e), t) in pairs.iter().zip(&temps) {
            out = out.subst(t, e);
        }
        out
    }

    /// Renames the bound variable of a quantifier root to `new`, if it is one.
    pub fn rename_binder(&self, new: &str) -> Expr {
        match self {
            Expr::Quant {
                kind,
                var,
                sort,
                bound,
                body,
            } => Expr::Quant {
                kind: *kind,
                var: name(new),
                sort: sort.clone(),
                bound: bound.clone(),
                body: Box::new(body.subst(var, &Expr::var(new))),
            },
            other => other.clone(),
        }
    }

    /// Structural equality up to renaming of bound variables.
    pub fn alpha_eq(&self, other: &Expr) -> bool {
        alpha(self, other, &mut Vec::new())
    }
}

/// Smallest `{prefix}{i}` not in `avoid`.
pub fn fresh_name(prefix: &str, avoid: &BTreeSet<Name>) -> Name {
    (0..)
        .map(|i| name(&format!("{prefix}{i}")))
        .find(|n| !avoid.contains(n))
        .expect("unbounded supply")
}

/// Deterministic supply of fresh variable names that also avoids a fixed set.
#[derive(Debug, Clone)]
pub struct NameSupply {
    prefix: String,
    next: usize,
    avoid: BTreeSet<Name>,
}

impl NameSupply {
    pub fn new(prefix: &str) -> Self {
        NameSupply {
            prefix: prefix.to_string(),
            next: 0,
            avoid: BTreeSet::new(),
        }
    }

    pub fn avoiding(prefix: &str, exprs: &[&Expr]) -> Self {
        let mut s = Self::new(prefix);
        for e in exprs {
            e.all_names(&mut s.avoid);
        }
        s
    }

    pub fn avoid(&mut self, e: &Expr) {
        e.all_names(&mut self.avoid);
    }

    pub fn fresh(&mut self) -> Name {
        loop {
            let n = name(&format!("{}{}", self.prefix, self.next));
            self.next += 1;
            if !self.avoid.contains(&n) {
                return n;
            }
        }
    }
}

fn collect_free(e: &Expr, bound: &mut Vec<Name>, out: &mut Vec<Name>) {
    match e {
        Expr::Var(v) => {
            if !bound.contains(v) && !out.contains(v) {
                out.push(v.clone());
            }
        }
        Expr::Const(_) | Expr::Quote(_) => {}
        Expr::App { args, .. } | Expr::Atom { args, .. } | Expr::Hole { args, .. } => {
            args.iter().for_each(|a| collect_free(a, bound, out))
        }
        Expr::Qlo {
            binders,
            terms,
            formulas,
            ..
        } => {
            terms.iter().for_each(|a| collect_free(a, bound, out));
            let depth = bound.len();
            bound.extend(binders.iter().cloned());
            formulas.iter().for_each(|a| collect_free(a, bound, out));
            bound.truncate(depth);
        }
        Expr::Neg(a) => collect_free(a, bound, out),
        Expr::And(a, b) | Expr::Or(a, b) => {
            collect_free(a, bound, out);
            collect_free(b, bound, out);
        }
        Expr::Quant {
            var, bound: bd, body, ..
        } => {
            if let Some(b) = bd {
                collect_free(b, bound, out);
            }
            bound.push(var.clone());
            collect_free(body, bound, out);
            bound.pop();
        }
    }
}

fn subst_inner(
    e: &Expr,
    var: &str,
    rep: &Expr,
    rep_fv: &BTreeSet<Name>,
    avoid: &mut BTreeSet<Name>,
) -> Expr {
    let go = |x: &Expr, avoid: &mut BTreeSet<Name>| subst_inner(x, var, rep, rep_fv, avoid);
    match e {
        Expr::Var(v) if &**v == var => rep.clone(),
        Expr::Var(_) | Expr::Const(_) | Expr::Quote(_) => e.clone(),
        Expr::App { func, args } => Expr::App {
            func: func.clone(),
            args: args.iter().map(|a| go(a, avoid)).collect(),
        },
        Expr::Atom {
            rel,
            polarity,
            args,
        } => Expr::Atom {
            rel: rel.clone(),
            polarity: *polarity,
            args: args.iter().map(|a| go(a, avoid)).collect(),
        },
        Expr::Hole { name: n, args } => Expr::Hole {
            name: n.clone(),
            args: args.iter().map(|a| go(a, avoid)).collect(),
        },
        Expr::Neg(a) => Expr::Neg(Box::new(go(a, avoid))),
        Expr::And(a, b) => Expr::And(Box::new(go(a, avoid)), Box::new(go(b, avoid))),
        Expr::Or(a, b) => Expr::Or(Box::new(go(a, avoid)), Box::new(go(b, avoid))),
        Expr::Qlo {
            op,
            binders,
            terms,
            formulas,
        } => {
            let terms = terms.iter().map(|a| go(a, avoid)).collect();
            if binders.iter().any(|b| &**b == var) {
                return Expr::Qlo {
                    op: op.clone(),
                    binders: binders.clone(),
                    terms,
                    formulas: formulas.clone(),
                };
            }
            let mut new_binders = binders.clone();
            let mut formulas = formulas.clone();
            for b in new_binders.iter_mut() {
                if rep_fv.contains(b) && formulas.iter().any(|f| f.occurs_free(var)) {
                    let fresh = fresh_name("_v", avoid);
                    avoid.insert(fresh.clone());
                    formulas = formulas
                        .iter()
                        .map(|f| f.subst(b, &Expr::Var(fresh.clone())))
                        .collect();
                    *b = fresh;
                }
            }
            Expr::Qlo {
                op: op.clone(),
                binders: new_binders,
                terms,
                formulas: formulas.iter().map(|a| go(a, avoid)).collect(),
            }
        }
        Expr::Quant {
            kind,
            var: v,
            sort,
            bound,
            body,
        } => {
            let bound = bound.as_ref().map(|b| Box::new(go(b, avoid)));
            if &**v == var {
                return Expr::Quant {
                    kind: *kind,
                    var: v.clone(),
                    sort: sort.clone(),
                    bound,
                    body: body.clone(),
                };
            }
            let (v, body) = if rep_fv.contains(v) && body.occurs_free(var) {
                let fresh = fresh_name("_v", avoid);
                avoid.insert(fresh.clone());
                let renamed = body.subst(v, &Expr::Var(fresh.clone()));
                (fresh, renamed)
            } else {
                (v.clone(), (**body).clone())
            };
            Expr::Quant {
                kind: *kind,
                var: v,
                sort: sort.clone(),
                bound,
                body: Box::new(go(&body, avoid)),
            }
        }
    }
}

fn alpha(a: &Expr, b: &Expr, env: &mut Vec<(Name, Name)>) -> bool {
    match (a, b) {
        (Expr::Var(x), Expr::Var(y)) => {
            for (l, r) in env.iter().rev() {
                if l == x || r == y {
                    return l == x && r == y;
                }
            }
            x == y
        }
        (Expr::Const(x), Expr::Const(y)) => x == y,
        (Expr::Quote(x), Expr::Quote(y)) => x == y,
        (Expr::App { func: f, args: a }, Expr::App { func: g, args: b }) => {
            f == g && a.len() == b.len() && a.iter().zip(b).all(|(x, y)| alpha(x, y, env))
        }
        (
            Expr::Atom {
                rel: r,
                polarity: p,
                args: a,
            },
            Expr::Atom {
                rel: s,
                polarity: q,
                args: b,
            },
        ) => r == s && p == q && a.len() == b.len() && a.iter().zip(b).all(|(x, y)| alpha(x, y, env)),
        (Expr::Hole { name: n, args: a }, Expr::Hole { name: m, args: b }) => {
            n == m && a.len() == b.len() && a.iter().zip(b).all(|(x, y)| alpha(x, y, env))
        }
        (Expr::Neg(x), Expr::Neg(y)) => alpha(x, y, env),
        (Expr::And(a1, a2), Expr::And(b1, b2)) | (Expr::Or(a1, a2), Expr::Or(b1, b2)) => {
            alpha(a1, b1, env) && alpha(a2, b2, env)
        }
        (
            Expr::Quant {
                kind: k1,
                var: v1,
                sort: s1,
                bound: b1,
                body: x,
            },
            Expr::Quant {
                kind: k2,
                var: v2,
                sort: s2,
                bound: b2,
                body: y,
            },
        ) => {
            if k1 != k2 || s1 != s2 {
                return false;
            }
            let bounds_eq = match (b1, b2) {
                (None, None) => true,
                (Some(p), Some(q)) => alpha(p, q, env),
                _ => false,
            };
            if !bounds_eq {
                return false;
            }
            env.push((v1.clone(), v2.clone()));
            let r = alpha(x, y, env);
            env.pop();
            r
        }
        (
            Expr::Qlo {
                op: o1,
                binders: bs1,
                terms: t1,
                formulas: f1,
            },
            Expr::Qlo {
                op: o2,
                binders: bs2,
                terms: t2,
                formulas: f2,
            },
        ) => {
            if o1 != o2 || bs1.len() != bs2.len() || t1.len() != t2.len() || f1.len() != f2.len() {
                return false;
            }
            if !t1.iter().zip(t2).all(|(x, y)| alpha(x, y, env)) {
                return false;
            }
            let depth = env.len();
            env.extend(bs1.iter().cloned().zip(bs2.iter().cloned()));
            let r = f1.iter().zip(f2).all(|(x, y)| alpha(x, y, env));
            env.truncate(depth);
            r
        }
        _ => false,
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::render::display(self))
    }
}
