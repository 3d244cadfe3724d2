//! The fuel-bounded evaluator.
//!
//! Every node visit costs one step. Children that may run forever are
//! interleaved on a triangular schedule: in round `r` the first `r`
//! candidates each get a fresh budget of `r` steps. Children that always
//! terminate are run to completion one after another.
//!
//! An unnegatable formula is never false: where the connectives would make
//! it false, it is indeterminate instead.

use crate::model::{Domain, Model, Prim, Reason};
use crate::value::Value;
use crate::Env;
use lnc_syntax::expr::fresh_name;
use lnc_syntax::schema::theta_instance;
use lnc_syntax::{is_negatable, Expr, Polarity, QuantKind};
use std::borrow::Cow;
use std::collections::BTreeSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    True,
    False,
    Unknown(Reason),
}

impl Outcome {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Outcome::True
        } else {
            Outcome::False
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Outcome::True => Outcome::False,
            Outcome::False => Outcome::True,
            u => u,
        }
    }

    pub fn is_determinate(self) -> bool {
        !matches!(self, Outcome::Unknown(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TermOutcome {
    Value(Value),
    Unknown(Reason),
}

impl TermOutcome {
    pub fn value(&self) -> Option<&Value> {
        match self {
            TermOutcome::Value(v) => Some(v),
            TermOutcome::Unknown(_) => None,
        }
    }
}

/// The budget of the innermost frame ran out.
#[derive(Debug)]
struct Abort;

type Step<T> = Result<T, Abort>;
type TermResult = Result<Value, Reason>;

struct Meter {
    used: u64,
    /// Absolute step limits, innermost last; never increasing.
    limits: Vec<u64>,
}

impl Meter {
    fn limit(&self) -> u64 {
        *self.limits.last().expect("global frame")
    }

    fn charge(&mut self, n: u64) -> Step<()> {
        self.used = self.used.saturating_add(n);
        if self.used > self.limit() {
            Err(Abort)
        } else {
            Ok(())
        }
    }

    fn remaining(&self) -> u64 {
        self.limit().saturating_sub(self.used)
    }

    /// Burns the rest of the current frame: the search it stands for never ends.
    fn exhaust(&mut self) -> Step<()> {
        self.used = self.limit().saturating_add(1);
        Err(Abort)
    }
}

pub struct Evaluator<'m> {
    model: &'m dyn Model,
    meter: Meter,
}

impl<'m> Evaluator<'m> {
    pub fn new(model: &'m dyn Model, fuel: u64) -> Self {
        Evaluator {
            model,
            meter: Meter {
                used: 0,
                limits: vec![fuel],
            },
        }
    }

    pub fn steps_used(&self) -> u64 {
        self.meter.used.min(self.meter.limits[0])
    }

    pub fn formula(&mut self, e: &Expr, env: &Env) -> Outcome {
        self.formula_step(e, env).unwrap_or(Outcome::Unknown(Reason::FuelExhausted))
    }

    pub fn term(&mut self, e: &Expr, env: &Env) -> TermOutcome {
        match self.term_step(e, env) {
            Ok(Ok(v)) => TermOutcome::Value(v),
            Ok(Err(r)) => TermOutcome::Unknown(r),
            Err(Abort) => TermOutcome::Unknown(Reason::FuelExhausted),
        }
    }

    /// Runs `f` with at most `budget` further steps. `None` means only the
    /// local budget ran out; exhaustion of an enclosing frame propagates.
    fn limited<T>(&mut self, budget: u64, f: impl FnOnce(&mut Self) -> Step<T>) -> Step<Option<T>> {
        let outer = self.meter.limit();
        let inner = outer.min(self.meter.used.saturating_add(budget));
        self.meter.limits.push(inner);
        let r = f(self);
        self.meter.limits.pop();
        match r {
            Ok(v) => Ok(Some(v)),
            Err(Abort) if self.meter.used > outer => Err(Abort),
            Err(Abort) => Ok(None),
        }
    }

    fn in_model<T>(&mut self, model: &'m dyn Model, f: impl FnOnce(&mut Self) -> Step<T>) -> Step<T> {
        let saved = std::mem::replace(&mut self.model, model);
        let r = f(self);
        self.model = saved;
        r
    }

    fn may_diverge(&self, e: &Expr) -> bool {
        if self.model.is_finite() {
            return false;
        }
        let model = self.model;
        e.any_node(&|n| match n {
            Expr::Quant { bound, sort, .. } => {
                bound.is_none() && model.domain(sort.as_deref()).len().is_none()
            }
            Expr::Qlo { op, .. } => &**op != "elt_lt",
            Expr::Atom { rel: s, .. } | Expr::App { func: s, .. } => model.may_diverge_symbol(s),
            _ => false,
        })
    }

    /// Evaluates candidates `0..count` (all naturals when `None`) until
    /// `decide` returns a verdict. `Ok(None)` means every candidate finished
    /// without one.
    fn search<'e, R>(
        &mut self,
        count: Option<u64>,
        diverging: bool,
        mut candidate: impl FnMut(u64) -> (Cow<'e, Expr>, Env),
        mut decide: impl FnMut(u64, Outcome) -> Option<R>,
    ) -> Step<Option<R>> {
        if !diverging {
            let mut i = 0u64;
            while count.map_or(true, |c| i < c) {
                let (e, env) = candidate(i);
                let r = self.formula_step(&e, &env)?;
                if let Some(d) = decide(i, r) {
                    return Ok(Some(d));
                }
                i += 1;
            }
            return Ok(None);
        }
        let mut pending: Vec<Option<(Cow<'e, Expr>, Env)>> = Vec::new();
        let mut finished = 0u64;
        for round in 1u64.. {
            let upto = count.map_or(round, |c| c.min(round));
            while (pending.len() as u64) < upto {
                pending.push(Some(candidate(pending.len() as u64)));
            }
            for i in 0..upto as usize {
                let Some((e, env)) = &pending[i] else { continue };
                self.meter.charge(1)?;
                if let Some(r) = self.limited(round, |s| s.formula_step(e, env))? {
                    pending[i] = None;
                    finished += 1;
                    if let Some(d) = decide(i as u64, r) {
                        return Ok(Some(d));
                    }
                }
            }
            if count == Some(finished) {
                return Ok(None);
            }
        }
        unreachable!("the round counter does not overflow before the fuel")
    }

    fn formula_step(&mut self, e: &Expr, env: &Env) -> Step<Outcome> {
        self.meter.charge(1)?;
        let r = self.formula_node(e, env)?;
        if r == Outcome::False && !is_negatable(self.model.spec(), e) {
            return Ok(Outcome::Unknown(Reason::Unnegatable));
        }
        Ok(r)
    }

    fn formula_node(&mut self, e: &Expr, env: &Env) -> Step<Outcome> {
        match e {
            Expr::Atom {
                rel,
                polarity,
                args,
            } => self.atom(rel, *polarity, args, env),
            Expr::And(a, b) => self.junction(a, b, env, true),
            Expr::Or(a, b) => self.junction(a, b, env, false),
            Expr::Quant {
                kind,
                var,
                sort,
                bound,
                body,
            } => self.quantifier(*kind, var, sort.as_deref(), bound.as_deref(), body, env),
            // Schematic or non-formula input: nothing to evaluate.
            _ => Ok(Outcome::Unknown(Reason::MissingReferent)),
        }
    }

    fn atom(&mut self, rel: &str, polarity: Polarity, args: &[Expr], env: &Env) -> Step<Outcome> {
        let mut vals = Vec::with_capacity(args.len());
        for a in args {
            match self.term_step(a, env)? {
                Ok(v) => vals.push(v),
                Err(r) => return Ok(Outcome::Unknown(r)),
            }
        }
        if rel == "def" {
            return Ok(Outcome::True);
        }
        let model = self.model;
        let positive = match model.relation(rel, &vals) {
            Prim::Done(b) => Outcome::from_bool(b),
            Prim::Unknown(r) => Outcome::Unknown(r),
            Prim::TooLarge => {
                self.meter.exhaust()?;
                unreachable!()
            }
            Prim::Delegate { model, expr, env } => {
                self.in_model(model, |s| s.formula_step(&expr, &env))?
            }
        };
        Ok(match polarity {
            Polarity::Positive => positive,
            Polarity::Negative => positive.flip(),
        })
    }

    fn junction(&mut self, a: &Expr, b: &Expr, env: &Env, conj: bool) -> Step<Outcome> {
        let diverging = self.may_diverge(a) || self.may_diverge(b);
        let absorbing = if conj { Outcome::False } else { Outcome::True };
        let mut unknown: [Option<Reason>; 2] = [None, None];
        let decided = self.search(
            Some(2),
            diverging,
            |i| (Cow::Borrowed(if i == 0 { a } else { b }), env.clone()),
            |i, r| match r {
                r if r == absorbing => Some(r),
                Outcome::Unknown(reason) => {
                    unknown[i as usize] = Some(reason);
                    None
                }
                _ => None,
            },
        )?;
        Ok(match decided {
            Some(d) => d,
            None => match unknown.iter().flatten().next() {
                Some(r) => Outcome::Unknown(*r),
                None => absorbing.flip(),
            },
        })
    }

    fn range(&mut self, sort: Option<&str>, bound: Option<&Expr>, env: &Env) -> Step<Result<Domain, Reason>> {
        let Some(t) = bound else {
            return Ok(Ok(self.model.domain(sort)));
        };
        let v = match self.term_step(t, env)? {
            Ok(v) => v,
            Err(r) => return Ok(Err(r)),
        };
        Ok(match v {
            Value::Nat(n) => Ok(Domain::Below(n)),
            Value::Big(_) => Ok(Domain::Naturals),
            Value::Syn(_) => Err(Reason::MissingReferent),
        })
    }

    fn quantifier(
        &mut self,
        kind: QuantKind,
        var: &str,
        sort: Option<&str>,
        bound: Option<&Expr>,
        body: &Expr,
        env: &Env,
    ) -> Step<Outcome> {
        let dom = match self.range(sort, bound, env)? {
            Ok(d) => d,
            Err(r) => return Ok(Outcome::Unknown(r)),
        };
        if kind == QuantKind::Exists && dom == Domain::Naturals && bound.is_none() {
            if let Some(s) = one_point(var, body) {
                return self.one_point(var, s, body, env);
            }
        }
        if kind == QuantKind::Exists && dom.len().is_some() {
            if let Some(s) = one_point(var, body) {
                if let Some(r) = self.finite_one_point(var, s, body, &dom, env)? {
                    return Ok(r);
                }
            }
        }
        let absorbing = match kind {
            QuantKind::Forall => Outcome::False,
            QuantKind::Exists => Outcome::True,
        };
        let diverging = self.may_diverge(body);
        let mut unknown = None;
        let decided = self.search(
            dom.len(),
            diverging,
            |i| (Cow::Borrowed(body), env.clone().with(var, dom.nth(i))),
            |_, r| match r {
                r if r == absorbing => Some(r),
                Outcome::Unknown(reason) => {
                    unknown.get_or_insert(reason);
                    None
                }
                _ => None,
            },
        )?;
        Ok(match (decided, unknown) {
            (Some(d), _) => d,
            (None, Some(r)) => Outcome::Unknown(r),
            (None, None) => absorbing.flip(),
        })
    }

    /// `∃y (.. ∧ y = s ∧ ..)` over the naturals: only `y = s` can succeed,
    /// and the unbounded search never concludes otherwise.
    fn one_point(&mut self, var: &str, s: &Expr, body: &Expr, env: &Env) -> Step<Outcome> {
        let v = match self.term_step(s, env)? {
            Ok(v) => v,
            Err(_) => return self.meter.exhaust().map(|_| unreachable!()),
        };
        match self.formula_step(body, &env.clone().with(var, v))? {
            Outcome::True => Ok(Outcome::True),
            _ => self.meter.exhaust().map(|_| unreachable!()),
        }
    }

    /// `∃y∈D (.. ∧ y = s ∧ ..)` with `s` defined: every other `y` falsifies a
    /// conjunct, so the body at `y = s` decides. `None` when that shortcut
    /// would not give the same answer as the full search.
    fn finite_one_point(&mut self, var: &str, s: &Expr, body: &Expr, dom: &Domain, env: &Env) -> Step<Option<Outcome>> {
        let Ok(v) = self.term_step(s, env)? else {
            return Ok(None);
        };
        // A falsified body that cannot be negated is reported Unknown, not False.
        let negatable = is_negatable(self.model.spec(), body);
        if !dom.contains(&v) {
            return Ok(negatable.then_some(Outcome::False));
        }
        let r = self.formula_step(body, &env.clone().with(var, v))?;
        Ok((r == Outcome::True || negatable).then_some(r))
    }

    fn term_step(&mut self, e: &Expr, env: &Env) -> Step<TermResult> {
        self.meter.charge(1)?;
        match e {
            Expr::Var(v) => Ok(env.get(v).cloned().ok_or(Reason::MissingReferent)),
            Expr::Const(c) => Ok(self.model.constant(c).ok_or(Reason::MissingReferent)),
            Expr::Quote(inner) => Ok(Ok(Value::Syn((**inner).clone()))),
            Expr::App { func, args } => {
                let mut vals = Vec::with_capacity(args.len());
                for a in args {
                    match self.term_step(a, env)? {
                        Ok(v) => vals.push(v),
                        Err(r) => return Ok(Err(r)),
                    }
                }
                let max_bits = self.meter.remaining().saturating_mul(64);
                let model = self.model;
                match model.function(func, &vals, max_bits) {
                    Prim::Done(v) => {
                        self.meter.charge(v.bits() / 64)?;
                        Ok(Ok(v))
                    }
                    Prim::Unknown(r) => Ok(Err(r)),
                    Prim::TooLarge => self.meter.exhaust().map(|_| unreachable!()),
                    Prim::Delegate { model, expr, env } => {
                        self.in_model(model, |s| s.term_step(&expr, &env))
                    }
                }
            }
            Expr::Qlo {
                op,
                binders,
                terms,
                formulas,
            } => match (&**op, binders.as_slice(), terms.as_slice(), formulas.as_slice()) {
                ("fst", [n], [], [phi]) => self.first(n, phi, env),
                ("elt", [x], [], [phi]) => {
                    let dom = self.model.domain(None);
                    self.unique(x, phi, dom, env)
                }
                ("elt_lt", [x], [t], [phi]) => match self.range(None, Some(t), env)? {
                    Ok(dom) => self.unique(x, phi, dom, env),
                    Err(r) => Ok(Err(r)),
                },
                _ => self.by_theta(e, env),
            },
            _ => Ok(Err(Reason::MissingReferent)),
        }
    }

    /// `fst`: candidates in succession, never skipping an indeterminate one.
    fn first(&mut self, n: &str, phi: &Expr, env: &Env) -> Step<TermResult> {
        let dom = self.model.domain(None);
        let mut i = 0u64;
        while dom.len().map_or(true, |c| i < c) {
            let v = dom.nth(i);
            match self.formula_step(phi, &env.clone().with(n, v.clone()))? {
                Outcome::True => return Ok(Ok(v)),
                Outcome::False => i += 1,
                Outcome::Unknown(_) => return Ok(Err(Reason::MissingReferent)),
            }
        }
        Ok(Err(Reason::MissingReferent))
    }

    /// `elt`: the unique candidate satisfying `phi` while all others falsify it.
    fn unique(&mut self, x: &str, phi: &Expr, dom: Domain, env: &Env) -> Step<TermResult> {
        if dom.len().is_none() {
            // Uniqueness over an infinite range is never established.
            return self.meter.exhaust().map(|_| unreachable!());
        }
        let diverging = self.may_diverge(phi);
        let mut hit = None;
        let verdict = self.search(
            dom.len(),
            diverging,
            |i| (Cow::Borrowed(phi), env.clone().with(x, dom.nth(i))),
            |i, r| match r {
                Outcome::True if hit.is_some() => Some(()),
                Outcome::True => {
                    hit = Some(i);
                    None
                }
                Outcome::False => None,
                Outcome::Unknown(_) => Some(()),
            },
        )?;
        Ok(match (verdict, hit) {
            (None, Some(i)) => Ok(dom.nth(i)),
            _ => Err(Reason::MissingReferent),
        })
    }

    /// Any other operator: search for the value its reductive formula accepts.
    fn by_theta(&mut self, qlo: &Expr, env: &Env) -> Step<TermResult> {
        let mut avoid = BTreeSet::new();
        qlo.all_names(&mut avoid);
        avoid.extend(env.iter().map(|(n, _)| n.clone()));
        let s = fresh_name("_s", &avoid);
        let Ok(theta) = theta_instance(self.model.spec(), qlo, &Expr::Var(s.clone())) else {
            return Ok(Err(Reason::MissingReferent));
        };
        let dom = self.model.domain(None);
        let diverging = self.may_diverge(&theta);
        let found = self.search(
            dom.len(),
            diverging,
            |i| (Cow::Borrowed(&theta), env.clone().with(&s, dom.nth(i))),
            |i, r| (r == Outcome::True).then_some(i),
        )?;
        Ok(found.map(|i| dom.nth(i)).ok_or(Reason::MissingReferent))
    }
}

fn conjuncts(e: &Expr) -> Vec<&Expr> {
    match e {
        Expr::And(a, b) => {
            let mut v = conjuncts(a);
            v.extend(conjuncts(b));
            v
        }
        e => vec![e],
    }
}

/// A conjunct `var = s` or `s = var` with `var` not free in `s`.
fn one_point<'e>(var: &str, body: &'e Expr) -> Option<&'e Expr> {
    conjuncts(body).into_iter().find_map(|c| match c {
        Expr::Atom {
            rel,
            polarity: Polarity::Positive,
            args,
        } if &**rel == "=" => match args.as_slice() {
            [Expr::Var(v), s] | [s, Expr::Var(v)] if &**v == var && !s.occurs_free(var) => Some(s),
            _ => None,
        },
        _ => None,
    })
}
