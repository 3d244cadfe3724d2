//! Interpretations of the standard languages.

use crate::value::{self, Value};
use crate::Env;
use lnc_languages::{ListCodec, StdLanguage, Tag};
use lnc_syntax::{well_formed, Expr, LanguageSpec};
use std::cmp::Ordering;

/// Range of a quantified sort.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Domain {
    Naturals,
    /// `{0..n-1}`
    Below(u64),
    Finite(Vec<Value>),
}

impl Domain {
    pub fn len(&self) -> Option<u64> {
        match self {
            Domain::Naturals => None,
            Domain::Below(n) => Some(*n),
            Domain::Finite(v) => Some(v.len() as u64),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == Some(0)
    }

    pub fn nth(&self, i: u64) -> Value {
        match self {
            Domain::Naturals | Domain::Below(_) => Value::Nat(i),
            Domain::Finite(v) => v[i as usize].clone(),
        }
    }

    pub fn contains(&self, v: &Value) -> bool {
        match self {
            Domain::Naturals => v.is_number(),
            Domain::Below(n) => v.as_u64().is_some_and(|x| x < *n),
            Domain::Finite(vs) => vs.contains(v),
        }
    }
}

/// Why an expression lacks a truth-value or referent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Reason {
    FuelExhausted,
    /// Truth depends only on itself (Kripke extensions).
    Ungrounded,
    MissingReferent,
    /// Falsified, but the formula has no notion of being false.
    Unnegatable,
}

/// Result of interpreting a primitive symbol on argument values.
pub enum Prim<'a, T> {
    Done(T),
    Unknown(Reason),
    /// The result would exceed the bit budget the caller can pay for.
    TooLarge,
    /// Evaluate `expr` under `env` in `model` and use its result.
    Delegate {
        model: &'a dyn Model,
        expr: Expr,
        env: Env,
    },
}

pub trait Model {
    fn spec(&self) -> &LanguageSpec;

    /// Range of `sort`, or of the primary sort when `None`.
    fn domain(&self, sort: Option<&str>) -> Domain;

    fn constant(&self, c: &str) -> Option<Value>;

    fn function(&self, f: &str, args: &[Value], max_bits: u64) -> Prim<'_, Value>;

    /// Positive truth of `r` on `args`; the caller flips it for negative atoms.
    fn relation(&self, r: &str, args: &[Value]) -> Prim<'_, bool>;

    /// Every evaluation in this model terminates.
    fn is_finite(&self) -> bool;

    /// Whether interpreting `sym` may start an unbounded computation.
    fn may_diverge_symbol(&self, _sym: &str) -> bool {
        false
    }
}

fn compare_rel(r: &str, args: &[Value]) -> Option<bool> {
    match (r, args) {
        ("=", [a, b]) => Some(match value::compare(a, b) {
            Some(o) => o == Ordering::Equal,
            None => a == b,
        }),
        ("lt", [a, b]) => Some(value::compare(a, b)? == Ordering::Less),
        _ => None,
    }
}

/// Arithmetic modulo `k` over `{0..k-1}`.
#[derive(Debug, Clone)]
pub struct FinModel {
    pub k: u64,
    spec: LanguageSpec,
}

impl FinModel {
    pub fn new(k: u64, spec: LanguageSpec) -> Self {
        assert!(k >= 1, "finite domain must be nonempty");
        FinModel { k, spec }
    }
}

impl Model for FinModel {
    fn spec(&self) -> &LanguageSpec {
        &self.spec
    }

    fn domain(&self, _sort: Option<&str>) -> Domain {
        Domain::Below(self.k)
    }

    fn constant(&self, c: &str) -> Option<Value> {
        match c {
            "0" => Some(Value::Nat(0)),
            "1" => Some(Value::Nat(1 % self.k)),
            _ => None,
        }
    }

    fn function(&self, f: &str, args: &[Value], _max_bits: u64) -> Prim<'_, Value> {
        let (Some(a), Some(b)) = (
            args.first().and_then(Value::as_u64),
            args.get(1).and_then(Value::as_u64),
        ) else {
            return Prim::Unknown(Reason::MissingReferent);
        };
        let k = u128::from(self.k);
        let (a, b) = (u128::from(a), u128::from(b));
        let r = match f {
            "+" => (a + b) % k,
            "*" => (a * b) % k,
            _ => return Prim::Unknown(Reason::MissingReferent),
        };
        Prim::Done(Value::Nat(r as u64))
    }

    fn relation(&self, r: &str, args: &[Value]) -> Prim<'_, bool> {
        match compare_rel(r, args) {
            Some(b) => Prim::Done(b),
            None => Prim::Unknown(Reason::MissingReferent),
        }
    }

    fn is_finite(&self) -> bool {
        true
    }
}

/// Standard arithmetic on the naturals.
#[derive(Debug, Clone)]
pub struct ArithModel {
    spec: LanguageSpec,
}

impl ArithModel {
    pub fn new(spec: LanguageSpec) -> Self {
        ArithModel { spec }
    }
}

impl Model for ArithModel {
    fn spec(&self) -> &LanguageSpec {
        &self.spec
    }

    fn domain(&self, _sort: Option<&str>) -> Domain {
        Domain::Naturals
    }

    fn constant(&self, c: &str) -> Option<Value> {
        match c {
            "0" => Some(Value::Nat(0)),
            "1" => Some(Value::Nat(1)),
            _ => None,
        }
    }

    fn function(&self, f: &str, args: &[Value], max_bits: u64) -> Prim<'_, Value> {
        let [a, b] = args else {
            return Prim::Unknown(Reason::MissingReferent);
        };
        let bits = match f {
            "+" => Some(a.bits().max(b.bits()) + 1),
            "*" => Some(a.bits() + b.bits()),
            "^" => value::pow_bits(a, b),
            _ => return Prim::Unknown(Reason::MissingReferent),
        };
        if bits.map_or(true, |n| n > max_bits) {
            return Prim::TooLarge;
        }
        let r = match f {
            "+" => value::add(a, b),
            "*" => value::mul(a, b),
            _ => value::pow(a, b),
        };
        match r {
            Some(v) => Prim::Done(v),
            None => Prim::Unknown(Reason::MissingReferent),
        }
    }

    fn relation(&self, r: &str, args: &[Value]) -> Prim<'_, bool> {
        match compare_rel(r, args) {
            Some(b) => Prim::Done(b),
            None => Prim::Unknown(Reason::MissingReferent),
        }
    }

    fn is_finite(&self) -> bool {
        false
    }
}

/// Truth and reference for sentences of the base language, over codes or quotations.
pub struct MetaModel {
    spec: LanguageSpec,
    base: Box<dyn Model>,
    truth: String,
    reference: String,
    codec: ListCodec,
}

impl MetaModel {
    pub fn new(lang: &StdLanguage, base: Box<dyn Model>) -> Self {
        let (truth, reference) = lnc_languages::meta_symbols(lang.tag.meta_level());
        MetaModel {
            spec: lang.spec.clone(),
            base,
            truth,
            reference,
            codec: ListCodec::default(),
        }
    }

    fn numeric(&self, args: &[Value]) -> Option<Vec<Value>> {
        args.iter().map(|a| a.numeric(&self.codec)).collect()
    }

    /// `[code, ⌜x1⌝, a1, ..]` as a base expression and the assignment it carries.
    fn target(&self, args: &[Value]) -> Option<(Expr, Env)> {
        let expr = self.decode(args.first()?)?;
        let mut env = Env::new();
        for pair in args[1..].chunks(2) {
            let [var, val] = pair else { return None };
            let Expr::Var(x) = self.decode(var)? else {
                return None;
            };
            env.set(&x, val.numeric(&self.codec)?);
        }
        let closed = expr.free_vars().iter().all(|v| env.get(v).is_some());
        (closed && well_formed(self.base.spec(), &expr).ok()).then_some((expr, env))
    }

    fn decode(&self, v: &Value) -> Option<Expr> {
        match v {
            Value::Syn(e) => Some(e.clone()),
            n => self.codec.decode_expr(self.base.spec(), &n.to_big()?).ok(),
        }
    }
}

impl Model for MetaModel {
    fn spec(&self) -> &LanguageSpec {
        &self.spec
    }

    fn domain(&self, sort: Option<&str>) -> Domain {
        self.base.domain(sort)
    }

    fn constant(&self, c: &str) -> Option<Value> {
        self.base.constant(c)
    }

    fn function(&self, f: &str, args: &[Value], max_bits: u64) -> Prim<'_, Value> {
        if f == self.reference {
            return match self.target(args) {
                Some((expr, env)) if expr.is_term() => Prim::Delegate {
                    model: self.base.as_ref(),
                    expr,
                    env,
                },
                _ => Prim::Unknown(Reason::MissingReferent),
            };
        }
        match self.numeric(args) {
            Some(a) => self.base.function(f, &a, max_bits),
            None => Prim::Unknown(Reason::MissingReferent),
        }
    }

    fn relation(&self, r: &str, args: &[Value]) -> Prim<'_, bool> {
        if r == self.truth {
            // Codes of non-sentences are simply not true.
            return match self.target(args) {
                Some((expr, env)) if expr.is_formula() => Prim::Delegate {
                    model: self.base.as_ref(),
                    expr,
                    env,
                },
                _ => Prim::Done(false),
            };
        }
        match self.numeric(args) {
            Some(a) => self.base.relation(r, &a),
            None => Prim::Unknown(Reason::MissingReferent),
        }
    }

    fn is_finite(&self) -> bool {
        self.base.is_finite()
    }

    fn may_diverge_symbol(&self, sym: &str) -> bool {
        if sym == self.truth || sym == self.reference {
            !self.base.is_finite()
        } else {
            self.base.may_diverge_symbol(sym)
        }
    }
}

/// Model of a standard language. Kripke extensions are saturated over
/// their registered sentences plus everything `extra` mentions.
pub fn model_for(lang: &StdLanguage, extra: &[Expr]) -> Box<dyn Model> {
    match &lang.tag {
        Tag::Gnt | Tag::Nt => Box::new(ArithModel::new(lang.spec.clone())),
        Tag::Fin(k) => Box::new(FinModel::new(u64::from(*k), lang.spec.clone())),
        Tag::KripkeOf(_) => Box::new(crate::kripke::KripkeModel::saturated(lang, extra)),
        Tag::MetaOf(b) => {
            let base = lnc_languages::make_std(b).expect("base of a valid meta tag");
            Box::new(MetaModel::new(lang, model_for(&base, &[])))
        }
    }
}
