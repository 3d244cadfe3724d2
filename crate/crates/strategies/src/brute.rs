//! The brute-force term `φ(n)`: the largest referent of any term of length `≤ n`.
//!
//! `φ(n)` lives in the base language plus a small meta fragment: a
//! quantifiable sort `tm` of closed base terms, `fst` if the base lacks it, and one relation
//! `sat(t, x, y₁, z₁, …, yₙ, zₙ)`, true when `|t| ≤ n` and the matrix of the
//! `n`-block prefix form of `(t→x)` has a verification under those values.
//! With `Val_n(t) = elt{x : ∀y₁∃z₁ … ∀yₙ∃zₙ sat(t, x, ȳ, z̄)}`,
//!
//! `φ(n) = max{Val_n(t) : t ∈ tm, ⟨Val_n(t)↓⟩}`.

use crate::elt_form::pad_prefix;
use lnc_eval::prefix::PrefixError;
use lnc_eval::value::compare;
use lnc_eval::{eval_term, find_verification, Domain, Env, Evaluator, Model, Prim, PrefixFormula, Reason, TermOutcome, Value};
use lnc_languages::derived::desugar_max_sorted;
use lnc_languages::{StdLanguage, Tag};
use lnc_russell::{arrow_form, russell_reformulate, RussellError};
use lnc_syntax::enumerate::Vocabulary;
use lnc_syntax::spec::{fst_decl, RelationDecl, SortDecl};
use lnc_syntax::{length, name, print, well_formed, Expr, LanguageSpec, NotNegatable, PRIMARY_SORT};
use rayon::prelude::*;
use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::HashMap;
use thiserror::Error;

pub const TERM_SORT: &str = "tm";
pub const SAT: &str = "sat";

/// Documented bound on `length(φ(n)) / n` for `4 ≤ n ≤ 64`.
pub const LENGTH_CONSTANT: f64 = 90.0;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BruteError {
    #[error("`{0}` is not classical")]
    NotClassical(Tag),
    #[error("`{0}` has no `elt` operator")]
    NoElt(Tag),
    #[error(transparent)]
    Russell(#[from] RussellError),
    #[error(transparent)]
    Negation(#[from] NotNegatable),
    #[error("constructed term is ill-formed: {0}")]
    IllFormed(String),
}

/// The base language with the `tm` sort and the `n`-ary satisfaction relation.
pub fn brute_language(base: &StdLanguage, n: usize) -> Result<StdLanguage, BruteError> {
    if !base.is_classical() {
        return Err(BruteError::NotClassical(base.tag.clone()));
    }
    if base.spec.qlo("elt").is_none() {
        return Err(BruteError::NoElt(base.tag.clone()));
    }
    let mut spec = base.spec.clone();
    spec.name = name(&format!("{}+sat{n}", base.tag));
    spec.sorts.push(SortDecl {
        name: name(TERM_SORT),
        quantifiable: true,
    });
    let mut sorts = vec![TERM_SORT];
    sorts.extend(std::iter::repeat(PRIMARY_SORT).take(2 * n + 1));
    spec.relations.push(RelationDecl::new(SAT, 2 * n + 2).strong().sorts(&sorts));
    // `max` is spelled with `fst`, which finite arithmetic does not declare.
    if spec.qlo("fst").is_none() {
        spec.qlos.push(fst_decl());
    }
    Ok(StdLanguage {
        tag: base.tag.clone(),
        spec,
        sentences: Vec::new(),
    })
}

/// `Val_n(t)`.
pub fn val_term(n: usize, t: &Expr) -> Expr {
    let mut args = vec![t.clone(), Expr::var("x")];
    for i in 1..=n {
        args.push(Expr::var(&format!("y{i}")));
        args.push(Expr::var(&format!("z{i}")));
    }
    let body = (1..=n).rev().fold(Expr::atom(SAT, args), |acc, i| {
        Expr::forall(&format!("y{i}"), Expr::exists(&format!("z{i}"), acc))
    });
    Expr::qlo1("elt", "x", vec![], body)
}

#[derive(Debug, Clone, PartialEq)]
pub struct BruteTerm {
    pub n: usize,
    pub lang: StdLanguage,
    pub term: Expr,
}

impl BruteTerm {
    pub fn length(&self) -> usize {
        length(&self.term)
    }
}

/// Writes out `φ(n)` for a classical language with `elt`.
pub fn synth_brute_force_term(base: &StdLanguage, n: usize) -> Result<BruteTerm, BruteError> {
    let lang = brute_language(base, n)?;
    let t = Expr::var("t");
    let val = val_term(n, &t);
    let referring = russell_reformulate(&lang.spec, &Expr::defined(val.clone()))?;
    let term = desugar_max_sorted(&lang.spec, &val, "t", TERM_SORT, &referring)?;
    let report = well_formed(&lang.spec, &term);
    if !report.ok() {
        return Err(BruteError::IllFormed(format!("{report:?}")));
    }
    Ok(BruteTerm { n, lang, term })
}

/// Interprets the meta fragment over a finite base model.
pub struct BruteModel {
    spec: LanguageSpec,
    base_spec: LanguageSpec,
    base: Box<dyn Model>,
    n: usize,
    terms: Vec<Value>,
    fuel: u64,
    matrices: RefCell<HashMap<Expr, Option<PrefixFormula>>>,
}

impl BruteModel {
    pub fn new(base: &StdLanguage, brute: &StdLanguage, n: usize, fuel: u64) -> Self {
        let terms = Vocabulary::from_spec(&base.spec)
            .closed_terms_up_to(n)
            .into_iter()
            .map(Value::Syn)
            .collect();
        BruteModel {
            spec: brute.spec.clone(),
            base_spec: base.spec.clone(),
            base: lnc_eval::model_for(base, &[]),
            n,
            terms,
            fuel,
            matrices: RefCell::new(HashMap::new()),
        }
    }

    /// The padded prefix form of `(t→x)`, or `None` if it needs more than `n` blocks.
    fn prefix(&self, t: &Expr) -> Result<Option<PrefixFormula>, Reason> {
        if let Some(p) = self.matrices.borrow().get(t) {
            return Ok(p.clone());
        }
        let arrow = arrow_form(&self.base_spec, t, "x").map_err(|_| Reason::MissingReferent)?;
        let p = match pad_prefix(&arrow, self.n) {
            Ok(p) => Some(p),
            Err(PrefixError::BelowIndex { .. }) => None,
            Err(_) => return Err(Reason::MissingReferent),
        };
        self.matrices.borrow_mut().insert(t.clone(), p.clone());
        Ok(p)
    }

    fn sat(&self, args: &[Value]) -> Prim<'_, bool> {
        let Some((Value::Syn(t), values)) = args.split_first() else {
            return Prim::Unknown(Reason::MissingReferent);
        };
        if length(t) > self.n || values.len() != 2 * self.n + 1 {
            return Prim::Done(false);
        }
        let p = match self.prefix(t) {
            Ok(Some(p)) => p,
            Ok(None) => return Prim::Done(false),
            Err(r) => return Prim::Unknown(r),
        };
        let mut env = Env::new().with("x", values[0].clone());
        for (i, (y, z)) in p.blocks.iter().enumerate() {
            env.set(y, values[1 + 2 * i].clone());
            env.set(z, values[2 + 2 * i].clone());
        }
        match find_verification(self.base.as_ref(), &p.matrix, &env, self.fuel) {
            Ok(v) => Prim::Done(v.is_some()),
            Err(_) => Prim::Unknown(Reason::MissingReferent),
        }
    }
}

impl Model for BruteModel {
    fn spec(&self) -> &LanguageSpec {
        &self.spec
    }

    fn domain(&self, sort: Option<&str>) -> Domain {
        match sort {
            Some(TERM_SORT) => Domain::Finite(self.terms.clone()),
            other => self.base.domain(other),
        }
    }

    fn constant(&self, c: &str) -> Option<Value> {
        self.base.constant(c)
    }

    fn function(&self, f: &str, args: &[Value], max_bits: u64) -> Prim<'_, Value> {
        self.base.function(f, args, max_bits)
    }

    fn relation(&self, r: &str, args: &[Value]) -> Prim<'_, bool> {
        if r == SAT {
            self.sat(args)
        } else {
            self.base.relation(r, args)
        }
    }

    fn is_finite(&self) -> bool {
        self.base.is_finite()
    }
}

/// The referent of `φ(n)`, computed by evaluating the term itself.
///
/// Needs a finite base, since `sat` decides `n`-truth by search.
pub fn denotation(base: &StdLanguage, phi: &BruteTerm, fuel: u64) -> TermOutcome {
    let model = BruteModel::new(base, &phi.lang, phi.n, fuel);
    Evaluator::new(&model, fuel).term(&phi.term, &Env::new())
}

/// Best referent among closed terms of length `≤ n`.
#[derive(Debug, Clone, PartialEq)]
pub struct MaxEntry {
    /// `None` when no term of that length refers; the contest then scores 0.
    pub value: Option<Value>,
    pub witness: Option<Expr>,
    pub terms: usize,
    pub referring: usize,
}

impl MaxEntry {
    /// The score, with the vacuous maximum taken as 0.
    pub fn score(&self) -> Value {
        self.value.clone().unwrap_or(Value::Nat(0))
    }
}

/// Larger value first, then the lexicographically least printed term.
fn better(a: &(Value, String, Expr), b: &(Value, String, Expr)) -> Ordering {
    compare(&b.0, &a.0).unwrap_or(Ordering::Equal).then_with(|| a.1.cmp(&b.1))
}

/// The oracle: evaluate every closed term of length `≤ n` with `fuel` each.
pub fn enumerate_max(lang: &StdLanguage, n: usize, fuel: u64) -> MaxEntry {
    let terms = Vocabulary::from_spec(&lang.spec).closed_terms_up_to(n);
    let referring: Vec<(Value, String, Expr)> = terms
        .par_iter()
        .filter_map(|t| match eval_term(lang, t, &Env::new(), fuel) {
            Ok(ev) => match ev.outcome {
                TermOutcome::Value(v) if v.is_number() => Some((v, print(t), t.clone())),
                _ => None,
            },
            Err(_) => None,
        })
        .collect();
    let best = referring.iter().min_by(|a, b| better(a, b));
    MaxEntry {
        value: best.map(|b| b.0.clone()),
        witness: best.map(|b| b.2.clone()),
        terms: terms.len(),
        referring: referring.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use lnc_languages::make_std;

    #[test]
    fn gnt_is_rejected() {
        let g = make_std(&Tag::Gnt).unwrap();
        assert_eq!(synth_brute_force_term(&g, 4), Err(BruteError::NotClassical(Tag::Gnt)));
    }

    #[test]
    fn val_has_n_blocks() {
        let v = val_term(2, &Expr::var("t"));
        assert_eq!(print(&v), "(elt x (forall y1 (exists z1 (forall y2 (exists z2 (sat t x y1 z1 y2 z2))))))");
    }

    #[test]
    fn oracle_on_gnt_single_token() {
        let g = make_std(&Tag::Gnt).unwrap();
        let m = enumerate_max(&g, 1, 1000);
        assert_eq!(m.value, Some(Value::Nat(1)));
        assert_eq!(m.witness.map(|w| print(&w)), Some("1".into()));
    }
}
