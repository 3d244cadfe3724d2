//! Kripke extensions of finite classical languages: truth sets built by
//! rounds of production until nothing new is added.

use crate::engine::{Evaluator, Outcome};
use crate::model::{Domain, FinModel, Model, Prim, Reason};
use crate::value::Value;
use crate::Env;
use lnc_languages::{StdLanguage, Tag, STRING_SORT};
use lnc_syntax::{Expr, LanguageSpec};
use std::collections::BTreeSet;

/// Fuel for one sentence of the finite base; evaluation there always terminates.
const SENTENCE_FUEL: u64 = 1 << 40;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TruthSets {
    pub true_set: BTreeSet<Expr>,
    pub false_set: BTreeSet<Expr>,
}

impl TruthSets {
    pub fn label(&self, phi: &Expr) -> Outcome {
        if self.true_set.contains(phi) {
            Outcome::True
        } else if self.false_set.contains(phi) {
            Outcome::False
        } else {
            Outcome::Unknown(Reason::Ungrounded)
        }
    }

    pub fn is_subset(&self, other: &TruthSets) -> bool {
        self.true_set.is_subset(&other.true_set) && self.false_set.is_subset(&other.false_set)
    }
}

#[derive(Debug, Clone)]
pub struct Saturation {
    pub universe: Vec<Expr>,
    /// Sets after each round; entry 0 is the empty start.
    pub rounds: Vec<TruthSets>,
    /// First round whose sets the next round leaves unchanged.
    pub fixpoint: Option<usize>,
}

impl Saturation {
    pub fn last(&self) -> &TruthSets {
        self.rounds.last().expect("round 0 is always present")
    }

    /// Sets after `round` rounds, or the final ones if the run stopped earlier.
    pub fn at(&self, round: usize) -> &TruthSets {
        self.rounds.get(round).unwrap_or_else(|| self.last())
    }
}

pub struct KripkeModel {
    spec: LanguageSpec,
    fin: FinModel,
    sentences: Vec<(String, Expr)>,
    sets: TruthSets,
}

impl KripkeModel {
    fn with_sets(lang: &StdLanguage, sets: TruthSets) -> Self {
        let Tag::KripkeOf(base) = &lang.tag else {
            panic!("not a Kripke extension: {}", lang.tag)
        };
        let Tag::Fin(k) = **base else {
            panic!("Kripke base must be finite: {base}")
        };
        KripkeModel {
            spec: lang.spec.clone(),
            fin: FinModel::new(u64::from(k), lang.spec.clone()),
            sentences: lang.sentences.iter().map(|(n, e)| (n.to_string(), e.clone())).collect(),
            sets,
        }
    }

    /// Model over the fixpoint reached from the registered sentences and `extra`.
    pub fn saturated(lang: &StdLanguage, extra: &[Expr]) -> Self {
        let sat = kripke_saturate(lang, extra, usize::MAX);
        KripkeModel::with_sets(lang, sat.last().clone())
    }

    pub fn sets(&self) -> &TruthSets {
        &self.sets
    }
}

impl Model for KripkeModel {
    fn spec(&self) -> &LanguageSpec {
        &self.spec
    }

    fn domain(&self, sort: Option<&str>) -> Domain {
        match sort {
            Some(STRING_SORT) => Domain::Finite(Vec::new()),
            _ => self.fin.domain(sort),
        }
    }

    fn constant(&self, c: &str) -> Option<Value> {
        match self.sentences.iter().find(|(n, _)| n == c) {
            Some((_, e)) => Some(Value::Syn(e.clone())),
            None => self.fin.constant(c),
        }
    }

    fn function(&self, f: &str, args: &[Value], max_bits: u64) -> Prim<'_, Value> {
        self.fin.function(f, args, max_bits)
    }

    fn relation(&self, r: &str, args: &[Value]) -> Prim<'_, bool> {
        match (r, args) {
            ("true", [Value::Syn(phi)]) => match self.sets.label(phi) {
                Outcome::True => Prim::Done(true),
                Outcome::False => Prim::Done(false),
                Outcome::Unknown(r) => Prim::Unknown(r),
            },
            ("true", _) => Prim::Unknown(Reason::MissingReferent),
            _ => self.fin.relation(r, args),
        }
    }

    fn is_finite(&self) -> bool {
        true
    }
}

/// Sentences named inside `e`, by quotation or by a registered constant.
fn mentioned(lang: &StdLanguage, e: &Expr, out: &mut Vec<Expr>) {
    e.walk(&mut |n| match n {
        Expr::Quote(inner) if inner.is_formula() => out.push((**inner).clone()),
        Expr::Const(c) => {
            if let Some(s) = lang.registered(c) {
                out.push(s.clone());
            }
        }
        _ => {}
    });
}

/// Closure of the registered sentences and `extra` under naming.
pub fn universe(lang: &StdLanguage, extra: &[Expr]) -> Vec<Expr> {
    let mut todo: Vec<Expr> = lang.sentences.iter().map(|(_, e)| e.clone()).collect();
    for e in extra {
        if e.is_formula() && e.is_closed() {
            todo.push(e.clone());
        }
        mentioned(lang, e, &mut todo);
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    while let Some(e) = todo.pop() {
        if seen.insert(e.clone()) {
            mentioned(lang, &e, &mut todo);
            out.push(e);
        }
    }
    out.sort();
    out
}

/// Rounds of production: a sentence enters the true (false) set once the
/// finite base, reading truth from the previous round's sets, makes it
/// true (false). Stops at the fixpoint or after `max_rounds` rounds.
pub fn kripke_saturate(lang: &StdLanguage, extra: &[Expr], max_rounds: usize) -> Saturation {
    let universe = universe(lang, extra);
    let mut rounds = vec![TruthSets::default()];
    let mut fixpoint = None;
    for r in 0..max_rounds {
        let model = KripkeModel::with_sets(lang, rounds[r].clone());
        let mut next = TruthSets::default();
        for phi in &universe {
            match Evaluator::new(&model, SENTENCE_FUEL).formula(phi, &Env::new()) {
                Outcome::True => {
                    next.true_set.insert(phi.clone());
                }
                Outcome::False => {
                    next.false_set.insert(phi.clone());
                }
                Outcome::Unknown(_) => {}
            }
        }
        let stable = next == rounds[r];
        rounds.push(next);
        if stable {
            fixpoint = Some(r);
            break;
        }
    }
    Saturation {
        universe,
        rounds,
        fixpoint,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use lnc_languages::make_kripke;

    fn lang() -> StdLanguage {
        let tag = Tag::KripkeOf(Box::new(Tag::Fin(2)));
        make_kripke(&tag, &[("liar", "(not (true liar))"), ("teller", "(true teller)")]).unwrap()
    }

    #[test]
    fn liar_and_teller_stay_out() {
        let l = lang();
        let sat = kripke_saturate(&l, &[], 100);
        let fix = sat.fixpoint.expect("finite universe saturates");
        for name in ["liar", "teller"] {
            let s = l.registered(name).unwrap();
            assert_eq!(sat.at(fix).label(s), Outcome::Unknown(Reason::Ungrounded));
        }
    }

    #[test]
    fn quoted_identity_becomes_true_by_round_two() {
        let l = lang();
        let e = l.parse("(true (quote (= 0 0)))").unwrap();
        let sat = kripke_saturate(&l, std::slice::from_ref(&e), 100);
        assert_eq!(sat.at(2).label(&e), Outcome::True);
        assert_eq!(sat.at(1).label(&e), Outcome::Unknown(Reason::Ungrounded));
    }

    #[test]
    fn rounds_grow() {
        let l = lang();
        let e = l.parse("(or (true liar) (true (quote (true (quote (lt 0 1))))))").unwrap();
        let sat = kripke_saturate(&l, std::slice::from_ref(&e), 100);
        for w in sat.rounds.windows(2) {
            assert!(w[0].is_subset(&w[1]));
        }
        assert_eq!(sat.last().label(&e), Outcome::True);
    }
}
