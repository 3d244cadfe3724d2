//! Partial validation: pairing each step with the assignments it holds under,
//! checked against the finite-domain semantics.

use crate::proof::{Proof, StepKind};
use lnc_eval::{eval, eval_term, Env, Outcome, TermOutcome, Value};
use lnc_languages::{StdLanguage, Tag};
use lnc_syntax::{Expr, Name};
use std::fmt;

/// Evaluation budget per formula.
pub const VALIDATION_FUEL: u64 = 200_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationFailure {
    pub step: usize,
    pub reason: String,
}

impl fmt::Display for ValidationFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "step {}: {}", self.step + 1, self.reason)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PartialValidation {
    /// `sets[j]` is V_j, for the steps validated so far.
    pub sets: Vec<Vec<Env>>,
    pub failure: Option<ValidationFailure>,
}

impl PartialValidation {
    pub fn length(&self) -> usize {
        self.sets.len()
    }

    pub fn is_complete(&self, proof: &Proof) -> bool {
        self.failure.is_none() && self.sets.len() == proof.steps.len()
    }
}

fn env_text(env: &Env) -> String {
    let parts: Vec<String> = env.iter().map(|(n, v)| format!("{n}={v}")).collect();
    format!("[{}]", parts.join(", "))
}

struct Validator<'a> {
    lang: &'a StdLanguage,
    domain: u32,
    sets: Vec<Vec<Env>>,
}

impl Validator<'_> {
    fn holds(&self, phi: &Expr, env: &Env) -> bool {
        matches!(eval(self.lang, phi, env, VALIDATION_FUEL), Ok(e) if e.outcome == Outcome::True)
    }

    fn value(&self, t: &Expr, env: &Env) -> Option<u64> {
        match eval_term(self.lang, t, env, VALIDATION_FUEL) {
            Ok(e) => match e.outcome {
                TermOutcome::Value(Value::Nat(n)) => Some(n),
                _ => None,
            },
            Err(_) => None,
        }
    }

    fn extend(&self, base: &[Env], var: &Name, keep: impl Fn(&Env, u64) -> bool) -> Vec<Env> {
        let mut out = Vec::new();
        for b in base {
            for c in 0..u64::from(self.domain) {
                if keep(b, c) {
                    out.push(b.clone().with(var, Value::Nat(c)));
                }
            }
        }
        out
    }

    fn step(&self, proof: &Proof, j: usize, sigma: &Env) -> Result<Vec<Env>, String> {
        let s = &proof.steps[j];
        let parent: Vec<Env> = match s.depends.iter().next_back() {
            Some(i) => self.sets[*i].clone(),
            None => vec![sigma.clone()],
        };
        let v = match &s.kind {
            StepKind::Assume(_) | StepKind::Then { .. } => parent,
            StepKind::Fix { var, bound } => self.extend(&parent, var, |b, c| match bound {
                None => true,
                Some(t) => self.value(t, b).is_some_and(|n| c < n),
            }),
            StepKind::Find { var, bound, formula } => {
                let v = self.extend(&parent, var, |b, c| {
                    let below = bound.as_ref().map_or(true, |t| self.value(t, b).is_some_and(|n| c < n));
                    below && self.holds(formula, &b.clone().with(var, Value::Nat(c)))
                });
                for b in &parent {
                    let witnessed = v.iter().any(|w| b.iter().all(|(n, x)| n == var || w.get(n) == Some(x)));
                    if !witnessed {
                        return Err(format!("no witness under {}", env_text(b)));
                    }
                }
                v
            }
            StepKind::Case { index, formula } => {
                let v: Vec<Env> = parent.iter().filter(|b| self.holds(formula, b)).cloned().collect();
                // The partner case covers the rest; checked when the second case is reached.
                if *index == 2 {
                    if let Some(first) = self.partner(proof, j) {
                        if let Some(b) = parent.iter().find(|b| !v.contains(b) && !self.sets[first].contains(b)) {
                            return Err(format!("neither case holds under {}", env_text(b)));
                        }
                    }
                }
                v
            }
            StepKind::FixInd { var, formula } => {
                self.extend(&parent, var, |b, c| self.holds(formula, &b.clone().with(var, Value::Nat(c))))
            }
        };
        if let Some(phi) = s.kind.conclusion() {
            if let Some(b) = v.iter().find(|b| !self.holds(phi, b)) {
                return Err(format!("{phi} is not true under {}", env_text(b)));
            }
        }
        Ok(v)
    }

    /// The `Case 1` step sharing the disjunction of case step `j`.
    fn partner(&self, proof: &Proof, j: usize) -> Option<usize> {
        let d = proof.steps[j].depends.iter().next_back()?;
        (0..j).rev().find(|c| {
            matches!(proof.steps[*c].kind, StepKind::Case { index: 1, .. })
                && proof.steps[*c].depends.iter().next_back() == Some(d)
        })
    }
}

/// Extends a partial validation step by step until a clause fails or the proof ends.
///
/// Panics unless `lang` is a finite language `FIN(k)`.
pub fn partially_validate(proof: &Proof, lang: &StdLanguage, sigma: &Env) -> PartialValidation {
    let Tag::Fin(k) = lang.tag else {
        panic!("partial validation needs a finite domain, got {}", lang.tag);
    };
    let mut v = Validator {
        lang,
        domain: k,
        sets: Vec::new(),
    };
    for j in 0..proof.steps.len() {
        match v.step(proof, j, sigma) {
            Ok(set) => v.sets.push(set),
            Err(reason) => {
                return PartialValidation {
                    sets: v.sets,
                    failure: Some(ValidationFailure { step: j, reason }),
                }
            }
        }
    }
    PartialValidation {
        sets: v.sets,
        failure: None,
    }
}

/// Every assignment of the proof's global variables over `FIN(k)`.
pub fn all_assignments(proof: &Proof, k: u32) -> Vec<Env> {
    let mut out = vec![Env::new()];
    for v in &proof.global_vars {
        out = out
            .into_iter()
            .flat_map(|e| (0..u64::from(k)).map(move |c| e.clone().with(v, Value::Nat(c))))
            .collect();
    }
    out
}
