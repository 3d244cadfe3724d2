//! Proof-driven strategies: check candidate proofs with the kernel, then
//! collect what the accepted ones guarantee.

use crate::halting::halting_subject;
use crate::toy::Run;
use lnc_eval::value::compare;
use lnc_eval::{eval_term, Env, TermOutcome, Value};
use lnc_kernel::{check_proof, AxiomSystem, Proof};
use lnc_languages::StdLanguage;
use lnc_syntax::{print, Expr};
use rayon::prelude::*;
use std::cmp::Ordering;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    Accepted,
    TooLong,
    /// The conclusion does not have the shape the strategy reads.
    WrongConclusion,
    Rejected(String),
    /// The proof is valid but its claim failed when executed.
    SoundnessViolation(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct AuditEntry {
    pub index: usize,
    pub length: usize,
    /// The program or term the proof is about.
    pub subject: Option<String>,
    pub value: Option<Value>,
    pub status: Status,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StrategyReport {
    /// Largest accepted value; 0 when nothing was accepted.
    pub value: Value,
    pub witness: Option<String>,
    /// Set when no proof was accepted, so `value` is the vacuous 0.
    pub no_proofs: bool,
    pub log: Vec<AuditEntry>,
}

impl StrategyReport {
    pub fn violations(&self) -> usize {
        self.log.iter().filter(|e| matches!(e.status, Status::SoundnessViolation(_))).count()
    }

    pub fn accepted(&self) -> usize {
        self.log.iter().filter(|e| e.status == Status::Accepted).count()
    }

    fn from_log(log: Vec<AuditEntry>) -> Self {
        let best = log
            .iter()
            .filter(|e| e.status == Status::Accepted)
            .filter_map(|e| Some((e.value.as_ref()?, e.subject.as_deref().unwrap_or(""))))
            .min_by(|a, b| compare(b.0, a.0).unwrap_or(Ordering::Equal).then_with(|| a.1.cmp(b.1)));
        StrategyReport {
            value: best.map_or(Value::Nat(0), |b| b.0.clone()),
            witness: best.map(|b| b.1.to_string()),
            no_proofs: best.is_none(),
            log,
        }
    }
}

fn entry(index: usize, length: usize) -> AuditEntry {
    AuditEntry {
        index,
        length,
        subject: None,
        value: None,
        status: Status::Accepted,
    }
}

/// Runs every program that some proof of length `≤ n` in `corpus` shows to
/// halt, and reports the largest output.
///
/// A proven program that does not halt within `fuel` is a soundness
/// violation and contributes nothing.
pub fn axiomatic_strategy(a: &AxiomSystem, corpus: &[Proof], n: usize, fuel: u64) -> StrategyReport {
    let log = corpus
        .par_iter()
        .enumerate()
        .map(|(index, p)| {
            let mut e = entry(index, p.length());
            if e.length > n {
                e.status = Status::TooLong;
                return e;
            }
            let Some(program) = halting_subject(p) else {
                e.status = Status::WrongConclusion;
                return e;
            };
            e.subject = Some(program.to_string());
            if let Some(r) = check_proof(a, p).rejection() {
                e.status = Status::Rejected(r.to_string());
                return e;
            }
            match program.run(fuel) {
                Run::Halted { output, .. } => e.value = Some(Value::Nat(output)),
                Run::OutOfFuel => e.status = Status::SoundnessViolation(format!("still running after {fuel} steps")),
            }
            e
        })
        .collect();
    StrategyReport::from_log(log)
}

/// The term `t` of a conclusion `t↓` with no free variables.
fn named_term(p: &Proof) -> Option<&Expr> {
    match p.conclusion()? {
        Expr::Atom { rel, args, .. } if &**rel == "def" && args.len() == 1 && args[0].is_closed() => Some(&args[0]),
        _ => None,
    }
}

/// Evaluates every term that some proof of length `< n` in `corpus` shows to
/// refer, and reports the largest referent.
pub fn selfmeta_strategy(lang: &StdLanguage, a: &AxiomSystem, corpus: &[Proof], n: usize, fuel: u64) -> StrategyReport {
    let log = corpus
        .par_iter()
        .enumerate()
        .map(|(index, p)| {
            let mut e = entry(index, p.length());
            if e.length >= n {
                e.status = Status::TooLong;
                return e;
            }
            let Some(t) = named_term(p) else {
                e.status = Status::WrongConclusion;
                return e;
            };
            e.subject = Some(print(t));
            if let Some(r) = check_proof(a, p).rejection() {
                e.status = Status::Rejected(r.to_string());
                return e;
            }
            match eval_term(lang, t, &Env::new(), fuel).map(|ev| ev.outcome) {
                Ok(TermOutcome::Value(v)) if v.is_number() => e.value = Some(v),
                Ok(other) => e.status = Status::SoundnessViolation(format!("proved to refer, evaluated to {other:?}")),
                Err(err) => e.status = Status::SoundnessViolation(err.to_string()),
            }
            e
        })
        .collect();
    StrategyReport::from_log(log)
}

/// Self-contained text of the axiomatic strategy at `n`: a fixed procedure
/// plus `n` in binary, one token per bit.
pub fn strategy_description(system: &str, n: usize) -> Vec<String> {
    let mut tokens: Vec<String> = ["(axiomatic-strategy", system, "(enumerate-proofs", "check", "run", "max)", "(n"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    tokens.extend(format!("{n:b}").chars().map(String::from));
    tokens.push(")".into());
    tokens.push(")".into());
    tokens
}
