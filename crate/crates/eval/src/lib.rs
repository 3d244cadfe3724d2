//! Three-valued, fuel-bounded semantics for the standard languages.

pub mod engine;
pub mod kripke;
pub mod model;
pub mod prefix;
pub mod value;
pub mod verify;

pub use engine::{Evaluator, Outcome, TermOutcome};
pub use kripke::{kripke_saturate, KripkeModel, Saturation, TruthSets};
pub use model::{model_for, ArithModel, Domain, FinModel, MetaModel, Model, Prim, Reason};
pub use prefix::{j_extension, n_true, to_prefix, PrefixFormula};
pub use value::Value;
pub use verify::{find_verification, verify, Verification};

use lnc_languages::StdLanguage;
use lnc_syntax::wf::{well_formed_formula, well_formed_term};
use lnc_syntax::Expr;
use thiserror::Error;

pub type Env = lnc_syntax::Assignment<Value>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("ill-formed input: {0}")]
    IllFormed(String),
    #[error("free variable `{0}` has no value")]
    Unassigned(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Evaluation<T> {
    pub outcome: T,
    pub steps: u64,
}

fn check(e: &Expr, env: &Env, report: lnc_syntax::WfReport) -> Result<(), EvalError> {
    if let Some(d) = report.first() {
        return Err(EvalError::IllFormed(d.to_string()));
    }
    match e.free_vars().into_iter().find(|v| env.get(v).is_none()) {
        Some(v) => Err(EvalError::Unassigned(v.to_string())),
        None => Ok(()),
    }
}

/// Validates and evaluates a formula of `lang`.
pub fn eval(lang: &StdLanguage, e: &Expr, env: &Env, fuel: u64) -> Result<Evaluation<Outcome>, EvalError> {
    check(e, env, well_formed_formula(&lang.spec, e))?;
    let model = model_for(lang, std::slice::from_ref(e));
    let mut ev = Evaluator::new(model.as_ref(), fuel);
    let outcome = ev.formula(e, env);
    Ok(Evaluation {
        outcome,
        steps: ev.steps_used(),
    })
}

/// Validates and evaluates a term of `lang`.
pub fn eval_term(lang: &StdLanguage, e: &Expr, env: &Env, fuel: u64) -> Result<Evaluation<TermOutcome>, EvalError> {
    check(e, env, well_formed_term(&lang.spec, e))?;
    let model = model_for(lang, std::slice::from_ref(e));
    let mut ev = Evaluator::new(model.as_ref(), fuel);
    let outcome = ev.term(e, env);
    Ok(Evaluation {
        outcome,
        steps: ev.steps_used(),
    })
}
