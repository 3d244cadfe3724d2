//! Terms as `elt{x : Φ_t(x)}` and formulas in padded prefix form.

use lnc_eval::prefix::PrefixError;
use lnc_eval::{j_extension, to_prefix, PrefixFormula};
use lnc_russell::{arrow_form, RussellError};
use lnc_syntax::{Expr, LanguageSpec, NameSupply};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EltFormError {
    #[error("`{0}` has no `elt` operator")]
    NoElt(String),
    #[error("`{0}` is not a term")]
    NotTerm(String),
    #[error(transparent)]
    Russell(#[from] RussellError),
}

/// `elt{x : (t→x)}`, which refers to whatever `t` refers to.
pub fn to_elt_form(spec: &LanguageSpec, t: &Expr) -> Result<Expr, EltFormError> {
    if spec.qlo("elt").is_none() {
        return Err(EltFormError::NoElt(spec.name.to_string()));
    }
    if !t.is_term() {
        return Err(EltFormError::NotTerm(t.to_string()));
    }
    let x = NameSupply::avoiding("x", &[t]).fresh();
    let body = arrow_form(spec, t, &x)?;
    Ok(Expr::qlo1("elt", &x, vec![], body))
}

/// `Φ` as `∀y₁∃z₁ … ∀yₙ∃zₙ φ` with exactly `n` blocks, unused ones in front.
pub fn pad_prefix(phi: &Expr, n: usize) -> Result<PrefixFormula, PrefixError> {
    j_extension(&to_prefix(phi)?, n)
}
