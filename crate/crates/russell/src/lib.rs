//! Russell reformulation ⟨φ⟩ and the arrow formulas `(t→x)` it is built from.
//!
//! Every term is replaced by an existential witness, so the result mentions
//! no operator terms and no `↓`. Fresh variables are `_r0, _r1, …`, drawn from
//! one supply per call so the output is byte-stable.

use lnc_syntax::schema::{theta_instance, InstantiateError};
use lnc_syntax::{length, Expr, LanguageSpec, Name, NameSupply, QuantKind, QuantTemplate, PRIMARY_SORT};
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum RussellError {
    #[error("spec `{0}` does not allow unbounded ∃")]
    NoUnboundedExists(String),
    #[error("sort `{0}` is not quantifiable, so its terms cannot be witnessed")]
    UnquantifiableSort(String),
    #[error("`{0}` is not declared")]
    Undeclared(String),
    #[error("schematic expressions have no reformulation")]
    Schematic,
    #[error("expected a {expected}, got `{got}`")]
    Class { expected: &'static str, got: String },
    #[error(transparent)]
    Theta(#[from] InstantiateError),
}

/// ⟨φ⟩.
pub fn russell_reformulate(spec: &LanguageSpec, phi: &Expr) -> Result<Expr, RussellError> {
    Reformulator::new(spec, &[phi])?.formula(phi)
}

/// `(t→x)`: the formula saying `x` is the referent of `t`. `x` should not occur in `t`.
pub fn arrow_form(spec: &LanguageSpec, t: &Expr, x: &str) -> Result<Expr, RussellError> {
    let xv = Expr::var(x);
    Reformulator::new(spec, &[t, &xv])?.arrow(t, &lnc_syntax::name(x))
}

struct Reformulator<'a> {
    spec: &'a LanguageSpec,
    names: NameSupply,
}

impl<'a> Reformulator<'a> {
    fn new(spec: &'a LanguageSpec, avoid: &[&Expr]) -> Result<Self, RussellError> {
        if !spec.allows(QuantTemplate::Exists) {
            return Err(RussellError::NoUnboundedExists(spec.name.to_string()));
        }
        Ok(Reformulator {
            spec,
            names: NameSupply::avoiding("_r", avoid),
        })
    }

    /// `∃x…` over a witness of `sort`, omitting the annotation for the primary sort.
    fn witness(&self, sort: &Name, var: &Name, body: Expr) -> Result<Expr, RussellError> {
        if &**sort == PRIMARY_SORT {
            return Ok(Expr::exists(var, body));
        }
        match self.spec.sort(sort) {
            Some(d) if d.quantifiable => Ok(Expr::Quant {
                kind: QuantKind::Exists,
                var: var.clone(),
                sort: Some(sort.clone()),
                bound: None,
                body: Box::new(body),
            }),
            Some(_) => Err(RussellError::UnquantifiableSort(sort.to_string())),
            None => Err(RussellError::Undeclared(sort.to_string())),
        }
    }

    /// `∃x₁…xₙ core(x₁…xₙ) ∧ (t₁→x₁) ∧ … ∧ (tₙ→xₙ)`.
    fn witnessed(
        &mut self,
        args: &[Expr],
        sort_of: impl Fn(usize) -> Name,
        core: impl FnOnce(Vec<Expr>) -> Expr,
    ) -> Result<Expr, RussellError> {
        let vars: Vec<Name> = args.iter().map(|_| self.names.fresh()).collect();
        let mut body = core(vars.iter().map(|v| Expr::Var(v.clone())).collect());
        let mut arrows = Vec::with_capacity(args.len());
        for (t, v) in args.iter().zip(&vars) {
            arrows.push(self.arrow(t, v)?);
        }
        if let Some(rest) = Expr::and_all(arrows) {
            body = Expr::and(body, rest);
        }
        for (i, v) in vars.iter().enumerate().rev() {
            body = self.witness(&sort_of(i), v, body)?;
        }
        Ok(body)
    }

    fn formula(&mut self, phi: &Expr) -> Result<Expr, RussellError> {
        match phi {
            Expr::And(a, b) => Ok(Expr::and(self.formula(a)?, self.formula(b)?)),
            Expr::Or(a, b) => Ok(Expr::or(self.formula(a)?, self.formula(b)?)),
            Expr::Quant {
                kind,
                var,
                sort,
                bound: None,
                body,
            } => Ok(Expr::Quant {
                kind: *kind,
                var: var.clone(),
                sort: sort.clone(),
                bound: None,
                body: Box::new(self.formula(body)?),
            }),
            Expr::Quant {
                kind,
                var,
                bound: Some(t),
                body,
                ..
            } => {
                let y = self.names.fresh();
                let arrow = self.arrow(t, &y)?;
                let inner = Expr::quant(*kind, var, Some(Expr::Var(y.clone())), self.formula(body)?);
                Ok(Expr::exists(&y, Expr::and(arrow, inner)))
            }
            Expr::Atom { rel, args, .. } if &**rel == "def" => {
                let [t] = args.as_slice() else {
                    return Err(RussellError::Class {
                        expected: "unary ↓",
                        got: lnc_syntax::display(phi),
                    });
                };
                let x = self.names.fresh();
                let arrow = self.arrow(t, &x)?;
                Ok(Expr::exists(&x, arrow))
            }
            Expr::Atom { rel, polarity, args } => {
                let decl = self
                    .spec
                    .relation(rel)
                    .ok_or_else(|| RussellError::Undeclared(rel.to_string()))?
                    .clone();
                let (rel, polarity) = (rel.clone(), *polarity);
                self.witnessed(args, |i| decl.arg_sort(i), |xs| Expr::Atom { rel, polarity, args: xs })
            }
            Expr::Hole { .. } | Expr::Neg(_) => Err(RussellError::Schematic),
            other => Err(RussellError::Class {
                expected: "formula",
                got: lnc_syntax::display(other),
            }),
        }
    }

    fn arrow(&mut self, t: &Expr, x: &Name) -> Result<Expr, RussellError> {
        let xv = Expr::Var(x.clone());
        match t {
            Expr::Var(_) | Expr::Const(_) | Expr::Quote(_) => Ok(Expr::eq(t.clone(), xv)),
            Expr::App { func, args } => {
                let decl = self
                    .spec
                    .function(func)
                    .ok_or_else(|| RussellError::Undeclared(func.to_string()))?
                    .clone();
                let func = func.clone();
                self.witnessed(args, |i| decl.arg_sort(i), |ys| Expr::eq(Expr::App { func, args: ys }, xv))
            }
            Expr::Qlo { .. } => {
                let theta = theta_instance(self.spec, t, &xv)?;
                self.names.avoid(&theta);
                self.formula(&theta)
            }
            Expr::Hole { .. } => Err(RussellError::Schematic),
            other => Err(RussellError::Class {
                expected: "term",
                got: lnc_syntax::display(other),
            }),
        }
    }
}

/// Documented bound on the fitted slope of `length(⟨φ⟩)` against `length(φ)`
/// for random sentences of operator depth at most 8.
///
/// The worst single ratio is not bounded: each nested description doubles.
pub const LENGTH_CONSTANT: f64 = 8.0;

/// Worst and average blow-up of `length(⟨φ⟩) / length(φ)` over a corpus.
#[derive(Debug, Clone, PartialEq)]
pub struct LengthReport {
    pub count: usize,
    pub max_ratio: f64,
    pub mean_ratio: f64,
    pub worst: Option<Expr>,
}

pub fn check_length_bound(spec: &LanguageSpec, corpus: &[Expr]) -> Result<LengthReport, RussellError> {
    let mut report = LengthReport {
        count: 0,
        max_ratio: 0.0,
        mean_ratio: 0.0,
        worst: None,
    };
    let mut total = 0.0;
    for phi in corpus {
        let ratio = length(&russell_reformulate(spec, phi)?) as f64 / length(phi).max(1) as f64;
        total += ratio;
        report.count += 1;
        if ratio > report.max_ratio {
            report.max_ratio = ratio;
            report.worst = Some(phi.clone());
        }
    }
    if report.count > 0 {
        report.mean_ratio = total / report.count as f64;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use lnc_languages::{make_std, Tag};

    fn fin2() -> LanguageSpec {
        make_std(&Tag::Fin(2)).unwrap().spec
    }

    fn show(spec: &LanguageSpec, src: &str) -> String {
        let e = lnc_syntax::parse_expr(spec, src).unwrap();
        lnc_syntax::display(&russell_reformulate(spec, &e).unwrap())
    }

    #[test]
    fn definedness_becomes_a_witness() {
        assert_eq!(show(&fin2(), "(def (+ 1 y))"), "∃_r0∃_r1∃_r2 _r1+_r2=_r0 ∧ 1=_r1 ∧ y=_r2");
    }

    #[test]
    fn atoms_are_wrapped_even_over_constants() {
        assert_eq!(show(&fin2(), "(= 0 0)"), "∃_r0∃_r1 _r0=_r1 ∧ 0=_r0 ∧ 0=_r1");
        assert_eq!(show(&fin2(), "(not (lt 0 1))"), "∃_r0∃_r1 _r0≮_r1 ∧ 0=_r0 ∧ 1=_r1");
    }

    #[test]
    fn bounded_quantifier_witnesses_its_bound() {
        assert_eq!(
            show(&fin2(), "(forall (x (lt x 1)) (= x x))"),
            "∃_r0 1=_r0 ∧ (∀x<_r0∃_r1∃_r2 _r1=_r2 ∧ x=_r1 ∧ x=_r2)"
        );
    }

    #[test]
    fn unbounded_quantifiers_pass_through() {
        assert_eq!(show(&fin2(), "(exists x (def x))"), "∃x∃_r0 x=_r0");
    }

    #[test]
    fn operator_terms_expand_through_theta() {
        let s = fin2();
        let t = lnc_syntax::parse_expr(&s, "(elt z (= z 1))").unwrap();
        let got = arrow_form(&s, &t, "x").unwrap();
        assert!(!got.contains_qlo());
        assert!(got.occurs_free("x"));
        assert_eq!(got.free_vars().len(), 1);
    }

    #[test]
    fn needs_unbounded_exists() {
        let mut s = fin2();
        s.quantifiers.remove(&QuantTemplate::Exists);
        assert!(matches!(
            russell_reformulate(&s, &Expr::eq(Expr::var("a"), Expr::var("a"))),
            Err(RussellError::NoUnboundedExists(_))
        ));
    }

    #[test]
    fn variables_do_not_collide_with_input_names() {
        let s = fin2();
        let e = lnc_syntax::parse_expr(&s, "(exists _r0 (= _r0 _r1))").unwrap();
        let r = russell_reformulate(&s, &e).unwrap();
        let mut fv = r.free_vars();
        fv.sort();
        assert_eq!(fv, vec![lnc_syntax::name("_r1")]);
    }

    #[test]
    fn singleton_corpus_has_finite_ratio() {
        let s = fin2();
        let r = check_length_bound(&s, &[lnc_syntax::parse_expr(&s, "(= 0 0)").unwrap()]).unwrap();
        assert_eq!(r.count, 1);
        assert!((r.max_ratio - 5.0).abs() < 1e-9);
    }
}
