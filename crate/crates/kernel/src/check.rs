//! The proof checker: structural conditions (I)–(VIII) and the admissibility
//! of every inference, (2a)–(2f) plus reflection.

use crate::axioms::{reflection_name, AxiomSystem, Rule};
use crate::matching::{instantiate, Bindings, MatchError, Matcher};
use crate::proof::{Justification, Proof, StepKind};
use lnc_syntax::wf::{well_formed_formula, well_formed_term};
use lnc_syntax::{Expr, Name, Polarity, QuantKind, QuantTemplate};
use std::collections::BTreeSet;
use std::fmt;

/// Which clause of an inference's admissibility failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Clause {
    Axiom,
    Rule,
    Generalization,
    Specification,
    Cases,
    Induction,
    Reflection,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Condition {
    WellFormed,
    I,
    II,
    III,
    IV,
    V,
    VI,
    VII,
    VIII,
    IX(Clause),
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Condition::WellFormed => "well-formedness",
            Condition::I => "(I)",
            Condition::II => "(II)",
            Condition::III => "(III)",
            Condition::IV => "(IV)",
            Condition::V => "(V)",
            Condition::VI => "(VI)",
            Condition::VII => "(VII)",
            Condition::VIII => "(VIII)",
            Condition::IX(Clause::Axiom) => "(2a)",
            Condition::IX(Clause::Rule) => "(2b)",
            Condition::IX(Clause::Generalization) => "(2c)",
            Condition::IX(Clause::Specification) => "(2d)",
            Condition::IX(Clause::Cases) => "(2e)",
            Condition::IX(Clause::Induction) => "(2f)",
            Condition::IX(Clause::Reflection) => "(reflection)",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rejection {
    /// 0-based index of the offending step, if the failure is local to one.
    pub step: Option<usize>,
    pub condition: Condition,
    pub detail: String,
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.step {
            Some(k) => write!(f, "step {}: {} {}", k + 1, self.condition, self.detail),
            None => write!(f, "{} {}", self.condition, self.detail),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Invalid(Rejection),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }

    pub fn rejection(&self) -> Option<&Rejection> {
        match self {
            Verdict::Valid => None,
            Verdict::Invalid(r) => Some(r),
        }
    }

    pub fn condition(&self) -> Option<Condition> {
        self.rejection().map(|r| r.condition)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Valid => f.write_str("valid"),
            Verdict::Invalid(r) => write!(f, "invalid: {r}"),
        }
    }
}

type Check = Result<(), Rejection>;

fn reject(step: Option<usize>, condition: Condition, detail: impl Into<String>) -> Rejection {
    Rejection {
        step,
        condition,
        detail: detail.into(),
    }
}

/// Upper bound on premise-assignment attempts for one rule application.
const SEARCH_BUDGET: usize = 200_000;

/// Checks `proof` against the axiom system, reporting the first failing condition.
///
/// Conditions are checked globally in the order well-formedness, (I), (II),
/// (IV), (V), then step by step: (III), (VI), (VII) and admissibility.
pub fn check_proof(a: &AxiomSystem, proof: &Proof) -> Verdict {
    match (Checker { a, p: proof }).run() {
        Ok(()) => Verdict::Valid,
        Err(r) => Verdict::Invalid(r),
    }
}

struct Checker<'a> {
    a: &'a AxiomSystem,
    p: &'a Proof,
}

fn same_bound(x: &Option<Expr>, y: &Option<Box<Expr>>) -> bool {
    match (x, y) {
        (None, None) => true,
        (Some(a), Some(b)) => a.alpha_eq(b),
        _ => false,
    }
}

fn succ(v: &Name) -> Expr {
    Expr::app("+", vec![Expr::Var(v.clone()), Expr::constant("1")])
}

impl Checker<'_> {
    fn deps(&self, k: usize) -> &BTreeSet<usize> {
        &self.p.steps[k].depends
    }

    fn kind(&self, k: usize) -> &StepKind {
        &self.p.steps[k].kind
    }

    fn run(&self) -> Check {
        self.well_formed()?;
        self.precedence()?;
        self.contiguity()?;
        self.hypotheses_first()?;
        self.last_step()?;
        for k in 0..self.p.steps.len() {
            self.variables(k)?;
            match self.kind(k) {
                StepKind::Find { .. } => self.find_has_witness(k)?,
                StepKind::Case { .. } => {
                    self.case_pair(k)?;
                }
                StepKind::Then { formula, by } => self.admissible(k, formula, by)?,
                _ => {}
            }
        }
        Ok(())
    }

    fn well_formed(&self) -> Check {
        let spec = &self.a.lang.spec;
        for v in &self.p.global_vars {
            if v.starts_with('$') || v.starts_with('?') || spec.constant(v).is_some() {
                return Err(reject(None, Condition::WellFormed, format!("`{v}` is not a variable name")));
            }
        }
        for (k, s) in self.p.steps.iter().enumerate() {
            let here = Some(k);
            if let Some(f) = s.kind.conclusion() {
                let r = well_formed_formula(spec, f);
                if let Some(d) = r.first() {
                    return Err(reject(here, Condition::WellFormed, d.to_string()));
                }
                if f.is_schematic() {
                    return Err(reject(here, Condition::WellFormed, "placeholder in a proof step"));
                }
            }
            let (universal, bound) = match &s.kind {
                StepKind::Fix { bound, .. } => (true, bound),
                StepKind::Find { bound, .. } => (false, bound),
                _ => continue,
            };
            if let Some(t) = bound {
                if let Some(d) = well_formed_term(spec, t).first() {
                    return Err(reject(here, Condition::WellFormed, d.to_string()));
                }
            }
            let template = QuantTemplate::of(
                if universal { QuantKind::Forall } else { QuantKind::Exists },
                bound.is_some(),
            );
            if !spec.allows(template) {
                return Err(reject(
                    here,
                    Condition::WellFormed,
                    format!("quantifier template `{}` is not enabled", template.keyword()),
                ));
            }
        }
        Ok(())
    }

    fn precedence(&self) -> Check {
        for (k, s) in self.p.steps.iter().enumerate() {
            if let Some(d) = s.depends.iter().find(|d| **d >= k) {
                return Err(reject(Some(k), Condition::I, format!("depends on later step {}", d + 1)));
            }
            for d in &s.depends {
                if let Some(e) = self.deps(*d).iter().find(|e| !s.depends.contains(e)) {
                    return Err(reject(
                        Some(k),
                        Condition::I,
                        format!("depends on {} but not on {}, which {} depends on", d + 1, e + 1, d + 1),
                    ));
                }
            }
        }
        Ok(())
    }

    fn contiguity(&self) -> Check {
        for j in 0..self.p.steps.len() {
            let users: Vec<usize> = (j + 1..self.p.steps.len()).filter(|k| self.deps(*k).contains(&j)).collect();
            if let Some(last) = users.last() {
                if let Some(gap) = (j + 1..*last).find(|k| !users.contains(k)) {
                    return Err(reject(
                        Some(j),
                        Condition::II,
                        format!("step {} depends on it but step {} does not", last + 1, gap + 1),
                    ));
                }
            }
        }
        Ok(())
    }

    fn hypotheses_first(&self) -> Check {
        let prefix = self.p.steps.iter().take_while(|s| s.kind.is_hypothesis()).count();
        match self.p.steps.iter().skip(prefix).position(|s| s.kind.is_hypothesis()) {
            Some(off) => Err(reject(Some(prefix + off), Condition::IV, "global hypothesis after other steps")),
            None => Ok(()),
        }
    }

    fn last_step(&self) -> Check {
        let Some(k) = self.p.steps.len().checked_sub(1) else {
            return Err(reject(None, Condition::V, "empty proof"));
        };
        if !self.kind(k).is_inference() {
            return Err(reject(Some(k), Condition::V, "the last step is not an inference"));
        }
        if let Some(d) = self.deps(k).iter().find(|d| self.kind(**d).is_intermediate()) {
            return Err(reject(
                Some(k),
                Condition::V,
                format!("the last step depends on intermediate hypothesis {}", d + 1),
            ));
        }
        Ok(())
    }

    /// Variables introduced by the steps `k` depends on.
    fn introduced(&self, k: usize) -> BTreeSet<Name> {
        self.deps(k).iter().filter_map(|d| self.kind(*d).introduces().cloned()).collect()
    }

    fn variables(&self, k: usize) -> Check {
        let globals: BTreeSet<&Name> = self.p.global_vars.iter().collect();
        let mut known = self.introduced(k);
        let kind = self.kind(k);
        let here = Some(k);
        if let Some(v) = kind.introduces() {
            if globals.contains(v) || known.contains(v) {
                return Err(reject(here, Condition::III, format!("`{v}` is already in use")));
            }
            if let StepKind::Fix { bound: Some(t), .. } | StepKind::Find { bound: Some(t), .. } = kind {
                if let Some(y) = t.free_vars().into_iter().find(|y| !globals.contains(y) && !known.contains(y)) {
                    return Err(reject(here, Condition::III, format!("`{y}` in the bound is not introduced")));
                }
            }
            if !matches!(kind, StepKind::Fix { .. }) {
                known.insert(v.clone());
            }
        }
        if let Some(f) = kind.conclusion() {
            if let Some(y) = f.free_vars().into_iter().find(|y| !globals.contains(y) && !known.contains(y)) {
                return Err(reject(here, Condition::III, format!("`{y}` is neither global nor introduced")));
            }
        }
        Ok(())
    }

    /// The step an existential Find relies on.
    fn witness_source(&self, k: usize) -> Option<usize> {
        let StepKind::Find { var, bound, formula } = self.kind(k) else { return None };
        self.deps(k).iter().rev().copied().find(|d| {
            matches!(
                self.kind(*d).conclusion(),
                Some(Expr::Quant { kind: QuantKind::Exists, var: v, sort: None, bound: b, body })
                    if same_bound(bound, b) && body.subst(v, &Expr::Var(var.clone())).alpha_eq(formula)
            )
        })
    }

    fn find_has_witness(&self, k: usize) -> Check {
        match self.witness_source(k) {
            Some(_) => Ok(()),
            None => Err(reject(Some(k), Condition::VI, "no prior existential with this body")),
        }
    }

    /// For a case step: the disjunction it splits and its partner case.
    fn case_pair(&self, k: usize) -> Result<(usize, usize), Rejection> {
        let StepKind::Case { index, formula } = self.kind(k) else { unreachable!() };
        let fail = |msg: &str| Err(reject(Some(k), Condition::VII, msg.to_string()));
        let Some(&d) = self.deps(k).iter().next_back() else {
            return fail("a case must depend on a disjunction");
        };
        let Some(Expr::Or(l, r)) = self.kind(d).conclusion() else {
            return fail("the last step a case depends on is not a disjunction");
        };
        let direct = |c: usize| {
            let mut allowed = self.deps(d).clone();
            allowed.insert(d);
            *self.deps(c) == allowed
        };
        if !direct(k) {
            return fail("depends on more than the disjunction and its dependencies");
        }
        let (mine, other, other_index) = if *index == 1 { (l, r, 2) } else { (r, l, 1) };
        if !mine.alpha_eq(formula) {
            return fail("formula differs from its side of the disjunction");
        }
        let partner = (0..self.p.steps.len()).find(|c| {
            matches!(self.kind(*c), StepKind::Case { index, formula }
                if *index == other_index && formula.alpha_eq(other) && self.deps(*c).contains(&d))
                && direct(*c)
        });
        match partner {
            Some(c) => Ok((d, c)),
            None => fail(&format!("no matching `Case {other_index}` step")),
        }
    }

    /// `k` relatively depends on inference `j` modulo `i`.
    fn relatively_depends(&self, k: usize, j: usize, i: usize) -> bool {
        j < k
            && self.kind(j).is_inference()
            && self.deps(j).contains(&i)
            && self
                .deps(j)
                .iter()
                .all(|d| *d == i || self.kind(*d).is_inference() || self.deps(k).contains(d))
    }

    fn admissible(&self, k: usize, phi: &Expr, by: &Justification) -> Check {
        match by {
            Justification::By { rule, with } => {
                let Some(r) = self.a.get(rule) else {
                    return Err(reject(Some(k), Condition::IX(Clause::Rule), format!("no axiom or rule named `{rule}`")));
                };
                let clause = if r.is_axiom() { Clause::Axiom } else { Clause::Rule };
                self.rule_instance(k, r, with, phi)
                    .map_err(|msg| reject(Some(k), Condition::IX(clause), format!("{rule}: {msg}")))
            }
            Justification::Generalization => self.generalization(k, phi),
            Justification::Specification => self.specification(k, phi),
            Justification::Cases => self.cases(k, phi),
            Justification::Induction => self.induction(k, phi),
            Justification::Reflection(inner) => self.reflection(k, phi, inner),
        }
    }

    /// Conclusions of the steps `k` depends on, plus `x < t` for each bounded Fix or Find among them.
    fn premise_pool(&self, k: usize) -> Vec<Expr> {
        let mut pool: Vec<Expr> = Vec::new();
        for d in self.deps(k) {
            let kind = self.kind(*d);
            let bound_fact = match kind {
                StepKind::Fix { var, bound: Some(t) } | StepKind::Find { var, bound: Some(t), .. } => {
                    Some(Expr::lt(Expr::Var(var.clone()), t.clone()))
                }
                _ => None,
            };
            for c in kind.conclusion().cloned().into_iter().chain(bound_fact) {
                if !pool.contains(&c) {
                    pool.push(c);
                }
            }
        }
        pool
    }

    fn rule_instance(&self, k: usize, r: &Rule, with: &Bindings, phi: &Expr) -> Result<(), String> {
        let spec = &self.a.lang.spec;
        let mut m = Matcher::new(spec, with.clone());
        m.unify(&r.conclusion, phi).map_err(|e| e.to_string())?;
        // Constrained premises first: a bare placeholder matches anything.
        let mut order: Vec<&Expr> = r.premises.iter().collect();
        order.sort_by_key(|p| matches!(p, Expr::Hole { .. }));
        let owned = self.premise_pool(k);
        let pool: Vec<&Expr> = owned.iter().collect();
        let mut search = Search {
            order: &order,
            pool: &pool,
            rule: r,
            phi,
            spec,
            budget: SEARCH_BUDGET,
            undetermined: None,
        };
        if search.dfs(m, 0) {
            return Ok(());
        }
        Err(match (search.undetermined, search.budget) {
            (Some(h), _) => format!("placeholder `{h}` cannot be determined by matching; give it with (with ...)"),
            (None, 0) => "search budget exhausted; give placeholder values with (with ...)".into(),
            (None, _) if r.premises.is_empty() => "not an instance of the schema".into(),
            (None, _) => "no assignment of earlier conclusions fits the premises".into(),
        })
    }

    fn generalization(&self, k: usize, phi: &Expr) -> Check {
        let clause = Condition::IX(Clause::Generalization);
        let Expr::Quant { kind: QuantKind::Forall, var, sort: None, bound, body } = phi else {
            return Err(reject(Some(k), clause, "conclusion is not a universal statement"));
        };
        let mut shaped = false;
        for i in 0..k {
            let StepKind::Fix { var: x, bound: b } = self.kind(i) else { continue };
            if !same_bound(b, bound) || (x != var && phi.occurs_free(x)) {
                continue;
            }
            let mu = body.subst(var, &Expr::Var(x.clone()));
            for j in i + 1..k {
                let StepKind::Then { formula, .. } = self.kind(j) else { continue };
                if !formula.alpha_eq(&mu) || !self.deps(j).contains(&i) {
                    continue;
                }
                shaped = true;
                if !self.relatively_depends(k, j, i) {
                    continue;
                }
                if let Some(t) = b {
                    if !self.depends_on_conclusion(k, &Expr::defined(t.clone())) {
                        return Err(reject(Some(k), clause, format!("generalizing below `{t}` needs a step `{t}↓`")));
                    }
                }
                return Ok(());
            }
        }
        Err(self.shape_failure(k, shaped, clause, "no `Fix` block concludes the body"))
    }

    fn shape_failure(&self, k: usize, shaped: bool, clause: Condition, msg: &str) -> Rejection {
        if shaped {
            reject(Some(k), Condition::VIII, "an inference of the right shape exists but is not relatively depended on")
        } else {
            reject(Some(k), clause, msg)
        }
    }

    fn depends_on_conclusion(&self, k: usize, f: &Expr) -> bool {
        self.deps(k).iter().any(|d| self.kind(*d).conclusion().is_some_and(|c| c.alpha_eq(f)))
    }

    fn specification(&self, k: usize, phi: &Expr) -> Check {
        let clause = Condition::IX(Clause::Specification);
        let mut shaped = false;
        for i in 0..k {
            let StepKind::Find { var, .. } = self.kind(i) else { continue };
            if phi.occurs_free(var) {
                continue;
            }
            let Some(source) = self.witness_source(i) else { continue };
            for j in i + 1..k {
                match self.kind(j) {
                    StepKind::Then { formula, .. } if formula.alpha_eq(phi) && self.deps(j).contains(&i) => {}
                    _ => continue,
                }
                shaped = true;
                if self.relatively_depends(k, j, i) && self.deps(k).contains(&source) {
                    return Ok(());
                }
            }
        }
        Err(self.shape_failure(k, shaped, clause, "no `Find` block concludes this formula"))
    }

    fn cases(&self, k: usize, phi: &Expr) -> Check {
        let clause = Condition::IX(Clause::Cases);
        let mut shaped = false;
        let concludes_under = |c: usize| {
            (c + 1..k).filter(move |j| {
                matches!(self.kind(*j), StepKind::Then { formula, .. } if formula.alpha_eq(phi))
                    && self.deps(*j).contains(&c)
            })
        };
        for c1 in 0..k {
            if !matches!(self.kind(c1), StepKind::Case { index: 1, .. }) {
                continue;
            }
            let Ok((d, c2)) = self.case_pair(c1) else { continue };
            let first: Vec<usize> = concludes_under(c1).collect();
            let second: Vec<usize> = concludes_under(c2).collect();
            if first.is_empty() || second.is_empty() {
                continue;
            }
            shaped = true;
            let ok1 = first.iter().any(|j| self.relatively_depends(k, *j, c1));
            let ok2 = second.iter().any(|j| self.relatively_depends(k, *j, c2));
            if ok1 && ok2 && self.deps(k).contains(&d) {
                return Ok(());
            }
        }
        Err(self.shape_failure(k, shaped, clause, "no pair of cases both conclude this formula"))
    }

    fn induction(&self, k: usize, phi: &Expr) -> Check {
        let clause = Condition::IX(Clause::Induction);
        let mut shaped = false;
        let mut missing = None;
        for i in 0..k {
            let StepKind::FixInd { var: m, formula: mu } = self.kind(i) else { continue };
            let step = mu.subst(m, &succ(m));
            let base = mu.subst(m, &Expr::constant("0"));
            for j in i + 1..k {
                match self.kind(j) {
                    StepKind::Then { formula, .. } if formula.alpha_eq(&step) && self.deps(j).contains(&i) => {}
                    _ => continue,
                }
                shaped = true;
                if !self.relatively_depends(k, j, i) {
                    continue;
                }
                if !self.depends_on_conclusion(k, &base) {
                    missing = Some(format!("needs a step concluding {base}"));
                    continue;
                }
                let instance = self.deps(k).iter().any(|d| match self.kind(*d).conclusion() {
                    Some(Expr::Atom { rel, polarity: Polarity::Positive, args }) if &**rel == "def" => {
                        mu.subst(m, &args[0]).alpha_eq(phi)
                    }
                    _ => false,
                });
                if instance {
                    return Ok(());
                }
                missing = Some("needs a step `t↓` with the conclusion the induction formula at t".into());
            }
        }
        match missing {
            Some(msg) => Err(reject(Some(k), clause, msg)),
            None => Err(self.shape_failure(k, shaped, clause, "no induction block concludes the successor case")),
        }
    }

    fn reflection(&self, k: usize, phi: &Expr, inner: &Proof) -> Check {
        let clause = Condition::IX(Clause::Reflection);
        let fail = |msg: String| Err(reject(Some(k), clause, msg));
        let Expr::Atom { rel, polarity: Polarity::Positive, args } = phi else {
            return fail("conclusion is not a truth statement".into());
        };
        let Some(base) = self.a.reflection_base(rel) else {
            return fail(format!("this system has no `{}` rule", reflection_name(rel)));
        };
        let Some((Expr::Quote(psi), sigma)) = args.split_first() else {
            return fail("the truth statement does not quote a formula".into());
        };
        let premise = self.deps(k).iter().find_map(|d| match self.kind(*d).conclusion() {
            Some(Expr::Atom { rel: r, polarity: Polarity::Positive, args: a }) if r == rel => match a.split_first() {
                Some((Expr::Quote(f), s)) if s.len() == sigma.len() && s.iter().zip(sigma).all(|(x, y)| x.alpha_eq(y)) => {
                    let hyps = inner.hypotheses();
                    (hyps.len() == 1 && hyps[0].alpha_eq(f)).then_some(())
                }
                _ => None,
            },
            _ => None,
        });
        if premise.is_none() {
            return fail("no truth premise under the same assignment matching the embedded hypothesis".into());
        }
        if !inner.conclusion().is_some_and(|c| c.alpha_eq(psi)) {
            return fail("the embedded proof concludes something else".into());
        }
        match check_proof(base, inner) {
            Verdict::Valid => Ok(()),
            Verdict::Invalid(r) => fail(format!("embedded proof in {}: {r}", base.name)),
        }
    }
}

struct Search<'a> {
    order: &'a [&'a Expr],
    pool: &'a [&'a Expr],
    rule: &'a Rule,
    phi: &'a Expr,
    spec: &'a lnc_syntax::LanguageSpec,
    budget: usize,
    undetermined: Option<String>,
}

impl Search<'_> {
    fn dfs(&mut self, m: Matcher, depth: usize) -> bool {
        if depth == self.order.len() {
            return match m.finish() {
                Ok(b) => self.verify(&b),
                Err(MatchError::Undetermined(h)) => {
                    self.undetermined.get_or_insert(h);
                    false
                }
                Err(_) => false,
            };
        }
        for c in self.pool {
            if self.budget == 0 {
                return false;
            }
            self.budget -= 1;
            let mut next = m.clone();
            if next.unify(self.order[depth], c).is_ok() && self.dfs(next, depth + 1) {
                return true;
            }
        }
        false
    }

    /// Re-instantiates the rule and compares with the proof text.
    fn verify(&self, b: &Bindings) -> bool {
        let Ok(c) = instantiate(self.spec, &self.rule.conclusion, b) else { return false };
        c.alpha_eq(self.phi)
            && self.rule.premises.iter().all(|p| {
                instantiate(self.spec, p, b).is_ok_and(|inst| self.pool.iter().any(|q| q.alpha_eq(&inst)))
            })
    }
}
