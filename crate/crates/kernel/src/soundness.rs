//! Generate-and-check soundness harness: random kernel-valid proofs over a
//! finite language, and a suite that evaluates every hypothesis and
//! conclusion under every assignment.

use crate::axioms::AxiomSystem;
use crate::builder::ProofBuilder;
use crate::check::{check_proof, Rejection, Verdict};
use crate::proof::{Justification, Proof};
use crate::validate::{all_assignments, partially_validate, ValidationFailure, VALIDATION_FUEL};
use lnc_eval::{eval, Env, Outcome, Value};
use lnc_languages::Tag;
use lnc_syntax::enumerate::Vocabulary;
use lnc_syntax::{negate, Expr, QuantTemplate};
use rand::Rng;

/// Builds random proofs from a fixed repertoire of moves, each of which
/// leaves the builder at top level with an inference as the last step.
pub struct ProofGenerator<'a, R: Rng> {
    a: &'a AxiomSystem,
    rng: &'a mut R,
    b: ProofBuilder,
    fresh: usize,
}

fn and(x: Expr, y: Expr) -> Expr {
    Expr::and(x, y)
}

impl<'a, R: Rng> ProofGenerator<'a, R> {
    pub fn new(a: &'a AxiomSystem, rng: &'a mut R) -> Self {
        ProofGenerator {
            a,
            rng,
            b: ProofBuilder::new(&[]),
            fresh: 0,
        }
    }

    /// A proof with up to two true hypotheses and `moves` random moves.
    pub fn proof(mut self, moves: usize) -> Proof {
        let vocab = Vocabulary::from_spec(&self.a.lang.spec).without_qlos();
        for _ in 0..self.rng.gen_range(0..=2) {
            for _ in 0..20 {
                let s = vocab.random_sentence(self.rng, 2);
                if self.true_sentence(&s) {
                    self.b.assume(s);
                    break;
                }
            }
        }
        for _ in 0..moves.max(1) {
            self.random_move();
        }
        self.b.finish()
    }

    fn true_sentence(&self, s: &Expr) -> bool {
        matches!(eval(&self.a.lang, s, &Env::new(), VALIDATION_FUEL), Ok(e) if e.outcome == Outcome::True)
    }

    fn var(&mut self) -> String {
        self.fresh += 1;
        format!("y{}", self.fresh)
    }

    fn term(&mut self, depth: usize) -> Expr {
        if depth == 0 || self.rng.gen_bool(0.4) {
            return Expr::constant(if self.rng.gen_bool(0.5) { "0" } else { "1" });
        }
        let f = if self.rng.gen_bool(0.5) { "+" } else { "*" };
        Expr::app(f, vec![self.term(depth - 1), self.term(depth - 1)])
    }

    fn find_fact(&self, f: &Expr) -> Option<usize> {
        self.b.facts().into_iter().find(|(_, c)| c.alpha_eq(f)).map(|(i, _)| i)
    }

    fn then(&mut self, f: Expr, rule: &str) -> usize {
        self.b.then(f, Justification::by(rule))
    }

    /// Derives `t↓` for a term built from variables, constants and functions.
    fn defined(&mut self, t: &Expr) -> usize {
        let goal = Expr::defined(t.clone());
        if let Some(i) = self.find_fact(&goal) {
            return i;
        }
        match t {
            Expr::Var(_) => self.then(goal, "var-def"),
            Expr::Const(c) => self.then(goal, &format!("const-def-{c}")),
            Expr::App { func, args } => {
                let defs: Vec<Expr> = args.iter().map(|x| Expr::defined(x.clone())).collect();
                for x in args {
                    self.defined(x);
                }
                let joined = Expr::and_all(defs.clone()).expect("functions take arguments");
                if defs.len() > 1 {
                    self.then(joined, "and-intro");
                }
                self.then(goal, &format!("fun-def-join-{func}"))
            }
            other => panic!("no definedness derivation for {other}"),
        }
    }

    fn lt(x: Expr, y: Expr) -> Expr {
        Expr::lt(x, y)
    }

    fn definite_lt(&mut self, x: &Expr, y: &Expr) -> (usize, Expr) {
        self.defined(x);
        self.defined(y);
        let atom = Self::lt(x.clone(), y.clone());
        let d = Expr::or(atom.clone(), negate(&self.a.lang.spec, &atom).unwrap());
        (self.then(d.clone(), "sn-lt"), d)
    }

    fn pick_fact(&mut self) -> Option<Expr> {
        let facts: Vec<Expr> = self.b.facts().into_iter().map(|(_, c)| c.clone()).collect();
        if facts.is_empty() {
            None
        } else {
            Some(facts[self.rng.gen_range(0..facts.len())].clone())
        }
    }

    fn random_move(&mut self) {
        let spec = self.a.lang.spec.clone();
        match self.rng.gen_range(0..10) {
            0 => {
                let t = self.term(2);
                self.defined(&t);
                self.then(Expr::eq(t.clone(), t), "eq-refl");
            }
            1 => {
                let (x, y) = (self.term(2), self.term(1));
                self.definite_lt(&x, &y);
            }
            2 => match (self.pick_fact(), self.pick_fact()) {
                (Some(p), Some(q)) => {
                    self.then(and(p, q), "and-intro");
                }
                _ => self.random_move(),
            },
            3 => {
                let conj = self.b.facts().into_iter().find_map(|(_, c)| match c {
                    Expr::And(l, r) => Some(((**l).clone(), (**r).clone())),
                    _ => None,
                });
                match conj {
                    Some((l, _)) if self.rng.gen_bool(0.5) => {
                        self.then(l, "and-elim-left");
                    }
                    Some((_, r)) => {
                        self.then(r, "and-elim-right");
                    }
                    None => self.random_move(),
                }
            }
            4 => match self.pick_fact() {
                Some(p) => {
                    let vocab = Vocabulary::from_spec(&spec).without_qlos();
                    let psi = vocab.random_sentence(self.rng, 2);
                    self.then(Expr::or(p, psi), "or-intro-left");
                }
                None => self.random_move(),
            },
            5 => self.generalize(),
            6 => self.cases(),
            7 => self.find(),
            8 => self.induction(),
            _ => {
                let (x, y) = (self.term(1), self.term(1));
                self.defined(&x);
                self.defined(&y);
                let sum = |a: &Expr, b: &Expr| Expr::app("+", vec![a.clone(), b.clone()]);
                self.then(Expr::eq(sum(&x, &y), sum(&y, &x)), "add-comm");
            }
        }
    }

    fn generalize(&mut self) {
        let c = self.term(1);
        let x = self.var();
        let xv = Expr::var(&x);
        let bounded = self.rng.gen_bool(0.5);
        if bounded {
            let t = self.term(1);
            self.defined(&t);
            self.b.fix(&x, Some(t.clone()));
            self.then(Expr::defined(xv.clone()), "var-def");
            self.then(Expr::eq(xv.clone(), xv.clone()), "eq-refl");
            self.b.close();
            let body = Expr::eq(xv.clone(), xv);
            self.b.then(Expr::forall_lt(&x, t, body), Justification::Generalization);
            return;
        }
        self.defined(&c);
        self.b.fix(&x, None);
        let (_, d) = self.definite_lt(&xv, &c);
        self.b.close();
        let all = Expr::forall(&x, d);
        self.b.then(all.clone(), Justification::Generalization);
        let spec = &self.a.lang.spec;
        if spec.allows(QuantTemplate::Forall) && spec.allows(QuantTemplate::Exists) && self.rng.gen_bool(0.5) {
            let t = self.term(1);
            self.defined(&t);
            let Expr::Quant { body, var, .. } = &all else { unreachable!() };
            let inst = body.subst(var, &t);
            self.then(inst, "forall-elim");
        } else if spec.allows(QuantTemplate::Exists) {
            let inner = Expr::forall(&x, Self::lt(Expr::var(&x), c.clone()));
            let d = Expr::or(inner.clone(), negate(spec, &inner).unwrap());
            self.then(d, "cpq");
        }
    }

    fn cases(&mut self) {
        let (x, y) = (self.term(1), self.term(1));
        let (_, d) = self.definite_lt(&x, &y);
        let Expr::Or(p, q) = d else { unreachable!() };
        let swapped = Expr::or((*q).clone(), (*p).clone());
        self.b.case(1, (*p).clone());
        self.then(swapped.clone(), "or-intro-right");
        self.b.close();
        self.b.case(2, (*q).clone());
        self.then(swapped.clone(), "or-intro-left");
        self.b.close();
        self.b.then(swapped, Justification::Cases);
    }

    fn find(&mut self) {
        let t = self.term(1);
        self.defined(&t);
        self.then(Expr::eq(t.clone(), t), "eq-refl");
        let y = self.var();
        let yv = Expr::var(&y);
        let body = Expr::eq(yv.clone(), yv);
        self.then(Expr::exists(&y, body.clone()), "exists-intro");
        self.b.find(&y, None, body);
        let s = self.term(1);
        self.defined(&s);
        let goal = Expr::eq(s.clone(), s);
        self.then(goal.clone(), "eq-refl");
        self.b.close();
        self.b.then(goal, Justification::Specification);
    }

    fn induction(&mut self) {
        let c = self.term(1);
        let t = self.term(2);
        let m = self.var();
        let mv = Expr::var(&m);
        self.defined(&c);
        self.defined(&t);
        self.definite_lt(&Expr::constant("0"), &c);
        let mu = |x: Expr, spec: &lnc_syntax::LanguageSpec| {
            let atom = Expr::lt(x, c.clone());
            Expr::or(atom.clone(), negate(spec, &atom).unwrap())
        };
        let spec = self.a.lang.spec.clone();
        self.b.fix_ind(&m, mu(mv.clone(), &spec));
        let next = Expr::app("+", vec![mv, Expr::constant("1")]);
        self.definite_lt(&next, &c);
        self.b.close();
        self.b.then(mu(t, &spec), Justification::Induction);
    }
}

/// `count` proofs from a seeded stream, each with 1 to `max_moves` moves.
pub fn generate_corpus<R: Rng>(a: &AxiomSystem, rng: &mut R, count: usize, max_moves: usize) -> Vec<Proof> {
    (0..count)
        .map(|_| {
            let moves = rng.gen_range(1..=max_moves.max(1));
            ProofGenerator::new(a, rng).proof(moves)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub proof: usize,
    pub assignment: String,
    pub outcome: Outcome,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SoundnessReport {
    pub proofs: usize,
    /// Proofs the kernel rejected; they are not evaluated.
    pub rejected: Vec<(usize, Rejection)>,
    /// (proof, assignment) pairs whose hypotheses all held.
    pub checked: usize,
    pub violations: Vec<Violation>,
    /// Unknown conclusions tolerated on infinite domains.
    pub tolerated_unknown: usize,
    pub incomplete_validations: Vec<(usize, ValidationFailure)>,
}

impl SoundnessReport {
    pub fn is_sound(&self) -> bool {
        self.violations.is_empty() && self.incomplete_validations.is_empty()
    }
}

/// Assignments tried for global variables on an infinite domain.
const SMALL_VALUES: u64 = 4;

/// Evaluates every kernel-valid proof of `corpus` under every assignment of
/// its global variables.
///
/// On `FIN(k)` a conclusion that is not True after true hypotheses is a
/// violation, and each such proof must also validate partially to full
/// length. On other languages assignments range over small numbers and
/// Unknown conclusions are tolerated and counted.
pub fn soundness_suite(a: &AxiomSystem, corpus: &[Proof]) -> SoundnessReport {
    let finite = match a.lang.tag {
        Tag::Fin(k) => Some(k),
        _ => None,
    };
    let mut report = SoundnessReport {
        proofs: corpus.len(),
        ..Default::default()
    };
    for (n, p) in corpus.iter().enumerate() {
        if let Verdict::Invalid(r) = check_proof(a, p) {
            report.rejected.push((n, r));
            continue;
        }
        let assignments = match finite {
            Some(k) => all_assignments(p, k),
            None => small_assignments(p),
        };
        let conclusion = p.conclusion().expect("valid proofs end in an inference");
        for env in assignments {
            let holds = |f: &Expr| matches!(eval(&a.lang, f, &env, VALIDATION_FUEL), Ok(e) if e.outcome == Outcome::True);
            if !p.hypotheses().into_iter().all(holds) {
                continue;
            }
            report.checked += 1;
            let outcome = eval(&a.lang, conclusion, &env, VALIDATION_FUEL)
                .map(|e| e.outcome)
                .unwrap_or(Outcome::Unknown(lnc_eval::Reason::Ungrounded));
            match outcome {
                Outcome::True => {}
                Outcome::Unknown(_) if finite.is_none() => report.tolerated_unknown += 1,
                other => report.violations.push(Violation {
                    proof: n,
                    assignment: format!("{env:?}"),
                    outcome: other,
                }),
            }
            if finite.is_some() {
                let v = partially_validate(p, &a.lang, &env);
                if let Some(f) = v.failure {
                    report.incomplete_validations.push((n, f));
                }
            }
        }
    }
    report
}

fn small_assignments(p: &Proof) -> Vec<Env> {
    let mut out = vec![Env::new()];
    for v in &p.global_vars {
        out = out
            .into_iter()
            .flat_map(|e| (0..SMALL_VALUES).map(move |c| e.clone().with(v, Value::Nat(c))))
            .collect();
    }
    out
}

