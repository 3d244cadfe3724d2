use lnc_eval::Value;
use lnc_kernel::{standard_axiomatization, Justification, Proof, ProofBuilder, StepKind};
use lnc_languages::{make_std, Tag};
use lnc_strategies::halting::{halts_formula, reflected_halting_proof, toy_metasystem};
use lnc_strategies::{
    axiomatic_strategy, busy_beaver_table, halting_proof, selfmeta_strategy, strategy_description, toy_axioms, wrap_checks,
    Status, ToyProgram,
};
use lnc_syntax::{numeral, Expr};

fn counter(k: usize) -> ToyProgram {
    let mut text = "inc 0; ".repeat(k);
    text.push_str("halt 0");
    text.parse().unwrap()
}

const FUEL: u64 = 10_000;

#[test]
fn seeded_corpus_takes_the_larger_output() {
    let a = toy_axioms();
    let corpus: Vec<Proof> = [5, 9].iter().map(|k| halting_proof(&counter(*k), FUEL).unwrap()).collect();
    let n = corpus.iter().map(Proof::length).max().unwrap();
    let r = axiomatic_strategy(&a, &corpus, n, FUEL);
    assert_eq!(r.value, Value::Nat(9));
    assert_eq!(r.accepted(), 2);
    assert!(!r.no_proofs);
    // One symbol short and the longer proof no longer counts.
    let r = axiomatic_strategy(&a, &corpus, n - 1, FUEL);
    assert_eq!(r.value, Value::Nat(5));
}

#[test]
fn empty_corpus_scores_zero() {
    let r = axiomatic_strategy(&toy_axioms(), &[], 1000, FUEL);
    assert_eq!(r.value, Value::Nat(0));
    assert!(r.no_proofs);
}

/// Replaces the conclusion with a claim about a program that never halts.
fn forge(p: &Proof, liar: &ToyProgram) -> Proof {
    let mut p = p.clone();
    if let Some(StepKind::Then { formula, .. }) = p.steps.last_mut().map(|s| &mut s.kind) {
        *formula = halts_formula(liar);
    }
    p
}

#[test]
fn adversarial_corpus_is_filtered_by_the_kernel() {
    let a = toy_axioms();
    let liar: ToyProgram = "djz 0 0; halt 0".parse().unwrap();
    let big = counter(30);
    let good = halting_proof(&counter(4), FUEL).unwrap();
    let mut corpus = vec![good.clone(), forge(&good, &liar)];
    // A proof about a small program relabelled as a proof about a big one.
    corpus.push(forge(&good, &big));
    let r = axiomatic_strategy(&a, &corpus, usize::MAX, FUEL);
    assert_eq!(r.value, Value::Nat(4));
    assert!(matches!(r.log[1].status, Status::Rejected(_)));
    assert!(matches!(r.log[2].status, Status::Rejected(_)));
    assert_eq!(r.violations(), 0);
}

#[test]
fn unsound_axiom_is_caught_at_run_time() {
    let mut a = toy_axioms();
    a.add("anything-halts", &[], "(halts ?p)");
    let liar: ToyProgram = "djz 0 0; halt 0".parse().unwrap();
    let mut b = ProofBuilder::new(&[]);
    b.then(halts_formula(&liar), Justification::by("anything-halts"));
    let r = axiomatic_strategy(&a, &[b.finish()], usize::MAX, FUEL);
    assert_eq!(r.violations(), 1);
    assert_eq!(r.value, Value::Nat(0));
}

#[test]
fn metasystem_strategy_dominates() {
    let a = toy_axioms();
    let meta = toy_metasystem();
    let best = counter(6);
    let base_corpus: Vec<Proof> = (0..=6).map(|k| halting_proof(&counter(k), FUEL).unwrap()).collect();
    let n = base_corpus.iter().map(Proof::length).max().unwrap();
    let base = axiomatic_strategy(&a, &base_corpus, n, FUEL);
    assert_eq!(base.value, Value::Nat(6));

    let lifted = reflected_halting_proof(&best.wrap(), FUEL).unwrap();
    let mut corpus = base_corpus.clone();
    corpus.push(lifted.clone());
    // The base system cannot use the reflected proof at any length.
    assert_eq!(axiomatic_strategy(&a, &corpus, usize::MAX, FUEL).value, Value::Nat(6));
    let n_meta = lifted.length().max(n);
    let r = axiomatic_strategy(&meta, &corpus, n_meta, FUEL);
    assert_eq!(r.value, Value::Nat(7));
    assert_eq!(r.accepted(), corpus.len());
}

#[test]
fn description_is_logarithmic() {
    let c = 2.0;
    let base = strategy_description("toy", 1).len() as f64;
    for n in [2usize, 16, 1000, 4096, 1 << 20] {
        let len = strategy_description("toy", n).len() as f64;
        assert!(len <= c * (n as f64).log2() + base, "n={n}: {len}");
    }
}

fn proof_of(steps: &[(&str, Expr)]) -> Proof {
    let mut b = ProofBuilder::new(&[]);
    for (rule, f) in steps {
        b.then(f.clone(), Justification::by(rule));
    }
    b.finish()
}

#[test]
fn selfmeta_takes_the_largest_named_referent() {
    let g = make_std(&Tag::Gnt).unwrap();
    let a = standard_axiomatization(&g);
    let d1 = Expr::defined(Expr::constant("1"));
    let corpus = vec![
        proof_of(&[("const-def-0", Expr::defined(Expr::constant("0")))]),
        proof_of(&[("const-def-1", d1.clone())]),
        proof_of(&[
            ("const-def-1", d1.clone()),
            ("and-intro", Expr::and(d1.clone(), d1)),
            ("fun-def-join-+", Expr::defined(numeral(2))),
        ]),
    ];
    let r = selfmeta_strategy(&g, &a, &corpus, usize::MAX, FUEL);
    assert_eq!(r.accepted(), 3, "{:?}", r.log);
    assert_eq!(r.value, Value::Nat(2));
    assert!(selfmeta_strategy(&g, &a, &corpus, 0, FUEL).no_proofs);
    let mut last = Value::Nat(0);
    for n in 0..40 {
        let v = selfmeta_strategy(&g, &a, &corpus, n, FUEL).value;
        assert_ne!(lnc_eval::value::compare(&last, &v), Some(std::cmp::Ordering::Greater));
        last = v;
    }
}

#[test]
fn busy_beaver_table_basics() {
    let table = busy_beaver_table(10, 2_000);
    assert_eq!(table[0].best, None);
    assert_eq!(table[1].best, Some(0));
    assert_eq!(table[1].witness.as_ref().unwrap().to_string(), "halt 0");
    for w in table.windows(2) {
        assert!(w[1].best >= w[0].best);
    }
    let more_fuel = busy_beaver_table(10, 20_000);
    for (a, b) in table.iter().zip(&more_fuel) {
        assert!(b.best >= a.best);
    }
    for c in wrap_checks(&table, 2_000) {
        assert!(c.holds, "{c:?}");
        assert!(c.winner_length + c.cost > c.length);
    }
}
