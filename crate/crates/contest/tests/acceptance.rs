//! Acceptance criteria, one line each. Exits non-zero if any criterion fails.

use lnc_eval::{eval, kripke_saturate, model_for, n_true, to_prefix, Env, Evaluator, Outcome};
use lnc_kernel::curated::broken_proofs;
use lnc_kernel::{
    check_proof, generate_corpus, soundness_suite, standard_axiomatization, Clause, Condition, Justification, Proof, StepKind,
};
use lnc_languages::{make_kripke, make_std, StdLanguage, Tag};
use lnc_russell::russell_reformulate;
use lnc_strategies::brute::{denotation, enumerate_max, synth_brute_force_term, LENGTH_CONSTANT};
use lnc_strategies::halting::{halts_formula, reflected_halting_proof, toy_metasystem};
use lnc_strategies::toy::programs_of_length;
use lnc_strategies::{axiomatic_strategy, busy_beaver_table, halting_proof, toy_axioms, wrap_checks, Status, ToyProgram};
use lnc_syntax::enumerate::Vocabulary;
use lnc_syntax::{is_negatable, length, negate, numeral, strongly_negatable, NUMERAL_LENGTH_CONSTANT};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

type Verdict = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn std_lang(tag: Tag) -> StdLanguage {
    make_std(&tag).expect("standard language")
}

fn soundness() -> Verdict {
    let start = Instant::now();
    let a = standard_axiomatization(&std_lang(Tag::Fin(3)));
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let corpus = generate_corpus(&a, &mut rng, 200, 6);
    let report = soundness_suite(&a, &corpus);
    let took = start.elapsed();
    ensure(corpus.len() == 200, || format!("generated {} proofs", corpus.len()))?;
    ensure(report.rejected.is_empty(), || format!("{} generated proofs rejected", report.rejected.len()))?;
    ensure(report.violations.is_empty(), || format!("{} false conclusions", report.violations.len()))?;
    ensure(report.is_sound(), || "incomplete validations".into())?;
    ensure(took < Duration::from_secs(60), || format!("took {took:?}"))?;
    Ok(format!("200 proofs over FIN(3), 0 false conclusions, {:.1}s", took.as_secs_f64()))
}

/// Generous for FIN(2): evaluation there always terminates.
const FIN_FUEL: u64 = 50_000_000;

fn russell_agreement() -> Verdict {
    let l = std_lang(Tag::Fin(2));
    let mut bad = Vec::new();
    let corpus = Vocabulary::from_spec(&l.spec).sentences_up_to(10);
    for phi in &corpus {
        let r = russell_reformulate(&l.spec, phi).map_err(|e| format!("{phi}: {e}"))?;
        let a = eval(&l, phi, &Env::new(), FIN_FUEL).map_err(|e| e.to_string())?.outcome;
        let b = eval(&l, &r, &Env::new(), FIN_FUEL).map_err(|e| e.to_string())?.outcome;
        let agree = b.is_determinate() && (a == Outcome::True) == (b == Outcome::True) && (!a.is_determinate() || a == b);
        if !agree || !strongly_negatable(&l.spec, &r) {
            bad.push(phi.to_string());
        }
    }
    ensure(bad.is_empty(), || format!("{} violations, first {}", bad.len(), bad[0]))?;
    Ok(format!("{} FIN(2) sentences of size <= 10, 0 violations", corpus.len()))
}

/// Least-squares slope through the origin.
fn slope(points: &[(f64, f64)]) -> f64 {
    let xy: f64 = points.iter().map(|(x, y)| x * y).sum();
    let xx: f64 = points.iter().map(|(x, _)| x * x).sum();
    xy / xx
}

fn drift_ok(label: &str, a: f64, b: f64, bound: f64) -> Result<String, String> {
    ensure(a <= bound && b <= bound, || format!("{label}: slopes {a:.2}, {b:.2} exceed {bound}"))?;
    ensure((a - b).abs() <= 0.2 * a.min(b), || format!("{label}: drift {a:.2} vs {b:.2}"))?;
    Ok(format!("{label} {a:.2}/{b:.2} <= {bound}"))
}

fn length_bounds() -> Verdict {
    let mut parts = Vec::new();
    for tag in [Tag::Fin(2), Tag::Gnt] {
        let l = std_lang(tag.clone());
        let v = Vocabulary::from_spec(&l.spec);
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let mut seen = BTreeSet::new();
        let mut corpora = [Vec::new(), Vec::new()];
        while corpora[1].len() < 1000 {
            let phi = v.random_sentence(&mut rng, 8);
            if seen.insert(phi.clone()) {
                let which = usize::from(corpora[0].len() >= 1000);
                let r = russell_reformulate(&l.spec, &phi).map_err(|e| e.to_string())?;
                corpora[which].push((length(&phi) as f64, length(&r) as f64));
            }
        }
        let label = format!("russell[{tag}]");
        parts.push(drift_ok(&label, slope(&corpora[0]), slope(&corpora[1]), lnc_russell::LENGTH_CONSTANT)?);
    }

    let nt = std_lang(Tag::Nt);
    let mut sizes: Vec<usize> = (4..=64).collect();
    sizes.shuffle(&mut ChaCha8Rng::seed_from_u64(5));
    let mut halves = [Vec::new(), Vec::new()];
    for (i, n) in sizes.iter().take(20).enumerate() {
        let phi = synth_brute_force_term(&nt, *n).map_err(|e| e.to_string())?;
        halves[i % 2].push((*n as f64, phi.length() as f64));
    }
    parts.push(drift_ok("phi(n)/n", slope(&halves[0]), slope(&halves[1]), LENGTH_CONSTANT)?);

    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut numerals = [Vec::new(), Vec::new()];
    let mut seen = BTreeSet::new();
    while numerals[1].len() < 500 {
        let n: u64 = rng.gen_range(16..1 << 48);
        if seen.insert(n) {
            let which = usize::from(numerals[0].len() >= 500);
            numerals[which].push(((n as f64).log2(), length(&numeral(n)) as f64));
        }
    }
    parts.push(drift_ok("numeral/log n", slope(&numerals[0]), slope(&numerals[1]), NUMERAL_LENGTH_CONSTANT)?);
    Ok(parts.join("; "))
}

fn brute_exactness() -> Verdict {
    // Largest n for which the oracle and the denotation both finish in seconds.
    let instances = [(1, 4), (2, 3), (3, 2)];
    let mut checked = Vec::new();
    for (k, max_n) in instances {
        let l = std_lang(Tag::Fin(k));
        for n in 1..=max_n {
            let oracle = enumerate_max(&l, n, FIN_FUEL).score();
            let phi = synth_brute_force_term(&l, n).map_err(|e| e.to_string())?;
            let got = denotation(&l, &phi, FIN_FUEL);
            ensure(got.value() == Some(&oracle), || format!("FIN({k}) n={n}: oracle {oracle}, denotation {got:?}"))?;
        }
        checked.push(format!("FIN({k}) n<={max_n}"));
    }
    Ok(format!("exact on {}", checked.join(", ")))
}

fn counter(k: usize) -> ToyProgram {
    let mut text = "inc 0; ".repeat(k);
    text.push_str("halt 0");
    text.parse().expect("counter program")
}

const TOY_FUEL: u64 = 10_000;

fn forge(p: &Proof, claim: &ToyProgram) -> Proof {
    let mut p = p.clone();
    if let Some(StepKind::Then { formula, .. }) = p.steps.last_mut().map(|s| &mut s.kind) {
        *formula = halts_formula(claim);
    }
    p
}

fn corrupt(p: &Proof) -> Proof {
    let mut p = p.clone();
    for s in p.steps.iter_mut().rev() {
        if let StepKind::Then { by: Justification::By { rule, .. }, .. } = &mut s.kind {
            *rule = if rule == "run-inc-0" { "run-inc-1".into() } else { "run-inc-0".into() };
            break;
        }
    }
    p
}

fn dominance() -> Verdict {
    let base_sys = toy_axioms();
    let meta_sys = toy_metasystem();
    let liar: ToyProgram = "djz 0 0; halt 0".parse().expect("liar");
    let extras: Vec<ToyProgram> = programs_of_length(4)
        .into_iter()
        .filter(|p| p.run(TOY_FUEL).output().is_some())
        .collect();
    let (mut wins, mut adversarial, mut caught) = (0, 0, 0);
    for s in 1..=10usize {
        let mut programs: Vec<ToyProgram> = (0..=s).map(counter).collect();
        programs.extend(extras.iter().take(s).cloned());
        let corpus: Vec<Proof> = programs
            .iter()
            .map(|p| halting_proof(p, TOY_FUEL).ok_or_else(|| format!("no halting proof for {p}")))
            .collect::<Result<_, _>>()?;
        let n = corpus.iter().map(Proof::length).max().unwrap_or(0);
        let base = axiomatic_strategy(&base_sys, &corpus, n, TOY_FUEL);
        let best = base.witness.as_ref().ok_or("base strategy accepted nothing")?;
        let best: ToyProgram = best.parse().map_err(|e| format!("{e}"))?;
        let lifted = reflected_halting_proof(&best.wrap(), TOY_FUEL).ok_or("wrap did not halt")?;
        let mut meta_corpus = corpus.clone();
        meta_corpus.push(lifted.clone());
        let n_meta = n.max(lifted.length());
        let meta = axiomatic_strategy(&meta_sys, &meta_corpus, n_meta, TOY_FUEL);
        if lnc_eval::value::compare(&meta.value, &base.value) == Some(std::cmp::Ordering::Greater) {
            wins += 1;
        }

        let bad = vec![
            forge(&corpus[s], &liar),
            forge(&corpus[0], &counter(s + 5)),
            corrupt(&corpus[s]),
            lifted,
        ];
        adversarial += bad.len();
        let report = axiomatic_strategy(&base_sys, &bad, usize::MAX, TOY_FUEL);
        caught += report
            .log
            .iter()
            .filter(|e| matches!(e.status, Status::Rejected(_) | Status::WrongConclusion))
            .count();
    }
    ensure(wins == 10, || format!("meta strategy won {wins}/10 scenarios"))?;
    ensure(caught == adversarial, || format!("rejected {caught}/{adversarial} invalid proofs"))?;
    Ok(format!("A+1 beats A in {wins}/10 seeded scenarios; {caught}/{adversarial} invalid proofs rejected"))
}

fn table_json(threads: usize, max_len: usize, fuel: u64) -> Result<String, String> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| e.to_string())?;
    pool.install(|| serde_json::to_string(&busy_beaver_table(max_len, fuel)).map_err(|e| e.to_string()))
}

fn busy_beaver() -> Verdict {
    let (max_len, fuel) = (8, 100_000);
    let start = Instant::now();
    let table = busy_beaver_table(max_len, fuel);
    let took = start.elapsed();
    ensure(took < Duration::from_secs(300), || format!("table took {took:?}"))?;
    let checks = wrap_checks(&table, fuel);
    ensure(checks.len() == table.iter().filter(|r| r.witness.is_some()).count(), || "missing wrap checks".into())?;
    if let Some(c) = checks.iter().find(|c| !c.holds) {
        return Err(format!("wrap check fails at length {}", c.length));
    }
    let reference = serde_json::to_string(&table).map_err(|e| e.to_string())?;
    for threads in [1, 2, 4] {
        ensure(table_json(threads, max_len, fuel)? == reference, || format!("table differs with {threads} jobs"))?;
    }
    let best = table.last().and_then(|r| r.best).unwrap_or(0);
    Ok(format!(
        "lengths 1..={max_len} in {:.1}s, best {best}; wrap holds at {} lengths; identical across runs and 1/2/4 jobs",
        took.as_secs_f64(),
        checks.len()
    ))
}

fn kripke() -> Verdict {
    let tag = Tag::KripkeOf(Box::new(Tag::Fin(2)));
    let l = make_kripke(&tag, &[("liar", "(not (true liar))"), ("teller", "(true teller)")]).map_err(|e| e.to_string())?;
    let identity = l.parse("(true (quote (= 0 0)))").map_err(|e| e.to_string())?;
    let sat = kripke_saturate(&l, std::slice::from_ref(&identity), 100);
    let fix = sat.fixpoint.ok_or("no fixpoint within 100 rounds")?;
    for budget in fix..fix + 10 {
        for name in ["liar", "teller"] {
            let s = l.registered(name).ok_or("unregistered sentence")?;
            let label = sat.at(budget).label(s);
            ensure(!label.is_determinate(), || format!("{name} labelled {label:?} at round {budget}"))?;
        }
    }
    let first = (0..sat.rounds.len())
        .find(|r| sat.at(*r).label(&identity) == Outcome::True)
        .ok_or("T('0=0') never labelled true")?;
    ensure(first <= 2, || format!("T('0=0') true only at round {first}"))?;
    Ok(format!("fixpoint at round {fix}; liar and teller ungrounded; T('0=0') true at round {first}"))
}

fn evaluator_laws() -> Verdict {
    let g = std_lang(Tag::Gnt);
    let model = model_for(&g, &[]);
    let vocab = Vocabulary::from_spec(&g.spec);
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..10_000 {
        let phi = vocab.random_sentence(&mut rng, 4);
        let small = Evaluator::new(model.as_ref(), 300).formula(&phi, &Env::new());
        let large = Evaluator::new(model.as_ref(), 1_200).formula(&phi, &Env::new());
        ensure(!small.is_determinate() || small == large, || format!("fuel changed {phi}: {small:?} -> {large:?}"))?;
        ensure(is_negatable(&g.spec, &phi) || large != Outcome::False, || format!("unnegatable {phi} is False"))?;
    }

    let f = std_lang(Tag::Fin(2));
    let fmodel = model_for(&f, &[]);
    let corpus = Vocabulary::from_spec(&f.spec).sentences_up_to(10);
    let (mut flipped, mut leveled) = (0, 0);
    for phi in &corpus {
        let a = Evaluator::new(fmodel.as_ref(), u64::MAX).formula(phi, &Env::new());
        if is_negatable(&f.spec, phi) {
            let neg = negate(&f.spec, phi).map_err(|e| e.to_string())?;
            let b = Evaluator::new(fmodel.as_ref(), u64::MAX).formula(&neg, &Env::new());
            ensure(a.flip() == b, || format!("de Morgan fails on {phi}"))?;
            flipped += 1;
        }
        // Level truth is defined on prefix forms, which operator terms do not have.
        if let Ok(p) = to_prefix(phi) {
            let t = n_true(fmodel.as_ref(), &p, &Env::new(), p.index()).map_err(|e| e.to_string())?;
            ensure(t == (a == Outcome::True), || format!("level truth disagrees on {phi}"))?;
            leveled += 1;
        }
    }
    Ok(format!(
        "10000 GNT sentences; de Morgan on {flipped} and level truth on {leveled} of {} FIN(2) sentences",
        corpus.len()
    ))
}

fn kernel_conditions() -> Verdict {
    use Condition::*;
    let cases = broken_proofs();
    let mut cited = BTreeSet::new();
    for (i, c) in cases.iter().enumerate() {
        let p = Proof::from_text(&c.system.lang.spec, &c.text).map_err(|e| format!("case {i}: {e}"))?;
        let got = check_proof(&c.system, &p).condition();
        ensure(got == Some(c.expected), || format!("case {i}: expected {}, got {got:?}", c.expected))?;
        cited.insert(c.expected.to_string());
    }
    let required = [
        I,
        II,
        III,
        IV,
        V,
        VI,
        VII,
        VIII,
        IX(Clause::Axiom),
        IX(Clause::Rule),
        IX(Clause::Generalization),
        IX(Clause::Specification),
        IX(Clause::Cases),
        IX(Clause::Induction),
    ];
    for r in required {
        ensure(cited.contains(&r.to_string()), || format!("no broken proof for {r}"))?;
    }
    ensure(cases.len() >= 30, || format!("only {} cases", cases.len()))?;
    Ok(format!("{} broken proofs, each rejected citing its condition ({} conditions)", cases.len(), cited.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Verdict); 9] = [
        ("soundness suite", soundness),
        ("russell agreement", russell_agreement),
        ("length bounds", length_bounds),
        ("brute-force exactness", brute_exactness),
        ("axiomatic dominance", dominance),
        ("busy beaver", busy_beaver),
        ("kripke", kripke),
        ("evaluator laws", evaluator_laws),
        ("kernel conditions", kernel_conditions),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match verdict {
            Ok(msg) => println!("criterion {}: PASS {name} [{secs:.1}s]: {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL {name} [{secs:.1}s]: {msg}", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
}
