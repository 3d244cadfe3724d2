use lnc_eval::{eval, eval_term, model_for, n_true, to_prefix, find_verification, Env, Evaluator, Outcome, Reason, TermOutcome, Value};
use lnc_languages::derived::desugar_max;
use lnc_languages::{make_kripke, make_std, ListCodec, StdLanguage, Tag};
use lnc_syntax::enumerate::Vocabulary;
use lnc_syntax::{is_negatable, negate, numeral, Expr};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn gnt() -> StdLanguage {
    make_std(&Tag::Gnt).unwrap()
}

fn run(lang: &StdLanguage, text: &str, fuel: u64) -> Outcome {
    let e = lang.parse(text).unwrap();
    eval(lang, &e, &Env::new(), fuel).unwrap().outcome
}

#[test]
fn existential_finds_its_witness() {
    assert_eq!(run(&gnt(), "(exists n (= n (+ 1 1)))", 1_000), Outcome::True);
}

#[test]
fn vacuous_existential_runs_out_of_fuel() {
    assert_eq!(
        run(&gnt(), "(exists n (lt n 0))", 10_000),
        Outcome::Unknown(Reason::FuelExhausted)
    );
}

#[test]
fn first_root_of_four() {
    let g = gnt();
    let e = Expr::eq(
        Expr::qlo1(
            "fst",
            "n",
            vec![],
            Expr::eq(Expr::app("*", vec![Expr::var("n"), Expr::var("n")]), numeral(4)),
        ),
        numeral(2),
    );
    assert_eq!(eval(&g, &e, &Env::new(), 1_000).unwrap().outcome, Outcome::True);
}

#[test]
fn definiteness_of_a_term_without_referent() {
    let g = gnt();
    // No x < 2 equals 3, so the operator names nothing and neither disjunct has a value.
    let e = g
        .parse("(= (elt_lt x (+ 1 1) (= x (+ 1 (+ 1 1)))) 0)")
        .unwrap();
    let d = lnc_syntax::definiteness_formula(&g.spec, &e).unwrap();
    assert_eq!(
        eval(&g, &d, &Env::new(), 10_000).unwrap().outcome,
        Outcome::Unknown(Reason::MissingReferent)
    );
    // An empty unbounded search, by contrast, never finishes.
    let f = g.parse("(= (fst n (and (= n (+ 1 (+ 1 1))) (= n 0))) 0)").unwrap();
    assert_eq!(
        eval(&g, &f, &Env::new(), 10_000).unwrap().outcome,
        Outcome::Unknown(Reason::FuelExhausted)
    );
}

#[test]
fn disjunction_survives_a_diverging_side() {
    let g = gnt();
    assert_eq!(run(&g, "(or (exists n (lt n 0)) (= 0 0))", 1_000), Outcome::True);
    // The false side settles it without waiting, but the conjunction cannot be false.
    assert_eq!(
        run(&g, "(and (exists n (lt n 0)) (= 0 1))", 1_000),
        Outcome::Unknown(Reason::Unnegatable)
    );
}

#[test]
fn huge_powers_cost_fuel_instead_of_memory() {
    let g = gnt();
    // 2^(2^16) has 65537 bits.
    let e = g.parse("(lt 0 (^ (+ 1 1) (^ (+ 1 1) (^ (+ 1 1) (+ 1 (+ 1 (+ 1 1)))))))").unwrap();
    assert_eq!(
        eval(&g, &e, &Env::new(), 1_000).unwrap().outcome,
        Outcome::Unknown(Reason::FuelExhausted)
    );
    assert_eq!(eval(&g, &e, &Env::new(), 100_000).unwrap().outcome, Outcome::True);
}

#[test]
fn unnegatable_conjunction_is_not_false() {
    let g = gnt();
    assert_eq!(
        run(&g, "(and (= 0 1) (exists n (= n n)))", 1_000),
        Outcome::Unknown(Reason::Unnegatable)
    );
    assert_eq!(run(&g, "(and (= 0 1) (= 0 0))", 1_000), Outcome::False);
    let f = make_std(&Tag::Fin(2)).unwrap();
    assert_eq!(run(&f, "(and (def 0) (= 0 1))", 1_000), Outcome::Unknown(Reason::Unnegatable));
}

#[test]
fn ill_formed_input_is_rejected() {
    let g = gnt();
    let e = g.parse("(forall n (= n n))").unwrap();
    assert!(eval(&g, &e, &Env::new(), 100).is_err());
}

#[test]
fn maximum_desugaring_evaluates() {
    let g = gnt();
    let m = Expr::var("m");
    let max = desugar_max(&g.spec, &m, "m", &Expr::eq(m.clone(), m.clone()), &numeral(3)).unwrap();
    let v = eval_term(&g, &max, &Env::new(), 100_000).unwrap().outcome;
    assert_eq!(v, TermOutcome::Value(Value::Nat(3)));
    let none = Expr::neg_atom("=", vec![m.clone(), m.clone()]);
    let vacuous = desugar_max(&g.spec, &m, "m", &none, &numeral(3)).unwrap();
    let v = eval_term(&g, &vacuous, &Env::new(), 100_000).unwrap().outcome;
    assert_eq!(v, TermOutcome::Value(Value::Nat(0)));
}

#[test]
fn list_accessors_agree_with_the_codec() {
    let g = gnt();
    let codec = ListCodec::new(2);
    let model = model_for(&g, &[]);
    for list in [vec![], vec![1u64], vec![3, 0], vec![2, 1, 3]] {
        let code = codec.encode_u64(&list).unwrap();
        let x = numeral(u64::try_from(&code).unwrap());
        let mut ev = Evaluator::new(model.as_ref(), 10_000_000);
        let len = ev.term(&codec.length_term(&x), &Env::new());
        assert_eq!(len, TermOutcome::Value(Value::Nat(list.len() as u64)), "{list:?}");
        for (i, &a) in list.iter().enumerate() {
            let t = codec.element_term(&x, &numeral(i as u64));
            let mut ev = Evaluator::new(model.as_ref(), 10_000_000);
            assert_eq!(ev.term(&t, &Env::new()), TermOutcome::Value(Value::Nat(a)), "{list:?}[{i}]");
        }
        let mut ev = Evaluator::new(model.as_ref(), 10_000_000);
        assert_eq!(ev.formula(&codec.is_list_formula(&x), &Env::new()), Outcome::True);
    }
    // 1 + 4 + 16 claims one entry but carries two.
    let mut ev = Evaluator::new(model.as_ref(), 10_000_000);
    assert_eq!(ev.formula(&codec.is_list_formula(&numeral(21)), &Env::new()), Outcome::False);
}

#[test]
fn truth_in_the_metalanguage() {
    let m = make_std(&Tag::MetaOf(Box::new(Tag::Gnt))).unwrap();
    assert_eq!(run(&m, "(true (quote (= 0 0)))", 1_000), Outcome::True);
    assert_eq!(run(&m, "(not (true (quote (= 0 1))))", 1_000), Outcome::True);
    assert_eq!(run(&m, "(true (quote (lt 0 x)) (quote x) 1)", 1_000), Outcome::True);
    assert_eq!(run(&m, "(= (ref (quote (+ 1 1))) (+ 1 1))", 1_000), Outcome::True);
    // Codes are numbers: truth of the code of `0=0` is truth of `0=0`.
    let code = ListCodec::default().encode_expr(&m.parse("(= 0 0)").unwrap()).unwrap();
    let model = model_for(&m, &[]);
    let arg = Value::from_big(code);
    let mut ev = Evaluator::new(model.as_ref(), 1_000);
    let e = Expr::atom("true", vec![Expr::var("c")]);
    assert_eq!(ev.formula(&e, &Env::new().with("c", arg)), Outcome::True);
}

#[test]
fn truth_does_not_reach_its_own_level() {
    // The first-level truth relation only covers base sentences; one level up it does.
    let m1 = make_std(&Tag::MetaOf(Box::new(Tag::Gnt))).unwrap();
    let inner = "(true (quote (true (quote (= 0 0)))))";
    assert_eq!(run(&m1, inner, 1_000), Outcome::False);
    let m2 = make_std(&Tag::MetaOf(Box::new(Tag::MetaOf(Box::new(Tag::Gnt))))).unwrap();
    assert_eq!(run(&m2, "(true2 (quote (true (quote (= 0 0)))))", 1_000), Outcome::True);
}

#[test]
fn kripke_truth_values() {
    let tag = Tag::KripkeOf(Box::new(Tag::Fin(2)));
    let k = make_kripke(&tag, &[("liar", "(not (true liar))")]).unwrap();
    assert_eq!(run(&k, "(true liar)", 1_000), Outcome::Unknown(Reason::Ungrounded));
    assert_eq!(run(&k, "(true (quote (= 0 0)))", 1_000), Outcome::True);
    assert_eq!(run(&k, "(or (true liar) (= 0 0))", 1_000), Outcome::True);
}

fn fin2_corpus(max_len: usize) -> Vec<Expr> {
    let f = make_std(&Tag::Fin(2)).unwrap();
    Vocabulary::from_spec(&f.spec).sentences_up_to(max_len)
}

#[test]
fn de_morgan_flips_on_fin2() {
    let f = make_std(&Tag::Fin(2)).unwrap();
    let model = model_for(&f, &[]);
    for phi in fin2_corpus(8) {
        if !is_negatable(&f.spec, &phi) {
            continue;
        }
        let a = Evaluator::new(model.as_ref(), u64::MAX).formula(&phi, &Env::new());
        let neg = negate(&f.spec, &phi).unwrap();
        let b = Evaluator::new(model.as_ref(), u64::MAX).formula(&neg, &Env::new());
        assert_eq!(a.flip(), b, "{phi}");
    }
}

#[test]
fn level_truth_matches_evaluation_on_fin2() {
    let f = make_std(&Tag::Fin(2)).unwrap();
    let model = model_for(&f, &[]);
    let corpus = Vocabulary::from_spec(&f.spec).without_qlos().sentences_up_to(8);
    for phi in corpus {
        let e = Evaluator::new(model.as_ref(), u64::MAX).formula(&phi, &Env::new());
        let p = to_prefix(&phi).unwrap();
        let t = n_true(model.as_ref(), &p, &Env::new(), p.index()).unwrap();
        assert_eq!(e == Outcome::True, t, "{phi}");
    }
}

#[test]
fn verifications_exist_exactly_for_true_sentences() {
    let f = make_std(&Tag::Fin(2)).unwrap();
    let model = model_for(&f, &[]);
    let corpus = Vocabulary::from_spec(&f.spec).without_qlos().sentences_up_to(9);
    let mut checked = 0;
    for phi in corpus {
        let Ok(found) = find_verification(model.as_ref(), &phi, &Env::new(), u64::MAX) else {
            continue;
        };
        let e = Evaluator::new(model.as_ref(), u64::MAX).formula(&phi, &Env::new());
        assert_eq!(found.is_some(), e == Outcome::True, "{phi}");
        if let Some(v) = found {
            assert!(lnc_eval::verify(model.as_ref(), &phi, &Env::new(), &v).unwrap());
        }
        checked += 1;
    }
    assert!(checked > 1000);
}

#[test]
fn random_gnt_sentences_obey_fuel_and_negatability_laws() {
    let g = gnt();
    let vocab = Vocabulary::from_spec(&g.spec);
    let model = model_for(&g, &[]);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..1_000 {
        let phi = vocab.random_sentence(&mut rng, 4);
        let small = Evaluator::new(model.as_ref(), 300).formula(&phi, &Env::new());
        let large = Evaluator::new(model.as_ref(), 1_200).formula(&phi, &Env::new());
        if small.is_determinate() {
            assert_eq!(small, large, "{phi}");
        }
        if !is_negatable(&g.spec, &phi) {
            assert_ne!(large, Outcome::False, "{phi}");
        }
    }
}

#[test]
fn evaluation_is_deterministic() {
    let g = gnt();
    let e = g.parse("(exists n (and (lt 1 n) (= (* n n) (+ n (+ 1 1)))))").unwrap();
    let a = eval(&g, &e, &Env::new(), 5_000).unwrap();
    let b = eval(&g, &e, &Env::new(), 5_000).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.outcome, Outcome::True);
}
