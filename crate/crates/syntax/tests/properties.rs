use lnc_syntax::enumerate::Vocabulary;
use lnc_syntax::spec::{elt_decl, elt_lt_decl, fst_decl, FunctionDecl, RelationDecl};
use lnc_syntax::{
    definiteness_formula, is_negatable, length, negate, numeral, parse_expr, print, strongly_negatable,
    well_formed, Expr, LanguageSpec, QuantTemplate, PRIMARY_SORT,
};
use proptest::prelude::*;

fn spec(all_quantifiers: bool) -> LanguageSpec {
    let mut s = LanguageSpec::minimal(if all_quantifiers { "full" } else { "gradual" });
    s.relations.push(RelationDecl::new("lt", 2).strong());
    for f in ["+", "*", "^"] {
        s.functions.push(FunctionDecl::new(f, 2));
    }
    s.add_constant("0", PRIMARY_SORT);
    s.add_constant("1", PRIMARY_SORT);
    s.quantifiers.extend([QuantTemplate::BoundedForall, QuantTemplate::BoundedExists, QuantTemplate::Exists]);
    if all_quantifiers {
        s.quantifiers.insert(QuantTemplate::Forall);
        s.qlos.push(elt_decl());
    }
    s.qlos.push(fst_decl());
    s.qlos.push(elt_lt_decl());
    s.validate().unwrap();
    s
}

const VARS: [&str; 3] = ["a", "b", "c"];

fn term() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        Just(Expr::constant("0")),
        Just(Expr::constant("1")),
        (0..VARS.len()).prop_map(|i| Expr::var(VARS[i])),
    ];
    leaf.prop_recursive(3, 12, 2, |inner| {
        (prop_oneof![Just("+"), Just("*"), Just("^")], inner.clone(), inner)
            .prop_map(|(f, a, b)| Expr::app(f, vec![a, b]))
    })
}

fn formula() -> impl Strategy<Value = Expr> {
    let atom = (0..5usize, term(), term()).prop_map(|(k, a, b)| match k {
        0 => Expr::eq(a, b),
        1 => Expr::neg_atom("=", vec![a, b]),
        2 => Expr::lt(a, b),
        3 => Expr::neg_atom("lt", vec![a, b]),
        _ => Expr::defined(a),
    });
    atom.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::or(a, b)),
            (0..VARS.len(), any::<bool>(), inner.clone())
                .prop_map(|(i, all, body)| if all { Expr::forall(VARS[i], body) } else { Expr::exists(VARS[i], body) }),
            (0..VARS.len(), any::<bool>(), term(), inner.clone()).prop_map(|(i, all, t, body)| {
                if all {
                    Expr::forall_lt(VARS[i], t, body)
                } else {
                    Expr::exists_lt(VARS[i], t, body)
                }
            }),
            (0..VARS.len(), inner.clone(), term()).prop_map(|(i, body, t)| {
                Expr::eq(Expr::qlo1("fst", VARS[i], vec![], body), t)
            }),
        ]
    })
}

fn atoms(e: &Expr) -> usize {
    let mut n = 0;
    e.walk(&mut |x| {
        if matches!(x, Expr::Atom { .. }) {
            n += 1
        }
    });
    n
}

fn value(e: &Expr) -> u128 {
    match e {
        Expr::Const(c) => c.parse().unwrap(),
        Expr::App { func, args } => {
            let (a, b) = (value(&args[0]), value(&args[1]));
            match &**func {
                "+" => a + b,
                "*" => a * b,
                _ => unreachable!(),
            }
        }
        _ => unreachable!(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn negation_is_an_involution(phi in formula()) {
        let s = spec(true);
        if let Ok(n) = negate(&s, &phi) {
            prop_assert_eq!(negate(&s, &n).unwrap(), phi);
        }
    }

    #[test]
    fn negation_preserves_well_formedness(phi in formula()) {
        let s = spec(true);
        if well_formed(&s, &phi).ok() {
            if let Ok(n) = negate(&s, &phi) {
                prop_assert!(well_formed(&s, &n).ok());
                let d = definiteness_formula(&s, &phi).unwrap();
                prop_assert!(well_formed(&s, &d).ok());
                prop_assert!(is_negatable(&s, &d));
            }
        }
    }

    #[test]
    fn negation_length_bound(phi in formula()) {
        let s = spec(true);
        if let Ok(n) = negate(&s, &phi) {
            prop_assert!(length(&n) <= length(&phi) + atoms(&phi));
        }
    }

    #[test]
    fn strong_implies_negatable(phi in formula()) {
        for s in [spec(true), spec(false)] {
            if strongly_negatable(&s, &phi) {
                prop_assert!(is_negatable(&s, &phi));
            }
        }
    }

    #[test]
    fn print_then_parse_is_identity(phi in formula()) {
        let s = spec(true);
        let text = print(&phi);
        prop_assert_eq!(parse_expr(&s, &text).unwrap(), phi);
    }

    #[test]
    fn length_is_positive_and_additive(a in formula(), b in formula()) {
        prop_assert!(length(&a) > 0);
        let mut toks = lnc_syntax::render::tokens(&a);
        toks.extend(lnc_syntax::render::tokens(&b));
        prop_assert_eq!(toks.len(), length(&a) + length(&b));
    }

    #[test]
    fn numerals_denote_their_value(n in 0u64..1_000_000) {
        prop_assert_eq!(value(&numeral(n)), n as u128);
    }
}

#[test]
fn gradual_spec_rejects_unbounded_forall() {
    let s = spec(false);
    let e = parse_expr(&s, "(forall n (= n n))").unwrap();
    let r = well_formed(&s, &e);
    assert_eq!(r.first().unwrap().message, "quantifier template not enabled");
    assert!(well_formed(&s, &parse_expr(&s, "(+ 1 1)").unwrap()).ok());
    assert!(well_formed(&s, &parse_expr(&s, "(fst n (= n n))").unwrap()).ok());
}

#[test]
fn numeral_length_is_logarithmic() {
    let ratio = |n: u64| length(&numeral(n)) as f64 / ((n + 2) as f64).log2();
    let worst = (1..=1_000_000u64).step_by(997).map(ratio).fold(0.0, f64::max);
    assert!(worst < 10.0, "worst ratio {worst}");
}

#[test]
fn enumerated_sentences_are_negatable_in_the_full_language() {
    let s = spec(true);
    let v = Vocabulary::from_spec(&s).without_relations(&["def"]);
    for phi in v.sentences_up_to(7) {
        let n = negate(&s, &phi).unwrap();
        assert_eq!(negate(&s, &n).unwrap(), phi);
    }
}
