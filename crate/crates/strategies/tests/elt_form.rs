use lnc_eval::{eval_term, to_prefix, Env};
use lnc_languages::{make_std, Tag};
use lnc_strategies::{pad_prefix, to_elt_form};
use lnc_syntax::enumerate::Vocabulary;
use lnc_syntax::{print, Expr};
use proptest::prelude::*;

#[test]
fn constant_becomes_elt_of_its_arrow() {
    let fin = make_std(&Tag::Fin(2)).unwrap();
    let e = to_elt_form(&fin.spec, &Expr::constant("1")).unwrap();
    assert_eq!(print(&e), "(elt x0 (= 1 x0))");
}

#[test]
fn elt_form_agrees_on_fin2_up_to_size_8() {
    let fin = make_std(&Tag::Fin(2)).unwrap();
    let terms = Vocabulary::from_spec(&fin.spec).closed_terms_up_to(8);
    assert!(terms.len() > 100);
    let env = Env::new();
    for t in &terms {
        let e = to_elt_form(&fin.spec, t).unwrap();
        let direct = eval_term(&fin, t, &env, 100_000).unwrap().outcome;
        let via = eval_term(&fin, &e, &env, 1_000_000).unwrap().outcome;
        assert_eq!(direct.value(), via.value(), "{}", print(t));
    }
}

#[test]
fn gnt_has_no_elt() {
    let g = make_std(&Tag::Gnt).unwrap();
    assert!(to_elt_form(&g.spec, &Expr::constant("1")).is_err());
}

fn sentences() -> Vec<Expr> {
    let fin = make_std(&Tag::Fin(2)).unwrap();
    Vocabulary::from_spec(&fin.spec).without_qlos().sentences_up_to(7)
}

proptest! {
    #[test]
    fn padding_is_idempotent(i in 0usize..100_000, extra in 0usize..3) {
        let all = sentences();
        let phi = &all[i % all.len()];
        let n = to_prefix(phi).unwrap().index() + extra;
        let p = pad_prefix(phi, n).unwrap();
        prop_assert_eq!(p.index(), n);
        let q = pad_prefix(&p.to_formula(), n).unwrap();
        prop_assert_eq!(q.index(), n);
        prop_assert!(q.to_formula().alpha_eq(&p.to_formula()));
    }
}
