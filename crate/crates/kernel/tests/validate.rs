use lnc_eval::Value;
use lnc_kernel::{check_proof, partially_validate, standard_axiomatization, Proof};
use lnc_languages::{make_std, Tag};
use lnc_syntax::Assignment;

#[test]
fn valid_proof_validates_to_full_length() {
    let lang = make_std(&Tag::Fin(2)).unwrap();
    let a = standard_axiomatization(&lang);
    let p = Proof::from_text(
        &lang.spec,
        "(proof (then (def 1) (by const-def-1)) (fix x (lt x 1) (depends 1)) (then (def x) (by var-def) (depends 1 2))
           (then (forall (x (lt x 1)) (def x)) generalization (depends 1)))",
    )
    .unwrap();
    assert!(check_proof(&a, &p).is_valid());
    let v = partially_validate(&p, &lang, &Assignment::new());
    assert!(v.is_complete(&p), "{:?}", v.failure);
    assert_eq!(v.sets[1].len(), 1);
    assert_eq!(v.sets[1][0].get("x"), Some(&Value::Nat(0)));
}

#[test]
fn unbounded_fix_fans_out_over_the_domain() {
    let lang = make_std(&Tag::Fin(3)).unwrap();
    let p = Proof::from_text(&lang.spec, "(proof (fix x) (then (def x) (by var-def) (depends 1)) (then (forall x (def x)) generalization))").unwrap();
    let v = partially_validate(&p, &lang, &Assignment::new());
    assert!(v.is_complete(&p), "{:?}", v.failure);
    assert_eq!(v.sets[0].len(), 3);
}

#[test]
fn false_hypothesis_stops_at_first_step() {
    let lang = make_std(&Tag::Fin(2)).unwrap();
    let p = Proof::from_text(&lang.spec, "(proof (assume (= 0 1)) (then (= 0 1) (by and-elim-left) (depends 1)))").unwrap();
    let v = partially_validate(&p, &lang, &Assignment::new());
    assert_eq!(v.failure.as_ref().map(|f| f.step), Some(0));
    assert_eq!(v.length(), 0);
}
