use lnc_kernel::{augment, check_proof, check_shorthand_proof, parse_shorthand, standard_axiomatization, Definition, Proof, ShorthandError};
use lnc_languages::{make_std, Tag};
use lnc_syntax::{numeral, print};

const SQUARE: &str = "(shorthand (define (sq x) (* x x))
  (proof (then (def 1) (by const-def-1))
    (then (and (def 1) (def 1)) (by and-intro) (depends 1))
    (then (def (+ 1 1)) (by fun-def-join-+) (depends 1 2))
    (then (and (def (+ 1 1)) (def (+ 1 1))) (by and-intro) (depends 1 2 3))
    (then (def (* (+ 1 1) (+ 1 1))) (by fun-def-join-*) (depends 1 2 3 4))
    (then (= (sq (+ 1 1)) NUM4) (by sq-def) (depends 1 2 3 4 5))))";

#[test]
fn square_of_two_is_four() {
    let a = standard_axiomatization(&make_std(&Tag::Gnt).unwrap());
    let text = SQUARE.replace("NUM4", &print(&numeral(4)));
    let (defs, proof) = parse_shorthand(&a, &text).unwrap();
    let v = check_shorthand_proof(&a, &defs, &proof).unwrap();
    assert!(v.is_valid(), "{v}");
}

#[test]
fn recursive_definition_is_rejected() {
    let a = standard_axiomatization(&make_std(&Tag::Gnt).unwrap());
    let err = parse_shorthand(&a, "(shorthand (define (f x) (+ (f x) 1)) (proof (then (def 0) (by const-def-0))))");
    assert!(matches!(err, Err(ShorthandError::Recursive(_))), "{err:?}");
}

#[test]
fn clashing_definition_is_rejected() {
    let a = standard_axiomatization(&make_std(&Tag::Gnt).unwrap());
    let d = Definition::function("+", &["x"], lnc_syntax::Expr::var("x"));
    assert!(matches!(augment(&a, &[d]), Err(ShorthandError::Clash(_))));
}

#[test]
fn no_definitions_means_plain_checking() {
    let a = standard_axiomatization(&make_std(&Tag::Gnt).unwrap());
    for text in [
        "(proof (then (def 0) (by const-def-0)))",
        "(proof (then (def 0) (by const-def-1)))",
    ] {
        let p = Proof::from_text(&a.lang.spec, text).unwrap();
        assert_eq!(check_shorthand_proof(&a, &[], &p).unwrap(), check_proof(&a, &p));
    }
}
