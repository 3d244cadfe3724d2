//! Deliberately broken proofs, each violating exactly one condition, paired
//! with the condition the checker is expected to cite.

use crate::axioms::{metasystem, standard_axiomatization, weak_metasystem, AxiomSystem};
use crate::check::{Clause, Condition};
use lnc_languages::{make_std, Tag};

/// A valid proof using find and specification.
pub const FIND_OK: &str = "(proof (then (def 0) (by const-def-0)) (then (= 0 0) (by eq-refl) (depends 1))
    (then (exists y (= y 0)) (by exists-intro) (depends 1 2))
    (find y (= y 0) (depends 1 2 3))
    (then (def 0) (by const-def-0) (depends 1 2 3 4))
    (then (def 0) specification (depends 1 2 3)))";

/// A valid metasystem proof with one reflection step.
pub const REFLECT: &str = "(proof (assume (true (quote (and (= 0 0) (= 1 1)))))
    (then (true (quote (= 0 0)))
      (reflection (proof (assume (and (= 0 0) (= 1 1))) (then (= 0 0) (by and-elim-left) (depends 1))))
      (depends 1)))";

#[derive(Debug, Clone)]
pub struct BrokenProof {
    pub system: AxiomSystem,
    pub text: String,
    pub expected: Condition,
}

fn case(system: &AxiomSystem, text: &str, expected: Condition) -> BrokenProof {
    BrokenProof {
        system: system.clone(),
        text: text.to_string(),
        expected,
    }
}

fn system(tag: Tag) -> AxiomSystem {
    standard_axiomatization(&make_std(&tag).expect("standard language"))
}

/// At least one broken proof per condition, over NT, GNT and its metasystems.
pub fn broken_proofs() -> Vec<BrokenProof> {
    use Condition::*;
    let nt = system(Tag::Nt);
    let gnt = system(Tag::Gnt);
    let meta = metasystem(&gnt);
    let weak = weak_metasystem(&gnt);
    let wrong_find = FIND_OK.replace("(find y (= y 0)", "(find y (= 0 y)");
    let bad_inner = REFLECT.replace("and-elim-left", "and-elim-right");
    vec![
        // (I)
        case(&nt, "(proof (assume (= 0 0)) (then (= 0 0) (by and-intro) (depends 2)))", I),
        case(
            &nt,
            "(proof (assume (and (= 0 0) (lt 0 1))) (then (= 0 0) (by and-elim-left) (depends 1))
               (then (and (= 0 0) (= 0 0)) (by and-intro) (depends 2)))",
            I,
        ),
        // (II)
        case(
            &nt,
            "(proof (assume (and (= 0 0) (lt 0 1))) (then (= 0 0) (by and-elim-left) (depends 1))
               (then (def 0) (by const-def-0)) (then (lt 0 1) (by and-elim-right) (depends 1)))",
            II,
        ),
        // (III)
        case(&nt, "(proof (assume (= 0 0)) (then (= z z) (by eq-refl) (depends 1)))", III),
        case(
            &nt,
            "(proof (vars x) (then (def x) (by var-def)) (fix x (depends 1)) (then (def x) (by var-def) (depends 1 2))
               (then (forall x (def x)) generalization (depends 1)))",
            III,
        ),
        case(
            &nt,
            "(proof (fix x) (fix x (depends 1)) (then (def x) (by var-def) (depends 1 2))
               (then (forall x (def x)) generalization (depends 1)) (then (def 0) (by const-def-0)))",
            III,
        ),
        case(&nt, "(proof (fix x (lt x z)) (then (def 0) (by const-def-0) (depends 1)) (then (def 0) (by const-def-0)))", III),
        // (IV)
        case(&nt, "(proof (then (def 0) (by const-def-0)) (assume (= 0 0)) (then (def 0) (by const-def-0)))", IV),
        // (V)
        case(&nt, "(proof (assume (= 0 0)) (fix x (depends 1)))", V),
        case(&nt, "(proof (fix x) (then (def x) (by var-def) (depends 1)))", V),
        case(&nt, "(proof)", V),
        case(&nt, "(proof (assume (= 0 0)))", V),
        // (VI)
        case(&nt, "(proof (find y (= y y)) (then (def 0) (by const-def-0) (depends 1)) (then (def 0) (by const-def-0)))", VI),
        case(&gnt, &wrong_find, VI),
        // (VII)
        case(
            &nt,
            "(proof (assume (or (= 0 0) (= 0 1))) (case 1 (= 0 0) (depends 1)) (then (def 0) (by const-def-0) (depends 1 2))
               (then (def 0) (by const-def-0) (depends 1)))",
            VII,
        ),
        case(
            &nt,
            "(proof (assume (or (= 0 0) (= 0 1))) (case 1 (= 0 1) (depends 1)) (then (def 0) (by const-def-0) (depends 1 2))
               (then (def 0) (by const-def-0) (depends 1)))",
            VII,
        ),
        case(
            &nt,
            "(proof (assume (or (= 0 0) (= 0 1))) (then (def 0) (by const-def-0) (depends 1))
               (case 1 (= 0 0) (depends 1 2)) (then (def 0) (by const-def-0) (depends 1 2 3)) (then (def 0) (by const-def-0) (depends 1 2)))",
            VII,
        ),
        // (VIII)
        case(
            &nt,
            "(proof (then (def 0) (by const-def-0)) (then (= 0 0) (by eq-refl) (depends 1))
               (then (exists y (= y 0)) (by exists-intro) (depends 1 2))
               (find y (= y 0) (depends 1 2 3)) (fix x (depends 1 2 3 4)) (then (def x) (by var-def) (depends 1 2 3 4 5))
               (then (forall x (def x)) generalization (depends 1 2 3)))",
            VIII,
        ),
        // (2a)
        case(&nt, "(proof (then (def 0) (by const-def-1)))", IX(Clause::Axiom)),
        case(&nt, "(proof (then (def (+ 0 1)) (by var-def)))", IX(Clause::Axiom)),
        // (2b)
        case(&nt, "(proof (assume (= 0 0)) (then (lt 0 1) (by and-elim-right) (depends 1)))", IX(Clause::Rule)),
        case(&nt, "(proof (assume (= 0 0)) (then (= 0 0) (by no-such-rule) (depends 1)))", IX(Clause::Rule)),
        case(&nt, "(proof (assume (= 0 0)) (then (and (= 0 0) (lt 0 1)) (by and-intro) (depends 1)))", IX(Clause::Rule)),
        // (2c)
        case(&nt, "(proof (then (forall x (def x)) generalization))", IX(Clause::Generalization)),
        case(
            &nt,
            "(proof (fix x (lt x 1)) (then (def x) (by var-def) (depends 1)) (then (forall (x (lt x 1)) (def x)) generalization))",
            IX(Clause::Generalization),
        ),
        // (2d)
        case(&nt, "(proof (then (def 0) specification))", IX(Clause::Specification)),
        // (2e)
        case(
            &nt,
            "(proof (assume (or (= 0 0) (= 0 1))) (case 1 (= 0 0) (depends 1)) (then (def 0) (by const-def-0) (depends 1 2))
               (case 2 (= 0 1) (depends 1)) (then (def 1) (by const-def-1) (depends 1 4)) (then (def 0) cases (depends 1)))",
            IX(Clause::Cases),
        ),
        // (2f)
        case(
            &nt,
            "(proof (then (def 1) (by const-def-1)) (fix-ind m (def m) (depends 1))
               (then (and (def m) (def 1)) (by and-intro) (depends 1 2)) (then (def (+ m 1)) (by fun-def-join-+) (depends 1 2 3))
               (then (def 1) induction (depends 1)))",
            IX(Clause::Induction),
        ),
        case(
            &nt,
            "(proof (then (def 0) (by const-def-0)) (then (def 1) (by const-def-1) (depends 1)) (fix-ind m (def m) (depends 1 2))
               (then (and (def m) (def 1)) (by and-intro) (depends 1 2 3)) (then (def (+ m 1)) (by fun-def-join-+) (depends 1 2 3 4))
               (then (def (+ 1 1)) induction (depends 1 2)))",
            IX(Clause::Induction),
        ),
        // reflection
        case(&weak, REFLECT, IX(Clause::Reflection)),
        case(&meta, &bad_inner, IX(Clause::Reflection)),
        // well-formedness
        case(&gnt, "(proof (fix x) (then (def 0) (by const-def-0) (depends 1)) (then (def 0) (by const-def-0)))", WellFormed),
        case(&gnt, "(proof (then (forall x (def x)) generalization))", WellFormed),
    ]
}
