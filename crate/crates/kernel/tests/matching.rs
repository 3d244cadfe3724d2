use lnc_kernel::{instantiate, standard_axiomatization, Bindings, Matcher};
use lnc_languages::{make_std, Tag};
use lnc_syntax::enumerate::Vocabulary;
use lnc_syntax::schema::Abstraction;
use proptest::prelude::*;
use std::sync::OnceLock;

fn pool() -> &'static (lnc_kernel::AxiomSystem, Vec<lnc_syntax::Expr>) {
    static POOL: OnceLock<(lnc_kernel::AxiomSystem, Vec<lnc_syntax::Expr>)> = OnceLock::new();
    POOL.get_or_init(|| {
        let a = standard_axiomatization(&make_std(&Tag::Gnt).unwrap());
        let sentences = Vocabulary::from_spec(&a.lang.spec).without_qlos().sentences_up_to(5);
        (a, sentences)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn rule_instances_match_back(i in 0usize..10_000, j in 0usize..10_000, r in 0usize..4) {
        let (a, s) = pool();
        let (phi, psi) = (&s[i % s.len()], &s[j % s.len()]);
        let rule = a.get(["and-intro", "or-intro-left", "and-elim-left", "explosion"][r]).unwrap();
        let b = Bindings::default()
            .hole("?phi", Abstraction::constant(phi.clone()))
            .hole("?psi", Abstraction::constant(psi.clone()));
        let target = match instantiate(&a.lang.spec, &rule.conclusion, &b) {
            Ok(t) => t,
            Err(_) => return Ok(()),
        };
        let mut m = Matcher::new(&a.lang.spec, Bindings::default());
        m.unify(&rule.conclusion, &target).unwrap();
        for p in &rule.premises {
            if let Ok(pt) = instantiate(&a.lang.spec, p, &b) {
                m.unify(p, &pt).unwrap();
            }
        }
        let found = m.finish().unwrap();
        let again = instantiate(&a.lang.spec, &rule.conclusion, &found).unwrap();
        prop_assert!(again.alpha_eq(&target));
    }
}
