use lnc_kernel::{check_proof, generate_corpus, soundness_suite, standard_axiomatization, Justification, Proof, StepKind};
use lnc_languages::{make_std, Tag};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn generated_proofs_are_sound_on_fin3() {
    let a = standard_axiomatization(&make_std(&Tag::Fin(3)).unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let corpus = generate_corpus(&a, &mut rng, 200, 6);
    let report = soundness_suite(&a, &corpus);
    assert!(report.rejected.is_empty(), "{:?}", report.rejected.first());
    assert!(report.is_sound(), "{:?} {:?}", report.violations.first(), report.incomplete_validations.first());
    assert!(report.checked > 0);
}

#[test]
fn generated_proofs_are_accepted_on_nt() {
    let a = standard_axiomatization(&make_std(&Tag::Nt).unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let corpus = generate_corpus(&a, &mut rng, 40, 5);
    let report = soundness_suite(&a, &corpus);
    assert!(report.rejected.is_empty(), "{:?}", report.rejected.first());
    assert!(report.violations.is_empty(), "{:?}", report.violations.first());
}

fn corrupt(p: &mut Proof) -> bool {
    for s in p.steps.iter_mut().rev() {
        if let StepKind::Then { by: Justification::By { rule, .. }, .. } = &mut s.kind {
            *rule = if rule == "and-intro" { "or-intro-left".into() } else { "and-intro".into() };
            return true;
        }
    }
    false
}

#[test]
fn corrupted_justification_is_rejected() {
    let a = standard_axiomatization(&make_std(&Tag::Fin(3)).unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut seen = 0;
    for mut p in generate_corpus(&a, &mut rng, 30, 4) {
        if corrupt(&mut p) {
            seen += 1;
            let v = check_proof(&a, &p);
            assert!(!v.is_valid(), "{p}");
        }
    }
    assert!(seen > 0);
}
