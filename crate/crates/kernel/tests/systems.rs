use lnc_kernel::{metasystem, standard_axiomatization, weak_metasystem, REFLECTION};
use lnc_languages::{make_std, Tag};
use std::collections::BTreeSet;

#[test]
fn gnt_rules_have_expected_shapes() {
    let a = standard_axiomatization(&make_std(&Tag::Gnt).unwrap());
    let elim = a.get("forall-lt-elim").unwrap();
    assert_eq!(elim.premises.len(), 2);
    assert_eq!(elim.conclusion.to_string(), "?phi(?t1)");
    let fst = a.get("fst-intro-split").unwrap();
    assert!(fst.premises.len() >= 2, "{fst}");
    assert!(a.get("sn-lt").is_some());
    assert!(a.get("sn-def").is_none());
    assert!(a.ill_formed().is_empty());
}

#[test]
fn metasystems_differ_only_by_reflection() {
    let a = standard_axiomatization(&make_std(&Tag::Nt).unwrap());
    let full: BTreeSet<String> = metasystem(&a).names().into_iter().collect();
    let weak: BTreeSet<String> = weak_metasystem(&a).names().into_iter().collect();
    let diff: Vec<&String> = full.symmetric_difference(&weak).collect();
    assert_eq!(diff, vec![REFLECTION]);
    assert!(full.contains("true-and-intro"));
    assert!(weak.contains("and-elim-left"));
}

#[test]
fn metasystem_iterates() {
    let a = standard_axiomatization(&make_std(&Tag::Gnt).unwrap());
    let twice = metasystem(&metasystem(&a));
    assert!(twice.ill_formed().is_empty());
    assert!(twice.get("true2-or-intro").is_some());
    assert!(twice.reflection_base("true2").is_some());
    assert!(twice.reflection_base("true").is_some());
}
