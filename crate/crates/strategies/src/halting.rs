//! Halting proofs for toy programs inside the proof kernel.
//!
//! Programs are terms `(cons I (cons I … nil))` over `(inc r)`, `(djz r t)`
//! and `(halt r)`. Indices, registers and jump targets are unary numerals
//! `(+ (+ 0 1) 1)`, so fetch facts and machine configurations line up
//! syntactically. `(at p i a b)` says the run of `p` reaches instruction `i`
//! with registers `a`, `b`.

use crate::toy::{Instr, Run, ToyProgram};
use lnc_kernel::{metasystem, standard_axiomatization, AxiomSystem, Justification, Proof, ProofBuilder};
use lnc_languages::{make_std, StdLanguage, Tag};
use lnc_syntax::spec::{FunctionDecl, RelationDecl};
use lnc_syntax::{name, Expr, PRIMARY_SORT};
use std::collections::BTreeMap;

/// Arithmetic plus program syntax and the machine relations.
pub fn toy_language() -> StdLanguage {
    let mut lang = make_std(&Tag::Nt).expect("nt is a standard language");
    let spec = &mut lang.spec;
    spec.name = name("toy");
    spec.functions.push(FunctionDecl::new("cons", 2));
    spec.functions.push(FunctionDecl::new("inc", 1));
    spec.functions.push(FunctionDecl::new("djz", 2));
    spec.functions.push(FunctionDecl::new("halt", 1));
    spec.add_constant("nil", PRIMARY_SORT);
    spec.relations.push(RelationDecl::new("fetch", 3));
    spec.relations.push(RelationDecl::new("at", 4));
    spec.relations.push(RelationDecl::new("halts", 1));
    lang
}

/// The standard axiomatization of [`toy_language`] plus the machine rules.
pub fn toy_axioms() -> AxiomSystem {
    let mut a = standard_axiomatization(&toy_language());
    a.name = "toy".into();
    a.add("fetch-head", &[], "(fetch (cons ?I ?p) 0 ?I)");
    a.add("fetch-tail", &["(fetch ?p ?i ?J)"], "(fetch (cons ?I ?p) (+ ?i 1) ?J)");
    a.add("run-start", &[], "(at ?p 0 0 0)");
    a.add("run-inc-0", &["(at ?p ?i ?a ?b)", "(fetch ?p ?i (inc 0))"], "(at ?p (+ ?i 1) (+ ?a 1) ?b)");
    a.add("run-inc-1", &["(at ?p ?i ?a ?b)", "(fetch ?p ?i (inc (+ 0 1)))"], "(at ?p (+ ?i 1) ?a (+ ?b 1))");
    a.add("run-jump-0", &["(at ?p ?i 0 ?b)", "(fetch ?p ?i (djz 0 ?t))"], "(at ?p ?t 0 ?b)");
    a.add("run-jump-1", &["(at ?p ?i ?a 0)", "(fetch ?p ?i (djz (+ 0 1) ?t))"], "(at ?p ?t ?a 0)");
    a.add("run-dec-0", &["(at ?p ?i (+ ?a 1) ?b)", "(fetch ?p ?i (djz 0 ?t))"], "(at ?p (+ ?i 1) ?a ?b)");
    a.add(
        "run-dec-1",
        &["(at ?p ?i ?a (+ ?b 1))", "(fetch ?p ?i (djz (+ 0 1) ?t))"],
        "(at ?p (+ ?i 1) ?a ?b)",
    );
    a.add("halts", &["(at ?p ?i ?a ?b)", "(fetch ?p ?i (halt ?r))"], "(halts ?p)");
    a
}

pub fn unary(n: u64) -> Expr {
    (0..n).fold(Expr::constant("0"), |acc, _| Expr::app("+", vec![acc, Expr::constant("1")]))
}

fn from_unary(e: &Expr) -> Option<u64> {
    match e {
        Expr::Const(c) if &**c == "0" => Some(0),
        Expr::App { func, args } if &**func == "+" && args.len() == 2 && args[1] == Expr::constant("1") => {
            Some(from_unary(&args[0])? + 1)
        }
        _ => None,
    }
}

pub fn instr_term(i: Instr) -> Expr {
    match i {
        Instr::Inc(r) => Expr::app("inc", vec![unary(r.into())]),
        Instr::Djz(r, t) => Expr::app("djz", vec![unary(r.into()), unary(t as u64)]),
        Instr::Halt(r) => Expr::app("halt", vec![unary(r.into())]),
    }
}

fn instr_from_term(e: &Expr) -> Option<Instr> {
    let Expr::App { func, args } = e else { return None };
    let reg = |x: &Expr| from_unary(x).and_then(|r| u8::try_from(r).ok());
    match (&**func, args.as_slice()) {
        ("inc", [r]) => Some(Instr::Inc(reg(r)?)),
        ("halt", [r]) => Some(Instr::Halt(reg(r)?)),
        ("djz", [r, t]) => Some(Instr::Djz(reg(r)?, usize::try_from(from_unary(t)?).ok()?)),
        _ => None,
    }
}

/// Suffix terms of a program: `suffix(p, j)` lists instructions `j..`.
fn suffix_term(p: &ToyProgram, j: usize) -> Expr {
    p.0[j..]
        .iter()
        .rev()
        .fold(Expr::constant("nil"), |rest, i| Expr::app("cons", vec![instr_term(*i), rest]))
}

pub fn program_term(p: &ToyProgram) -> Expr {
    suffix_term(p, 0)
}

pub fn program_from_term(e: &Expr) -> Option<ToyProgram> {
    let mut code = Vec::new();
    let mut cur = e;
    loop {
        match cur {
            Expr::Const(c) if &**c == "nil" => break,
            Expr::App { func, args } if &**func == "cons" && args.len() == 2 => {
                code.push(instr_from_term(&args[0])?);
                cur = &args[1];
            }
            _ => return None,
        }
    }
    ToyProgram::new(code).ok()
}

/// `(halts p)`.
pub fn halts_formula(p: &ToyProgram) -> Expr {
    Expr::atom("halts", vec![program_term(p)])
}

/// The program a halting proof is about: its conclusion is `(halts p)`, or,
/// in a metasystem, `𝕋(⌜halts p⌝)`.
pub fn halting_subject(proof: &Proof) -> Option<ToyProgram> {
    let c = proof.conclusion()?;
    let atom = match c {
        Expr::Atom { rel, args, .. } if &**rel == "true" && args.len() == 1 => match &args[0] {
            Expr::Quote(inner) => &**inner,
            _ => return None,
        },
        other => other,
    };
    match atom {
        Expr::Atom { rel, args, .. } if &**rel == "halts" && args.len() == 1 => program_from_term(&args[0]),
        _ => None,
    }
}

/// Writes the derivation of `(halts p)` into `b` by following the run of `p`.
fn derive_halting(b: &mut ProofBuilder, p: &ToyProgram, fuel: u64) -> Option<()> {
    let mut configs = Vec::new();
    let run = p.trace(fuel, |pc, regs| configs.push((pc, regs)));
    let Run::Halted { .. } = run else { return None };

    let term = program_term(p);
    let mut fetched: BTreeMap<usize, Expr> = BTreeMap::new();
    let mut fetch = |b: &mut ProofBuilder, i: usize| -> Expr {
        fetched
            .entry(i)
            .or_insert_with(|| {
                let ins = instr_term(p.0[i]);
                let mut fact = Expr::atom("fetch", vec![suffix_term(p, i), Expr::constant("0"), ins.clone()]);
                b.then(fact.clone(), Justification::by("fetch-head"));
                for j in (0..i).rev() {
                    fact = Expr::atom("fetch", vec![suffix_term(p, j), unary((i - j) as u64), ins.clone()]);
                    b.then(fact.clone(), Justification::by("fetch-tail"));
                }
                fact
            })
            .clone()
    };
    let at = |pc: usize, r: [u64; 2]| Expr::atom("at", vec![term.clone(), unary(pc as u64), unary(r[0]), unary(r[1])]);

    b.then(at(0, [0, 0]), Justification::by("run-start"));
    for (k, &(pc, regs)) in configs.iter().enumerate() {
        fetch(b, pc);
        let ins = p.0[pc];
        let rule = match ins {
            Instr::Halt(_) => {
                b.then(halts_formula(p), Justification::by("halts"));
                return Some(());
            }
            Instr::Inc(r) => format!("run-inc-{r}"),
            Instr::Djz(r, _) if regs[r as usize] == 0 => format!("run-jump-{r}"),
            Instr::Djz(r, _) => format!("run-dec-{r}"),
        };
        let (next_pc, next_regs) = configs[k + 1];
        b.then(at(next_pc, next_regs), Justification::by(&rule));
    }
    None
}

/// A proof of `(halts p)` in [`toy_axioms`], if `p` halts within `fuel`.
pub fn halting_proof(p: &ToyProgram, fuel: u64) -> Option<Proof> {
    let mut b = ProofBuilder::new(&[]);
    derive_halting(&mut b, p, fuel)?;
    Some(b.finish())
}

/// A proof of `𝕋(⌜halts p⌝)` that goes through the reflection rule, so only
/// the metasystem of [`toy_axioms`] accepts it.
///
/// It derives `𝕋(⌜0=0⌝)` from the reference axioms, then reflects an embedded
/// object-level halting proof that takes `0=0` as its hypothesis.
pub fn reflected_halting_proof(p: &ToyProgram, fuel: u64) -> Option<Proof> {
    let mut inner = ProofBuilder::new(&[]);
    let zero_eq = Expr::eq(Expr::constant("0"), Expr::constant("0"));
    inner.assume(zero_eq.clone());
    derive_halting(&mut inner, p, fuel)?;
    let inner = inner.finish();

    let ref0 = Expr::app("ref", vec![Expr::quote(Expr::constant("0"))]);
    let truth = |e: Expr| Expr::atom("true", vec![Expr::quote(e)]);
    let mut b = ProofBuilder::new(&[]);
    b.then(Expr::eq(ref0.clone(), Expr::constant("0")), Justification::by("ref-const-0"));
    b.then(Expr::defined(ref0.clone()), Justification::by("rel-def-=-1"));
    b.then(Expr::eq(ref0.clone(), ref0), Justification::by("eq-refl"));
    b.then(truth(zero_eq), Justification::by("true-=-intro"));
    b.then(truth(halts_formula(p)), Justification::Reflection(Box::new(inner)));
    Some(b.finish())
}

/// The metasystem in which [`reflected_halting_proof`]s are checked.
pub fn toy_metasystem() -> AxiomSystem {
    metasystem(&toy_axioms())
}

#[cfg(test)]
mod tests {
    use super::*;
    use lnc_kernel::check_proof;

    #[test]
    fn program_terms_round_trip() {
        let p: ToyProgram = "inc 1; djz 1 0; halt 0".parse().unwrap();
        assert_eq!(program_from_term(&program_term(&p)), Some(p));
        assert_eq!(from_unary(&unary(5)), Some(5));
    }

    #[test]
    fn machine_rules_are_well_formed() {
        let a = toy_axioms();
        assert!(a.ill_formed().is_empty(), "{:?}", a.ill_formed());
    }

    #[test]
    fn halting_proofs_check() {
        let a = toy_axioms();
        for text in ["halt 0", "inc 0; inc 0; halt 0", "inc 0; djz 0 3; halt 1; halt 0", "inc 1; djz 1 0; djz 0 4; halt 0; halt 1"] {
            let p: ToyProgram = text.parse().unwrap();
            let proof = halting_proof(&p, 1000).unwrap();
            let v = check_proof(&a, &proof);
            assert!(v.is_valid(), "{text}: {v}\n{proof}");
            assert_eq!(halting_subject(&proof), Some(p));
        }
    }

    #[test]
    fn non_halting_has_no_proof() {
        let p: ToyProgram = "djz 0 0".parse().unwrap();
        assert!(halting_proof(&p, 1000).is_none());
    }

    #[test]
    fn reflected_proof_needs_the_metasystem() {
        let p: ToyProgram = "inc 0; halt 0".parse().unwrap();
        let proof = reflected_halting_proof(&p, 100).unwrap();
        let v = check_proof(&toy_metasystem(), &proof);
        assert!(v.is_valid(), "{v}\n{proof}");
        assert!(!check_proof(&toy_axioms(), &proof).is_valid());
        assert_eq!(halting_subject(&proof), Some(p));
    }
}
