//! Axiom systems: named schemas and rules, the standard axiomatization of a
//! language, and its (weak) metasystem.

use lnc_languages::{lift_to_meta, meta_symbols, ListCodec, StdLanguage};
use lnc_syntax::spec::QloDecl;
use lnc_syntax::wf::well_formed_schema;
use lnc_syntax::{name, parse_schema, print, Expr, QuantTemplate};
use std::fmt;
use std::sync::Arc;

/// `premises ⇒ conclusion`; an axiom schema has no premises.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub name: String,
    pub premises: Vec<Expr>,
    pub conclusion: Expr,
}

impl Rule {
    pub fn is_axiom(&self) -> bool {
        self.premises.is_empty()
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ps: Vec<String> = self.premises.iter().map(|p| p.to_string()).collect();
        if ps.is_empty() {
            write!(f, "{}: {}", self.name, self.conclusion)
        } else {
            write!(f, "{}: {} ⇒ {}", self.name, ps.join(", "), self.conclusion)
        }
    }
}

/// Name under which the reflection rule is listed.
pub const REFLECTION: &str = "reflection";

/// `reflection` for the first meta level, `reflection-true2` and so on above it.
pub fn reflection_name(truth: &str) -> String {
    if truth == "true" {
        REFLECTION.to_string()
    } else {
        format!("{REFLECTION}-{truth}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomSystem {
    pub name: String,
    pub lang: StdLanguage,
    pub axioms: Vec<Rule>,
    pub rules: Vec<Rule>,
    /// Reflection rules: the truth symbol each speaks through and the system whose proofs it accepts.
    pub reflection: Vec<(String, Arc<AxiomSystem>)>,
}

impl AxiomSystem {
    pub fn empty(name: &str, lang: StdLanguage) -> Self {
        AxiomSystem {
            name: name.to_string(),
            lang,
            axioms: Vec::new(),
            rules: Vec::new(),
            reflection: Vec::new(),
        }
    }

    pub fn get(&self, rule: &str) -> Option<&Rule> {
        self.axioms.iter().chain(&self.rules).find(|r| r.name == rule)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Rule> {
        self.axioms.iter().chain(&self.rules)
    }

    /// Every axiom and rule name, reflection rules included.
    pub fn names(&self) -> Vec<String> {
        let mut out: Vec<String> = self.iter().map(|r| r.name.clone()).collect();
        out.extend(self.reflection.iter().map(|(truth, _)| reflection_name(truth)));
        out
    }

    /// The base system of the reflection rule speaking through `truth`.
    pub fn reflection_base(&self, truth: &str) -> Option<&AxiomSystem> {
        self.reflection.iter().find(|(t, _)| t == truth).map(|(_, a)| a.as_ref())
    }

    pub fn push(&mut self, r: Rule) {
        debug_assert!(self.get(&r.name).is_none(), "duplicate rule {}", r.name);
        if r.is_axiom() {
            self.axioms.push(r);
        } else {
            self.rules.push(r);
        }
    }

    /// Parses `premises ⇒ conclusion` from schema text in this system's language.
    pub fn add(&mut self, rule: &str, premises: &[&str], conclusion: &str) {
        let parse = |t: &str| {
            parse_schema(&self.lang.spec, t).unwrap_or_else(|e| panic!("schema `{t}` for {rule}: {e}"))
        };
        let r = Rule {
            name: rule.to_string(),
            premises: premises.iter().map(|p| parse(p)).collect(),
            conclusion: parse(conclusion),
        };
        self.push(r);
    }

    /// Schemas that fail well-formedness in the system's language.
    pub fn ill_formed(&self) -> Vec<String> {
        self.iter()
            .filter(|r| {
                std::iter::once(&r.conclusion)
                    .chain(&r.premises)
                    .any(|e| !well_formed_schema(&self.lang.spec, e).ok())
            })
            .map(|r| r.name.clone())
            .collect()
    }
}

fn holes(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

fn conj(items: &[String]) -> String {
    match items {
        [one] => one.clone(),
        _ => format!("(and {})", items.join(" ")),
    }
}

fn app(head: &str, args: &[String]) -> String {
    if args.is_empty() {
        head.to_string()
    } else {
        format!("({head} {})", args.join(" "))
    }
}

/// The standard axiomatization: propositional, definedness and equality rules,
/// rules for each enabled quantifier template, conservation of precision under
/// quantification, reductive equivalences for each operator, excluded middle
/// for strongly negatable atoms, and the arithmetic and list rules.
pub fn standard_axiomatization(lang: &StdLanguage) -> AxiomSystem {
    let mut a = AxiomSystem::empty(&format!("{}-std", lang.tag), lang.clone());
    propositional(&mut a);
    definedness(&mut a);
    equality(&mut a);
    quantifiers(&mut a);
    operators(&mut a);
    excluded_middle(&mut a);
    arithmetic(&mut a);
    lists(&mut a);
    a
}

fn propositional(a: &mut AxiomSystem) {
    a.add("and-elim-left", &["(and ?phi ?psi)"], "?phi");
    a.add("and-elim-right", &["(and ?phi ?psi)"], "?psi");
    a.add("and-intro", &["?phi", "?psi"], "(and ?phi ?psi)");
    a.add("or-intro-left", &["?phi"], "(or ?phi ?psi)");
    a.add("or-intro-right", &["?psi"], "(or ?phi ?psi)");
    a.add("explosion", &["(and ?phi (not ?phi))"], "?psi");
}

fn plain_functions(a: &AxiomSystem) -> Vec<(String, usize)> {
    a.lang
        .spec
        .functions
        .iter()
        .filter(|f| !f.assignment_args)
        .map(|f| (f.symbol.to_string(), f.arity))
        .collect()
}

fn definedness(a: &mut AxiomSystem) {
    a.add("var-def", &[], "(def $x)");
    let spec = a.lang.spec.clone();
    for c in &spec.constants {
        if &*c.sort == lnc_syntax::PRIMARY_SORT {
            a.add(&format!("const-def-{}", c.symbol), &[], &format!("(def {})", c.symbol));
        }
    }
    for (f, n) in plain_functions(a) {
        let ts = holes("?t", n);
        let defs: Vec<String> = ts.iter().map(|t| format!("(def {t})")).collect();
        let whole = format!("(def {})", app(&f, &ts));
        a.add(&format!("fun-def-split-{f}"), &[&whole], &conj(&defs));
        a.add(&format!("fun-def-join-{f}"), &[&conj(&defs)], &whole);
    }
    for r in &spec.relations {
        if &*r.symbol == "def" || r.assignment_args || !r.arg_sorts.iter().all(|s| &**s == lnc_syntax::PRIMARY_SORT) {
            continue;
        }
        let ts = holes("?t", r.arity);
        let pos = app(&r.symbol, &ts);
        for (i, t) in ts.iter().enumerate() {
            a.add(&format!("rel-def-{}-{}", r.symbol, i + 1), &[&pos], &format!("(def {t})"));
            if r.negatable {
                a.add(&format!("rel-def-not-{}-{}", r.symbol, i + 1), &[&format!("(not {pos})")], &format!("(def {t})"));
            }
        }
    }
}

fn equality(a: &mut AxiomSystem) {
    a.add("eq-refl", &["(def ?t)"], "(= ?t ?t)");
    a.add("eq-congr", &["(= ?t1 ?t2)", "(def (?T ?t1))"], "(= (?T ?t1) (?T ?t2))");
    a.add("eq-subst", &["(= ?t1 ?t2)", "(?phi ?t1)"], "(?phi ?t2)");
}

fn quantifiers(a: &mut AxiomSystem) {
    use QuantTemplate::*;
    let spec = a.lang.spec.clone();
    if spec.allows(Exists) {
        a.add("exists-intro", &["(?phi ?t)"], "(exists $x (?phi $x))");
    }
    if spec.allows(Forall) {
        a.add("forall-elim", &["(forall $x (?phi $x))", "(def ?t)"], "(?phi ?t)");
        if spec.allows(Exists) {
            a.add(
                "cpq",
                &["(forall $x (or (?phi $x) (not (?phi $x))))"],
                "(or (forall $y (?phi $y)) (not (forall $y (?phi $y))))",
            );
        }
    }
    if spec.allows(BoundedExists) {
        a.add(
            "exists-lt-intro",
            &["(and (lt ?t1 ?t2) (?phi ?t1))"],
            "(exists ($x (lt $x ?t2)) (?phi $x))",
        );
    }
    if spec.allows(BoundedForall) {
        a.add("forall-lt-elim", &["(forall ($x (lt $x ?t2)) (?phi $x))", "(lt ?t1 ?t2)"], "(?phi ?t1)");
        a.add("forall-lt-def", &["(forall ($x (lt $x ?t)) (?phi $x))"], "(def ?t)");
        if spec.allows(BoundedExists) {
            a.add(
                "cpq-lt",
                &["(forall ($x (lt $x ?t)) (or (?phi $x) (not (?phi $x))))"],
                "(or (forall ($y (lt $y ?t)) (?phi $y)) (not (forall ($y (lt $y ?t)) (?phi $y))))",
            );
        }
    }
}

/// The operator application with placeholder slots, as Θ expects it.
fn qlo_pattern(d: &QloDecl) -> Expr {
    let binders: Vec<_> = (1..=d.binders).map(|i| name(&format!("$b{i}"))).collect();
    let bound: Vec<Expr> = binders.iter().map(|b| Expr::Var(b.clone())).collect();
    Expr::Qlo {
        op: d.symbol.clone(),
        binders,
        terms: (0..d.term_slots).map(|i| Expr::hole(&QloDecl::term_hole(i), vec![])).collect(),
        formulas: (0..d.formula_slots)
            .map(|i| Expr::hole(&QloDecl::formula_hole(i), bound.clone()))
            .collect(),
    }
}

fn conjuncts(e: &Expr) -> Vec<Expr> {
    match e {
        Expr::And(x, y) => {
            let mut out = conjuncts(x);
            out.extend(conjuncts(y));
            out
        }
        other => vec![other.clone()],
    }
}

fn operators(a: &mut AxiomSystem) {
    for d in a.lang.spec.qlos.clone() {
        let eq = Expr::eq(qlo_pattern(&d), Expr::hole(QloDecl::result_hole(), vec![]));
        let op = d.symbol.to_string();
        a.push(Rule {
            name: format!("{op}-elim"),
            premises: vec![eq.clone()],
            conclusion: d.theta.clone(),
        });
        a.push(Rule {
            name: format!("{op}-intro"),
            premises: vec![d.theta.clone()],
            conclusion: eq.clone(),
        });
        let parts = conjuncts(&d.theta);
        if parts.len() > 1 {
            a.push(Rule {
                name: format!("{op}-intro-split"),
                premises: parts,
                conclusion: eq,
            });
        }
    }
}

fn excluded_middle(a: &mut AxiomSystem) {
    let spec = a.lang.spec.clone();
    for r in spec.relations.iter().filter(|r| r.strongly_negatable && !r.assignment_args) {
        let ts = holes("?t", r.arity);
        let defs: Vec<String> = ts.iter().map(|t| format!("(def {t})")).collect();
        let atom = app(&r.symbol, &ts);
        let refs: Vec<&str> = defs.iter().map(String::as_str).collect();
        a.add(&format!("sn-{}", r.symbol), &refs, &format!("(or {atom} (not {atom}))"));
    }
}

fn arithmetic(a: &mut AxiomSystem) {
    let spec = a.lang.spec.clone();
    let has = |f: &str| spec.function(f).is_some();
    if !(has("+") && has("*") && spec.relation("lt").is_some()) {
        return;
    }
    let d = |n: usize| -> Vec<String> { holes("?t", n).iter().map(|t| format!("(def {t})")).collect() };
    let mut eqn = |rule: &str, n: usize, lhs: &str, rhs: &str| {
        let defs = d(n);
        let refs: Vec<&str> = defs.iter().map(String::as_str).collect();
        a.add(rule, &refs, &format!("(= {lhs} {rhs})"));
    };
    eqn("add-comm", 2, "(+ ?t1 ?t2)", "(+ ?t2 ?t1)");
    eqn("add-assoc", 3, "(+ (+ ?t1 ?t2) ?t3)", "(+ ?t1 (+ ?t2 ?t3))");
    eqn("mul-comm", 2, "(* ?t1 ?t2)", "(* ?t2 ?t1)");
    eqn("mul-assoc", 3, "(* (* ?t1 ?t2) ?t3)", "(* ?t1 (* ?t2 ?t3))");
    eqn("distrib", 3, "(* ?t1 (+ ?t2 ?t3))", "(+ (* ?t1 ?t2) (* ?t1 ?t3))");
    eqn("add-zero", 1, "(+ ?t1 0)", "?t1");
    eqn("mul-one", 1, "(* ?t1 1)", "?t1");
    eqn("mul-zero", 1, "(* ?t1 0)", "0");
    eqn("add-succ", 2, "(+ ?t1 (+ ?t2 1))", "(+ (+ ?t1 ?t2) 1)");
    eqn("mul-succ", 2, "(* ?t1 (+ ?t2 1))", "(+ (* ?t1 ?t2) ?t1)");
    if has("^") {
        eqn("pow-zero", 1, "(^ ?t1 0)", "1");
        eqn("pow-succ", 2, "(^ ?t1 (+ ?t2 1))", "(* (^ ?t1 ?t2) ?t1)");
    }
    a.add("lt-irrefl", &["(def ?t1)"], "(not (lt ?t1 ?t1))");
    a.add("lt-trans", &["(lt ?t1 ?t2)", "(lt ?t2 ?t3)"], "(lt ?t1 ?t3)");
    a.add(
        "lt-trichotomy",
        &["(def ?t1)", "(def ?t2)"],
        "(or (lt ?t1 ?t2) (or (= ?t1 ?t2) (lt ?t2 ?t1)))",
    );
    // Wrap-around arithmetic has neither of these.
    if lang_is_unbounded(&a.lang) {
        a.add("succ-nonzero", &["(def ?t1)"], "(not (= (+ ?t1 1) 0))");
        a.add("lt-succ", &["(def ?t1)"], "(lt ?t1 (+ ?t1 1))");
        a.add("lt-zero", &["(def ?t1)"], "(not (lt ?t1 0))");
    }
}

fn lang_is_unbounded(l: &StdLanguage) -> bool {
    l.tag.is_list_compatible()
}

fn lists(a: &mut AxiomSystem) {
    if !a.lang.tag.is_list_compatible() {
        return;
    }
    let codec = ListCodec::default();
    let (x, i) = (Expr::hole("?t1", vec![]), Expr::hole("?t2", vec![]));
    a.push(Rule {
        name: "list-elem-def".into(),
        premises: vec![codec.is_list_formula(&x), Expr::lt(i.clone(), codec.length_term(&x))],
        conclusion: Expr::defined(codec.element_term(&x, &i)),
    });
}

/// The metasystem: `a` plus the truth and reference rules and the reflection rule.
pub fn metasystem(a: &AxiomSystem) -> AxiomSystem {
    let mut m = weak_metasystem(a);
    let level = m.lang.tag.meta_level();
    m.name = format!("{}+1", a.name);
    m.reflection.push((meta_symbols(level).0, Arc::new(a.clone())));
    m
}

/// The metasystem without the reflection rule.
///
/// Panics if the language of `a` is not list-compatible.
pub fn weak_metasystem(a: &AxiomSystem) -> AxiomSystem {
    let lang = lift_to_meta(&a.lang).expect("metasystems need a list-compatible language");
    let (truth, reference) = meta_symbols(lang.tag.meta_level());
    let mut m = AxiomSystem {
        name: format!("({}+1)*", a.name),
        lang,
        axioms: a.axioms.clone(),
        rules: a.rules.clone(),
        reflection: a.reflection.clone(),
    };
    // The base language's own primitives, not the new truth/reference symbols.
    let base = a.lang.spec.clone();
    for sigma in [Vec::new(), vec![("$y", "?a")]] {
        let suffix = if sigma.is_empty() { String::new() } else { "-r1".to_string() };
        let env: String = sigma.iter().map(|(v, val)| format!(" (quote {v}) {val}")).collect();
        let tr = |code: &str| format!("({truth} (quote {code}){env})");
        let tr_ext = |code: &str, x: &str, val: &str| format!("({truth} (quote {code}){env} (quote {x}) {val})");
        let rf = |code: &str| format!("({reference} (quote {code}){env})");
        let iff = |m: &mut AxiomSystem, rule: &str, lhs: &str, rhs: &str| {
            m.add(&format!("{rule}-intro{suffix}"), &[rhs], lhs);
            m.add(&format!("{rule}-elim{suffix}"), &[lhs], rhs);
        };
        iff(&mut m, &format!("{truth}-and"), &tr("(and ?phi ?psi)"), &format!("(and {} {})", tr("?phi"), tr("?psi")));
        iff(&mut m, &format!("{truth}-or"), &tr("(or ?phi ?psi)"), &format!("(or {} {})", tr("?phi"), tr("?psi")));
        for t in QuantTemplate::ALL {
            if !base.allows(t) {
                continue;
            }
            let (q, binder, meta_binder) = match t {
                QuantTemplate::Forall => ("forall", "$x".to_string(), "$v".to_string()),
                QuantTemplate::Exists => ("exists", "$x".to_string(), "$v".to_string()),
                QuantTemplate::BoundedForall => ("forall", "($x (lt $x ?t))".to_string(), format!("($v (lt $v {}))", rf("?t"))),
                QuantTemplate::BoundedExists => ("exists", "($x (lt $x ?t))".to_string(), format!("($v (lt $v {}))", rf("?t"))),
            };
            let lhs = tr(&format!("({q} {binder} ?phi)"));
            let rhs = format!("({q} {meta_binder} {})", tr_ext("?phi", "$x", "$v"));
            let rule = match t {
                QuantTemplate::Forall => "forall",
                QuantTemplate::Exists => "exists",
                QuantTemplate::BoundedForall => "forall-lt",
                QuantTemplate::BoundedExists => "exists-lt",
            };
            iff(&mut m, &format!("{truth}-{rule}"), &lhs, &rhs);
        }
        for r in base.relations.iter().filter(|r| !r.assignment_args) {
            let ts = holes("?t", r.arity);
            let atom = app(&r.symbol, &ts);
            let refs: Vec<String> = ts.iter().map(|t| rf(t)).collect();
            let direct = app(&r.symbol, &refs);
            iff(&mut m, &format!("{truth}-{}", r.symbol), &tr(&atom), &direct);
            if r.negatable {
                iff(
                    &mut m,
                    &format!("{truth}-not-{}", r.symbol),
                    &tr(&format!("(not {atom})")),
                    &format!("(not {direct})"),
                );
            }
        }
        for f in base.functions.iter().filter(|f| !f.assignment_args) {
            let ts = holes("?t", f.arity);
            let whole = rf(&app(&f.symbol, &ts));
            let parts: Vec<String> = ts.iter().map(|t| rf(t)).collect();
            let eq = format!("(= {whole} {})", app(&f.symbol, &parts));
            m.add(&format!("{reference}-{}-whole{suffix}", f.symbol), &[&format!("(def {whole})")], &eq);
            let defs: Vec<String> = parts.iter().map(|p| format!("(def {p})")).collect();
            let refs: Vec<&str> = defs.iter().map(String::as_str).collect();
            m.add(&format!("{reference}-{}-parts{suffix}", f.symbol), &refs, &eq);
        }
        for c in base.constants.iter().filter(|c| &*c.sort == lnc_syntax::PRIMARY_SORT) {
            m.add(&format!("{reference}-const-{}{suffix}", c.symbol), &[], &format!("(= {} {})", rf(&c.symbol), c.symbol));
        }
        if !sigma.is_empty() {
            m.add(
                &format!("{reference}-var"),
                &["(def ?a)"],
                &format!("(= ({reference} (quote $y) (quote $y) ?a) ?a)"),
            );
        }
    }
    m
}

/// Text of every rule, one per line, for listings.
pub fn listing(a: &AxiomSystem) -> String {
    let mut out = String::new();
    for r in a.iter() {
        let ps: Vec<String> = r.premises.iter().map(print).collect();
        out.push_str(&format!("{}: {} => {}\n", r.name, ps.join(", "), print(&r.conclusion)));
    }
    for (truth, base) in &a.reflection {
        out.push_str(&format!(
            "{}: ({truth} ?phi), ?phi =>[{}] ?psi => ({truth} ?psi)\n",
            reflection_name(truth),
            base.name
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use lnc_languages::{make_std, Tag};

    fn std_of(t: Tag) -> AxiomSystem {
        standard_axiomatization(&make_std(&t).unwrap())
    }

    #[test]
    fn every_standard_schema_is_well_formed() {
        for t in [Tag::Gnt, Tag::Nt, Tag::Fin(3), Tag::Fin(1)] {
            let a = std_of(t);
            assert!(a.ill_formed().is_empty(), "{}: {:?}", a.name, a.ill_formed());
        }
    }

    #[test]
    fn gnt_lacks_unbounded_universal_rules() {
        let a = std_of(Tag::Gnt);
        assert!(a.get("forall-elim").is_none());
        assert!(a.get("cpq").is_none());
        assert!(a.get("cpq-lt").is_some());
        assert!(a.get("pow-succ").is_some());
    }

    #[test]
    fn fin_has_no_successor_freeness() {
        let a = std_of(Tag::Fin(3));
        assert!(a.get("succ-nonzero").is_none());
        assert!(a.get("lt-trichotomy").is_some());
        assert!(a.get("list-elem-def").is_none());
    }

    #[test]
    fn meta_levels_are_well_formed() {
        let a = std_of(Tag::Gnt);
        let m = metasystem(&a);
        assert!(m.ill_formed().is_empty(), "{:?}", m.ill_formed());
        let mm = metasystem(&m);
        assert!(mm.ill_formed().is_empty(), "{:?}", mm.ill_formed());
        assert!(mm.get("true2-and-intro").is_some());
        assert!(mm.get("true-and-intro").is_some());
    }
}
