//! Exhaustive generation of expressions by exact token length.
//!
//! Bound variables are named by binding depth (`x0`, `x1`, ...), so every
//! expression is produced once up to alpha-equivalence. Lengths agree with
//! [`crate::render::length`], which is checked by the tests.

use crate::expr::{name, Expr, Name, Polarity, QuantKind};
use crate::negate::is_negatable;
use crate::spec::{LanguageSpec, QuantTemplate, PRIMARY_SORT};

const ATOMIC_TERM: u8 = 4;
const ATOMIC_FORMULA: u8 = 3;

/// The fragment of a spec that the enumerator draws from.
#[derive(Debug, Clone)]
pub struct Vocabulary {
    pub(crate) spec: LanguageSpec,
    pub(crate) constants: Vec<Name>,
    pub(crate) functions: Vec<(Name, usize)>,
    pub(crate) relations: Vec<(Name, usize, bool)>,
    pub(crate) quantifiers: Vec<QuantTemplate>,
    pub(crate) qlos: Vec<Name>,
    pub(crate) var_names: Vec<Name>,
}

impl Vocabulary {
    /// Everything of the primary sort in `spec`, restricted to one-binder operators
    /// with at most one term slot and exactly one formula slot.
    pub fn from_spec(spec: &LanguageSpec) -> Self {
        let primary = |s: &Name| &**s == PRIMARY_SORT;
        Vocabulary {
            spec: spec.clone(),
            constants: spec
                .constants
                .iter()
                .filter(|c| primary(&c.sort))
                .map(|c| c.symbol.clone())
                .collect(),
            functions: spec
                .functions
                .iter()
                .filter(|f| !f.assignment_args && f.arg_sorts.iter().all(primary) && primary(&f.result_sort))
                .map(|f| (f.symbol.clone(), f.arity))
                .collect(),
            relations: spec
                .relations
                .iter()
                .filter(|r| !r.assignment_args && r.arg_sorts.iter().all(primary))
                .map(|r| (r.symbol.clone(), r.arity, r.negatable))
                .collect(),
            quantifiers: spec.quantifiers.iter().copied().collect(),
            qlos: spec
                .qlos
                .iter()
                .filter(|q| q.binders == 1 && q.term_slots <= 1 && q.formula_slots == 1)
                .map(|q| q.symbol.clone())
                .collect(),
            var_names: (0..64).map(|i| name(&format!("x{i}"))).collect(),
        }
    }

    pub fn without_qlos(mut self) -> Self {
        self.qlos.clear();
        self
    }

    pub fn without_relations(mut self, drop: &[&str]) -> Self {
        self.relations.retain(|(r, _, _)| !drop.contains(&&**r));
        self
    }

    pub fn spec(&self) -> &LanguageSpec {
        &self.spec
    }

    /// Calls `f` on every sentence of exactly `len` tokens.
    pub fn for_each_sentence(&self, len: usize, f: &mut dyn FnMut(Expr)) {
        self.formulas(0, len, 0, f);
    }

    /// Calls `f` on every closed term of exactly `len` tokens.
    pub fn for_each_closed_term(&self, len: usize, f: &mut dyn FnMut(Expr)) {
        self.terms(0, len, 0, f);
    }

    pub fn sentences_up_to(&self, max_len: usize) -> Vec<Expr> {
        let mut out = Vec::new();
        for n in 1..=max_len {
            self.for_each_sentence(n, &mut |e| out.push(e));
        }
        out
    }

    pub fn closed_terms_up_to(&self, max_len: usize) -> Vec<Expr> {
        let mut out = Vec::new();
        for n in 1..=max_len {
            self.for_each_closed_term(n, &mut |e| out.push(e));
        }
        out
    }

    fn var(&self, i: usize) -> Name {
        self.var_names
            .get(i)
            .cloned()
            .unwrap_or_else(|| name(&format!("x{i}")))
    }

    /// Terms whose rendering in a context demanding precedence `min` takes `len` tokens.
    fn terms(&self, depth: usize, len: usize, min: u8, f: &mut dyn FnMut(Expr)) {
        self.bare_terms(depth, len, &|p| p >= min, f);
        if len > 2 {
            self.bare_terms(depth, len - 2, &|p| p < min, f);
        }
    }

    fn formulas(&self, depth: usize, len: usize, min: u8, f: &mut dyn FnMut(Expr)) {
        self.bare_formulas(depth, len, &|p| p >= min, f);
        if len > 2 {
            self.bare_formulas(depth, len - 2, &|p| p < min, f);
        }
    }

    /// Splits `total` tokens over `k` argument slots and enumerates each combination.
    fn arg_lists(
        &self,
        depth: usize,
        k: usize,
        total: usize,
        f: &mut dyn FnMut(Vec<Expr>),
    ) {
        fn rec(
            v: &Vocabulary,
            depth: usize,
            left: usize,
            total: usize,
            acc: &mut Vec<Expr>,
            f: &mut dyn FnMut(Vec<Expr>),
        ) {
            if left == 0 {
                if total == 0 {
                    f(acc.clone());
                }
                return;
            }
            for here in 1..=total.saturating_sub(left - 1) {
                v.terms(depth, here, 0, &mut |t| {
                    acc.push(t);
                    rec(v, depth, left - 1, total - here, acc, f);
                    acc.pop();
                });
            }
        }
        rec(self, depth, k, total, &mut Vec::new(), f);
    }

    fn bare_terms(&self, depth: usize, len: usize, ok: &dyn Fn(u8) -> bool, f: &mut dyn FnMut(Expr)) {
        if len == 0 {
            return;
        }
        if len == 1 && ok(ATOMIC_TERM) {
            for c in &self.constants {
                f(Expr::Const(c.clone()));
            }
            for i in 0..depth {
                f(Expr::Var(self.var(i)));
            }
        }
        for (func, arity) in &self.functions {
            let infix = match &**func {
                "+" => Some((1u8, false)),
                "*" => Some((2, false)),
                "^" => Some((3, true)),
                _ => None,
            };
            match (infix, arity) {
                (Some((p, right)), 2) => {
                    if !ok(p) || len < 3 {
                        continue;
                    }
                    let (lp, rp) = if right { (p + 1, p) } else { (p, p + 1) };
                    for ll in 1..=len - 2 {
                        let rl = len - 1 - ll;
                        self.terms(depth, ll, lp, &mut |l| {
                            self.terms(depth, rl, rp, &mut |r| {
                                f(Expr::App {
                                    func: func.clone(),
                                    args: vec![l.clone(), r],
                                })
                            })
                        });
                    }
                }
                _ => {
                    // f ( a , b ): 3 tokens plus commas plus arguments
                    if !ok(ATOMIC_TERM) || *arity == 0 {
                        continue;
                    }
                    let overhead = 3 + arity - 1;
                    if len < overhead + arity {
                        continue;
                    }
                    self.arg_lists(depth, *arity, len - overhead, &mut |args| {
                        f(Expr::App {
                            func: func.clone(),
                            args,
                        })
                    });
                }
            }
        }
        if ok(ATOMIC_TERM) {
            for op in &self.qlos {
                let decl = self.spec.qlo(op).expect("declared");
                let binder = self.var(depth);
                let negatable_needed = !decl.negated_slots().is_empty();
                let mut emit = |terms: Vec<Expr>, body: Expr| {
                    if negatable_needed && !is_negatable(&self.spec, &body) {
                        return;
                    }
                    f(Expr::Qlo {
                        op: op.clone(),
                        binders: vec![binder.clone()],
                        terms,
                        formulas: vec![body],
                    })
                };
                if decl.term_slots == 0 {
                    // op { x : φ }
                    if len > 5 {
                        self.formulas(depth + 1, len - 5, 0, &mut |b| emit(vec![], b));
                    }
                } else if len > 7 {
                    // op { x | t : φ } and elt { x < t : φ } both take six tokens
                    for tl in 1..=len - 7 {
                        self.terms(depth, tl, 0, &mut |t| {
                            self.formulas(depth + 1, len - 6 - tl, 0, &mut |b| {
                                emit(vec![t.clone()], b)
                            })
                        });
                    }
                }
            }
        }
    }

    fn bare_formulas(&self, depth: usize, len: usize, ok: &dyn Fn(u8) -> bool, f: &mut dyn FnMut(Expr)) {
        if len == 0 {
            return;
        }
        if ok(ATOMIC_FORMULA) {
            for (rel, arity, negatable) in &self.relations {
                let polarities: &[Polarity] = if *negatable {
                    &[Polarity::Positive, Polarity::Negative]
                } else {
                    &[Polarity::Positive]
                };
                match (&**rel, arity) {
                    ("=" | "lt", 2) => {
                        if len < 3 {
                            continue;
                        }
                        for ll in 1..=len - 2 {
                            self.terms(depth, ll, 0, &mut |l| {
                                self.terms(depth, len - 1 - ll, 0, &mut |r| {
                                    for p in polarities {
                                        f(Expr::Atom {
                                            rel: rel.clone(),
                                            polarity: *p,
                                            args: vec![l.clone(), r.clone()],
                                        })
                                    }
                                })
                            });
                        }
                    }
                    ("def", 1) => {
                        if len >= 2 {
                            self.terms(depth, len - 1, ATOMIC_TERM, &mut |t| f(Expr::defined(t)));
                        }
                    }
                    _ => {
                        let overhead = if *arity == 0 { 1 } else { 3 + arity - 1 };
                        for p in polarities {
                            let extra = usize::from(*p == Polarity::Negative);
                            if len < overhead + extra + arity {
                                continue;
                            }
                            if *arity == 0 {
                                if len == 1 + extra {
                                    f(Expr::Atom {
                                        rel: rel.clone(),
                                        polarity: *p,
                                        args: vec![],
                                    });
                                }
                                continue;
                            }
                            self.arg_lists(depth, *arity, len - overhead - extra, &mut |args| {
                                f(Expr::Atom {
                                    rel: rel.clone(),
                                    polarity: *p,
                                    args,
                                })
                            });
                        }
                    }
                }
            }
        }
        if len >= 3 {
            if ok(2) {
                for ll in 1..=len - 2 {
                    self.formulas(depth, ll, 3, &mut |l| {
                        self.formulas(depth, len - 1 - ll, 2, &mut |r| f(Expr::and(l.clone(), r)))
                    });
                }
            }
            if ok(1) {
                for ll in 1..=len - 2 {
                    self.formulas(depth, ll, 2, &mut |l| {
                        self.formulas(depth, len - 1 - ll, 1, &mut |r| f(Expr::or(l.clone(), r)))
                    });
                }
            }
        }
        if ok(0) {
            let var = self.var(depth);
            for t in &self.quantifiers {
                let kind = match t {
                    QuantTemplate::BoundedForall | QuantTemplate::Forall => QuantKind::Forall,
                    _ => QuantKind::Exists,
                };
                if t.is_bounded() {
                    // ∀ x < t body
                    if len < 5 {
                        continue;
                    }
                    for tl in 1..=len - 4 {
                        self.terms(depth, tl, 0, &mut |bound| {
                            self.formulas(depth + 1, len - 3 - tl, 0, &mut |body| {
                                f(Expr::Quant {
                                    kind,
                                    var: var.clone(),
                                    sort: None,
                                    bound: Some(Box::new(bound.clone())),
                                    body: Box::new(body),
                                })
                            })
                        });
                    }
                } else if len >= 3 {
                    self.formulas(depth + 1, len - 2, 0, &mut |body| {
                        f(Expr::Quant {
                            kind,
                            var: var.clone(),
                            sort: None,
                            bound: None,
                            body: Box::new(body),
                        })
                    });
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::render::length;
    use crate::spec::{elt_decl, elt_lt_decl, FunctionDecl, RelationDecl};
    use crate::wf::well_formed;
    use std::collections::BTreeSet;

    fn small() -> LanguageSpec {
        let mut s = LanguageSpec::minimal("small");
        s.relations.push(RelationDecl::new("lt", 2).strong());
        s.functions.push(FunctionDecl::new("+", 2));
        s.functions.push(FunctionDecl::new("*", 2));
        s.add_constant("0", PRIMARY_SORT);
        s.add_constant("1", PRIMARY_SORT);
        s.quantifiers.extend(QuantTemplate::ALL);
        s.qlos.push(elt_decl());
        s.qlos.push(elt_lt_decl());
        s
    }

    #[test]
    fn lengths_match_rendering_and_outputs_are_well_formed() {
        let v = Vocabulary::from_spec(&small());
        for n in 1..=8 {
            v.for_each_sentence(n, &mut |e| {
                assert_eq!(length(&e), n, "{e}");
                assert!(e.is_closed(), "{e}");
                assert!(well_formed(v.spec(), &e).ok(), "{e}");
            });
            v.for_each_closed_term(n, &mut |e| assert_eq!(length(&e), n, "{e}"));
        }
    }

    #[test]
    fn no_duplicates() {
        let v = Vocabulary::from_spec(&small());
        let all = v.sentences_up_to(8);
        let set: BTreeSet<_> = all.iter().cloned().collect();
        assert_eq!(set.len(), all.len());
    }

    #[test]
    fn small_counts_by_hand() {
        let v = Vocabulary::from_spec(&small());
        let terms = |n| {
            let mut c = 0;
            v.for_each_closed_term(n, &mut |_| c += 1);
            c
        };
        assert_eq!(terms(1), 2);
        assert_eq!(terms(2), 0);
        // a+b and a·b over two constants
        assert_eq!(terms(3), 8);
        let sentences = |n| {
            let mut c = 0;
            v.for_each_sentence(n, &mut |_| c += 1);
            c
        };
        // 0↓ and 1↓, then (0|1) (=|≠|<|≮) (0|1)
        assert_eq!(sentences(2), 2);
        assert_eq!(sentences(3), 16);
    }
}
