//! Random well-formed sentences drawn from a [`Vocabulary`].

use crate::enumerate::Vocabulary;
use crate::expr::{Expr, Name, Polarity, QuantKind};
use crate::negate::is_negatable;
use crate::spec::QuantTemplate;
use rand::seq::SliceRandom;
use rand::Rng;

impl Vocabulary {
    /// A closed formula whose syntax tree has depth at most `depth`.
    pub fn random_sentence(&self, rng: &mut impl Rng, depth: usize) -> Expr {
        self.random_formula(rng, depth, 0)
    }

    /// A closed term whose syntax tree has depth at most `depth`.
    pub fn random_closed_term(&self, rng: &mut impl Rng, depth: usize) -> Expr {
        self.random_term(rng, depth, 0)
    }

    fn bound(&self, scope: usize) -> Vec<Name> {
        self.var_names[..scope].to_vec()
    }

    fn leaf(&self, rng: &mut impl Rng, scope: usize) -> Expr {
        let vars = self.bound(scope);
        let i = rng.gen_range(0..self.constants.len() + vars.len());
        if i < self.constants.len() {
            Expr::Const(self.constants[i].clone())
        } else {
            Expr::Var(vars[i - self.constants.len()].clone())
        }
    }

    fn random_term(&self, rng: &mut impl Rng, depth: usize, scope: usize) -> Expr {
        if depth == 0 || rng.gen_bool(0.35) {
            return self.leaf(rng, scope);
        }
        let use_qlo = !self.qlos.is_empty() && scope < self.var_names.len() && rng.gen_bool(0.15);
        if use_qlo {
            let op = self.qlos.choose(rng).expect("nonempty");
            let decl = self.spec.qlo(op).expect("vocabulary operator is declared");
            let x = self.var_names[scope].clone();
            let terms: Vec<Expr> = (0..decl.term_slots)
                .map(|_| self.random_term(rng, depth - 1, scope))
                .collect();
            // Operator bodies must be negatable; retry a few times, then fall back.
            let body = (0..8)
                .map(|_| self.random_formula(rng, depth - 1, scope + 1))
                .find(|f| is_negatable(&self.spec, f))
                .unwrap_or_else(|| Expr::eq(Expr::Var(x.clone()), self.leaf(rng, scope)));
            return Expr::Qlo {
                op: op.clone(),
                binders: vec![x],
                terms,
                formulas: vec![body],
            };
        }
        match self.functions.choose(rng) {
            Some((f, arity)) => Expr::App {
                func: f.clone(),
                args: (0..*arity).map(|_| self.random_term(rng, depth - 1, scope)).collect(),
            },
            None => self.leaf(rng, scope),
        }
    }

    fn random_atom(&self, rng: &mut impl Rng, depth: usize, scope: usize) -> Expr {
        let (rel, arity, negatable) = self.relations.choose(rng).expect("relations are never empty").clone();
        let args = (0..arity)
            .map(|_| self.random_term(rng, depth.saturating_sub(1), scope))
            .collect();
        let polarity = if negatable && rng.gen_bool(0.3) {
            Polarity::Negative
        } else {
            Polarity::Positive
        };
        Expr::Atom { rel, polarity, args }
    }

    fn random_formula(&self, rng: &mut impl Rng, depth: usize, scope: usize) -> Expr {
        if depth == 0 || rng.gen_bool(0.3) {
            return self.random_atom(rng, depth, scope);
        }
        let can_bind = scope < self.var_names.len() && !self.quantifiers.is_empty();
        match rng.gen_range(0..if can_bind { 3 } else { 2 }) {
            0 => Expr::and(
                self.random_formula(rng, depth - 1, scope),
                self.random_formula(rng, depth - 1, scope),
            ),
            1 => Expr::or(
                self.random_formula(rng, depth - 1, scope),
                self.random_formula(rng, depth - 1, scope),
            ),
            _ => {
                let t = *self.quantifiers.choose(rng).expect("nonempty");
                let kind = match t {
                    QuantTemplate::Forall | QuantTemplate::BoundedForall => QuantKind::Forall,
                    _ => QuantKind::Exists,
                };
                let bound = t
                    .is_bounded()
                    .then(|| self.random_term(rng, depth - 1, scope));
                let body = self.random_formula(rng, depth - 1, scope + 1);
                Expr::quant(kind, &self.var_names[scope], bound, body)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spec::{fst_decl, FunctionDecl, LanguageSpec, RelationDecl, PRIMARY_SORT};
    use crate::wf::well_formed;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn spec() -> LanguageSpec {
        let mut s = LanguageSpec::minimal("t");
        s.relations.push(RelationDecl::new("lt", 2).strong());
        s.functions.push(FunctionDecl::new("+", 2));
        s.add_constant("0", PRIMARY_SORT);
        s.add_constant("1", PRIMARY_SORT);
        s.quantifiers.extend([QuantTemplate::BoundedForall, QuantTemplate::BoundedExists, QuantTemplate::Exists]);
        s.qlos.push(fst_decl());
        s.add_elt_operators();
        s
    }

    #[test]
    fn samples_are_closed_and_well_formed() {
        let v = Vocabulary::from_spec(&spec());
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..500 {
            let e = v.random_sentence(&mut rng, 5);
            assert!(e.is_closed(), "{e}");
            assert!(well_formed(v.spec(), &e).ok(), "{e}: {:?}", well_formed(v.spec(), &e).first());
        }
    }

    #[test]
    fn sampling_is_deterministic() {
        let v = Vocabulary::from_spec(&spec());
        let draw = || {
            let mut rng = ChaCha8Rng::seed_from_u64(3);
            (0..20).map(|_| v.random_sentence(&mut rng, 4)).collect::<Vec<_>>()
        };
        assert_eq!(draw(), draw());
    }
}
