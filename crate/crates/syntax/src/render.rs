//! Canonical infix rendering as a token stream. Length is the token count.
//!
//! Terms use `+` < `·` < `^` precedence (`+`, `·` left-associative, `^`
//! right-associative); formulas use `∨` < `∧` (both right-associative) with
//! quantifiers extending as far right as possible. A negated `=` or `<` is
//! the single token `≠` or `≮`; other negated atoms take a leading `¬`.

use crate::expr::{Expr, Polarity, QuantKind};

trait Sink {
    fn tok(&mut self, t: &str);
}

struct Count(usize);

impl Sink for Count {
    fn tok(&mut self, _: &str) {
        self.0 += 1;
    }
}

struct Collect(Vec<String>);

impl Sink for Collect {
    fn tok(&mut self, t: &str) {
        self.0.push(t.to_string());
    }
}

/// Number of lexemes in the canonical rendering.
pub fn length(e: &Expr) -> usize {
    let mut c = Count(0);
    emit(e, 0, &mut c);
    c.0
}

pub fn tokens(e: &Expr) -> Vec<String> {
    let mut c = Collect(Vec::new());
    emit(e, 0, &mut c);
    c.0
}

/// Human-readable rendering of the token stream.
pub fn display(e: &Expr) -> String {
    join(&tokens(e))
}

pub fn join(toks: &[String]) -> String {
    let mut out = String::new();
    let mut prev: Option<&str> = None;
    for t in toks {
        if let Some(p) = prev {
            if needs_space(p, t) {
                out.push(' ');
            }
        }
        out.push_str(t);
        prev = Some(t);
    }
    out
}

fn wordy(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '?' | '$')
}

fn needs_space(prev: &str, next: &str) -> bool {
    const SPACED: &[&str] = &["∧", "∨", ":", "|"];
    if SPACED.contains(&prev) || SPACED.contains(&next) || prev == "," {
        return true;
    }
    let a = prev.chars().last().is_some_and(wordy);
    let b = next.chars().next().is_some_and(wordy);
    a && b
}

fn infix_op(func: &str) -> Option<(&'static str, u8, bool)> {
    // (token, precedence, right-associative)
    match func {
        "+" => Some(("+", 1, false)),
        "*" => Some(("·", 2, false)),
        "^" => Some(("^", 3, true)),
        _ => None,
    }
}

fn display_symbol(sym: &str) -> &str {
    match sym {
        "*" => "·",
        "true" => "𝕋",
        "ref" => "ℝ",
        s => s,
    }
}

const ATOMIC_TERM: u8 = 4;
const ATOMIC_FORMULA: u8 = 3;

fn precedence(e: &Expr) -> u8 {
    match e {
        Expr::App { func, args } if args.len() == 2 => {
            infix_op(func).map_or(ATOMIC_TERM, |(_, p, _)| p)
        }
        Expr::Or(..) => 1,
        Expr::And(..) => 2,
        Expr::Quant { .. } => 0,
        e if e.is_formula() => ATOMIC_FORMULA,
        _ => ATOMIC_TERM,
    }
}

fn emit(e: &Expr, min: u8, s: &mut impl Sink) {
    if precedence(e) < min {
        s.tok("(");
        emit_bare(e, s);
        s.tok(")");
    } else {
        emit_bare(e, s);
    }
}

fn emit_list(items: &[Expr], s: &mut impl Sink) {
    for (i, a) in items.iter().enumerate() {
        if i > 0 {
            s.tok(",");
        }
        emit(a, 0, s);
    }
}

fn emit_prefix(sym: &str, args: &[Expr], s: &mut impl Sink) {
    s.tok(display_symbol(sym));
    if !args.is_empty() {
        s.tok("(");
        emit_list(args, s);
        s.tok(")");
    }
}

fn emit_bare(e: &Expr, s: &mut impl Sink) {
    match e {
        Expr::Var(v) | Expr::Const(v) => s.tok(v),
        Expr::App { func, args } => match (infix_op(func), args.as_slice()) {
            (Some((tok, p, right)), [l, r]) => {
                let (lp, rp) = if right { (p + 1, p) } else { (p, p + 1) };
                emit(l, lp, s);
                s.tok(tok);
                emit(r, rp, s);
            }
            _ => emit_prefix(func, args, s),
        },
        Expr::Hole { name, args } => emit_prefix(name, args, s),
        Expr::Qlo {
            op,
            binders,
            terms,
            formulas,
        } => {
            let bounded_form = op.strip_prefix("elt").is_some_and(|r| r == "_lt")
                && binders.len() == 1
                && terms.len() == 1
                && formulas.len() == 1;
            if bounded_form {
                s.tok("elt");
                s.tok("{");
                s.tok(&binders[0]);
                s.tok("<");
                emit(&terms[0], 0, s);
            } else {
                s.tok(op);
                s.tok("{");
                for (i, b) in binders.iter().enumerate() {
                    if i > 0 {
                        s.tok(",");
                    }
                    s.tok(b);
                }
                if !terms.is_empty() {
                    s.tok("|");
                    emit_list(terms, s);
                }
            }
            s.tok(":");
            emit_list(formulas, s);
            s.tok("}");
        }
        Expr::Quote(inner) => {
            s.tok("⌜");
            emit(inner, 0, s);
            s.tok("⌝");
        }
        Expr::Atom {
            rel,
            polarity,
            args,
        } => {
            let neg = *polarity == Polarity::Negative;
            match (&**rel, args.as_slice()) {
                ("=", [a, b]) => {
                    emit(a, 0, s);
                    s.tok(if neg { "≠" } else { "=" });
                    emit(b, 0, s);
                }
                ("lt", [a, b]) => {
                    emit(a, 0, s);
                    s.tok(if neg { "≮" } else { "<" });
                    emit(b, 0, s);
                }
                ("def", [a]) if !neg => {
                    emit(a, ATOMIC_TERM, s);
                    s.tok("↓");
                }
                _ => {
                    if neg {
                        s.tok("¬");
                    }
                    emit_prefix(rel, args, s);
                }
            }
        }
        Expr::Neg(inner) => {
            s.tok("¬");
            emit(inner, ATOMIC_FORMULA, s);
        }
        Expr::And(a, b) => {
            emit(a, 3, s);
            s.tok("∧");
            emit(b, 2, s);
        }
        Expr::Or(a, b) => {
            emit(a, 2, s);
            s.tok("∨");
            emit(b, 1, s);
        }
        Expr::Quant {
            kind,
            var,
            sort,
            bound,
            body,
        } => {
            s.tok(match kind {
                QuantKind::Forall => "∀",
                QuantKind::Exists => "∃",
            });
            s.tok(var);
            if let Some(srt) = sort {
                s.tok(":");
                s.tok(srt);
            }
            if let Some(t) = bound {
                s.tok("<");
                emit(t, 0, s);
            }
            emit(body, 0, s);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> Expr {
        Expr::constant(s)
    }

    fn plus(a: Expr, b: Expr) -> Expr {
        Expr::app("+", vec![a, b])
    }

    fn times(a: Expr, b: Expr) -> Expr {
        Expr::app("*", vec![a, b])
    }

    #[test]
    fn single_constant() {
        assert_eq!(length(&c("0")), 1);
    }

    #[test]
    fn one_plus_one() {
        let e = plus(c("1"), c("1"));
        assert_eq!(tokens(&e), vec!["1", "+", "1"]);
        assert_eq!(length(&e), 3);
    }

    #[test]
    fn parentheses_follow_precedence() {
        let two = plus(c("1"), c("1"));
        assert_eq!(display(&times(two.clone(), two.clone())), "(1+1)·(1+1)");
        assert_eq!(display(&plus(two.clone(), c("1"))), "1+1+1");
        assert_eq!(display(&plus(c("1"), two.clone())), "1+(1+1)");
        let pow = |a, b| Expr::app("^", vec![a, b]);
        assert_eq!(display(&pow(c("1"), pow(c("0"), c("1")))), "1^0^1");
        assert_eq!(display(&pow(pow(c("1"), c("0")), c("1"))), "(1^0)^1");
    }

    #[test]
    fn negated_comparisons_cost_nothing() {
        let pos = Expr::eq(c("0"), c("1"));
        let neg = Expr::neg_atom("=", vec![c("0"), c("1")]);
        assert_eq!(length(&pos), length(&neg));
        assert_eq!(display(&neg), "0≠1");
    }

    #[test]
    fn quantifier_inside_conjunction_is_parenthesised() {
        let q = Expr::exists("x", Expr::eq(Expr::var("x"), c("0")));
        let e = Expr::and(q.clone(), Expr::eq(c("0"), c("0")));
        assert_eq!(display(&e), "(∃x x=0) ∧ 0=0");
        assert_eq!(length(&e), length(&q) + 2 + 1 + 3);
    }

    #[test]
    fn bounded_elt_rendering() {
        let e = Expr::qlo1("elt_lt", "x", vec![c("1")], Expr::eq(Expr::var("x"), c("0")));
        assert_eq!(display(&e), "elt{x<1 : x=0}");
        assert_eq!(length(&e), 10);
    }

    #[test]
    fn definedness_is_postfix() {
        assert_eq!(display(&Expr::defined(plus(c("1"), c("1")))), "(1+1)↓");
        assert_eq!(length(&Expr::defined(c("0"))), 2);
    }
}
