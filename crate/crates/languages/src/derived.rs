//! Derived notation expanded into primitive syntax.

use lnc_syntax::{name, negate, Expr, LanguageSpec, NameSupply, NotNegatable, QuantKind};

/// `a ≤ b`, spelled `(a < b) ∨ (a = b)`.
pub fn le(a: Expr, b: Expr) -> Expr {
    Expr::or(Expr::lt(a.clone(), b.clone()), Expr::eq(a, b))
}

/// `max{t(m) : m ≤ n, φ(m)}` as `fst{k : ∀m < n+1 (¬φ(m) ∨ t(m) ≤ k)}`.
///
/// When no `m ≤ n` satisfies `φ` every `k` qualifies, so the value is 0.
pub fn desugar_max(
    spec: &LanguageSpec,
    t: &Expr,
    m: &str,
    phi: &Expr,
    n: &Expr,
) -> Result<Expr, NotNegatable> {
    let not_phi = negate(spec, phi)?;
    let mut names = NameSupply::avoiding("k", &[t, phi, n]);
    names.avoid(&Expr::var(m));
    let k = names.fresh();
    let bound = Expr::app("+", vec![n.clone(), Expr::constant("1")]);
    let body = Expr::forall_lt(m, bound, Expr::or(not_phi, le(t.clone(), Expr::Var(k.clone()))));
    Ok(Expr::qlo1("fst", &k, vec![], body))
}

/// Like [`desugar_max`], but `m` ranges over a whole (finite, quantifiable) sort.
pub fn desugar_max_sorted(
    spec: &LanguageSpec,
    t: &Expr,
    m: &str,
    sort: &str,
    phi: &Expr,
) -> Result<Expr, NotNegatable> {
    let not_phi = negate(spec, phi)?;
    let mut names = NameSupply::avoiding("k", &[t, phi]);
    names.avoid(&Expr::var(m));
    let k = names.fresh();
    let body = Expr::Quant {
        kind: QuantKind::Forall,
        var: name(m),
        sort: Some(name(sort)),
        bound: None,
        body: Box::new(Expr::or(not_phi, le(t.clone(), Expr::Var(k.clone())))),
    };
    Ok(Expr::qlo1("fst", &k, vec![], body))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{make_std, Tag};
    use lnc_syntax::{numeral, well_formed};

    #[test]
    fn max_expansion_is_literal() {
        let g = make_std(&Tag::Gnt).unwrap();
        let m = Expr::var("m");
        let e = desugar_max(&g.spec, &m, "m", &Expr::eq(m.clone(), m.clone()), &numeral(3)).unwrap();
        assert_eq!(e.to_string(), "fst{k0 : ∀m<1+1+1+1 m≠m ∨ m<k0 ∨ m=k0}");
        assert!(well_formed(&g.spec, &e).ok());
    }

    #[test]
    fn max_rejects_unnegatable_condition() {
        let g = make_std(&Tag::Gnt).unwrap();
        let m = Expr::var("m");
        let r = desugar_max(&g.spec, &m, "m", &Expr::defined(m.clone()), &numeral(3));
        assert!(r.is_err());
    }

    #[test]
    fn fresh_binder_avoids_free_names() {
        let g = make_std(&Tag::Gnt).unwrap();
        let t = Expr::app("+", vec![Expr::var("m"), Expr::var("k")]);
        let e = desugar_max(&g.spec, &t, "m", &Expr::eq(Expr::var("m"), Expr::var("m")), &numeral(2)).unwrap();
        assert!(e.occurs_free("k"));
    }
}
