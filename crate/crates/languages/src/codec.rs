//! Lists of naturals packed into one natural, and sentence codes built on it.
//!
//! With `B = 2^width`, the list `[a0, .., a(n-1)]` is coded as
//! `n + a0·B + a1·B² + .. + a(n-1)·B^n`: the lowest digit holds the length.

use lnc_syntax::parse::{parse_sexp, print_sexp};
use lnc_syntax::sexp;
use lnc_syntax::{numeral, Expr, LanguageSpec, NameSupply, ParseError};
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ListCodec {
    pub width: u32,
}

impl Default for ListCodec {
    fn default() -> Self {
        ListCodec { width: 64 }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CodecError {
    #[error("list of {len} entries does not fit digit width {width}")]
    TooLong { len: usize, width: u32 },
    #[error("entry {index} does not fit digit width {width}")]
    EntryTooLarge { index: usize, width: u32 },
    #[error("number is not a list code")]
    NotAList,
    #[error("decoded bytes are not UTF-8")]
    NotUtf8,
    #[error("decoded text is not an expression: {0}")]
    Parse(#[from] ParseError),
}

impl ListCodec {
    pub fn new(width: u32) -> Self {
        assert!(width >= 1, "digit width must be positive");
        ListCodec { width }
    }

    pub fn base(&self) -> BigUint {
        BigUint::one() << self.width
    }

    fn fits(&self, v: &BigUint) -> bool {
        v.bits() <= u64::from(self.width)
    }

    pub fn encode(&self, items: &[BigUint]) -> Result<BigUint, CodecError> {
        let len = BigUint::from(items.len());
        if !self.fits(&len) {
            return Err(CodecError::TooLong {
                len: items.len(),
                width: self.width,
            });
        }
        let mut code = BigUint::zero();
        for (i, a) in items.iter().enumerate().rev() {
            if !self.fits(a) {
                return Err(CodecError::EntryTooLarge {
                    index: i,
                    width: self.width,
                });
            }
            code = (code | a) << self.width;
        }
        Ok(code | len)
    }

    pub fn encode_u64(&self, items: &[u64]) -> Result<BigUint, CodecError> {
        let v: Vec<BigUint> = items.iter().map(|&a| BigUint::from(a)).collect();
        self.encode(&v)
    }

    pub fn decode(&self, code: &BigUint) -> Result<Vec<BigUint>, CodecError> {
        let mask = self.base() - 1u32;
        let len = (code & &mask).to_usize().ok_or(CodecError::NotAList)?;
        let mut rest = code >> self.width;
        let mut out = Vec::with_capacity(len);
        for _ in 0..len {
            out.push(&rest & &mask);
            rest >>= self.width;
        }
        if !rest.is_zero() {
            return Err(CodecError::NotAList);
        }
        Ok(out)
    }

    pub fn is_list(&self, code: &BigUint) -> bool {
        self.decode(code).is_ok()
    }

    pub fn encode_text(&self, text: &str) -> Result<BigUint, CodecError> {
        let v: Vec<BigUint> = text.bytes().map(BigUint::from).collect();
        self.encode(&v)
    }

    pub fn decode_text(&self, code: &BigUint) -> Result<String, CodecError> {
        let bytes = self
            .decode(code)?
            .iter()
            .map(|d| d.to_u8().ok_or(CodecError::NotUtf8))
            .collect::<Result<Vec<u8>, _>>()?;
        String::from_utf8(bytes).map_err(|_| CodecError::NotUtf8)
    }

    /// Code of the canonical S-expression of `e`.
    pub fn encode_expr(&self, e: &Expr) -> Result<BigUint, CodecError> {
        self.encode_text(&print_sexp(e).to_string())
    }

    pub fn decode_expr(&self, spec: &LanguageSpec, code: &BigUint) -> Result<Expr, CodecError> {
        let text = self.decode_text(code)?;
        let s = sexp::parse(&text).map_err(ParseError::from)?;
        Ok(parse_sexp(spec, &s)?)
    }

    /// `B` as a term: `(1+1)^numeral(width)`.
    pub fn base_term(&self) -> Expr {
        Expr::app(
            "^",
            vec![
                Expr::app("+", vec![Expr::constant("1"), Expr::constant("1")]),
                numeral(u64::from(self.width)),
            ],
        )
    }

    /// `|x| = fst{r : ∃q < x+1 (x = q·B + r)}`
    pub fn length_term(&self, x: &Expr) -> Expr {
        let mut names = NameSupply::avoiding("_l", &[x]);
        let (r, q) = (names.fresh(), names.fresh());
        let (rv, qv) = (Expr::Var(r.clone()), Expr::Var(q.clone()));
        let body = Expr::exists_lt(
            &q,
            succ(x.clone()),
            Expr::eq(x.clone(), Expr::app("+", vec![times(qv, self.base_term()), rv])),
        );
        Expr::qlo1("fst", &r, vec![], body)
    }

    /// `x[i] = fst{d : ∃q < x+1 ∃r < B^(i+1) (x = (q·B + d)·B^(i+1) + r)}`, zero-based.
    pub fn element_term(&self, x: &Expr, i: &Expr) -> Expr {
        let mut names = NameSupply::avoiding("_l", &[x, i]);
        let (d, q, r) = (names.fresh(), names.fresh(), names.fresh());
        let (dv, qv, rv) = (Expr::Var(d.clone()), Expr::Var(q.clone()), Expr::Var(r.clone()));
        let scale = Expr::app("^", vec![self.base_term(), succ(i.clone())]);
        let high = Expr::app("+", vec![times(qv, self.base_term()), dv]);
        let body = Expr::exists_lt(
            &q,
            succ(x.clone()),
            Expr::exists_lt(
                &r,
                scale.clone(),
                Expr::eq(x.clone(), Expr::app("+", vec![times(high, scale), rv])),
            ),
        );
        Expr::qlo1("fst", &d, vec![], body)
    }

    /// `List(x) := x < B^(|x|+1)`
    pub fn is_list_formula(&self, x: &Expr) -> Expr {
        Expr::lt(
            x.clone(),
            Expr::app("^", vec![self.base_term(), succ(self.length_term(x))]),
        )
    }
}

fn succ(t: Expr) -> Expr {
    Expr::app("+", vec![t, Expr::constant("1")])
}

fn times(a: Expr, b: Expr) -> Expr {
    Expr::app("*", vec![a, b])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{make_std, Tag};
    use lnc_syntax::well_formed;
    use proptest::prelude::*;

    #[test]
    fn layout_is_length_then_entries() {
        let c = ListCodec::new(2);
        // 2 + 1·4 + 2·16
        assert_eq!(c.encode_u64(&[1, 2]).unwrap(), BigUint::from(38u32));
        assert_eq!(c.encode_u64(&[]).unwrap(), BigUint::zero());
        assert_eq!(c.decode(&BigUint::from(38u32)).unwrap(), vec![BigUint::from(1u32), BigUint::from(2u32)]);
    }

    #[test]
    fn overflow_is_reported() {
        let c = ListCodec::new(2);
        assert_eq!(c.encode_u64(&[4]), Err(CodecError::EntryTooLarge { index: 0, width: 2 }));
        assert_eq!(c.encode_u64(&[0, 0, 0, 0]), Err(CodecError::TooLong { len: 4, width: 2 }));
        // length digit says 1 but two digits follow
        assert_eq!(c.decode(&BigUint::from(1u32 + 4 + 16)), Err(CodecError::NotAList));
    }

    #[test]
    fn sentence_codes_round_trip() {
        let g = make_std(&Tag::Gnt).unwrap();
        let e = g.parse("(exists n (= n (+ 1 1)))").unwrap();
        let c = ListCodec::default();
        let code = c.encode_expr(&e).unwrap();
        assert_eq!(c.decode_expr(&g.spec, &code).unwrap(), e);
    }

    #[test]
    fn accessor_terms_are_well_formed_gnt() {
        let g = make_std(&Tag::Gnt).unwrap();
        let c = ListCodec::new(2);
        let x = Expr::var("x");
        assert!(well_formed(&g.spec, &c.length_term(&x)).ok());
        assert!(well_formed(&g.spec, &c.element_term(&x, &Expr::constant("0"))).ok());
        assert!(well_formed(&g.spec, &c.is_list_formula(&x)).ok());
    }

    proptest! {
        #[test]
        fn decode_inverts_encode(items in proptest::collection::vec(any::<u64>(), 0..20)) {
            let c = ListCodec::default();
            let code = c.encode_u64(&items).unwrap();
            let back: Vec<u64> = c.decode(&code).unwrap().iter().map(|d| d.to_u64().unwrap()).collect();
            prop_assert_eq!(back, items);
        }

        #[test]
        fn text_round_trip(s in "\\PC{0,40}") {
            let c = ListCodec::new(8);
            prop_assert_eq!(c.decode_text(&c.encode_text(&s).unwrap()).unwrap(), s);
        }
    }
}
