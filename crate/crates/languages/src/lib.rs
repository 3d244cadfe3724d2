//! Concrete language specs and the notation built on top of them.

pub mod codec;
pub mod derived;
pub mod selfmeta;

use lnc_syntax::spec::{fst_decl, FunctionDecl, RelationDecl, SortDecl};
use lnc_syntax::{name, parse_expr, Expr, LanguageSpec, Name, ParseError, QuantTemplate, PRIMARY_SORT};
use std::fmt;
use thiserror::Error;

pub use codec::ListCodec;

/// Sort of sentence names in Kripke extensions.
pub const STRING_SORT: &str = "str";

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Tag {
    Gnt,
    Nt,
    /// Classical arithmetic modulo `k` over `{0..k-1}`.
    Fin(u32),
    KripkeOf(Box<Tag>),
    MetaOf(Box<Tag>),
}

impl Tag {
    /// Nesting depth of meta extensions.
    pub fn meta_level(&self) -> usize {
        match self {
            Tag::MetaOf(b) => 1 + b.meta_level(),
            _ => 0,
        }
    }

    pub fn is_list_compatible(&self) -> bool {
        match self {
            Tag::Gnt | Tag::Nt => true,
            Tag::MetaOf(b) => b.is_list_compatible(),
            Tag::Fin(_) | Tag::KripkeOf(_) => false,
        }
    }

    /// Parses `gnt`, `nt`, `fin3`, `kripke(fin2)`, `meta(gnt)`.
    pub fn parse(s: &str) -> Result<Tag, LanguageError> {
        let s = s.trim().to_ascii_lowercase();
        let wrapped = |prefix: &str| {
            s.strip_prefix(prefix)
                .and_then(|r| r.strip_prefix('('))
                .and_then(|r| r.strip_suffix(')'))
                .map(str::to_string)
        };
        if let Some(inner) = wrapped("meta") {
            return Ok(Tag::MetaOf(Box::new(Tag::parse(&inner)?)));
        }
        if let Some(inner) = wrapped("kripke") {
            return Ok(Tag::KripkeOf(Box::new(Tag::parse(&inner)?)));
        }
        match s.as_str() {
            "gnt" => Ok(Tag::Gnt),
            "nt" => Ok(Tag::Nt),
            _ => s
                .strip_prefix("fin")
                .and_then(|k| k.parse::<u32>().ok())
                .filter(|k| *k >= 1)
                .map(Tag::Fin)
                .ok_or_else(|| LanguageError::UnknownTag(s.clone())),
        }
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tag::Gnt => write!(f, "gnt"),
            Tag::Nt => write!(f, "nt"),
            Tag::Fin(k) => write!(f, "fin{k}"),
            Tag::KripkeOf(b) => write!(f, "kripke({b})"),
            Tag::MetaOf(b) => write!(f, "meta({b})"),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LanguageError {
    #[error("unknown language tag `{0}`")]
    UnknownTag(String),
    #[error("`{0}` is not list-compatible")]
    NotListCompatible(Tag),
    #[error("Kripke extension needs a finite classical base, got `{0}`")]
    KripkeBase(Tag),
    #[error("sentence name `{0}` is already declared")]
    DuplicateSentence(String),
    #[error("registered sentence `{name}`: {source}")]
    Sentence { name: String, source: ParseError },
    #[error("registered sentence `{0}` is not a well-formed sentence")]
    IllFormedSentence(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StdLanguage {
    pub tag: Tag,
    pub spec: LanguageSpec,
    /// Sentence constants of a Kripke extension and the sentences they name.
    pub sentences: Vec<(Name, Expr)>,
}

impl StdLanguage {
    pub fn is_classical(&self) -> bool {
        matches!(self.tag, Tag::Fin(_) | Tag::Nt)
    }

    /// The language whose sentences the truth primitive of this meta extension talks about.
    pub fn meta_base(&self) -> Option<StdLanguage> {
        match &self.tag {
            Tag::MetaOf(b) => make_std(b).ok(),
            _ => None,
        }
    }

    pub fn registered(&self, constant: &str) -> Option<&Expr> {
        self.sentences.iter().find(|(n, _)| &**n == constant).map(|(_, e)| e)
    }

    pub fn parse(&self, text: &str) -> Result<Expr, ParseError> {
        parse_expr(&self.spec, text)
    }
}

fn arithmetic(spec_name: &str, with_pow: bool) -> LanguageSpec {
    let mut s = LanguageSpec::minimal(spec_name);
    s.relations.push(RelationDecl::new("lt", 2).strong());
    s.functions.push(FunctionDecl::new("+", 2));
    s.functions.push(FunctionDecl::new("*", 2));
    if with_pow {
        s.functions.push(FunctionDecl::new("^", 2));
    }
    s.add_constant("0", PRIMARY_SORT);
    s.add_constant("1", PRIMARY_SORT);
    s
}

fn gnt() -> LanguageSpec {
    let mut s = arithmetic("gnt", true);
    s.quantifiers.extend([QuantTemplate::BoundedForall, QuantTemplate::BoundedExists, QuantTemplate::Exists]);
    s.qlos.push(fst_decl());
    s.add_elt_operators();
    s
}

fn nt() -> LanguageSpec {
    let mut s = gnt();
    s.name = name("nt");
    s.quantifiers.insert(QuantTemplate::Forall);
    s.add_elt_operators();
    s
}

fn fin(k: u32) -> LanguageSpec {
    let mut s = arithmetic(&format!("fin{k}"), false);
    s.quantifiers.extend(QuantTemplate::ALL);
    s.add_elt_operators();
    s
}

/// Symbol of the truth relation and reference function at a meta level (1-based).
pub fn meta_symbols(level: usize) -> (String, String) {
    if level <= 1 {
        ("true".into(), "ref".into())
    } else {
        (format!("true{level}"), format!("ref{level}"))
    }
}

pub fn make_std(tag: &Tag) -> Result<StdLanguage, LanguageError> {
    let spec = match tag {
        Tag::Gnt => gnt(),
        Tag::Nt => nt(),
        Tag::Fin(k) => fin(*k),
        Tag::KripkeOf(_) => return make_kripke(tag, &[]),
        Tag::MetaOf(base) => return lift_to_meta(&make_std(base)?),
    };
    Ok(StdLanguage {
        tag: tag.clone(),
        spec,
        sentences: Vec::new(),
    })
}

/// Adds a truth relation and a reference function over sentence codes.
pub fn lift_to_meta(base: &StdLanguage) -> Result<StdLanguage, LanguageError> {
    if !base.tag.is_list_compatible() {
        return Err(LanguageError::NotListCompatible(base.tag.clone()));
    }
    let tag = Tag::MetaOf(Box::new(base.tag.clone()));
    let (truth, reference) = meta_symbols(tag.meta_level());
    let mut spec = base.spec.clone();
    spec.name = name(&tag.to_string());
    spec.relations.push(RelationDecl::new(&truth, 1).negatable().with_assignments());
    spec.functions.push(FunctionDecl::new(&reference, 1).with_assignments());
    spec.quote_sort = Some(name(PRIMARY_SORT));
    Ok(StdLanguage {
        tag,
        spec,
        sentences: Vec::new(),
    })
}

/// Kripke extension of a finite base with named sentences.
///
/// Each `(name, text)` declares a sentence constant; `text` may mention any
/// of the constants, which is how the liar and the truth-teller refer to
/// themselves.
pub fn make_kripke(tag: &Tag, named: &[(&str, &str)]) -> Result<StdLanguage, LanguageError> {
    let Tag::KripkeOf(base) = tag else {
        return Err(LanguageError::KripkeBase(tag.clone()));
    };
    let Tag::Fin(_) = **base else {
        return Err(LanguageError::KripkeBase((**base).clone()));
    };
    let mut spec = make_std(base)?.spec;
    spec.name = name(&tag.to_string());
    spec.sorts.push(SortDecl {
        name: name(STRING_SORT),
        quantifiable: false,
    });
    spec.quote_sort = Some(name(STRING_SORT));
    spec.relations.push(RelationDecl::new("true", 1).negatable().sorts(&[STRING_SORT]));
    for (n, _) in named {
        if spec.constant(n).is_some() {
            return Err(LanguageError::DuplicateSentence(n.to_string()));
        }
        spec.add_constant(n, STRING_SORT);
    }
    let mut sentences = Vec::new();
    for (n, text) in named {
        let e = parse_expr(&spec, text).map_err(|source| LanguageError::Sentence {
            name: n.to_string(),
            source,
        })?;
        if !e.is_formula() || !e.is_closed() || !lnc_syntax::well_formed(&spec, &e).ok() {
            return Err(LanguageError::IllFormedSentence(n.to_string()));
        }
        sentences.push((name(n), e));
    }
    Ok(StdLanguage {
        tag: tag.clone(),
        spec,
        sentences,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_standard_spec_validates() {
        for t in ["gnt", "nt", "fin1", "fin3", "kripke(fin2)", "meta(gnt)", "meta(meta(nt))"] {
            let l = make_std(&Tag::parse(t).unwrap()).unwrap();
            l.spec.validate().unwrap();
            assert_eq!(l.tag.to_string(), t);
        }
    }

    #[test]
    fn gnt_shape() {
        let g = make_std(&Tag::Gnt).unwrap();
        assert!(g.spec.qlo("fst").is_some());
        assert!(g.spec.qlo("elt_lt").is_some());
        assert!(g.spec.qlo("elt").is_none());
        assert!(!g.spec.allows(QuantTemplate::Forall));
        assert!(g.spec.function("^").is_some());
    }

    #[test]
    fn nt_adds_forall_and_elt() {
        let n = make_std(&Tag::Nt).unwrap();
        assert!(n.spec.allows(QuantTemplate::Forall));
        assert!(n.spec.qlo("elt").is_some());
    }

    #[test]
    fn fin_is_classical() {
        let f = make_std(&Tag::Fin(3)).unwrap();
        assert!(f.spec.is_classical());
        assert!(f.is_classical());
    }

    #[test]
    fn meta_rejects_finite_base() {
        let f = make_std(&Tag::Fin(2)).unwrap();
        assert_eq!(
            lift_to_meta(&f),
            Err(LanguageError::NotListCompatible(Tag::Fin(2)))
        );
    }

    #[test]
    fn meta_twice_is_distinct() {
        let once = make_std(&Tag::MetaOf(Box::new(Tag::Gnt))).unwrap();
        let twice = lift_to_meta(&once).unwrap();
        assert_ne!(once.spec, twice.spec);
        assert!(twice.spec.relation("true2").is_some());
        assert!(twice.spec.relation("true").is_some());
    }

    #[test]
    fn meta_accepts_quoted_truth() {
        let m = make_std(&Tag::MetaOf(Box::new(Tag::Gnt))).unwrap();
        let e = m.parse("(true (quote (= 0 0)))").unwrap();
        assert!(lnc_syntax::well_formed(&m.spec, &e).ok());
    }

    #[test]
    fn kripke_registers_self_reference() {
        let tag = Tag::KripkeOf(Box::new(Tag::Fin(2)));
        let k = make_kripke(&tag, &[("liar", "(not (true liar))"), ("teller", "(true teller)")]).unwrap();
        assert_eq!(k.registered("liar").unwrap().to_string(), "¬𝕋(liar)");
        assert!(!k.spec.is_classical());
    }

    #[test]
    fn repeated_construction_is_identical() {
        let a = make_std(&Tag::Gnt).unwrap().spec.to_text();
        let b = make_std(&Tag::Gnt).unwrap().spec.to_text();
        assert_eq!(a, b);
    }
}
