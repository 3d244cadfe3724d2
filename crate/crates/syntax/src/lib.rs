//! Proposition/term syntaxes: language specs, expressions with binding,
//! well-formedness, de Morgan negation, and token-length accounting.

pub mod enumerate;
pub mod expr;
pub mod negate;
pub mod numeral;
pub mod parse;
pub mod render;
pub mod sample;
pub mod schema;
pub mod sexp;
pub mod spec;
pub mod wf;

pub use expr::{name, Class, Expr, Name, NameSupply, Polarity, QuantKind};
pub use negate::{definiteness_formula, is_negatable, negate, strongly_negatable, NotNegatable};
pub use numeral::{numeral, NUMERAL_LENGTH_CONSTANT};
pub use parse::{parse_expr, parse_schema, print, ParseError};
pub use render::{display, length};
pub use spec::{LanguageSpec, QuantTemplate, PRIMARY_SORT};
pub use wf::{well_formed, WfReport};

/// Variable assignment: ordered, duplicate-free pairs of variable and value.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Assignment<V> {
    pairs: Vec<(Name, V)>,
}

impl<V: Clone> Assignment<V> {
    pub fn new() -> Self {
        Assignment { pairs: Vec::new() }
    }

    /// Binds `var`, replacing any previous binding in place.
    pub fn set(&mut self, var: &str, value: V) {
        match self.pairs.iter_mut().find(|(n, _)| &**n == var) {
            Some(slot) => slot.1 = value,
            None => self.pairs.push((name(var), value)),
        }
    }

    pub fn with(mut self, var: &str, value: V) -> Self {
        self.set(var, value);
        self
    }

    pub fn get(&self, var: &str) -> Option<&V> {
        self.pairs.iter().find(|(n, _)| &**n == var).map(|(_, v)| v)
    }

    pub fn iter(&self) -> impl Iterator<Item = &(Name, V)> {
        self.pairs.iter()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}
