//! Minimal S-expression reader and canonical printer.
//!
//! Grammar:
//!
//! ```text
//! document := sexp*
//! sexp     := atom | '(' sexp* ')'
//! atom     := one or more chars other than whitespace, '(', ')', ';'
//! comment  := ';' up to end of line (ignored)
//! ```
//!
//! The canonical printed form separates list elements by one space and has no
//! newlines, so `print(parse(s)) == s` for every canonical `s`.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Sexp {
    Atom(String),
    List(Vec<Sexp>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SexpError {
    #[error("unexpected ')' at byte {0}")]
    UnexpectedClose(usize),
    #[error("unclosed '(' opened at byte {0}")]
    Unclosed(usize),
    #[error("expected exactly one expression, found {0}")]
    NotSingle(usize),
}

impl Sexp {
    pub fn atom(s: impl Into<String>) -> Self {
        Sexp::Atom(s.into())
    }

    pub fn list(items: impl IntoIterator<Item = Sexp>) -> Self {
        Sexp::List(items.into_iter().collect())
    }

    pub fn as_atom(&self) -> Option<&str> {
        match self {
            Sexp::Atom(a) => Some(a),
            Sexp::List(_) => None,
        }
    }

    pub fn as_list(&self) -> Option<&[Sexp]> {
        match self {
            Sexp::List(items) => Some(items),
            Sexp::Atom(_) => None,
        }
    }

    /// Head symbol of a non-empty list whose first element is an atom.
    pub fn head(&self) -> Option<&str> {
        self.as_list()?.first()?.as_atom()
    }

    /// Multi-line rendering for human consumption; parses back to the same tree.
    pub fn pretty(&self, width: usize) -> String {
        let mut out = String::new();
        pretty_into(self, 0, width, &mut out);
        out
    }
}

impl fmt::Display for Sexp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sexp::Atom(a) => f.write_str(a),
            Sexp::List(items) => {
                f.write_str("(")?;
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{item}")?;
                }
                f.write_str(")")
            }
        }
    }
}

fn pretty_into(s: &Sexp, indent: usize, width: usize, out: &mut String) {
    let flat = s.to_string();
    match s {
        Sexp::List(items) if indent + flat.len() > width && items.len() > 1 => {
            out.push('(');
            out.push_str(&items[0].to_string());
            for item in &items[1..] {
                out.push('\n');
                out.push_str(&" ".repeat(indent + 2));
                pretty_into(item, indent + 2, width, out);
            }
            out.push(')');
        }
        _ => out.push_str(&flat),
    }
}

fn is_delim(c: char) -> bool {
    c.is_whitespace() || c == '(' || c == ')' || c == ';'
}

/// Parses every top-level expression in `text`.
pub fn parse_all(text: &str) -> Result<Vec<Sexp>, SexpError> {
    let mut stack: Vec<(usize, Vec<Sexp>)> = Vec::new();
    let mut top = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c == ';' {
            while let Some(&(_, c)) = chars.peek() {
                if c == '\n' {
                    break;
                }
                chars.next();
            }
        } else if c == '(' {
            chars.next();
            stack.push((pos, Vec::new()));
        } else if c == ')' {
            chars.next();
            let (_, items) = stack.pop().ok_or(SexpError::UnexpectedClose(pos))?;
            let done = Sexp::List(items);
            match stack.last_mut() {
                Some((_, parent)) => parent.push(done),
                None => top.push(done),
            }
        } else {
            let mut atom = String::new();
            while let Some(&(_, c)) = chars.peek() {
                if is_delim(c) {
                    break;
                }
                atom.push(c);
                chars.next();
            }
            let done = Sexp::Atom(atom);
            match stack.last_mut() {
                Some((_, parent)) => parent.push(done),
                None => top.push(done),
            }
        }
    }
    if let Some((pos, _)) = stack.pop() {
        return Err(SexpError::Unclosed(pos));
    }
    Ok(top)
}

/// Parses exactly one expression.
pub fn parse(text: &str) -> Result<Sexp, SexpError> {
    let mut all = parse_all(text)?;
    if all.len() != 1 {
        return Err(SexpError::NotSingle(all.len()));
    }
    Ok(all.pop().expect("length checked"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_nested_lists() {
        let s = parse("(forall (n (lt n t)) (= n n))").unwrap();
        assert_eq!(s.head(), Some("forall"));
        assert_eq!(s.to_string(), "(forall (n (lt n t)) (= n n))");
    }

    #[test]
    fn comments_and_whitespace_are_ignored() {
        let s = parse("; leading\n( a\n\t b ) ; trailing").unwrap();
        assert_eq!(s.to_string(), "(a b)");
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(parse("(a b"), Err(SexpError::Unclosed(0)));
        assert_eq!(parse("a)"), Err(SexpError::UnexpectedClose(1)));
        assert_eq!(parse("a b"), Err(SexpError::NotSingle(2)));
        assert_eq!(parse(""), Err(SexpError::NotSingle(0)));
    }

    #[test]
    fn pretty_output_reparses() {
        let s = parse("(proof (step 1 (assume (and (= 0 0) (= 1 1)))) (step 2 (then (= 0 0))))").unwrap();
        let p = s.pretty(20);
        assert!(p.contains('\n'));
        assert_eq!(parse(&p).unwrap(), s);
    }
}
