//! Minimal s-expression reader shared by every textual format in this
//! crate (formulas, sequents, rule schemas, calculi, proofs).
//!
//! Symbols are bare identifiers (plus the `?`/`$` sigils used by the
//! meta level); `;` starts a line comment.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sexp {
    /// A bare symbol with the byte offset where it starts.
    Sym(String, usize),
    /// A parenthesised list with the byte offset of its `(`.
    List(Vec<Sexp>, usize),
}

impl Sexp {
    pub fn pos(&self) -> usize {
        match self {
            Sexp::Sym(_, p) | Sexp::List(_, p) => *p,
        }
    }

    pub fn as_sym(&self) -> Option<&str> {
        match self {
            Sexp::Sym(s, _) => Some(s),
            Sexp::List(..) => None,
        }
    }

    pub fn as_list(&self) -> Option<&[Sexp]> {
        match self {
            Sexp::List(items, _) => Some(items),
            Sexp::Sym(..) => None,
        }
    }

    /// The head symbol of a list, e.g. `and` for `(and p q)`.
    pub fn head(&self) -> Option<&str> {
        self.as_list().and_then(|items| items.first()).and_then(Sexp::as_sym)
    }
}

impl fmt::Display for Sexp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sexp::Sym(s, _) => write!(f, "{s}"),
            Sexp::List(items, _) => {
                write!(f, "(")?;
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{item}")?;
                }
                write!(f, ")")
            }
        }
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum SexpError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
}

pub fn syntax_err<T>(pos: usize, msg: impl Into<String>) -> Result<T, SexpError> {
    Err(SexpError::Syntax { pos, msg: msg.into() })
}

fn is_sym_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '-' | '+' | '?' | '$' | '.' | '*' | '!' | '<' | '>' | '=')
}

/// Parse exactly one s-expression; trailing garbage is an error.
pub fn parse_one(text: &str) -> Result<Sexp, SexpError> {
    let mut p = Parser { text, bytes: text.as_bytes(), pos: 0 };
    p.skip_ws();
    let e = p.parse()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return syntax_err(p.pos, "trailing input after s-expression");
    }
    Ok(e)
}

/// Parse a whole file: a sequence of s-expressions.
pub fn parse_many(text: &str) -> Result<Vec<Sexp>, SexpError> {
    let mut p = Parser { text, bytes: text.as_bytes(), pos: 0 };
    let mut out = Vec::new();
    loop {
        p.skip_ws();
        if p.pos == p.bytes.len() {
            return Ok(out);
        }
        out.push(p.parse()?);
    }
}

struct Parser<'a> {
    text: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() {
            match self.bytes[self.pos] {
                b' ' | b'\t' | b'\r' | b'\n' => self.pos += 1,
                b';' => {
                    while self.pos < self.bytes.len() && self.bytes[self.pos] != b'\n' {
                        self.pos += 1;
                    }
                }
                _ => break,
            }
        }
    }

    fn parse(&mut self) -> Result<Sexp, SexpError> {
        self.skip_ws();
        if self.pos >= self.bytes.len() {
            return syntax_err(self.pos, "unexpected end of input");
        }
        let start = self.pos;
        match self.bytes[self.pos] {
            b'(' => {
                self.pos += 1;
                let mut items = Vec::new();
                loop {
                    self.skip_ws();
                    if self.pos >= self.bytes.len() {
                        return syntax_err(start, "unclosed '('");
                    }
                    if self.bytes[self.pos] == b')' {
                        self.pos += 1;
                        return Ok(Sexp::List(items, start));
                    }
                    items.push(self.parse()?);
                }
            }
            b')' => syntax_err(self.pos, "unmatched ')'"),
            _ => {
                let rest = &self.text[self.pos..];
                let len = rest.chars().take_while(|&c| is_sym_char(c)).map(char::len_utf8).sum::<usize>();
                if len == 0 {
                    return syntax_err(self.pos, format!("unexpected character {:?}", rest.chars().next().unwrap()));
                }
                self.pos += len;
                Ok(Sexp::Sym(rest[..len].to_string(), start))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_simple() {
        let e = parse_one("(and p (or q r))").unwrap();
        assert_eq!(e.to_string(), "(and p (or q r))");
        assert_eq!(e.head(), Some("and"));
    }

    #[test]
    fn comments_and_many() {
        let es = parse_many("; header\np (seq (p) (q)) ; tail\n").unwrap();
        assert_eq!(es.len(), 2);
    }

    #[test]
    fn errors_have_positions() {
        match parse_one("(and p") {
            Err(SexpError::Syntax { pos, .. }) => assert_eq!(pos, 0),
            other => panic!("expected syntax error, got {other:?}"),
        }
    }
}
