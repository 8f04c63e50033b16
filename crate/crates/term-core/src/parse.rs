//! Parser and printer for the textual term syntax.
//!
//! ```text
//! term := lam | app
//! lam  := "\" var+ "." term
//! app  := atom+                       (left-associative)
//! atom := var | "(" term ")" | atom "[" var ":=" term "]"
//! var  := [a-zA-Z][a-zA-Z0-9_']*
//! ```

use std::fmt;

use thiserror::Error;

use crate::term::{Name, Term};

/// A syntax error with the byte offset where it was detected and the tokens
/// that would have been accepted there.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("syntax error at byte {offset}: expected {}, found {found}", .expected.join(" or "))]
pub struct ParseError {
    pub offset: usize,
    pub expected: Vec<String>,
    pub found: String,
}

/// Deepest nesting the parsers accept, counted in syntax-tree levels.
/// Deeper inputs are rejected rather than risking stack exhaustion in the
/// recursive functions that later walk the tree.
pub const MAX_NESTING: usize = 1000;

/// Shared lexer for the term and command grammars.
pub struct Lexer<'a> {
    src: &'a str,
    pos: usize,
    depth: usize,
}

impl<'a> Lexer<'a> {
    pub fn new(src: &'a str) -> Self {
        Lexer { src, pos: 0, depth: 0 }
    }

    /// Enters one level of recursive descent; fails beyond [`MAX_NESTING`].
    pub fn enter(&mut self) -> Result<(), ParseError> {
        self.depth += 1;
        self.check_nesting(self.depth)
    }

    pub fn leave(&mut self) {
        self.depth -= 1;
    }

    /// Fails when `depth` exceeds [`MAX_NESTING`].
    pub fn check_nesting(&mut self, depth: usize) -> Result<(), ParseError> {
        if depth > MAX_NESTING {
            return Err(ParseError {
                offset: self.offset(),
                expected: vec![format!("at most {MAX_NESTING} levels of nesting")],
                found: "deeper nesting".to_string(),
            });
        }
        Ok(())
    }

    pub fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    /// Current offset after skipping whitespace.
    pub fn offset(&mut self) -> usize {
        self.skip_ws();
        self.pos
    }

    pub fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.src.len()
    }

    /// Consumes `tok` if the remaining input starts with it.
    pub fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    pub fn peek_str(&mut self, tok: &str) -> bool {
        self.skip_ws();
        self.src[self.pos..].starts_with(tok)
    }

    pub fn peek_ident_start(&mut self) -> bool {
        self.skip_ws();
        self.src[self.pos..].starts_with(|c: char| c.is_ascii_alphabetic())
    }

    /// Reads an identifier if one starts here.
    pub fn ident(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let mut chars = rest.char_indices();
        match chars.next() {
            Some((_, c)) if c.is_ascii_alphabetic() => {}
            _ => return None,
        }
        let end = chars
            .find(|(_, c)| !(c.is_ascii_alphanumeric() || *c == '_' || *c == '\''))
            .map(|(i, _)| i)
            .unwrap_or(rest.len());
        self.pos += end;
        Some(&rest[..end])
    }

    pub fn error(&mut self, expected: &[&str]) -> ParseError {
        self.skip_ws();
        let found = match self.src[self.pos..].chars().next() {
            None => "end of input".to_string(),
            Some(c) => format!("'{c}'"),
        };
        ParseError { offset: self.pos, expected: expected.iter().map(|s| s.to_string()).collect(), found }
    }

    pub fn expect(&mut self, tok: &str) -> Result<(), ParseError> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.error(&[&format!("'{tok}'")]))
        }
    }

    pub fn expect_ident(&mut self) -> Result<&'a str, ParseError> {
        self.ident().ok_or_else(|| self.error(&["identifier"]))
    }
}

/// Parses a term. Application is left-associative, an abstraction body extends
/// as far right as possible, and explicit substitutions attach to atoms.
pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    let mut lx = Lexer::new(text);
    let (t, _) = term(&mut lx)?;
    if !lx.at_end() {
        return Err(lx.error(&["end of input", "atom", "'['"]));
    }
    Ok(t)
}

/// Parses a term and returns it with its height, counting a variable as 1.
fn term(lx: &mut Lexer) -> Result<(Term, usize), ParseError> {
    lx.enter()?;
    let result = if lx.eat("\\") {
        let mut binders = vec![lx.expect_ident()?];
        while let Some(x) = lx.ident() {
            binders.push(x);
        }
        if !lx.eat(".") {
            return Err(lx.error(&["identifier", "'.'"]));
        }
        let (mut body, h) = term(lx)?;
        let h = h + binders.len();
        lx.check_nesting(h)?;
        for x in binders.into_iter().rev() {
            body = Term::abs(x, body);
        }
        (body, h)
    } else {
        let (mut acc, mut h) = atom(lx)?;
        while lx.peek_ident_start() || lx.peek_str("(") {
            let (a, ha) = atom(lx)?;
            acc = Term::app(acc, a);
            h = h.max(ha) + 1;
            lx.check_nesting(h)?;
        }
        (acc, h)
    };
    lx.leave();
    Ok(result)
}

fn atom(lx: &mut Lexer) -> Result<(Term, usize), ParseError> {
    let (mut t, mut h) = if let Some(x) = lx.ident() {
        (Term::var(x), 1)
    } else if lx.eat("(") {
        let t = term(lx)?;
        lx.expect(")")?;
        t
    } else {
        return Err(lx.error(&["identifier", "'('", "'\\'"]));
    };
    while lx.eat("[") {
        let x = lx.expect_ident()?;
        lx.expect(":=")?;
        let (d, hd) = term(lx)?;
        lx.expect("]")?;
        t = Term::Es(Box::new(t), Name::from(x), Box::new(d));
        h = h.max(hd) + 1;
        lx.check_nesting(h)?;
    }
    Ok((t, h))
}

/// Prints a term in the concrete syntax accepted by [`parse_term`].
/// Binder names are printed as they are, without canonicalisation.
pub fn print_term(t: &Term) -> String {
    let mut s = String::new();
    let _ = write_term(&mut s, t);
    s
}

fn write_term(w: &mut impl fmt::Write, t: &Term) -> fmt::Result {
    match t {
        Term::Abs(..) => {
            w.write_char('\\')?;
            let mut cur = t;
            let mut first = true;
            while let Term::Abs(x, b) = cur {
                if !first {
                    w.write_char(' ')?;
                }
                w.write_str(x)?;
                first = false;
                cur = b;
            }
            w.write_char('.')?;
            write_term(w, cur)
        }
        Term::App(f, a) => {
            write_fun(w, f)?;
            w.write_char(' ')?;
            write_atom(w, a)
        }
        _ => write_atom(w, t),
    }
}

fn write_fun(w: &mut impl fmt::Write, t: &Term) -> fmt::Result {
    match t {
        Term::App(f, a) => {
            write_fun(w, f)?;
            w.write_char(' ')?;
            write_atom(w, a)
        }
        _ => write_atom(w, t),
    }
}

fn write_atom(w: &mut impl fmt::Write, t: &Term) -> fmt::Result {
    match t {
        Term::Var(x) => w.write_str(x),
        Term::Es(b, x, d) => {
            write_atom(w, b)?;
            write!(w, "[{x}:=")?;
            write_term(w, d)?;
            w.write_char(']')
        }
        _ => {
            w.write_char('(')?;
            write_term(w, t)?;
            w.write_char(')')
        }
    }
}
