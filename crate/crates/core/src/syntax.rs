//! Shared tokenizer and operator-precedence parser for the term and circuit
//! languages. Atoms are delegated to a caller-supplied parser.
//!
//! Precedence: `&` binds tightest, then `;`, then `|`. All three operators
//! nest to the right.

use crate::error::ParseError;
use crate::rat::{self, Rat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Num(String),
    LParen,
    RParen,
    Semi,
    Amp,
    Bar,
    Comma,
    Slash,
    Minus,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Num(s) => format!("`{s}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Amp => "`&`".into(),
            Tok::Bar => "`|`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Minus => "`-`".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Expr<A> {
    Atom(A),
    Seq(Box<Expr<A>>, Box<Expr<A>>),
    Par(Box<Expr<A>>, Box<Expr<A>>),
    Union(Box<Expr<A>>, Box<Expr<A>>),
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let bytes = src.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c == '#' {
            // line comment
            while i < bytes.len() && bytes[i] != b'\n' {
                i += 1;
            }
            continue;
        }
        let start = i;
        let tok = match c {
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ';' => Tok::Semi,
            '&' => Tok::Amp,
            '|' => Tok::Bar,
            ',' => Tok::Comma,
            '/' => Tok::Slash,
            '-' => Tok::Minus,
            c if c.is_ascii_digit() => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Num(src[start..i].to_string())));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(src[start..i].to_string())));
                continue;
            }
            other => {
                return Err(ParseError {
                    pos: start,
                    expected: vec!["a term".into()],
                    found: format!("character `{other}`"),
                })
            }
        };
        out.push((start, tok));
        i += c.len_utf8();
    }
    Ok(out)
}

pub(crate) struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    pub(crate) fn new(src: &str) -> Result<Self, ParseError> {
        Ok(Parser {
            toks: tokenize(src)?,
            at: 0,
            end: src.len(),
        })
    }

    pub(crate) fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    pub(crate) fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    pub(crate) fn error(&self, expected: &[&str]) -> ParseError {
        ParseError {
            pos: self.pos(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self
                .peek()
                .map_or_else(|| "end of input".to_string(), Tok::describe),
        }
    }

    pub(crate) fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if self.eat(&tok) {
            Ok(())
        } else {
            Err(self.error(&[&tok.describe()]))
        }
    }

    pub(crate) fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.at += 1;
                Ok(s)
            }
            _ => Err(self.error(&["identifier"])),
        }
    }

    pub(crate) fn nat(&mut self) -> Result<usize, ParseError> {
        match self.peek() {
            Some(Tok::Num(s)) => {
                let n = s.parse().map_err(|_| self.error(&["natural number"]))?;
                self.at += 1;
                Ok(n)
            }
            _ => Err(self.error(&["natural number"])),
        }
    }

    /// `["-"] digits ["/" digits]`
    pub(crate) fn rat(&mut self) -> Result<Rat, ParseError> {
        let neg = self.eat(&Tok::Minus);
        let start = self.pos();
        let num = match self.peek() {
            Some(Tok::Num(s)) => s.clone(),
            _ => return Err(self.error(&["digits"])),
        };
        self.at += 1;
        let text = if self.eat(&Tok::Slash) {
            match self.peek() {
                Some(Tok::Num(d)) => {
                    let text = format!("{num}/{d}");
                    self.at += 1;
                    text
                }
                _ => return Err(self.error(&["denominator digits"])),
            }
        } else {
            num
        };
        let value = rat::parse(&text).ok_or(ParseError {
            pos: start,
            expected: vec!["nonzero denominator".into()],
            found: format!("`{text}`"),
        })?;
        Ok(if neg { -value } else { value })
    }

    pub(crate) fn at_end(&self) -> bool {
        self.at >= self.toks.len()
    }

    /// Parses a full expression, delegating atoms to `atom`. Parenthesised
    /// sub-expressions are handled here.
    pub(crate) fn expr<A>(
        &mut self,
        atom: &mut dyn FnMut(&mut Parser) -> Result<A, ParseError>,
    ) -> Result<Expr<A>, ParseError> {
        self.binary(0, atom)
    }

    fn binary<A>(
        &mut self,
        level: u8,
        atom: &mut dyn FnMut(&mut Parser) -> Result<A, ParseError>,
    ) -> Result<Expr<A>, ParseError> {
        if level == 3 {
            return self.primary(atom);
        }
        let op = match level {
            0 => Tok::Bar,
            1 => Tok::Semi,
            _ => Tok::Amp,
        };
        let mut items = vec![self.binary(level + 1, atom)?];
        while self.eat(&op) {
            items.push(self.binary(level + 1, atom)?);
        }
        let mut acc = items.pop().expect("at least one operand");
        while let Some(prev) = items.pop() {
            acc = match level {
                0 => Expr::Union(Box::new(prev), Box::new(acc)),
                1 => Expr::Seq(Box::new(prev), Box::new(acc)),
                _ => Expr::Par(Box::new(prev), Box::new(acc)),
            };
        }
        Ok(acc)
    }

    fn primary<A>(
        &mut self,
        atom: &mut dyn FnMut(&mut Parser) -> Result<A, ParseError>,
    ) -> Result<Expr<A>, ParseError> {
        if self.eat(&Tok::LParen) {
            let inner = self.binary(0, atom)?;
            self.expect(Tok::RParen)?;
            return Ok(inner);
        }
        match self.peek() {
            Some(Tok::Ident(_)) => atom(self).map(Expr::Atom),
            _ => Err(self.error(&["`(`", "generator or macro name"])),
        }
    }
}

/// Parses a whole source text as one expression.
pub(crate) fn parse_all<A>(
    src: &str,
    atom: &mut dyn FnMut(&mut Parser) -> Result<A, ParseError>,
) -> Result<Expr<A>, ParseError> {
    let mut p = Parser::new(src)?;
    let e = p.expr(atom)?;
    if !p.at_end() {
        return Err(p.error(&["`|`", "`;`", "`&`", "end of input"]));
    }
    Ok(e)
}

/// Byte offset of the first occurrence of `tok`, outside comments.
pub(crate) fn find_token(src: &str, tok: &Tok) -> Option<usize> {
    tokenize(src)
        .ok()?
        .into_iter()
        .find(|(_, t)| t == tok)
        .map(|(p, _)| p)
}
