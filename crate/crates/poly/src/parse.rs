//! Infix polynomial text: `+ - * ^`, integer/decimal coefficients,
//! identifiers for variables, parentheses. `^` takes a non-negative integer
//! exponent. Whitespace is insignificant.

use crate::poly::Polynomial;
use crate::ratio::{parse_decimal, Rat};
use crate::space::VarSpace;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{msg} at line {line}, column {col}")]
pub struct ParseError {
    pub msg: String,
    pub line: usize,
    pub col: usize,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rat),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
    base_line: usize,
    base_col: usize,
}

impl<'a> Lexer<'a> {
    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError {
            msg: msg.into(),
            line: self.line,
            col: self.col,
        }
    }

    fn bump(&mut self) -> u8 {
        let c = self.src[self.pos];
        self.pos += 1;
        if c == b'\n' {
            self.line += 1;
            self.col = self.base_col_for_line();
        } else {
            self.col += 1;
        }
        c
    }

    fn base_col_for_line(&self) -> usize {
        if self.line == self.base_line {
            self.base_col
        } else {
            1
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn tokens(mut self) -> Result<Vec<(Tok, usize, usize)>, ParseError> {
        let mut out = Vec::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_whitespace() {
                self.bump();
                continue;
            }
            let (line, col) = (self.line, self.col);
            let tok = match c {
                b'+' => {
                    self.bump();
                    Tok::Plus
                }
                b'-' => {
                    self.bump();
                    Tok::Minus
                }
                b'*' => {
                    self.bump();
                    Tok::Star
                }
                b'^' => {
                    self.bump();
                    Tok::Caret
                }
                b'(' => {
                    self.bump();
                    Tok::LParen
                }
                b')' => {
                    self.bump();
                    Tok::RParen
                }
                b'0'..=b'9' | b'.' => {
                    let start = self.pos;
                    while matches!(self.peek(), Some(b'0'..=b'9') | Some(b'.')) {
                        self.bump();
                    }
                    let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                    let val = parse_decimal(text)
                        .ok_or_else(|| self.err(format!("bad numeric literal `{text}`")))?;
                    Tok::Num(val)
                }
                c if c.is_ascii_alphabetic() || c == b'_' => {
                    let start = self.pos;
                    while matches!(self.peek(), Some(b) if b.is_ascii_alphanumeric() || b == b'_' || b == b'\'')
                    {
                        self.bump();
                    }
                    Tok::Ident(std::str::from_utf8(&self.src[start..self.pos]).unwrap().to_string())
                }
                other => {
                    return Err(self.err(format!("unexpected character `{}`", other as char)));
                }
            };
            out.push((tok, line, col));
        }
        Ok(out)
    }
}

struct Parser<'a> {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
    space: &'a Arc<VarSpace>,
    end: (usize, usize),
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _, _)| t)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .map(|&(_, l, c)| (l, c))
            .unwrap_or(self.end)
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        let (line, col) = self.here();
        ParseError {
            msg: msg.into(),
            line,
            col,
        }
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    // expr := term (('+'|'-') term)*
    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    // term := unary ('*' unary)*
    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.unary()?;
        while matches!(self.peek(), Some(Tok::Star)) {
            self.bump();
            acc = acc.mul(&self.unary()?);
        }
        Ok(acc)
    }

    // unary := ('-'|'+')* power
    fn unary(&mut self) -> Result<Polynomial, ParseError> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                Ok(self.unary()?.neg())
            }
            Some(Tok::Plus) => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    // power := atom ('^' nat)?
    fn power(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.bump();
            let e = match self.bump() {
                Some(Tok::Num(n)) if n.is_integer() && !n.numer().sign().eq(&num_bigint::Sign::Minus) => {
                    use num_traits::ToPrimitive;
                    n.to_integer().to_u32().ok_or_else(|| self.err("exponent too large"))?
                }
                _ => return Err(self.err("`^` requires a non-negative integer exponent")),
            };
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        match self.bump() {
            Some(Tok::Num(n)) => Ok(Polynomial::constant(self.space.clone(), n)),
            Some(Tok::Ident(name)) => match self.space.lookup(&name) {
                Some(v) => Ok(Polynomial::var(self.space.clone(), v)),
                None => {
                    self.pos -= 1;
                    Err(self.err(format!("unknown variable `{name}`")))
                }
            },
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(self.err("expected `)`")),
                }
            }
            Some(t) => Err(ParseError {
                msg: format!("unexpected token {t:?}"),
                line: self.toks[self.pos - 1].1,
                col: self.toks[self.pos - 1].2,
            }),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Parses polynomial text over the given variable space.
pub fn parse_polynomial(text: &str, space: &Arc<VarSpace>) -> Result<Polynomial, ParseError> {
    parse_polynomial_at(text, space, 1, 1)
}

/// As [`parse_polynomial`], reporting positions relative to a containing file
/// (the s-expression readers pass the snippet's start position).
pub fn parse_polynomial_at(
    text: &str,
    space: &Arc<VarSpace>,
    line: usize,
    col: usize,
) -> Result<Polynomial, ParseError> {
    let lexer = Lexer {
        src: text.as_bytes(),
        pos: 0,
        line,
        col,
        base_line: line,
        base_col: col,
    };
    let toks = lexer.tokens()?;
    let end = toks
        .last()
        .map(|&(_, l, c)| (l, c + 1))
        .unwrap_or((line, col));
    let mut p = Parser {
        toks,
        pos: 0,
        space,
        end,
    };
    let poly = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input after polynomial"));
    }
    Ok(poly)
}
