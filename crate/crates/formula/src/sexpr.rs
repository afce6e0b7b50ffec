//! A small s-expression reader for the input file formats.
//!
//! One twist: relational forms like `(>= 4 - (x+50)^2 0)` embed infix
//! polynomial text whose parentheses are not list structure. The reader
//! treats any list headed by a relational operator as a raw capture: it
//! balances parentheses to the end of the form, splits off the trailing
//! right-hand-side token, and keeps the middle as verbatim polynomial text
//! for the infix parser.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{msg} at line {line}, column {col}")]
pub struct SexprError {
    pub msg: String,
    pub line: usize,
    pub col: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sexpr {
    /// A bare word or number.
    Atom { text: String, pos: Pos },
    /// An ordinary nested list.
    List { items: Vec<Sexpr>, pos: Pos },
    /// `(op <raw polynomial text> <rhs>)` for op in `>= > <= < =`.
    Relation {
        op: String,
        raw: String,
        raw_pos: Pos,
        rhs: String,
        pos: Pos,
    },
}

impl Sexpr {
    pub fn pos(&self) -> Pos {
        match self {
            Sexpr::Atom { pos, .. } | Sexpr::List { pos, .. } | Sexpr::Relation { pos, .. } => *pos,
        }
    }

    pub fn as_atom(&self) -> Option<&str> {
        match self {
            Sexpr::Atom { text, .. } => Some(text),
            _ => None,
        }
    }

    /// Head word of a list, if any.
    pub fn head(&self) -> Option<&str> {
        match self {
            Sexpr::List { items, .. } => items.first().and_then(|i| i.as_atom()),
            Sexpr::Relation { op, .. } => Some(op),
            _ => None,
        }
    }
}

const RELATIONAL_OPS: &[&str] = &[">=", "<=", "=", ">", "<"];

struct Reader<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
}

impl<'a> Reader<'a> {
    fn err(&self, msg: impl Into<String>) -> SexprError {
        SexprError {
            msg: msg.into(),
            line: self.line,
            col: self.col,
        }
    }

    fn here(&self) -> Pos {
        Pos {
            line: self.line,
            col: self.col,
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        if c == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_trivia(&mut self) {
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_whitespace() => {
                    self.bump();
                }
                Some(b';') => {
                    while let Some(c) = self.peek() {
                        if c == b'\n' {
                            break;
                        }
                        self.bump();
                    }
                }
                _ => return,
            }
        }
    }

    fn read_word(&mut self) -> String {
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_ascii_whitespace() || c == b'(' || c == b')' || c == b';' {
                break;
            }
            self.bump();
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn read_expr(&mut self) -> Result<Sexpr, SexprError> {
        self.skip_trivia();
        let pos = self.here();
        match self.peek() {
            None => Err(self.err("unexpected end of input")),
            Some(b')') => Err(self.err("unexpected `)`")),
            Some(b'(') => {
                self.bump();
                self.skip_trivia();
                // Peek the head word to decide list vs relational raw capture.
                let save = (self.pos, self.line, self.col);
                let head = if matches!(self.peek(), Some(c) if c != b'(' && c != b')') {
                    self.read_word()
                } else {
                    String::new()
                };
                if RELATIONAL_OPS.contains(&head.as_str()) {
                    return self.read_relation(head, pos);
                }
                (self.pos, self.line, self.col) = save;
                let mut items = Vec::new();
                loop {
                    self.skip_trivia();
                    match self.peek() {
                        Some(b')') => {
                            self.bump();
                            return Ok(Sexpr::List { items, pos });
                        }
                        None => return Err(self.err("unclosed `(`")),
                        _ => items.push(self.read_expr()?),
                    }
                }
            }
            Some(_) => {
                let text = self.read_word();
                Ok(Sexpr::Atom { text, pos })
            }
        }
    }

    /// Called just after the operator word of `(op ... rhs)`. Scans to the
    /// balancing close paren, then splits the trailing token off as rhs.
    fn read_relation(&mut self, op: String, pos: Pos) -> Result<Sexpr, SexprError> {
        self.skip_trivia();
        let raw_pos = self.here();
        let body_start = self.pos;
        let mut depth = 0usize;
        let body_end;
        loop {
            match self.peek() {
                None => return Err(self.err("unclosed relational form")),
                Some(b'(') => {
                    depth += 1;
                    self.bump();
                }
                Some(b')') => {
                    if depth == 0 {
                        body_end = self.pos;
                        self.bump();
                        break;
                    }
                    depth -= 1;
                    self.bump();
                }
                Some(b';') => return Err(self.err("comment inside relational form")),
                Some(_) => {
                    self.bump();
                }
            }
        }
        let body = String::from_utf8_lossy(&self.src[body_start..body_end]).into_owned();
        // rhs = last whitespace-separated token of the body
        let trimmed = body.trim_end();
        let split = trimmed
            .rfind(|c: char| c.is_ascii_whitespace())
            .ok_or_else(|| SexprError {
                msg: format!("`({op} ...)` needs polynomial text and a right-hand side"),
                line: raw_pos.line,
                col: raw_pos.col,
            })?;
        let (raw, rhs) = trimmed.split_at(split);
        Ok(Sexpr::Relation {
            op,
            raw: raw.to_string(),
            raw_pos,
            rhs: rhs.trim().to_string(),
            pos,
        })
    }
}

/// Reads a single top-level s-expression (trailing trivia allowed).
pub fn read_one(src: &str) -> Result<Sexpr, SexprError> {
    let mut r = Reader {
        src: src.as_bytes(),
        pos: 0,
        line: 1,
        col: 1,
    };
    let e = r.read_expr()?;
    r.skip_trivia();
    if r.peek().is_some() {
        return Err(r.err("trailing input after top-level form"));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nested_lists() {
        let e = read_one("(a (b c) d) ; tail comment").unwrap();
        let Sexpr::List { items, .. } = &e else {
            panic!()
        };
        assert_eq!(items.len(), 3);
        assert_eq!(items[0].as_atom(), Some("a"));
        assert_eq!(items[1].head(), Some("b"));
    }

    #[test]
    fn relational_raw_capture_with_parens() {
        let e = read_one("(and (>= 100 - (x+50)^2 0) (< x 0))").unwrap();
        let Sexpr::List { items, .. } = &e else {
            panic!()
        };
        let Sexpr::Relation { op, raw, rhs, .. } = &items[1] else {
            panic!("expected relation, got {:?}", items[1])
        };
        assert_eq!(op, ">=");
        assert_eq!(raw.trim(), "100 - (x+50)^2");
        assert_eq!(rhs, "0");
        let Sexpr::Relation { op, raw, rhs, .. } = &items[2] else {
            panic!()
        };
        assert_eq!(op, "<");
        assert_eq!(raw.trim(), "x");
        assert_eq!(rhs, "0");
    }

    #[test]
    fn relation_with_nonzero_rhs() {
        let e = read_one("(> (x-5)^2 + (y+3)^4 100)").unwrap();
        let Sexpr::Relation { raw, rhs, .. } = &e else {
            panic!()
        };
        assert_eq!(raw.trim(), "(x-5)^2 + (y+3)^4");
        assert_eq!(rhs, "100");
    }

    #[test]
    fn error_positions_reported() {
        let err = read_one("(a (b)").unwrap_err();
        assert!(err.msg.contains("unclosed"));
        let err = read_one("(a))").unwrap_err();
        assert!(err.msg.contains("trailing"));
    }
}
