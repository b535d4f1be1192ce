//! Recursive-descent parser for the expression grammar
//!
//! ```text
//! expr   := ["-"] term (("+" | "-") term)*
//! term   := factor (("*" | "/") factor)*
//! factor := atom ("^" NAT)?
//! atom   := RATIONAL | LETTER | "(" expr ")" | "sqrt" "(" expr ")"
//! ```
//!
//! Whitespace is insignificant and multiplication is always explicit.

use std::fmt;

use thiserror::Error;

use super::poly::VarId;
use crate::numeric::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Num(Rational),
    Var(VarId),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Sqrt(Box<Expr>),
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(q) => write!(f, "{q}"),
            Expr::Var(v) => write!(f, "{v}"),
            Expr::Neg(x) => write!(f, "-({x})"),
            Expr::Add(l, r) => write!(f, "({l} + {r})"),
            Expr::Sub(l, r) => write!(f, "({l} - {r})"),
            Expr::Mul(l, r) => write!(f, "({l} * {r})"),
            Expr::Div(l, r) => write!(f, "({l} / {r})"),
            Expr::Pow(b, k) => write!(f, "({b})^{k}"),
            Expr::Sqrt(x) => write!(f, "sqrt({x})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at line {line}, column {column}: {message}")]
pub struct ParseError {
    pub message: String,
    pub line: usize,
    pub column: usize,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rational),
    Letter(char),
    Sqrt,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Num(q) => write!(f, "number `{q}`"),
            Tok::Letter(c) => write!(f, "`{c}`"),
            Tok::Sqrt => write!(f, "`sqrt`"),
            Tok::Plus => write!(f, "`+`"),
            Tok::Minus => write!(f, "`-`"),
            Tok::Star => write!(f, "`*`"),
            Tok::Slash => write!(f, "`/`"),
            Tok::Caret => write!(f, "`^`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

struct Lexed {
    tok: Tok,
    offset: usize,
}

fn position(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

fn error_at(text: &str, offset: usize, message: impl Into<String>) -> ParseError {
    let (line, column) = position(text, offset);
    ParseError {
        message: message.into(),
        line,
        column,
    }
}

fn lex(text: &str) -> Result<Vec<Lexed>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(offset, c)) = chars.peek() {
        let tok = match c {
            c if c.is_whitespace() => {
                chars.next();
                continue;
            }
            '+' => Tok::Plus,
            '-' | '\u{2212}' => Tok::Minus,
            '*' | '\u{00b7}' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            c if c.is_ascii_digit() || c == '.' => {
                let mut end = offset;
                while let Some(&(i, d)) = chars.peek() {
                    if d.is_ascii_digit() || d == '.' {
                        end = i + d.len_utf8();
                        chars.next();
                    } else {
                        break;
                    }
                }
                let lit = &text[offset..end];
                let q: Rational = lit
                    .parse()
                    .map_err(|_| error_at(text, offset, format!("malformed number `{lit}`")))?;
                out.push(Lexed {
                    tok: Tok::Num(q),
                    offset,
                });
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                let mut end = offset;
                while let Some(&(i, d)) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        end = i + d.len_utf8();
                        chars.next();
                    } else {
                        break;
                    }
                }
                let word = &text[offset..end];
                let tok = if word == "sqrt" {
                    Tok::Sqrt
                } else if word.len() == 1 {
                    Tok::Letter(c)
                } else {
                    return Err(error_at(
                        text,
                        offset,
                        format!("unknown token `{word}` (variables are single letters; write products with `*`)"),
                    ));
                };
                out.push(Lexed { tok, offset });
                continue;
            }
            other => {
                return Err(error_at(text, offset, format!("unknown token `{other}`")));
            }
        };
        chars.next();
        out.push(Lexed { tok, offset });
    }
    out.push(Lexed {
        tok: Tok::End,
        offset: text.len(),
    });
    Ok(out)
}

struct Parser<'a> {
    text: &'a str,
    toks: Vec<Lexed>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> Tok {
        let tok = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        tok
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        error_at(self.text, self.toks[self.pos].offset, message)
    }

    fn expect(&mut self, want: Tok) -> Result<(), ParseError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(self.error(format!("expected {want}, found {}", self.peek())))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let negate = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let mut lhs = self.term()?;
        if negate {
            lhs = Expr::Neg(Box::new(lhs));
        }
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                Tok::Slash => {
                    self.bump();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.factor()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        match self.peek().clone() {
            Tok::Num(q) if q.is_integer() && !q.is_negative() => {
                let k: u32 = q
                    .numer()
                    .try_into()
                    .map_err(|_| self.error("exponent too large"))?;
                self.bump();
                Ok(Expr::Pow(Box::new(base), k))
            }
            other => Err(self.error(format!("exponent must be a natural number, found {other}"))),
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek().clone() {
            Tok::Num(q) => {
                self.bump();
                Ok(Expr::Num(q))
            }
            Tok::Letter(c) => {
                self.bump();
                Ok(Expr::Var(VarId::new(c)))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            Tok::Sqrt => {
                self.bump();
                self.expect(Tok::LParen)?;
                let inner = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(Expr::Sqrt(Box::new(inner)))
            }
            other => Err(self.error(format!("unexpected {other}"))),
        }
    }
}

/// Parses `text`, reporting the line and column of the first syntax error.
pub fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { text, toks, pos: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.error(format!("unexpected {} after expression", p.peek())));
    }
    Ok(e)
}
