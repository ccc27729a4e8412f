//! Recursive-descent parser for operator expressions.
//!
//! ```text
//! expr   := term { ("+" | "-") term } ;
//! term   := factor { "*" factor } ;
//! factor := atom [ "^" uint ] ;
//! atom   := "a" | "ad" | "N" | uint | "m" | "r" | "(" expr ")" ;
//! ```
//!
//! `N` desugars to `ad*a`; `m` and `r` are replaced by their bound values.
//! The Unicode minus sign is accepted alongside `-`.

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use super::NormalForm;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OpExpr {
    Annihilator,
    Creator,
    Int(BigInt),
    Add(Box<OpExpr>, Box<OpExpr>),
    Sub(Box<OpExpr>, Box<OpExpr>),
    /// Non-commutative product, left factor first.
    Mul(Box<OpExpr>, Box<OpExpr>),
    Pow(Box<OpExpr>, u32),
}

impl OpExpr {
    pub fn number() -> OpExpr {
        OpExpr::Mul(Box::new(OpExpr::Creator), Box::new(OpExpr::Annihilator))
    }

    /// Normal-orders the expression.
    pub fn normal_form(&self) -> NormalForm {
        match self {
            OpExpr::Annihilator => NormalForm::annihilator(),
            OpExpr::Creator => NormalForm::creator(),
            OpExpr::Int(c) => NormalForm::from(c.clone()),
            OpExpr::Add(l, r) => l.normal_form() + r.normal_form(),
            OpExpr::Sub(l, r) => l.normal_form() - r.normal_form(),
            OpExpr::Mul(l, r) => l.normal_form() * r.normal_form(),
            OpExpr::Pow(b, e) => b.normal_form().pow(*e),
        }
    }
}

impl fmt::Display for OpExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OpExpr::Annihilator => f.write_str("a"),
            OpExpr::Creator => f.write_str("ad"),
            OpExpr::Int(c) => write!(f, "{c}"),
            OpExpr::Add(l, r) => write!(f, "({l} + {r})"),
            OpExpr::Sub(l, r) => write!(f, "({l} - {r})"),
            OpExpr::Mul(l, r) => write!(f, "({l} * {r})"),
            OpExpr::Pow(b, e) => write!(f, "{b}^{e}"),
        }
    }
}

/// Values substituted for the symbols `m` and `r`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Bindings {
    pub m: Option<u64>,
    pub r: Option<u64>,
}

impl Bindings {
    pub fn new(m: u64, r: u64) -> Self {
        Bindings {
            m: Some(m),
            r: Some(r),
        }
    }
}

/// Character offset (0-based) plus what went wrong there.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("at position {pos}: {kind}")]
pub struct ParseError {
    pub pos: usize,
    pub kind: ParseErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character {0:?}")]
    UnexpectedChar(char),
    #[error("unknown symbol {0:?}")]
    UnknownSymbol(String),
    #[error("symbol {0:?} is not bound")]
    Unbound(char),
    #[error("expected {expected}, found {found}")]
    Expected {
        expected: &'static str,
        found: String,
    },
    #[error("exponent {0} is too large")]
    ExponentTooLarge(BigInt),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Uint(BigInt),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "{s:?}"),
            Tok::Uint(n) => write!(f, "{n}"),
            Tok::Plus => f.write_str("'+'"),
            Tok::Minus => f.write_str("'-'"),
            Tok::Star => f.write_str("'*'"),
            Tok::Caret => f.write_str("'^'"),
            Tok::LParen => f.write_str("'('"),
            Tok::RParen => f.write_str("')'"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '+' => Tok::Plus,
            '-' | '\u{2212}' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            c if c.is_ascii_digit() => {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                toks.push((start, Tok::Uint(digits.parse().expect("ascii digits"))));
                continue;
            }
            c if c.is_alphabetic() || c == '_' => {
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                toks.push((start, Tok::Ident(chars[start..i].iter().collect())));
                continue;
            }
            other => {
                return Err(ParseError {
                    pos: start,
                    kind: ParseErrorKind::UnexpectedChar(other),
                })
            }
        };
        toks.push((start, tok));
        i += 1;
    }
    toks.push((chars.len(), Tok::End));
    Ok(toks)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    bindings: &'a Bindings,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expected(&self, expected: &'static str) -> ParseError {
        ParseError {
            pos: self.pos(),
            kind: ParseErrorKind::Expected {
                expected,
                found: self.peek().to_string(),
            },
        }
    }

    fn expr(&mut self) -> Result<OpExpr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = OpExpr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = OpExpr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<OpExpr, ParseError> {
        let mut lhs = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            lhs = OpExpr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<OpExpr, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let pos = self.pos();
        match self.bump() {
            Tok::Uint(n) => {
                let e = u32::try_from(&n).map_err(|_| ParseError {
                    pos,
                    kind: ParseErrorKind::ExponentTooLarge(n.clone()),
                })?;
                Ok(OpExpr::Pow(Box::new(base), e))
            }
            _ => {
                self.at -= 1;
                Err(self.expected("nonnegative integer exponent"))
            }
        }
    }

    fn atom(&mut self) -> Result<OpExpr, ParseError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Uint(n) => {
                self.bump();
                Ok(OpExpr::Int(n))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.expected("')'"));
                }
                self.bump();
                Ok(inner)
            }
            Tok::Ident(name) => {
                self.bump();
                let bound = |v: Option<u64>, sym: char| {
                    v.map(|v| OpExpr::Int(BigInt::from(v))).ok_or(ParseError {
                        pos,
                        kind: ParseErrorKind::Unbound(sym),
                    })
                };
                match name.as_str() {
                    "a" => Ok(OpExpr::Annihilator),
                    "ad" => Ok(OpExpr::Creator),
                    "N" => Ok(OpExpr::number()),
                    "m" => bound(self.bindings.m, 'm'),
                    "r" => bound(self.bindings.r, 'r'),
                    _ => Err(ParseError {
                        pos,
                        kind: ParseErrorKind::UnknownSymbol(name),
                    }),
                }
            }
            _ => Err(self.expected("operand")),
        }
    }
}

/// Parses `text`, substituting `m` and `r` from `bindings`.
pub fn parse_op_expr(text: &str, bindings: &Bindings) -> Result<OpExpr, ParseError> {
    let mut p = Parser {
        toks: tokenize(text)?,
        at: 0,
        bindings,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.expected("operator or end of input"));
    }
    Ok(e)
}
