//! Expression grammar shared by every subcommand: integer literals,
//! the identifiers X (series variable), x (modulus variable) and a
//! (extension generator), the operators + - * / ^ with standard
//! precedence, and parentheses. Exponents are signed integer literals
//! and ^ is right-associative.

use num_bigint::BigInt;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    /// `X`, the series / rational-function variable.
    SeriesX,
    /// `x`, the modulus variable of an extension.
    ModX,
    /// `a`, the extension generator.
    Gen,
}

impl Var {
    pub fn name(&self) -> &'static str {
        match self {
            Var::SeriesX => "X",
            Var::ModX => "x",
            Var::Gen => "a",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Int(BigInt),
    Var(Var),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub expected: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at offset {}: expected {}", self.offset, self.expected)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Var(Var),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn tokens(src: &'a str) -> Result<Vec<(Tok, usize)>, ParseError> {
        let mut lx = Lexer { src: src.as_bytes(), pos: 0 };
        let mut out = Vec::new();
        loop {
            while lx.pos < lx.src.len() && lx.src[lx.pos].is_ascii_whitespace() {
                lx.pos += 1;
            }
            if lx.pos >= lx.src.len() {
                return Ok(out);
            }
            let start = lx.pos;
            let c = lx.src[lx.pos];
            let tok = match c {
                b'+' => Tok::Plus,
                b'-' => Tok::Minus,
                b'*' => Tok::Star,
                b'/' => Tok::Slash,
                b'^' => Tok::Caret,
                b'(' => Tok::LParen,
                b')' => Tok::RParen,
                b'X' => Tok::Var(Var::SeriesX),
                b'x' => Tok::Var(Var::ModX),
                b'a' => Tok::Var(Var::Gen),
                b'0'..=b'9' => {
                    while lx.pos < lx.src.len() && lx.src[lx.pos].is_ascii_digit() {
                        lx.pos += 1;
                    }
                    let text = std::str::from_utf8(&lx.src[start..lx.pos]).unwrap();
                    out.push((Tok::Int(text.parse().unwrap()), start));
                    continue;
                }
                _ => {
                    return Err(ParseError {
                        offset: start,
                        expected: "a number, X, x, a, an operator or a parenthesis".into(),
                    })
                }
            };
            lx.pos += 1;
            out.push((tok, start));
        }
    }
}

pub struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

pub fn parse(src: &str) -> Result<Expr, ParseError> {
    let toks = Lexer::tokens(src)?;
    let mut p = Parser { toks, pos: 0, end: src.len() };
    let e = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(ParseError { offset: p.offset(), expected: "an operator or end of input".into() });
    }
    Ok(e)
}

impl Parser {
    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(_, o)| *o).unwrap_or(self.end)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.pos += 1;
            let e = self.exponent()?;
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    /// A signed integer literal; towers like 2^3^2 fold right to left.
    fn exponent(&mut self) -> Result<i64, ParseError> {
        let offset = self.offset();
        let neg = if matches!(self.peek(), Some(Tok::Minus)) {
            self.pos += 1;
            true
        } else {
            false
        };
        let n = match self.bump() {
            Some(Tok::Int(n)) => n,
            _ => {
                return Err(ParseError {
                    offset,
                    expected: "an integer exponent".into(),
                })
            }
        };
        let mut e = i64::try_from(&n).map_err(|_| ParseError {
            offset,
            expected: "an exponent that fits in 64 bits".into(),
        })?;
        if neg {
            e = -e;
        }
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.pos += 1;
            let upper = self.exponent()?;
            let exp = u32::try_from(upper).map_err(|_| ParseError {
                offset,
                expected: "a nonnegative tower exponent".into(),
            })?;
            e = e.checked_pow(exp).ok_or(ParseError {
                offset,
                expected: "an exponent tower that fits in 64 bits".into(),
            })?;
        }
        Ok(e)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let offset = self.offset();
        match self.bump() {
            Some(Tok::Int(n)) => Ok(Expr::Int(n)),
            Some(Tok::Var(v)) => Ok(Expr::Var(v)),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                let close_at = self.offset();
                match self.bump() {
                    Some(Tok::RParen) => Ok(e),
                    _ => Err(ParseError {
                        offset: close_at,
                        expected: "a closing parenthesis".into(),
                    }),
                }
            }
            _ => Err(ParseError {
                offset,
                expected: "a number, a variable or a parenthesized expression".into(),
            }),
        }
    }
}
