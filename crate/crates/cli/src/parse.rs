//! Expression grammar:
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := ('-' | '+') unary | power
//! power := atom ('^' integer)?
//! atom  := integer | 'x'<index> | '[' bracket ']' | '{' expr ',' expr '}' | '(' expr ')'
//! ```
//!
//! `[..]` is a Lie bracket of generators (any bracketing is accepted and
//! expanded in the basis); `{f, g}` is the Poisson bracket. Both need a
//! Poisson context. Division is only by nonzero constants.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use veronese_core::lie::BracketTree;
use veronese_core::poly::{Monomial, Polynomial, Scalar};
use veronese_core::veronese::Context;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Var(usize),
    Lie(String),
    Op(char),
    End,
}

struct Lexer {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col_offset: usize,
}

impl Lexer {
    fn error(&self, column: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            column: column + self.col_offset,
            message: message.into(),
        }
    }

    /// All tokens with their 1-based columns.
    fn tokens(mut self) -> Result<Vec<(Tok, usize)>, ParseError> {
        let mut out = Vec::new();
        loop {
            while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
                self.pos += 1;
            }
            let col = self.pos + 1;
            let Some(&c) = self.chars.get(self.pos) else {
                out.push((Tok::End, col));
                return Ok(out);
            };
            if c.is_ascii_digit() {
                let start = self.pos;
                while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits: String = self.chars[start..self.pos].iter().collect();
                out.push((Tok::Num(digits.parse().expect("digits")), col));
            } else if c == 'x' {
                self.pos += 1;
                let start = self.pos;
                while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                if start == self.pos {
                    return Err(self.error(col, "expected a variable index after 'x'"));
                }
                let digits: String = self.chars[start..self.pos].iter().collect();
                let index: usize = digits
                    .parse()
                    .map_err(|_| self.error(col, "variable index too large"))?;
                if index == 0 {
                    return Err(self.error(col, "variables are numbered from x1"));
                }
                out.push((Tok::Var(index), col));
            } else if c == '[' {
                let start = self.pos;
                let mut depth = 0usize;
                loop {
                    match self.chars.get(self.pos) {
                        None => return Err(self.error(col, "unclosed '['")),
                        Some('[') => depth += 1,
                        Some(']') => {
                            depth -= 1;
                            if depth == 0 {
                                self.pos += 1;
                                break;
                            }
                        }
                        _ => {}
                    }
                    self.pos += 1;
                }
                out.push((Tok::Lie(self.chars[start..self.pos].iter().collect()), col));
            } else if "+-*/^(){},".contains(c) {
                self.pos += 1;
                out.push((Tok::Op(c), col));
            } else {
                return Err(self.error(col, format!("unexpected character '{c}'")));
            }
        }
    }
}

struct Parser<'c> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    ctx: &'c Context,
    line: usize,
    col_offset: usize,
}

impl<'c> Parser<'c> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn col(&self) -> usize {
        self.toks[self.pos].1
    }

    fn error_at(&self, column: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            column: column + self.col_offset,
            message: message.into(),
        }
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        let message = message.into();
        let found = match self.peek() {
            Tok::End => "end of input".to_string(),
            Tok::Num(n) => format!("'{n}'"),
            Tok::Var(i) => format!("'x{i}'"),
            Tok::Lie(s) => format!("'{s}'"),
            Tok::Op(c) => format!("'{c}'"),
        };
        self.error_at(self.col(), format!("{message}, found {found}"))
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == &Tok::Op(op) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, op: char) -> Result<(), ParseError> {
        if self.eat(op) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{op}'")))
        }
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.peek() == &Tok::Op('/') {
                let col = self.col();
                self.pos += 1;
                let divisor = self.unary()?;
                match divisor.constant_value() {
                    Some(c) if !c.is_zero() => acc = acc.scale(&num_traits::Inv::inv(c)),
                    Some(_) => return Err(self.error_at(col, "division by zero")),
                    None => return Err(self.error_at(col, "only division by a constant is supported")),
                }
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial, ParseError> {
        if self.eat('-') {
            Ok(-&self.unary()?)
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().clone() {
                Tok::Num(n) => {
                    let col = self.col();
                    self.pos += 1;
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| self.error_at(col, "exponent too large"))?;
                    Ok(base.pow(e))
                }
                _ => Err(self.error("expected a nonnegative integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        let arity = self.ctx.arity();
        let col = self.col();
        match self.peek().clone() {
            Tok::Num(n) => {
                self.pos += 1;
                Ok(Polynomial::constant(arity, Scalar::from_integer(n)))
            }
            Tok::Var(i) => {
                self.pos += 1;
                if i > self.ctx.n() {
                    return Err(self.error_at(col, format!("x{i} is out of range: there are {} variables", self.ctx.n())));
                }
                Ok(self.ctx.var(i - 1))
            }
            Tok::Lie(text) => {
                self.pos += 1;
                let basis = self
                    .ctx
                    .basis()
                    .ok_or_else(|| self.error_at(col, "Lie brackets need the Poisson context"))?;
                let tree = BracketTree::parse(&text, basis.n()).map_err(|e| self.error_at(col, e.to_string()))?;
                let indexed = basis
                    .to_indexed(&tree.evaluate())
                    .map_err(|e| self.error_at(col, e.to_string()))?;
                Ok(Polynomial::from_terms(
                    arity,
                    indexed.into_iter().map(|(k, c)| (Monomial::var(k as u32), c)),
                ))
            }
            Tok::Op('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(')')?;
                Ok(inner)
            }
            Tok::Op('{') => {
                self.pos += 1;
                let basis = self
                    .ctx
                    .basis()
                    .cloned()
                    .ok_or_else(|| self.error_at(col, "Poisson brackets need the Poisson context"))?;
                let f = self.expr()?;
                self.expect(',')?;
                let g = self.expr()?;
                self.expect('}')?;
                veronese_core::poisson::bracket(&basis, &f, &g).map_err(|e| self.error_at(col, e.to_string()))
            }
            _ => Err(self.error("expected a number, variable or bracket")),
        }
    }
}

/// Parses `text` as an element of the context's ambient algebra.
pub fn parse_expression(text: &str, ctx: &Context) -> Result<Polynomial, ParseError> {
    parse_expression_at(text, ctx, 1, 0)
}

/// As [`parse_expression`], reporting positions on `line` with columns
/// shifted by `col_offset`.
pub fn parse_expression_at(text: &str, ctx: &Context, line: usize, col_offset: usize) -> Result<Polynomial, ParseError> {
    let toks = Lexer {
        chars: text.chars().collect(),
        pos: 0,
        line,
        col_offset,
    }
    .tokens()?;
    let mut p = Parser {
        toks,
        pos: 0,
        ctx,
        line,
        col_offset,
    };
    let value = p.expr()?;
    if p.peek() != &Tok::End {
        return Err(p.error("expected an operator or end of input"));
    }
    Ok(value)
}

/// Canonical text form; [`parse_expression`] reads it back exactly.
pub fn print_expression(p: &Polynomial, ctx: &Context) -> String {
    ctx.format(p)
}

/// Largest `k` such that `xk` occurs in `text` (at least 1).
pub fn infer_variable_count(text: &str) -> usize {
    let chars: Vec<char> = text.chars().collect();
    let mut best = 1;
    let mut i = 0;
    while i < chars.len() {
        if chars[i] == 'x' {
            let start = i + 1;
            let mut j = start;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            if j > start {
                let k: usize = chars[start..j].iter().collect::<String>().parse().unwrap_or(0);
                best = best.max(k);
            }
            i = j;
        } else {
            i += 1;
        }
    }
    best
}
