//! Recursive-descent parser for the polynomial text grammar.
//!
//! ```text
//! poly   := sign? term (sign term)*
//! term   := coeff ('*' mono)? | mono
//! coeff  := INT ('/' INT)?
//! mono   := factor ('*' factor)*
//! factor := VAR ('^' INT)?
//! germ   := poly | '(' poly ')' ('/' '(' poly ')')?
//! ```
//!
//! Whitespace is insignificant. A germ `(g) / (u)` denotes the series `g/u`
//! for a unit `u`; it generates the same ideal as `g`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::exponent::Exponent;
use super::germ::Germ;
use super::poly::{Poly, Q};
use super::ring::Ring;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    column: usize,
}

fn lex(text: &str, line: usize, col0: usize) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = col0 + i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '/' => Tok::Slash,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push(Token {
                    tok: Tok::Int(s.parse().expect("digits")),
                    column,
                });
                continue;
            }
            a if a.is_alphabetic() || a == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Token {
                    tok: Tok::Ident(chars[start..i].iter().collect()),
                    column,
                });
                continue;
            }
            other => {
                return Err(Error::parse(
                    line,
                    column,
                    format!("unexpected character `{other}`"),
                ))
            }
        };
        out.push(Token { tok, column });
        i += 1;
    }
    out.push(Token {
        tok: Tok::End,
        column: col0 + chars.len(),
    });
    Ok(out)
}

struct Parser<'a> {
    ring: &'a Ring,
    tokens: Vec<Token>,
    pos: usize,
    line: usize,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    fn column(&self) -> usize {
        self.tokens[self.pos].column
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, column: usize, message: impl Into<String>) -> Result<T> {
        Err(Error::parse(self.line, column, message))
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.error(self.column(), format!("expected {what}"))
        }
    }

    fn poly(&mut self) -> Result<Poly> {
        let mut terms = Vec::new();
        let mut sign = match self.peek() {
            Tok::Minus => {
                self.bump();
                -Q::one()
            }
            Tok::Plus => {
                self.bump();
                Q::one()
            }
            _ => Q::one(),
        };
        loop {
            let (e, c) = self.term()?;
            terms.push((e, c * &sign));
            sign = match self.peek() {
                Tok::Plus => Q::one(),
                Tok::Minus => -Q::one(),
                _ => break,
            };
            self.bump();
        }
        Poly::from_terms(self.ring, terms)
    }

    fn term(&mut self) -> Result<(Exponent, Q)> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                let coeff = if *self.peek() == Tok::Slash
                    && matches!(
                        self.tokens.get(self.pos + 1).map(|t| &t.tok),
                        Some(Tok::Int(_))
                    ) {
                    let slash = self.bump();
                    let Tok::Int(d) = self.bump().tok else {
                        unreachable!()
                    };
                    if d.is_zero() {
                        return self.error(slash.column, "zero denominator");
                    }
                    Q::new(n, d)
                } else {
                    Q::from_integer(n)
                };
                if *self.peek() == Tok::Star {
                    self.bump();
                    Ok((self.mono()?, coeff))
                } else {
                    Ok((Exponent::zero(self.ring.arity()), coeff))
                }
            }
            Tok::Ident(_) => Ok((self.mono()?, Q::one())),
            _ => self.error(self.column(), "expected a coefficient or variable"),
        }
    }

    fn mono(&mut self) -> Result<Exponent> {
        let mut e = Exponent::zero(self.ring.arity());
        loop {
            let column = self.column();
            let Tok::Ident(name) = self.peek().clone() else {
                return self.error(column, "expected a variable");
            };
            self.bump();
            let Some(idx) = self.ring.variable_index(&name) else {
                return self.error(column, format!("unknown variable `{name}`"));
            };
            let mut power = 1u32;
            if *self.peek() == Tok::Caret {
                let caret = self.bump();
                match self.peek().clone() {
                    Tok::Int(k) => {
                        self.bump();
                        power = match u32::try_from(k) {
                            Ok(p) => p,
                            Err(_) => return self.error(caret.column, "exponent too large"),
                        };
                    }
                    _ => return self.error(caret.column, "expected an integer exponent after `^`"),
                }
            }
            e.entries_mut()[idx] += power;
            if *self.peek() == Tok::Star {
                self.bump();
            } else {
                return Ok(e);
            }
        }
    }

    fn germ(&mut self) -> Result<Germ> {
        if *self.peek() != Tok::LParen {
            return Ok(Germ::from(self.poly()?));
        }
        self.bump();
        let numerator = self.poly()?;
        self.expect(Tok::RParen, "`)`")?;
        if *self.peek() != Tok::Slash {
            return Ok(Germ::from(numerator));
        }
        self.bump();
        let column = self.column();
        self.expect(Tok::LParen, "`(` opening the unit denominator")?;
        let unit = self.poly()?;
        self.expect(Tok::RParen, "`)`")?;
        Germ::new(numerator, unit).or_else(|_| self.error(column, "denominator is not a unit"))
    }

    fn finish(&self) -> Result<()> {
        match self.peek() {
            Tok::End => Ok(()),
            _ => self.error(self.column(), "unexpected trailing input"),
        }
    }
}

fn parser<'a>(ring: &'a Ring, text: &str, line: usize, column: usize) -> Result<Parser<'a>> {
    Ok(Parser {
        ring,
        tokens: lex(text, line, column)?,
        pos: 0,
        line,
    })
}

/// Parses a polynomial; errors report line 1 and 1-based columns.
pub fn parse_poly(ring: &Ring, text: &str) -> Result<Poly> {
    parse_poly_at(ring, text, 1, 1)
}

/// Parses a polynomial found at `line`, starting at 1-based `column`.
pub fn parse_poly_at(ring: &Ring, text: &str, line: usize, column: usize) -> Result<Poly> {
    let mut p = parser(ring, text, line, column)?;
    let f = p.poly()?;
    p.finish()?;
    Ok(f)
}

pub fn parse_germ(ring: &Ring, text: &str) -> Result<Germ> {
    parse_germ_at(ring, text, 1, 1)
}

pub fn parse_germ_at(ring: &Ring, text: &str, line: usize, column: usize) -> Result<Germ> {
    let mut p = parser(ring, text, line, column)?;
    let g = p.germ()?;
    p.finish()?;
    Ok(g)
}
