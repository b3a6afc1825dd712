//! Recursive-descent parser for polynomial expressions.
//!
//! Grammar (whitespace insensitive):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' exponent)?
//! atom   := rational | variable | '(' expr ')'
//! ```
//!
//! `^` binds tightest, so `-p0^2` is `-(p0^2)`. Rational literals are
//! `3`, `3/4`; variables are `p0 … p{d-1}`; exponents are nonnegative
//! integer literals.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::Polynomial;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at position {pos}: dimension {dim} allows p0 … p{}", dim - 1)]
    UnknownVariable { pos: usize, name: String, dim: usize },
    #[error("exponent at position {pos} is not a nonnegative integer")]
    BadExponent { pos: usize },
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    Int(BigInt),
    Ident(String),
    Eof,
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
    at: usize,
}

fn lex(src: &str) -> Result<Lexer, ParseError> {
    let bytes: Vec<char> = src.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let pos = i;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
            }
            '+' => {
                toks.push((Tok::Plus, pos));
                i += 1;
            }
            '-' => {
                toks.push((Tok::Minus, pos));
                i += 1;
            }
            '*' => {
                toks.push((Tok::Star, pos));
                i += 1;
            }
            '^' => {
                toks.push((Tok::Caret, pos));
                i += 1;
            }
            '/' => {
                toks.push((Tok::Slash, pos));
                i += 1;
            }
            '(' => {
                toks.push((Tok::LParen, pos));
                i += 1;
            }
            ')' => {
                toks.push((Tok::RParen, pos));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = bytes[start..i].iter().collect();
                let n = text.parse::<BigInt>().map_err(|_| ParseError::Syntax {
                    pos,
                    msg: format!("bad integer literal `{text}`"),
                })?;
                toks.push((Tok::Int(n), pos));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == '_') {
                    i += 1;
                }
                toks.push((Tok::Ident(bytes[start..i].iter().collect()), pos));
            }
            other => {
                return Err(ParseError::Syntax {
                    pos,
                    msg: format!("unexpected character `{other}`"),
                })
            }
        }
    }
    toks.push((Tok::Eof, bytes.len()));
    Ok(Lexer { toks, at: 0 })
}

impl Lexer {
    fn peek(&self) -> &(Tok, usize) {
        &self.toks[self.at]
    }
    fn next(&mut self) -> (Tok, usize) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }
}

struct Parser {
    lx: Lexer,
    dim: usize,
}

impl Parser {
    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.lx.peek().0 {
                Tok::Plus => {
                    self.lx.next();
                    acc = acc.add(&self.term()?);
                }
                Tok::Minus => {
                    self.lx.next();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.unary()?;
        while self.lx.peek().0 == Tok::Star {
            self.lx.next();
            acc = acc.mul(&self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial, ParseError> {
        if self.lx.peek().0 == Tok::Minus {
            self.lx.next();
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if self.lx.peek().0 != Tok::Caret {
            return Ok(base);
        }
        self.lx.next();
        let (tok, pos) = self.lx.next();
        let exp = match tok {
            Tok::Int(n) => n,
            Tok::Minus => {
                // A signed exponent is recognized so it can be rejected
                // with the dedicated error.
                match self.lx.next().0 {
                    Tok::Int(_) => return Err(ParseError::BadExponent { pos }),
                    _ => {
                        return Err(ParseError::Syntax {
                            pos,
                            msg: "expected integer exponent after `^`".into(),
                        })
                    }
                }
            }
            _ => {
                return Err(ParseError::Syntax {
                    pos,
                    msg: "expected integer exponent after `^`".into(),
                })
            }
        };
        // Also reject `^2/3` style rational exponents.
        if self.lx.peek().0 == Tok::Slash {
            let (_, slash_pos) = self.lx.next();
            if let Tok::Int(_) = self.lx.peek().0 {
                self.lx.next();
                return Err(ParseError::BadExponent { pos: slash_pos });
            }
            return Err(ParseError::Syntax {
                pos: slash_pos,
                msg: "unexpected `/` in exponent".into(),
            });
        }
        let e = exp.to_u32().ok_or(ParseError::BadExponent { pos })?;
        Ok(base.pow(e))
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        let (tok, pos) = self.lx.next();
        match tok {
            Tok::Int(n) => {
                // Optional `/ den` forms a rational literal.
                if self.lx.peek().0 == Tok::Slash {
                    self.lx.next();
                    let (dtok, dpos) = self.lx.next();
                    match dtok {
                        Tok::Int(d) if !d.is_zero() => {
                            Ok(Polynomial::constant(self.dim, Rational::new(n, d)))
                        }
                        Tok::Int(_) => Err(ParseError::Syntax {
                            pos: dpos,
                            msg: "zero denominator in rational literal".into(),
                        }),
                        _ => Err(ParseError::Syntax {
                            pos: dpos,
                            msg: "expected integer denominator after `/`".into(),
                        }),
                    }
                } else {
                    Ok(Polynomial::constant(self.dim, Rational::from(n)))
                }
            }
            Tok::Ident(name) => {
                if let Some(idx_text) = name.strip_prefix('p') {
                    if !idx_text.is_empty() && idx_text.bytes().all(|b| b.is_ascii_digit()) {
                        let idx: usize =
                            idx_text.parse().map_err(|_| ParseError::UnknownVariable {
                                pos,
                                name: name.clone(),
                                dim: self.dim,
                            })?;
                        if idx < self.dim {
                            return Ok(Polynomial::variable(self.dim, idx));
                        }
                    }
                }
                Err(ParseError::UnknownVariable {
                    pos,
                    name,
                    dim: self.dim,
                })
            }
            Tok::LParen => {
                let inner = self.expr()?;
                let (tok, pos) = self.lx.next();
                if tok == Tok::RParen {
                    Ok(inner)
                } else {
                    Err(ParseError::Syntax {
                        pos,
                        msg: "expected `)`".into(),
                    })
                }
            }
            other => Err(ParseError::Syntax {
                pos,
                msg: format!("unexpected token {other:?}"),
            }),
        }
    }
}

/// Parse `expr` into an exact polynomial in variables `p0 … p{dim-1}`.
pub fn parse(expr: &str, dim: usize) -> Result<Polynomial, ParseError> {
    let lx = lex(expr)?;
    let mut parser = Parser { lx, dim };
    let poly = parser.expr()?;
    let (tok, pos) = parser.lx.next();
    if tok != Tok::Eof {
        return Err(ParseError::Syntax {
            pos,
            msg: format!("unexpected trailing token {tok:?}"),
        });
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_i64;

    #[test]
    fn monomial_examples() {
        let q = parse("p0^2", 4).unwrap();
        assert_eq!(q, Polynomial::variable(4, 0).pow(2));
        let binomial = parse("(p0-p2)^2", 4).unwrap();
        assert_eq!(binomial, parse("p0^2 - 2*p0*p2 + p2^2", 4).unwrap());
        assert!(parse("p1*p1 - p1^2", 3).unwrap().is_zero());
    }

    #[test]
    fn rational_literals_and_unary_minus() {
        let q = parse("-3/4*p1 + 1/2", 2).unwrap();
        let want = Polynomial::variable(2, 1)
            .scale(&rat_i64(-3, 4))
            .add(&Polynomial::constant(2, rat_i64(1, 2)));
        assert_eq!(q, want);
        // ^ binds tighter than unary minus.
        assert_eq!(
            parse("-p0^2", 2).unwrap(),
            Polynomial::variable(2, 0).pow(2).neg()
        );
    }

    #[test]
    fn whitespace_insensitive() {
        assert_eq!(
            parse(" p0 ^ 2 + p1 * p1 ", 2).unwrap(),
            parse("p0^2+p1*p1", 2).unwrap()
        );
    }

    #[test]
    fn error_positions() {
        match parse("p0 + ", 2) {
            Err(ParseError::Syntax { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("expected syntax error, got {other:?}"),
        }
        match parse("p7", 3) {
            Err(ParseError::UnknownVariable { name, dim, .. }) => {
                assert_eq!(name, "p7");
                assert_eq!(dim, 3);
            }
            other => panic!("expected unknown variable, got {other:?}"),
        }
        assert!(matches!(parse("x + 1", 3), Err(ParseError::UnknownVariable { .. })));
        assert!(matches!(parse("p0^-2", 3), Err(ParseError::BadExponent { .. })));
        assert!(matches!(parse("p0^1/2", 3), Err(ParseError::BadExponent { .. })));
        assert!(matches!(parse("1/0", 3), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse("2p0", 3), Err(ParseError::Syntax { .. })));
    }
}
