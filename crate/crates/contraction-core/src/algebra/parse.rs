//! Parser for polynomial expressions.
//!
//! Accepts `+`, `-`, `*`, `^` with nonnegative integer exponents, parentheses,
//! integer and rational (`3/2`) literals, and the declared variable names.
//! Juxtaposition acts as multiplication (`2x`, `x(x + t)`), but identifiers
//! are matched whole: with variables `x,y` the input `xy` is an unknown
//! variable, not `x*y`. Errors carry the byte offset where parsing failed.

use super::poly::{Poly, Q, Vars};
use num::{BigInt, One};
use std::fmt;
use std::str::FromStr;

/// A parse failure with the byte position in the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at position {}: {}", self.pos, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer { src: src.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    /// Next token and its starting position, or `None` at end of input.
    fn next(&mut self) -> Result<Option<(usize, Tok)>, ParseError> {
        self.skip_ws();
        if self.pos >= self.src.len() {
            return Ok(None);
        }
        let start = self.pos;
        let c = self.src[self.pos];
        let tok = match c {
            b'+' => {
                self.pos += 1;
                Tok::Plus
            }
            b'-' => {
                self.pos += 1;
                Tok::Minus
            }
            b'*' => {
                self.pos += 1;
                Tok::Star
            }
            b'^' => {
                self.pos += 1;
                Tok::Caret
            }
            b'/' => {
                self.pos += 1;
                Tok::Slash
            }
            b'(' => {
                self.pos += 1;
                Tok::LParen
            }
            b')' => {
                self.pos += 1;
                Tok::RParen
            }
            b'0'..=b'9' => {
                let mut end = self.pos;
                while end < self.src.len() && self.src[end].is_ascii_digit() {
                    end += 1;
                }
                let text = std::str::from_utf8(&self.src[self.pos..end]).unwrap();
                self.pos = end;
                Tok::Num(BigInt::from_str(text).unwrap())
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let mut end = self.pos;
                while end < self.src.len()
                    && (self.src[end].is_ascii_alphanumeric() || self.src[end] == b'_')
                {
                    end += 1;
                }
                let text = std::str::from_utf8(&self.src[self.pos..end]).unwrap();
                self.pos = end;
                Tok::Ident(text.to_string())
            }
            other => {
                return Err(ParseError {
                    pos: start,
                    message: format!("unexpected character {:?}", other as char),
                })
            }
        };
        Ok(Some((start, tok)))
    }
}

struct Parser<'a> {
    vars: &'a Vars,
    toks: Vec<(usize, Tok)>,
    idx: usize,
    end_pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&(usize, Tok)> {
        self.toks.get(self.idx)
    }

    fn bump(&mut self) -> Option<(usize, Tok)> {
        let t = self.toks.get(self.idx).cloned();
        if t.is_some() {
            self.idx += 1;
        }
        t
    }

    fn here(&self) -> usize {
        self.peek().map(|(p, _)| *p).unwrap_or(self.end_pos)
    }

    fn err<T>(&self, pos: usize, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { pos, message: message.into() })
    }

    // expr := ['-'] term (('+'|'-') term)*
    fn expr(&mut self) -> Result<Poly, ParseError> {
        let mut negate_first = false;
        if let Some((_, Tok::Minus)) = self.peek() {
            self.bump();
            negate_first = true;
        }
        let mut acc = self.term()?;
        if negate_first {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some((_, Tok::Plus)) => {
                    self.bump();
                    let t = self.term()?;
                    acc = acc.add(&t);
                }
                Some((_, Tok::Minus)) => {
                    self.bump();
                    let t = self.term()?;
                    acc = acc.sub(&t);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    // term := factor (('*' factor) | factor)*   -- juxtaposition multiplies
    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some((_, Tok::Star)) => {
                    self.bump();
                    let f = self.factor()?;
                    acc = acc.mul(&f);
                }
                Some((_, Tok::Num(_))) | Some((_, Tok::Ident(_))) | Some((_, Tok::LParen)) => {
                    let f = self.factor()?;
                    acc = acc.mul(&f);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    // factor := atom ['^' uint]
    fn factor(&mut self) -> Result<Poly, ParseError> {
        let base = self.atom()?;
        if let Some((_, Tok::Caret)) = self.peek() {
            self.bump();
            let pos = self.here();
            match self.bump() {
                Some((_, Tok::Num(n))) => {
                    let e: u32 = match n.to_string().parse() {
                        Ok(e) => e,
                        Err(_) => return self.err(pos, "exponent too large"),
                    };
                    return Ok(base.pow(e));
                }
                _ => return self.err(pos, "expected a nonnegative integer exponent after '^'"),
            }
        }
        Ok(base)
    }

    // atom := '-' factor | '(' expr ')' | number ['/' number] | ident
    fn atom(&mut self) -> Result<Poly, ParseError> {
        let pos = self.here();
        match self.bump() {
            Some((_, Tok::Minus)) => Ok(self.factor()?.neg()),
            Some((_, Tok::LParen)) => {
                let inner = self.expr()?;
                let pos2 = self.here();
                match self.bump() {
                    Some((_, Tok::RParen)) => Ok(inner),
                    _ => self.err(pos2, "expected ')'"),
                }
            }
            Some((_, Tok::Num(n))) => {
                // Rational literal: integer '/' integer.
                if let Some((_, Tok::Slash)) = self.peek() {
                    self.bump();
                    let dpos = self.here();
                    match self.bump() {
                        Some((_, Tok::Num(d))) => {
                            if d == BigInt::from(0) {
                                return self.err(dpos, "zero denominator");
                            }
                            Ok(Poly::constant(self.vars, Q::new(n, d)))
                        }
                        _ => self.err(dpos, "expected an integer denominator after '/'"),
                    }
                } else {
                    Ok(Poly::constant(self.vars, Q::from_integer(n)))
                }
            }
            Some((p, Tok::Ident(name))) => match self.vars.index_of(&name) {
                Some(i) => Ok(Poly::var(self.vars, i)),
                None => self.err(
                    p,
                    format!("unknown variable '{}' (declared variables: {})", name, self.vars),
                ),
            },
            Some((p, tok)) => self.err(p, format!("unexpected token {tok:?}")),
            None => self.err(pos, "unexpected end of input"),
        }
    }
}

/// Parse an expression over the given variables.
pub fn parse_poly(vars: &Vars, input: &str) -> Result<Poly, ParseError> {
    let mut lexer = Lexer::new(input);
    let mut toks = Vec::new();
    while let Some(t) = lexer.next()? {
        toks.push(t);
    }
    let mut parser = Parser { vars, toks, idx: 0, end_pos: input.len() };
    if parser.peek().is_none() {
        return Err(ParseError { pos: 0, message: "empty input".to_string() });
    }
    let p = parser.expr()?;
    if let Some((pos, tok)) = parser.peek() {
        return Err(ParseError { pos: *pos, message: format!("unexpected trailing token {tok:?}") });
    }
    let _ = Q::one();
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_standard_germ_equations() {
        let v = Vars::xyzt();
        let f = parse_poly(&v, "x^2 + y^2*z - z^4 + t^2").unwrap();
        // Canonical print: total degree descending, then lexicographic.
        assert_eq!(f.to_string(), "-z^4 + y^2*z + x^2 + t^2");
    }

    #[test]
    fn implicit_multiplication() {
        let v = Vars::xyzt();
        assert_eq!(parse_poly(&v, "2x").unwrap(), parse_poly(&v, "2*x").unwrap());
        assert_eq!(
            parse_poly(&v, "x(x + t)").unwrap(),
            parse_poly(&v, "x^2 + x*t").unwrap()
        );
        assert_eq!(parse_poly(&v, "x^2y").unwrap(), parse_poly(&v, "x^2*y").unwrap());
    }

    #[test]
    fn whole_identifiers_do_not_split() {
        let v = Vars::xyzt();
        let e = parse_poly(&v, "x + xy").unwrap_err();
        assert_eq!(e.pos, 4);
        assert!(e.message.contains("unknown variable 'xy'"), "{}", e.message);
    }

    #[test]
    fn rational_coefficients() {
        let v = Vars::xyzt();
        let f = parse_poly(&v, "3/2*x - 1/3").unwrap();
        assert_eq!(f.to_string(), "3/2*x - 1/3");
        let e = parse_poly(&v, "1/0").unwrap_err();
        assert!(e.message.contains("zero denominator"));
    }

    #[test]
    fn error_positions_point_at_the_problem() {
        let v = Vars::xyzt();
        let e = parse_poly(&v, "x + ").unwrap_err();
        assert_eq!(e.pos, 4);
        let e = parse_poly(&v, "x + (y").unwrap_err();
        assert_eq!(e.pos, 6);
        let e = parse_poly(&v, "x ? y").unwrap_err();
        assert_eq!(e.pos, 2);
        let e = parse_poly(&v, "x^y").unwrap_err();
        assert_eq!(e.pos, 2);
    }

    #[test]
    fn unary_minus_and_precedence() {
        let v = Vars::xyzt();
        assert_eq!(
            parse_poly(&v, "-x^2 + y").unwrap(),
            parse_poly(&v, "y - x^2").unwrap()
        );
        // '^' binds tighter than '*': 2*x^3 is 2*(x^3).
        assert_eq!(
            parse_poly(&v, "2*x^3").unwrap().to_string(),
            "2*x^3"
        );
        // (x+y)^2 expands.
        assert_eq!(
            parse_poly(&v, "(x + y)^2").unwrap(),
            parse_poly(&v, "x^2 + 2*x*y + y^2").unwrap()
        );
    }

    #[test]
    fn print_parse_roundtrip_on_samples() {
        let v = Vars::xyzt();
        for s in [
            "x^2 + y^2*z - z^4 + t^2",
            "x^2 + y^3 + z^3 + y*t^6",
            "-3*x*y*z*t + 1/2*t^7 - z",
            "x^2 + y^2*z + 2*y*z^3 + t^3",
        ] {
            let f = parse_poly(&v, s).unwrap();
            let g = parse_poly(&v, &f.to_string()).unwrap();
            assert_eq!(f, g, "roundtrip failed for {s}");
        }
    }
}
