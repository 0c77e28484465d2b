//! Element-expression grammar.
//!
//! ```text
//! expr   := ['+' | '-'] term (('+' | '-') term)*
//! term   := factor (['*'] factor)*
//! factor := '-' factor | INT ['/' INT] | 'x' INT | '[' expr (',' expr)* ']' | '(' expr ')'
//! ```
//!
//! Juxtaposition multiplies, so `2x1x2` and `2*x1*x2` are the same element.
//! Brackets are right-normed: `[a,b,c] = [a,[b,c]]`.

use crate::error::{Error, Result};
use crate::freealg::{nested, Poly};
use crate::rational::Rat;

/// Parses `text` as an element of `A_n`.
pub fn parse_expr(text: &str, n: usize) -> Result<Poly> {
    if n == 0 {
        return Err(Error::NoGenerators);
    }
    let mut p = Parser { src: text.as_bytes(), pos: 0, n };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

/// Largest generator index mentioned in `text`, for picking a default `n`.
pub fn max_generator(text: &str) -> usize {
    let b = text.as_bytes();
    let mut best = 0;
    let mut i = 0;
    while i < b.len() {
        if b[i] == b'x' {
            let start = i + 1;
            let mut j = start;
            while j < b.len() && b[j].is_ascii_digit() {
                j += 1;
            }
            if let Ok(v) = text[start..j].parse::<usize>() {
                best = best.max(v);
            }
            i = j;
        } else {
            i += 1;
        }
    }
    best
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    n: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = match self.peek() {
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            Some(b'-') => {
                self.pos += 1;
                -&self.term()?
            }
            _ => self.term()?,
        };
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_factor(c: Option<u8>) -> bool {
        matches!(c, Some(b'x' | b'[' | b'(' | b'0'..=b'9'))
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(b'*') || Self::starts_factor(self.peek()) {
                acc = &acc * &self.factor()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn integer(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected integer"));
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn factor(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-&self.factor()?)
            }
            Some(b'0'..=b'9') => {
                let start = self.pos;
                let num = self.integer()?;
                let lit = if self.eat(b'/') {
                    let den = self.integer()?;
                    format!("{}/{}", num, den)
                } else {
                    num
                };
                let c: Rat = lit.parse().map_err(|_| Error::Parse {
                    pos: start,
                    msg: format!("invalid rational `{}`", lit),
                })?;
                Ok(Poly::scalar(self.n, c))
            }
            Some(b'x') => {
                let start = self.pos;
                self.pos += 1;
                if !matches!(self.src.get(self.pos), Some(b'0'..=b'9')) {
                    return Err(self.error("expected generator index after `x`"));
                }
                let idx: usize = self
                    .integer()?
                    .parse()
                    .map_err(|_| Error::Parse { pos: start, msg: "generator index too large".into() })?;
                Poly::generator(self.n, idx).map_err(|_| Error::Parse {
                    pos: start,
                    msg: format!("generator x{} exceeds n = {}", idx, self.n),
                })
            }
            Some(b'[') => {
                self.pos += 1;
                let mut args = vec![self.expr()?];
                while self.eat(b',') {
                    args.push(self.expr()?);
                }
                if !self.eat(b']') {
                    return Err(self.error("expected `,` or `]`"));
                }
                nested(&args)
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(e)
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}
