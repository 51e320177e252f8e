//! Recursive-descent parser for the expression grammar.
//!
//! ```text
//! expr   := ["-"] term { ("+"|"-") term }
//! term   := factor { factor }
//! factor := atom { "^*" | "^-1" | "'" }
//! atom   := NAME | RATIONAL | "(" expr ")"
//! ```

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::expr::ast::RatExpr;
use crate::freegroup::{Alphabet, Letter};
use crate::scalar::Field;

pub fn parse_expression<K: Field>(text: &str, alphabet: &Alphabet) -> Result<RatExpr<K>> {
    let mut p = Parser { s: text.as_bytes(), pos: 0, al: alphabet, pending: Vec::new() };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.s.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    al: &'a Alphabet,
    /// Letters split off a juxtaposed name run, consumed as separate factors.
    pending: Vec<usize>,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        if !self.pending.is_empty() {
            return Some(b'a');
        }
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.s[self.pos..].starts_with(tok.as_bytes()) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expr<K: Field>(&mut self) -> Result<RatExpr<K>> {
        let mut terms = Vec::new();
        if self.peek() == Some(b'-') {
            self.pos += 1;
            terms.push(RatExpr::neg(self.term()?));
        } else {
            terms.push(self.term()?);
        }
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    terms.push(self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    terms.push(RatExpr::neg(self.term()?));
                }
                _ => break,
            }
        }
        Ok(if terms.len() == 1 { terms.pop().unwrap() } else { RatExpr::Sum(terms) })
    }

    fn starts_factor(&mut self) -> bool {
        matches!(self.peek(), Some(c) if c == b'(' || c == b'_' || c.is_ascii_alphanumeric())
    }

    fn term<K: Field>(&mut self) -> Result<RatExpr<K>> {
        if !self.starts_factor() {
            return Err(self.err("expected a term"));
        }
        let mut factors = Vec::new();
        while self.starts_factor() {
            factors.push(self.factor()?);
        }
        Ok(if factors.len() == 1 { factors.pop().unwrap() } else { RatExpr::Product(factors) })
    }

    fn factor<K: Field>(&mut self) -> Result<RatExpr<K>> {
        let mut e = self.atom()?;
        if !self.pending.is_empty() {
            // postfix operators bind to the last letter of a juxtaposed run only
            return Ok(e);
        }
        loop {
            if self.eat("^*") {
                e = RatExpr::star(e);
            } else if self.eat("^-1") || self.eat("'") {
                e = match e {
                    RatExpr::Gen(l) => RatExpr::Gen(l.inverse()),
                    other => RatExpr::inverse(other),
                };
            } else {
                break;
            }
        }
        Ok(e)
    }

    fn atom<K: Field>(&mut self) -> Result<RatExpr<K>> {
        if !self.pending.is_empty() {
            let g = self.pending.remove(0);
            return Ok(RatExpr::Gen(Letter::gen(g)));
        }
        self.skip_ws();
        let start = self.pos;
        let c = self.s.get(self.pos).copied().ok_or_else(|| self.err("unexpected end of input"))?;
        if c == b'(' {
            self.pos += 1;
            let e = self.expr()?;
            if !self.eat(")") {
                return Err(self.err("expected `)`"));
            }
            return Ok(e);
        }
        if c.is_ascii_digit() {
            let numer = self.int()?;
            let denom = if self.s.get(self.pos) == Some(&b'/') {
                self.pos += 1;
                self.int()?
            } else {
                BigInt::from(1)
            };
            if denom == BigInt::from(0) {
                return Err(Error::Parse { pos: start, msg: "zero denominator".into() });
            }
            return Ok(RatExpr::ScalarLit(K::from_ratio(numer, denom)));
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            while self.pos < self.s.len() && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_') {
                self.pos += 1;
            }
            let run = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii");
            let gens = self.al.split_name(run).ok_or_else(|| Error::UnknownGenerator(run.to_string()))?;
            let (first, rest) = gens.split_first().expect("nonempty split");
            self.pending = rest.to_vec();
            return Ok(RatExpr::Gen(Letter::gen(*first)));
        }
        Err(self.err(&format!("unexpected `{}`", c as char)))
    }

    fn int(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        Ok(std::str::from_utf8(&self.s[start..self.pos]).expect("ascii").parse().expect("digits"))
    }
}
