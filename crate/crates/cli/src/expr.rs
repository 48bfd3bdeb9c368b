//! Text forms of sums: `S(2;1,b2)`, `z(3,-1,-2)`, and combinations such as
//! `z(3,3) + 2 z(3,-1,-2)`.
//!
//! A bar is written either as a `b` prefix or a leading `-`. Harmonic sums print
//! with `b`, Euler sums with `-`.

use std::fmt;
use std::str::FromStr;

use stuffle_core::rational::parse_rational;
use stuffle_core::{Error, HarmonicSumSpec, Index, Rational, Result, SeqComb, Sequence};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Sum(HarmonicSumSpec),
    Zeta(Sequence),
}

impl Expr {
    pub fn weight(&self) -> u32 {
        match self {
            Expr::Sum(s) => s.weight(),
            Expr::Zeta(s) => s.weight(),
        }
    }

    pub fn has_bars(&self) -> bool {
        match self {
            Expr::Sum(s) => s.has_bars(),
            Expr::Zeta(s) => s.has_bars(),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Sum(s) => write!(f, "{s}"),
            Expr::Zeta(s) => write!(f, "z{s}"),
        }
    }
}

impl FromStr for Expr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser::new(s);
        let e = p.expr()?;
        p.end()?;
        Ok(e)
    }
}

/// Parses a linear combination of Euler sums, the format printed by `expand`.
pub fn parse_combination(text: &str) -> Result<SeqComb> {
    let mut p = Parser::new(text);
    let mut out = SeqComb::zero();
    let mut negative = p.eat('-');
    loop {
        let coeff = p.coefficient()?;
        let s = match p.expr()? {
            Expr::Zeta(s) => s,
            Expr::Sum(_) => return p.fail("expected z(...)"),
        };
        out.add_term(s, if negative { -coeff } else { coeff });
        if p.eat('+') {
            negative = false;
        } else if p.eat('-') {
            negative = true;
        } else {
            p.end()?;
            return Ok(out);
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn fail<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.to_string() })
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.fail(&format!("expected '{c}'"))
        }
    }

    fn end(&mut self) -> Result<()> {
        self.skip_ws();
        if self.rest().is_empty() {
            Ok(())
        } else {
            self.fail("unexpected trailing input")
        }
    }

    fn number(&mut self) -> Result<u32> {
        self.skip_ws();
        let len = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return self.fail("expected a number");
        }
        let start = self.pos;
        self.pos += len;
        self.src[start..self.pos]
            .parse()
            .map_err(|_| Error::Parse { pos: start, msg: "number too large".into() })
    }

    fn index(&mut self) -> Result<Index> {
        self.skip_ws();
        let start = self.pos;
        let barred = self.eat('b') || self.eat('-');
        let m = self.number()?;
        if m == 0 {
            return Err(Error::Parse { pos: start, msg: "index must be nonzero".into() });
        }
        if m > i32::MAX as u32 {
            return Err(Error::Parse { pos: start, msg: "index too large".into() });
        }
        Ok(if barred { Index::barred(m) } else { Index::plain(m) })
    }

    fn index_list(&mut self) -> Result<Vec<Index>> {
        let mut out = vec![self.index()?];
        while self.eat(',') {
            out.push(self.index()?);
        }
        Ok(out)
    }

    fn head(&mut self) -> Option<&'static str> {
        self.skip_ws();
        let rest = self.rest();
        let word = ["zeta", "z", "S"].into_iter().find(|w| rest.starts_with(w))?;
        self.pos += word.len();
        Some(word)
    }

    fn expr(&mut self) -> Result<Expr> {
        let start = self.pos;
        match self.head() {
            Some("S") => {
                self.expect('(')?;
                let outer_pos = self.pos;
                let outer = self.index_outer()?;
                self.expect(';')?;
                let inner = self.index_list()?;
                self.expect(')')?;
                HarmonicSumSpec::new(outer, inner)
                    .map_err(|e| match e {
                        Error::InvalidOuter(_) => Error::Parse { pos: outer_pos, msg: e.to_string() },
                        other => other,
                    })
                    .map(Expr::Sum)
            }
            Some(_) => {
                self.expect('(')?;
                let idx = self.index_list()?;
                self.expect(')')?;
                Ok(Expr::Zeta(Sequence::new(idx)))
            }
            None => {
                self.pos = start;
                self.fail("expected S(...) or z(...)")
            }
        }
    }

    /// Outer index of S: 0 and an unbarred 1 are rejected with the outer-index rule.
    fn index_outer(&mut self) -> Result<Index> {
        self.skip_ws();
        let start = self.pos;
        let barred = self.eat('b') || self.eat('-');
        let m = self.number()?;
        if m == 0 || (m == 1 && !barred) {
            return Err(Error::Parse { pos: start, msg: Error::InvalidOuter(m as i64).to_string() });
        }
        Ok(if barred { Index::barred(m) } else { Index::plain(m) })
    }

    /// Optional rational coefficient before a `z(...)`, with or without `*`.
    fn coefficient(&mut self) -> Result<Rational> {
        self.skip_ws();
        let len = self.rest().bytes().take_while(|b| b.is_ascii_digit() || *b == b'/').count();
        if len == 0 {
            return Ok(Rational::from_integer(1.into()));
        }
        let start = self.pos;
        self.pos += len;
        let q = parse_rational(&self.src[start..self.pos])
            .ok_or(Error::Parse { pos: start, msg: "bad coefficient".into() })?;
        self.eat('*');
        Ok(q)
    }
}
