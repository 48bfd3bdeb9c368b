//! Polynomials in classical constants: log 2, π, ζ(k) and Li₄(1/2).

use std::cmp::{Ordering, Reverse};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Pow, Zero};

use crate::bernoulli::even_zeta_pi_ratio;
use crate::error::{Error, Result};
use crate::rational::{join_signed, parse_rational, Rational};

/// Atoms sort as ζ(2) < ζ(3) < … < π < Li₄(1/2) < log 2, which is also the
/// order they are printed in inside a monomial.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum ConstAtom {
    Zeta(u32),
    Pi,
    Li4Half,
    Log2,
}

impl ConstAtom {
    pub fn weight(self) -> u32 {
        match self {
            ConstAtom::Zeta(k) => k,
            ConstAtom::Pi | ConstAtom::Log2 => 1,
            ConstAtom::Li4Half => 4,
        }
    }
}

impl fmt::Display for ConstAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstAtom::Zeta(k) => write!(f, "zeta({k})"),
            ConstAtom::Pi => write!(f, "pi"),
            ConstAtom::Li4Half => write!(f, "li4half"),
            ConstAtom::Log2 => write!(f, "log2"),
        }
    }
}

/// Product of atom powers; the empty monomial is the constant 1.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ConstMonomial(BTreeMap<ConstAtom, u32>);

impl ConstMonomial {
    pub fn one() -> Self {
        ConstMonomial(BTreeMap::new())
    }

    pub fn atom(a: ConstAtom) -> Self {
        Self::power(a, 1)
    }

    pub fn power(a: ConstAtom, p: u32) -> Self {
        let mut m = BTreeMap::new();
        if p > 0 {
            m.insert(a, p);
        }
        ConstMonomial(m)
    }

    pub fn from_atoms(atoms: &[(ConstAtom, u32)]) -> Self {
        let mut m = Self::one();
        for &(a, p) in atoms {
            m = m.mul(&Self::power(a, p));
        }
        m
    }

    pub fn atoms(&self) -> impl Iterator<Item = (ConstAtom, u32)> + '_ {
        self.0.iter().map(|(&a, &p)| (a, p))
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().map(|(a, p)| a.weight() * p).sum()
    }

    pub fn degree(&self) -> u32 {
        self.0.values().sum()
    }

    pub fn power_of(&self, a: ConstAtom) -> u32 {
        self.0.get(&a).copied().unwrap_or(0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut m = self.0.clone();
        for (&a, &p) in &other.0 {
            *m.entry(a).or_insert(0) += p;
        }
        ConstMonomial(m)
    }

    /// Collapses all even zeta values and powers of π into a single ζ(2A),
    /// using ζ(2n) = rₙ π^{2n}. Returns the rational factor picked up.
    fn normalize(&self) -> (Rational, ConstMonomial) {
        let mut factor = Rational::one();
        let mut half_weight = 0u32;
        let pi_power = self.power_of(ConstAtom::Pi);
        if pi_power % 2 == 1 {
            return (factor, self.clone());
        }
        let mut rest = BTreeMap::new();
        for (&a, &p) in &self.0 {
            match a {
                ConstAtom::Zeta(k) if k % 2 == 0 => {
                    factor *= Pow::pow(even_zeta_pi_ratio(k / 2), p);
                    half_weight += k / 2 * p;
                }
                ConstAtom::Pi => half_weight += p / 2,
                _ => {
                    rest.insert(a, p);
                }
            }
        }
        if half_weight > 0 {
            factor /= even_zeta_pi_ratio(half_weight);
            rest.insert(ConstAtom::Zeta(2 * half_weight), 1);
        }
        (factor, ConstMonomial(rest))
    }

    fn sort_key(&self) -> (Reverse<u32>, Reverse<u32>, Vec<(ConstAtom, u32)>) {
        (Reverse(self.power_of(ConstAtom::Log2)), Reverse(self.degree()), self.atoms().collect())
    }
}

/// Print order: higher powers of log 2 first, then higher degree, then atoms.
impl Ord for ConstMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for ConstMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ConstMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.0.iter().map(|(a, &p)| if p == 1 { a.to_string() } else { format!("{a}^{p}") }).collect();
        f.write_str(&parts.join("*"))
    }
}

impl fmt::Debug for ConstMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Exact rational polynomial in [`ConstAtom`]s.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ConstPolynomial(BTreeMap<ConstMonomial, Rational>);

impl ConstPolynomial {
    pub fn zero() -> Self {
        ConstPolynomial(BTreeMap::new())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, ConstMonomial::one())
    }

    pub fn term(c: Rational, m: ConstMonomial) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn atom(a: ConstAtom) -> Self {
        Self::term(Rational::one(), ConstMonomial::atom(a))
    }

    pub fn zeta(k: u32) -> Self {
        Self::atom(ConstAtom::Zeta(k))
    }

    pub fn log2() -> Self {
        Self::atom(ConstAtom::Log2)
    }

    pub fn add_term(&mut self, m: ConstMonomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.0.entry(m.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.0.remove(&m);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.0 {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        ConstPolynomial(self.0.iter().map(|(m, c)| (m.clone(), c * s)).collect())
    }

    /// Product without normalization.
    pub fn mul_raw(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ma, ca) in &self.0 {
            for (mb, cb) in &other.0 {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    /// Product followed by [`ConstPolynomial::normalize`].
    pub fn mul(&self, other: &Self) -> Self {
        self.mul_raw(other).normalize()
    }

    /// Rewrites every product of even zeta values and even powers of π as a
    /// rational multiple of a single ζ(2A), e.g. ζ(2)³ → 35/8·ζ(6).
    pub fn normalize(&self) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.0 {
            let (f, nm) = m.normalize();
            out.add_term(nm, c * f);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ConstMonomial, &Rational)> {
        self.0.iter()
    }

    pub fn coeff(&self, m: &ConstMonomial) -> Rational {
        self.0.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Common weight of all monomials; `None` if empty or mixed.
    pub fn weight(&self) -> Option<u32> {
        let mut ws = self.0.keys().map(|m| m.weight());
        let first = ws.next()?;
        ws.all(|w| w == first).then_some(first)
    }

    pub fn uses_atom(&self, a: ConstAtom) -> bool {
        self.0.keys().any(|m| m.power_of(a) > 0)
    }
}

impl fmt::Display for ConstPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join_signed(self.0.iter().map(|(m, c)| (c, m.to_string())), "*"))
    }
}

impl fmt::Debug for ConstPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn digits(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.src[self.pos..].starts_with(|c: char| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        Ok(&self.src[start..self.pos])
    }

    fn uint(&mut self) -> Result<u32> {
        let start = self.pos;
        self.digits()?.parse().map_err(|_| Error::Parse { pos: start, msg: "integer too large".into() })
    }

    fn factor(&mut self) -> Result<(Rational, ConstMonomial)> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                let num = self.digits()?;
                let text = if self.eat('/') { format!("{num}/{}", self.digits()?) } else { num.to_string() };
                let r =
                    parse_rational(&text).ok_or(Error::Parse { pos: start, msg: "bad rational".into() })?;
                Ok((r, ConstMonomial::one()))
            }
            Some(_) => {
                let start = self.pos;
                let word: String =
                    self.src[self.pos..].chars().take_while(|c| c.is_ascii_alphanumeric()).collect();
                self.pos += word.len();
                let atom = match word.as_str() {
                    "zeta" => {
                        if !self.eat('(') {
                            return self.err("expected '(' after zeta");
                        }
                        let k = self.uint()?;
                        if !self.eat(')') {
                            return self.err("expected ')'");
                        }
                        if k < 2 {
                            return Err(Error::Parse { pos: start, msg: "zeta(k) needs k >= 2".into() });
                        }
                        ConstAtom::Zeta(k)
                    }
                    "log2" => ConstAtom::Log2,
                    "pi" => ConstAtom::Pi,
                    "li4half" => ConstAtom::Li4Half,
                    _ => return Err(Error::Parse { pos: start, msg: format!("unknown constant '{word}'") }),
                };
                let p = if self.eat('^') { self.uint()? } else { 1 };
                Ok((Rational::one(), ConstMonomial::power(atom, p)))
            }
            None => self.err("unexpected end of input"),
        }
    }

    fn term(&mut self) -> Result<(Rational, ConstMonomial)> {
        let (mut c, mut m) = self.factor()?;
        while self.eat('*') {
            let (c2, m2) = self.factor()?;
            c *= c2;
            m = m.mul(&m2);
        }
        Ok((c, m))
    }
}

/// Parses the printed form, e.g. `-1/6*log2^3 + 1/2*zeta(2)*log2 - 1/4*zeta(3)`.
impl FromStr for ConstPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lx = Lexer { src: s, pos: 0 };
        let mut out = ConstPolynomial::zero();
        let mut sign = if lx.eat('-') { -1 } else { 1 };
        loop {
            let (c, m) = lx.term()?;
            out.add_term(m, c * Rational::from_integer(sign.into()));
            if lx.eat('+') {
                sign = 1;
            } else if lx.eat('-') {
                sign = -1;
            } else if lx.peek().is_none() {
                return Ok(out);
            } else {
                return lx.err("expected '+', '-' or end of input");
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn even_zeta_normalization() {
        let z2 = ConstPolynomial::zeta(2);
        assert_eq!(z2.mul(&z2), ConstPolynomial::zeta(4).scale(&rat(5, 2)));
        assert_eq!(z2.mul(&z2).mul(&z2), ConstPolynomial::zeta(6).scale(&rat(35, 8)));
        assert_eq!(z2.mul(&ConstPolynomial::zeta(4)), ConstPolynomial::zeta(6).scale(&rat(7, 4)));
        let pi6 = ConstPolynomial::term(int(1), ConstMonomial::power(ConstAtom::Pi, 6));
        assert_eq!(pi6.normalize(), ConstPolynomial::zeta(6).scale(&int(945)));
        let z3 = ConstPolynomial::zeta(3);
        assert_eq!(z3.mul(&z3).to_string(), "zeta(3)^2");
    }

    #[test]
    fn display_order() {
        let p: ConstPolynomial = "-1/4*zeta(3) + 1/2*zeta(2)*log2 - 1/6*log2^3".parse().unwrap();
        assert_eq!(p.to_string(), "-1/6*log2^3 + 1/2*zeta(2)*log2 - 1/4*zeta(3)");
        let q: ConstPolynomial = "859/24*zeta(6) + 3*zeta(3)^2".parse().unwrap();
        assert_eq!(q.to_string(), "3*zeta(3)^2 + 859/24*zeta(6)");
        assert_eq!(q.weight(), Some(6));
        assert_eq!(ConstPolynomial::zero().to_string(), "0");
    }

    #[test]
    fn parse_errors() {
        assert!("zeta(1)".parse::<ConstPolynomial>().is_err());
        assert!("2*foo".parse::<ConstPolynomial>().is_err());
        assert!("2 zeta(3)".parse::<ConstPolynomial>().is_err());
        assert!("".parse::<ConstPolynomial>().is_err());
        assert_eq!("0".parse::<ConstPolynomial>().unwrap(), ConstPolynomial::zero());
    }

    #[test]
    fn text_round_trip() {
        for text in ["11/4*zeta(4)", "-zeta(2)*zeta(3) + 2*zeta(5)", "1/2*log2^2 - 1/2*zeta(2)", "3/2"] {
            let p: ConstPolynomial = text.parse().unwrap();
            assert_eq!(p.to_string(), text);
        }
    }
}
