//! Numerical evaluation of Euler sums, harmonic sums and classical constants.
//!
//! Arithmetic is double-double (about 31 significant digits). Euler sums use
//! polylogarithm series with rigorous truncation bounds; harmonic sums use
//! direct summation with an asymptotic tail whose error estimate is
//! heuristic. The two routes share no code beyond the constants, so agreement
//! between them checks the symbolic expansions independently.

mod asymptotic;
pub mod constants;
mod polylog;

use std::fmt;

use crate::algebra::{SeqComb, Sequence};
use crate::error::{Error, Result};
use crate::harmonic::HarmonicSumSpec;
use crate::relations::{ConstAtom, ConstPolynomial, Relation};

pub use constants::Real;
use constants::{rational_to_real, real, CONSTANT_ERROR};

pub const MIN_TOLERANCE: f64 = 1e-27;
pub const MAX_TOLERANCE: f64 = 1e-6;
pub const MAX_PRECISION: u32 = 31;
const GUARD_DIGITS: u32 = 4;
/// Polylogarithm truncation beyond which powers of 2 leave f64 range.
const MAX_POLYLOG_TERMS: usize = 480;
const ASYMPTOTIC_ORDER: u32 = 16;
const EM_TERMS: u32 = 8;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvalConfig {
    pub tolerance: f64,
    pub max_terms: usize,
    pub working_precision: u32,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig { tolerance: 1e-8, max_terms: 1 << 22, working_precision: 30 }
    }
}

impl EvalConfig {
    pub fn with_tolerance(tolerance: f64) -> Self {
        EvalConfig { tolerance, ..EvalConfig::default() }
    }

    /// Digits needed to resolve the tolerance, before guard digits.
    pub fn tolerance_digits(&self) -> u32 {
        (-self.tolerance.log10()).ceil().max(0.0) as u32
    }

    pub fn validate(&self) -> Result<()> {
        if !(MIN_TOLERANCE..=MAX_TOLERANCE).contains(&self.tolerance) {
            return Err(Error::InvalidConfig(format!(
                "tolerance {:e} outside [{MIN_TOLERANCE:e}, {MAX_TOLERANCE:e}]",
                self.tolerance
            )));
        }
        if self.working_precision > MAX_PRECISION {
            return Err(Error::InvalidConfig(format!(
                "working precision {} exceeds {MAX_PRECISION} digits",
                self.working_precision
            )));
        }
        let needed = self.tolerance_digits() + GUARD_DIGITS;
        if self.working_precision < needed {
            return Err(Error::InvalidConfig(format!(
                "working precision {} below the {needed} digits needed for tolerance {:e}",
                self.working_precision, self.tolerance
            )));
        }
        if self.max_terms < 64 {
            return Err(Error::InvalidConfig("max_terms must be at least 64".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NumericValue {
    pub value: Real,
    pub error_bound: f64,
    /// The bound comes from an asymptotic estimate rather than a proof.
    pub heuristic: bool,
}

impl NumericValue {
    pub fn exact(value: Real) -> Self {
        NumericValue { value, error_bound: 0.0, heuristic: false }
    }

    pub fn zero() -> Self {
        NumericValue::exact(real(0.0))
    }

    pub fn to_f64(&self) -> f64 {
        self.value.hi() + self.value.lo()
    }

    pub fn add(&self, other: &Self) -> Self {
        NumericValue {
            value: self.value + other.value,
            error_bound: self.error_bound + other.error_bound,
            heuristic: self.heuristic || other.heuristic,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        NumericValue { value: -self.value, ..*self }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = (self.value.hi().abs(), other.value.hi().abs());
        NumericValue {
            value: self.value * other.value,
            error_bound: a * other.error_bound + b * self.error_bound + self.error_bound * other.error_bound,
            heuristic: self.heuristic || other.heuristic,
        }
    }

    pub fn scale(&self, c: Real) -> Self {
        NumericValue {
            value: self.value * c,
            error_bound: self.error_bound * c.hi().abs(),
            heuristic: self.heuristic,
        }
    }

    /// Decimal expansion with `digits` places after the point.
    pub fn to_decimal(&self, digits: usize) -> String {
        format_real(self.value, digits)
    }
}

impl fmt::Display for NumericValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(20);
        write!(f, "{} ± {:.1e}", format_real(self.value, digits), self.error_bound)?;
        if self.heuristic {
            f.write_str(" (est.)")?;
        }
        Ok(())
    }
}

/// Rounds to `digits` decimal places, carrying exactly in double-double.
pub fn format_real(x: Real, digits: usize) -> String {
    let neg = x.hi() < 0.0;
    let mut v = if neg { -x } else { x };
    v += real(0.5) * real(10f64.powi(-(digits as i32)));
    let int_part = v.hi().floor();
    let mut int_part = if v.hi() == int_part && v.lo() < 0.0 { int_part - 1.0 } else { int_part };
    let mut frac = v - real(int_part);
    if frac.hi() >= 1.0 {
        int_part += 1.0;
        frac -= real(1.0);
    }
    let mut out = String::new();
    if neg && (int_part > 0.0 || frac.hi() * 10f64.powi(digits as i32) >= 1.0) {
        out.push('-');
    }
    out.push_str(&format!("{int_part:.0}"));
    if digits > 0 {
        out.push('.');
        for _ in 0..digits {
            frac *= real(10.0);
            let d = frac.hi().floor().clamp(0.0, 9.0);
            let d = if frac.hi() == d && frac.lo() < 0.0 && d > 0.0 { d - 1.0 } else { d };
            out.push(char::from(b'0' + d as u8));
            frac -= real(d);
        }
    }
    out
}

pub fn constant(atom: ConstAtom, cfg: &EvalConfig) -> Result<NumericValue> {
    cfg.validate()?;
    constant_value(atom)
}

fn constant_value(atom: ConstAtom) -> Result<NumericValue> {
    let value = match atom {
        ConstAtom::Pi => constants::pi(),
        ConstAtom::Log2 => constants::log2(),
        ConstAtom::Li4Half => constants::li4_half(),
        ConstAtom::Zeta(k) => constants::zeta(k).ok_or_else(|| Error::UnsupportedAtom(atom.to_string()))?,
    };
    Ok(NumericValue { value, error_bound: CONSTANT_ERROR, heuristic: false })
}

pub fn eval_euler_sum(s: &Sequence, cfg: &EvalConfig) -> Result<NumericValue> {
    cfg.validate()?;
    euler_sum(s, cfg.tolerance, cfg.max_terms)
}

fn euler_sum(s: &Sequence, tolerance: f64, max_terms: usize) -> Result<NumericValue> {
    if !s.is_admissible() {
        return Err(Error::NotAdmissible(s.clone()));
    }
    if s.is_unit() {
        return Ok(NumericValue::exact(real(1.0)));
    }
    let cap = max_terms.min(MAX_POLYLOG_TERMS);
    let target = tolerance / 16.0;
    let mut n = 4 * s.weight() as usize;
    n = n.max(16);
    while n <= cap {
        let split = polylog::euler_sum_split(s, n);
        let rounding = 1e-30 * (1.0 + split.magnitude) * s.weight() as f64;
        let bound = split.truncation + rounding;
        if bound <= target {
            return Ok(NumericValue { value: split.value, error_bound: bound, heuristic: false });
        }
        n += 16;
    }
    Err(Error::ToleranceUnreachable { tolerance, max_terms })
}

pub fn eval_harmonic_sum(spec: &HarmonicSumSpec, cfg: &EvalConfig) -> Result<NumericValue> {
    cfg.validate()?;
    for r in spec.inner() {
        if constants::zeta(r.magnitude().max(2)).is_none() {
            return Err(Error::UnsupportedAtom(format!("inner index {r}")));
        }
    }
    let order = ASYMPTOTIC_ORDER + spec.outer().magnitude();
    let mut expansion = asymptotic::outer_expansion(spec.outer(), order);
    for &r in spec.inner() {
        expansion = expansion.mul(&asymptotic::inner_expansion(r, order));
    }
    let coarse = expansion.truncated(order - 4);

    let target = cfg.tolerance / 16.0;
    let mut partial = asymptotic::PartialSum::new(spec.outer(), spec.inner());
    let mut p = 8u32;
    loop {
        let n = 1u64 << p;
        if n as usize > cfg.max_terms {
            return Err(Error::ToleranceUnreachable { tolerance: cfg.tolerance, max_terms: cfg.max_terms });
        }
        partial.advance_to(n);
        let tail = asymptotic::tail_sum(&expansion, p, EM_TERMS);
        let check = asymptotic::tail_sum(&coarse, p, EM_TERMS - 2);
        let rounding = 1e-31 * partial.count() as f64 * (1.0 + partial.largest);
        let bound = (tail - check).abs().hi() + rounding;
        if bound <= target {
            return Ok(NumericValue { value: partial.sum + tail, error_bound: bound, heuristic: true });
        }
        p += 1;
    }
}

/// Σ cᵢ ζ(sᵢ) with each constituent evaluated to a share of the tolerance.
pub fn eval_lincomb(c: &SeqComb, cfg: &EvalConfig) -> Result<NumericValue> {
    cfg.validate()?;
    lincomb(c, cfg.tolerance, cfg.max_terms)
}

fn lincomb(c: &SeqComb, tolerance: f64, max_terms: usize) -> Result<NumericValue> {
    let mut total = NumericValue::zero();
    let weight: f64 = c.iter().map(|(_, q)| rational_to_real(q).hi().abs()).sum();
    let share = (tolerance / weight.max(1.0)).max(1e-29);
    for (s, q) in c.iter() {
        let v = euler_sum(s, share, max_terms)?;
        total = total.add(&v.scale(rational_to_real(q)));
    }
    Ok(total)
}

pub fn eval_const_poly(p: &ConstPolynomial, cfg: &EvalConfig) -> Result<NumericValue> {
    cfg.validate()?;
    const_poly(p)
}

fn const_poly(p: &ConstPolynomial) -> Result<NumericValue> {
    let mut total = NumericValue::zero();
    for (m, c) in p.terms() {
        let mut term = NumericValue::exact(real(1.0));
        for (atom, power) in m.atoms() {
            let v = constant_value(atom)?;
            for _ in 0..power {
                term = term.mul(&v);
            }
        }
        total = total.add(&term.scale(rational_to_real(c)));
    }
    Ok(total)
}

/// Numerical value of Σ coeff·ζ + const for a relation; zero up to the bound.
pub fn relation_residual(r: &Relation, cfg: &EvalConfig) -> Result<NumericValue> {
    cfg.validate()?;
    Ok(lincomb(&r.zeta_part, cfg.tolerance, cfg.max_terms)?.add(&const_poly(&r.const_part)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use crate::seq;

    fn cfg() -> EvalConfig {
        EvalConfig::default()
    }

    #[test]
    fn config_validation() {
        assert!(cfg().validate().is_ok());
        assert!(EvalConfig::with_tolerance(1e-5).validate().is_err());
        assert!(EvalConfig::with_tolerance(1e-28).validate().is_err());
        let c = EvalConfig { tolerance: 1e-27, working_precision: 31, ..cfg() };
        assert!(c.validate().is_ok());
        let c = EvalConfig { tolerance: 1e-27, working_precision: 30, ..cfg() };
        assert!(c.validate().is_err());
        let c = EvalConfig { working_precision: 32, ..cfg() };
        assert!(c.validate().is_err());
    }

    #[test]
    fn decimal_formatting() {
        assert_eq!(format_real(constants::pi(), 25), "3.1415926535897932384626434");
        assert_eq!(format_real(-constants::log2(), 12), "-0.693147180560");
        assert_eq!(format_real(real(0.999999), 3), "1.000");
        assert_eq!(format_real(real(-1e-9), 3), "0.000");
    }

    #[test]
    fn constants_examples() {
        let l = constant(ConstAtom::Log2, &cfg()).unwrap();
        assert_eq!(l.to_decimal(11), "0.69314718056");
        let z2 = constant(ConstAtom::Zeta(2), &cfg()).unwrap();
        assert_eq!(z2.to_decimal(11), "1.64493406685");
        let z4 = constant(ConstAtom::Zeta(4), &cfg()).unwrap();
        assert_eq!(z4.to_decimal(11), "1.08232323371");
        assert!(constant(ConstAtom::Zeta(1), &cfg()).is_err());
    }

    #[test]
    fn euler_sum_examples() {
        let v = eval_euler_sum(&seq![2], &cfg()).unwrap();
        assert_eq!(v.to_decimal(11), "1.64493406685");
        assert!(!v.heuristic && v.error_bound <= 1e-8);
        assert_eq!(eval_euler_sum(&seq![-1], &cfg()).unwrap().to_decimal(11), "-0.69314718056");
        assert_eq!(eval_euler_sum(&seq![2, 1], &cfg()).unwrap().to_decimal(11), "1.20205690316");
        assert!(matches!(eval_euler_sum(&seq![1, 2], &cfg()), Err(Error::NotAdmissible(_))));
    }

    #[test]
    fn harmonic_sum_examples() {
        let s = HarmonicSumSpec::from_values(2, &[1, 1]).unwrap();
        let v = eval_harmonic_sum(&s, &cfg()).unwrap();
        assert!(v.heuristic);
        assert!((v.to_f64() - 2.97638889280).abs() < 1e-9);
        let exact = constants::zeta(4).unwrap() * real(2.75);
        assert!((v.value - exact).abs().hi() <= 1e-8);
        let s = HarmonicSumSpec::from_values(-2, &[1]).unwrap();
        let v = eval_harmonic_sum(&s, &cfg()).unwrap();
        assert!((v.to_f64() - 0.15025711290).abs() < 1e-10);
        assert!((v.value - constants::zeta(3).unwrap() * real(0.125)).abs().hi() <= 1e-8);
    }

    #[test]
    fn harmonic_depth_one_matches_euler_sum() {
        for (n, r) in [(2, 1), (3, 2), (2, -2)] {
            let s = HarmonicSumSpec::from_values(n, &[r]).unwrap();
            let h = eval_harmonic_sum(&s, &cfg()).unwrap();
            let z = eval_euler_sum(&Sequence::from_values(&[n, r]).unwrap(), &cfg()).unwrap();
            let expected = if r < 0 { z.neg() } else { z };
            assert!((h.value - expected.value).abs().hi() <= 2e-8, "{n} {r}");
        }
    }

    #[test]
    fn lincomb_and_poly() {
        assert_eq!(eval_lincomb(&SeqComb::zero(), &cfg()).unwrap(), NumericValue::zero());
        let alpha: SeqComb = [(seq![-1, -1], int(2)), (seq![2], int(1))].into_iter().collect();
        let v = eval_lincomb(&alpha, &cfg()).unwrap();
        let l = constants::log2();
        assert!(v.error_bound <= 1e-8);
        assert!((v.value - l * l).abs().hi() <= v.error_bound);
        let p: ConstPolynomial = "11/4*zeta(4)".parse().unwrap();
        assert_eq!(eval_const_poly(&p, &cfg()).unwrap().to_decimal(11), "2.97638889271");
    }

    #[test]
    fn tight_tolerance() {
        let c = EvalConfig { tolerance: 1e-25, ..cfg() };
        let v = eval_euler_sum(&seq![3, 1, 2], &c).unwrap();
        assert!(v.error_bound <= 1e-25);
        let s = HarmonicSumSpec::from_values(2, &[1, 1, 1]).unwrap();
        let h = eval_harmonic_sum(&s, &c).unwrap();
        assert!(h.error_bound <= 1e-25);
    }
}
