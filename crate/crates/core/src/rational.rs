//! Exact rational helpers shared by the symbolic modules.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `p/q` text form; integers print without a denominator.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => text.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// Writes `coeff` as a leading factor of a product: `""` for 1, `"-"` for -1,
/// `"3/4*"` otherwise. `sep` is what follows a non-unit coefficient.
pub(crate) fn coefficient_prefix(coeff: &Rational, sep: &str) -> String {
    if coeff.is_one() {
        String::new()
    } else if (-coeff).is_one() {
        "-".to_string()
    } else {
        format!("{}{}", format_rational(coeff), sep)
    }
}

/// Joins signed terms as `a + b - c`, dropping the sign of the first term into
/// the term text itself.
pub(crate) fn join_signed<'a, I>(terms: I, sep: &str) -> String
where
    I: IntoIterator<Item = (&'a Rational, String)>,
{
    let mut out = String::new();
    for (i, (coeff, body)) in terms.into_iter().enumerate() {
        let magnitude = coeff.abs();
        let prefix = coefficient_prefix(&magnitude, sep);
        if i == 0 {
            if coeff.is_negative() {
                out.push('-');
            }
        } else if coeff.is_negative() {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        if body.is_empty() {
            out.push_str(&format_rational(&magnitude));
        } else {
            out.push_str(&prefix);
            out.push_str(&body);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
