//! Generating-function evaluation of ζ(m+1, {1}^{n-1}).
//!
//! Σ_{m,n≥1} ζ(m+1,{1}^{n-1}) x^m y^n = 1 - exp(Σ_{k≥2} ζ(k)(x^k + y^k - (x+y)^k)/k),
//! expanded as a bivariate power series truncated at a total degree.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::One;

use super::constants::ConstPolynomial;
use crate::error::{Error, Result};
use crate::rational::{factorial, Rational};

pub const DEFAULT_ADZ_TRUNCATION: u32 = 8;

/// Truncated series Σ c_{ij} x^i y^j with polynomial coefficients.
#[derive(Clone, Debug, Default)]
struct Bivariate {
    degree: u32,
    coeffs: BTreeMap<(u32, u32), ConstPolynomial>,
}

impl Bivariate {
    fn one(degree: u32) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert((0, 0), ConstPolynomial::constant(Rational::one()));
        Bivariate { degree, coeffs }
    }

    fn add_scaled(&mut self, other: &Bivariate, s: &Rational) {
        for (&k, c) in &other.coeffs {
            let e = self.coeffs.entry(k).or_default();
            *e = e.add(&c.scale(s));
        }
        self.coeffs.retain(|_, c| !c.is_zero());
    }

    fn mul(&self, other: &Bivariate) -> Bivariate {
        let mut out = Bivariate { degree: self.degree, coeffs: BTreeMap::new() };
        for (&(i1, j1), a) in &self.coeffs {
            for (&(i2, j2), b) in &other.coeffs {
                if i1 + i2 + j1 + j2 > self.degree {
                    continue;
                }
                let e = out.coeffs.entry((i1 + i2, j1 + j2)).or_default();
                *e = e.add(&a.mul_raw(b));
            }
        }
        out.coeffs.retain(|_, c| !c.is_zero());
        out
    }
}

/// The expanded right-hand side, computed once per truncation degree.
#[derive(Clone, Debug)]
pub struct AdzSeries {
    truncation: u32,
    coeffs: BTreeMap<(u32, u32), ConstPolynomial>,
}

impl AdzSeries {
    pub fn new(truncation: u32) -> Self {
        let mut exponent = Bivariate { degree: truncation, coeffs: BTreeMap::new() };
        for k in 2..=truncation {
            // x^k + y^k - (x+y)^k keeps only the mixed monomials
            for i in 1..k {
                let c = Rational::new(-binomial(BigInt::from(k), BigInt::from(i)), BigInt::from(k));
                exponent.coeffs.insert((i, k - i), ConstPolynomial::zeta(k).scale(&c));
            }
        }
        // The exponent starts in degree 2, so powers beyond truncation/2 vanish.
        let mut exp = Bivariate::one(truncation);
        let mut power = Bivariate::one(truncation);
        for j in 1..=truncation / 2 {
            power = power.mul(&exponent);
            exp.add_scaled(&power, &Rational::new(BigInt::one(), factorial(j)));
        }
        let coeffs = exp
            .coeffs
            .into_iter()
            .filter(|&((i, j), _)| i >= 1 && j >= 1)
            .map(|(k, c)| (k, c.scale(&-Rational::one()).normalize()))
            .collect();
        AdzSeries { truncation, coeffs }
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    /// Closed form of ζ(m+1, {1}^{n-1}).
    pub fn coefficient(&self, m: u32, n: u32) -> Result<ConstPolynomial> {
        if m == 0 || n == 0 || m + n > self.truncation {
            return Err(Error::TruncationExceeded { m, n, truncation: self.truncation });
        }
        Ok(self.coeffs.get(&(m, n)).cloned().unwrap_or_default())
    }
}

/// Coefficient of x^m y^n at the default truncation.
pub fn adz_coefficient(m: u32, n: u32) -> Result<ConstPolynomial> {
    adz_coefficient_with(m, n, DEFAULT_ADZ_TRUNCATION)
}

pub fn adz_coefficient_with(m: u32, n: u32, truncation: u32) -> Result<ConstPolynomial> {
    if m == 0 || n == 0 || m + n > truncation {
        return Err(Error::TruncationExceeded { m, n, truncation });
    }
    AdzSeries::new(truncation).coefficient(m, n)
}
