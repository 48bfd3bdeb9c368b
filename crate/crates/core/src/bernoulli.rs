//! Bernoulli numbers (with B_1 = -1/2) and the even zeta values they produce.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::rational::{factorial, Rational};

/// B_0 ..= B_n by the standard recurrence sum_{j<=m} C(m+1, j) B_j = 0.
pub fn bernoulli_numbers(n: usize) -> Vec<Rational> {
    let mut b = vec![Rational::one()];
    for m in 1..=n {
        let mut acc = Rational::zero();
        let mut binom = BigInt::one();
        for (j, bj) in b.iter().enumerate() {
            acc += Rational::from_integer(binom.clone()) * bj;
            binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        b.push(-acc / Rational::from_integer(BigInt::from(m + 1)));
    }
    b
}

/// The rational r with zeta(2n) = r * pi^(2n).
pub fn even_zeta_pi_ratio(n: u32) -> Rational {
    assert!(n >= 1);
    let b = &bernoulli_numbers(2 * n as usize)[2 * n as usize];
    let sign = if n % 2 == 1 { 1 } else { -1 };
    let two_pow = BigInt::one() << (2 * n as usize);
    b * Rational::from_integer(two_pow * sign) / Rational::from_integer(BigInt::from(2) * factorial(2 * n))
}
