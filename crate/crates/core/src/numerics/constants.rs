//! Classical constants in double-double precision.
//!
//! π uses Machin's formula, log 2 the series 2·atanh(1/3), ζ(k) and γ
//! Euler-Maclaurin summation, and Li₄(1/2) its defining series. Everything
//! is computed once and shared.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{FromPrimitive, ToPrimitive, Zero};
use twofloat::TwoFloat;

use crate::bernoulli::bernoulli_numbers;
use crate::rational::{factorial, Rational};

pub type Real = TwoFloat;

/// Largest k for which ζ(k) is tabulated.
pub const MAX_ZETA: u32 = 24;

/// Rounding slack attached to every tabulated constant.
pub const CONSTANT_ERROR: f64 = 1e-30;

pub fn real(x: f64) -> Real {
    Real::from(x)
}

/// Double-double quotient. The crate's own `/` keeps only about 17 digits
/// of the quotient, so three rounds of long division are done here instead.
pub fn div(a: Real, b: Real) -> Real {
    let q1 = a.hi() / b.hi();
    let r = a - b * real(q1);
    let q2 = r.hi() / b.hi();
    let r = r - b * real(q2);
    let q3 = r.hi() / b.hi();
    Real::new_add(q1, q2) + real(q3)
}

pub fn recip(b: Real) -> Real {
    div(real(1.0), b)
}

fn bigint_to_real(n: &BigInt) -> Real {
    let hi = n.to_f64().unwrap_or(f64::INFINITY);
    if !hi.is_finite() {
        return real(hi);
    }
    let rest = n - BigInt::from_f64(hi).unwrap_or_else(BigInt::zero);
    Real::new_add(hi, rest.to_f64().unwrap_or(0.0))
}

pub fn rational_to_real(r: &Rational) -> Real {
    div(bigint_to_real(r.numer()), bigint_to_real(r.denom()))
}

/// B_{2j}/(2j)! for j = 0, 1, …
pub fn bernoulli_over_factorial() -> &'static [Real] {
    static TABLE: OnceLock<Vec<Real>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let b = bernoulli_numbers(80);
        (0..=40u32)
            .map(|j| {
                let q = &b[2 * j as usize] / Rational::from_integer(factorial(2 * j));
                rational_to_real(&q)
            })
            .collect()
    })
}

/// B_n as a double-double, n ≤ 80.
pub fn bernoulli(n: usize) -> Real {
    static TABLE: OnceLock<Vec<Real>> = OnceLock::new();
    TABLE.get_or_init(|| bernoulli_numbers(80).iter().map(rational_to_real).collect())[n]
}

fn atan_inv(q: f64) -> Real {
    // atan(1/q) = Σ (-1)^j / ((2j+1) q^{2j+1})
    let x = recip(real(q));
    let x2 = x * x;
    let mut power = x;
    let mut sum = real(0.0);
    for j in 0..200 {
        let term = div(power, real((2 * j + 1) as f64));
        sum = if j % 2 == 0 { sum + term } else { sum - term };
        if term.hi().abs() < 1e-36 {
            break;
        }
        power *= x2;
    }
    sum
}

pub fn pi() -> Real {
    static V: OnceLock<Real> = OnceLock::new();
    *V.get_or_init(|| real(16.0) * atan_inv(5.0) - real(4.0) * atan_inv(239.0))
}

pub fn log2() -> Real {
    static V: OnceLock<Real> = OnceLock::new();
    *V.get_or_init(|| {
        let x = recip(real(3.0));
        let x2 = x * x;
        let mut power = x;
        let mut sum = real(0.0);
        for j in 0..200 {
            let term = div(power, real((2 * j + 1) as f64));
            sum += term;
            if term.hi() < 1e-36 {
                break;
            }
            power *= x2;
        }
        real(2.0) * sum
    })
}

/// n^{-k} in double-double.
pub fn inv_pow(n: u64, k: u32) -> Real {
    let base = Real::from(n);
    let mut p = real(1.0);
    for _ in 0..k {
        p *= base;
    }
    recip(p)
}

fn zeta_em(k: u32) -> Real {
    // Σ_{n<N} n^{-k} + N^{1-k}/(k-1) + N^{-k}/2 + Σ_j B_{2j}/(2j)! (k)_{2j-1} N^{-k-2j+1}
    const N: u64 = 24;
    let mut sum = real(0.0);
    for n in (1..N).rev() {
        sum += inv_pow(n, k);
    }
    let nk = inv_pow(N, k);
    let nr = real(N as f64);
    sum += div(nk * nr, real((k - 1) as f64));
    sum += nk * real(0.5);
    let b = bernoulli_over_factorial();
    let mut rising = real(k as f64); // (k)_{2j-1}
    let mut npow = div(nk, nr); // N^{-k-2j+1}
    for (j, bj) in b.iter().enumerate().skip(1).take(18) {
        sum += *bj * rising * npow;
        let m = (2 * j - 1) as f64 + k as f64;
        rising = rising * real(m) * real(m + 1.0);
        npow = div(npow, nr * nr);
    }
    sum
}

/// ζ(k) for 2 ≤ k ≤ MAX_ZETA.
pub fn zeta(k: u32) -> Option<Real> {
    static TABLE: OnceLock<Vec<Real>> = OnceLock::new();
    if !(2..=MAX_ZETA).contains(&k) {
        return None;
    }
    let t = TABLE.get_or_init(|| (2..=MAX_ZETA).map(zeta_em).collect());
    Some(t[(k - 2) as usize])
}

/// η(k) = Σ (-1)^{n+1} n^{-k}; η(1) = log 2.
pub fn eta(k: u32) -> Option<Real> {
    if k == 1 {
        return Some(log2());
    }
    let z = zeta(k)?;
    Some(z * (real(1.0) - real(2f64.powi(1 - k as i32))))
}

pub fn euler_gamma() -> Real {
    static V: OnceLock<Real> = OnceLock::new();
    *V.get_or_init(|| {
        // γ = H_N - log N - 1/(2N) + Σ_j B_{2j}/(2j N^{2j}),  N = 2^6
        const P: i32 = 6;
        let n = 1u64 << P;
        let mut h = real(0.0);
        for j in (1..=n).rev() {
            h += recip(real(j as f64));
        }
        let nr = real(n as f64);
        let mut g = h - real(P as f64) * log2() - div(real(0.5), nr);
        let inv2 = recip(nr * nr);
        let mut npow = inv2;
        for j in 1..=14 {
            g += div(bernoulli(2 * j), real((2 * j) as f64)) * npow;
            npow *= inv2;
        }
        g
    })
}

/// Li₄(1/2) = Σ 1/(2^n n^4).
pub fn li4_half() -> Real {
    static V: OnceLock<Real> = OnceLock::new();
    *V.get_or_init(|| {
        let mut sum = real(0.0);
        for n in (1..=120u64).rev() {
            sum += inv_pow(n, 4) * real(0.5f64.powi(n as i32));
        }
        sum
    })
}
