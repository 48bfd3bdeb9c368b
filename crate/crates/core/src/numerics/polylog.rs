//! Euler sums through iterated integrals split at 1/2.
//!
//! ζ(k₁,…,kₙ; σ) = (-1)^n G(a₁,…,a_w; 1) with the word
//! a = 0^{k₁-1} ε₁ 0^{k₂-1} ε₂ …, εⱼ = σ₁⋯σⱼ. Splitting the path 0 → 1 at
//! 1/2 and reflecting the upper piece gives
//!
//! G(a; 1) = Σⱼ (-1)^j G(1-aⱼ,…,1-a₁; 1/2) · G(aⱼ₊₁,…,a_w; 1/2),
//!
//! and every G(…; 1/2) is a multiple polylogarithm whose terms are bounded
//! by 2^{-n₁}, so truncation errors have an explicit bound.

use twofloat::TwoFloat;

use super::constants::{inv_pow, real, Real};
use crate::algebra::Sequence;

/// Letters of the iterated-integral word; only 0, ±1 and 2 occur.
pub(crate) fn euler_word(s: &Sequence) -> Vec<i8> {
    let mut word = Vec::with_capacity(s.weight() as usize);
    let mut eps = 1i8;
    for k in s.indices() {
        eps *= k.sign() as i8;
        word.extend(std::iter::repeat_n(0, k.magnitude() as usize - 1));
        word.push(eps);
    }
    word
}

/// Truncated G(word; 1/2) for a word ending in a nonzero letter, with a
/// bound on the discarded tail.
pub(crate) fn g_half(word: &[i8], terms: usize) -> (Real, f64) {
    if word.is_empty() {
        return (real(1.0), 0.0);
    }
    debug_assert!(*word.last().unwrap() != 0);
    // blocks (m_i, c_i): 0^{m_i - 1} c_i
    let mut blocks = Vec::new();
    let mut zeros = 0u32;
    for &a in word {
        if a == 0 {
            zeros += 1;
        } else {
            blocks.push((zeros + 1, a as f64));
            zeros = 0;
        }
    }
    let depth = blocks.len();
    // G = (-1)^depth Li_{m}(y/c₁, c₁/c₂, …)
    let mut args = Vec::with_capacity(depth);
    let mut prev = 0.5;
    for &(_, c) in &blocks {
        args.push(prev / c);
        prev = c;
    }

    // inner[n] holds the partial sum over n_i ≤ n for the current level.
    let n = terms;
    let mut inner = vec![real(1.0); n + 1];
    for (level, &(m, _)) in blocks.iter().enumerate().rev() {
        let x = args[level];
        let mut next = vec![real(0.0); n + 1];
        let mut xp = real(1.0);
        let mut acc = real(0.0);
        for j in 1..=n {
            xp *= real(x);
            let below = if level + 1 == depth { real(1.0) } else { inner[j - 1] };
            acc += xp * inv_pow(j as u64, m) * below;
            next[j] = acc;
        }
        inner = next;
    }
    let value = if depth % 2 == 0 { inner[n] } else { -inner[n] };
    (value, tail_bound(n, depth))
}

/// Bound on Σ_{n₁>N} n₁^{k-1} 2^{-n₁}, valid for N ≥ 4k.
pub(crate) fn tail_bound(n: usize, depth: usize) -> f64 {
    if n < 4 * depth {
        return f64::INFINITY;
    }
    3.0 * ((n + 1) as f64).powi(depth as i32 - 1) * 0.5f64.powi(n as i32)
}

pub(crate) struct Split {
    pub value: Real,
    pub truncation: f64,
    pub magnitude: f64,
}

/// ζ(s) for admissible s, truncating every polylogarithm at `terms`.
pub(crate) fn euler_sum_split(s: &Sequence, terms: usize) -> Split {
    let word = euler_word(s);
    let w = word.len();
    let mut value = real(0.0);
    let mut truncation = 0.0;
    let mut magnitude = 0.0;
    for j in 0..=w {
        let upper: Vec<i8> = word[..j].iter().rev().map(|&a| 1 - a).collect();
        let (u, eu) = g_half(&upper, terms);
        let (l, el) = g_half(&word[j..], terms);
        let prod: TwoFloat = u * l;
        value = if j % 2 == 0 { value + prod } else { value - prod };
        let (au, al) = (u.hi().abs(), l.hi().abs());
        truncation += (au + eu) * el + al * eu;
        magnitude += au * al;
    }
    if s.depth() % 2 == 1 {
        value = -value;
    }
    Split { value, truncation, magnitude }
}
