//! Harmonic sums by direct summation plus an asymptotic tail.
//!
//! For large k each factor of the summand has an expansion in terms
//! (±1)^k · log^a k · k^{-b}. The product is truncated at a fixed order in
//! 1/k and each term's tail Σ_{k>N} is summed in closed form: Euler-Maclaurin
//! for the smooth terms, Boole summation for the oscillating ones.

use std::collections::BTreeMap;

use super::constants::{
    bernoulli, bernoulli_over_factorial, div, eta, euler_gamma, inv_pow, log2, real, recip, zeta, Real,
};
use crate::algebra::Index;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub(crate) struct Shape {
    pub osc: bool,
    pub log: u32,
    pub pow: u32,
}

/// Truncated asymptotic series in k.
#[derive(Clone, Debug)]
pub(crate) struct Expansion {
    terms: BTreeMap<Shape, Real>,
    order: u32,
}

impl Expansion {
    fn new(order: u32) -> Self {
        Expansion { terms: BTreeMap::new(), order }
    }

    fn add(&mut self, osc: bool, log: u32, pow: u32, c: Real) {
        if pow > self.order || c.hi() == 0.0 {
            return;
        }
        let e = self.terms.entry(Shape { osc, log, pow }).or_insert(real(0.0));
        *e += c;
    }

    pub fn mul(&self, other: &Expansion) -> Expansion {
        let mut out = Expansion::new(self.order.min(other.order));
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add(a.osc != b.osc, a.log + b.log, a.pow + b.pow, *ca * *cb);
            }
        }
        out
    }

    pub fn truncated(&self, order: u32) -> Expansion {
        let mut out = Expansion::new(order);
        for (s, c) in &self.terms {
            out.add(s.osc, s.log, s.pow, *c);
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Shape, &Real)> {
        self.terms.iter()
    }
}

/// Rising factorial (r)_m as a double-double.
fn rising(r: u32, m: u32) -> Real {
    (0..m).fold(real(1.0), |acc, i| acc * real((r + i) as f64))
}

/// Boole coefficients: 1/(1+e^x) = 1/2 + Σ_{n≥1} c_n x^n, c_n = -(2^{n+1}-1)B_{n+1}/(n+1)!.
fn boole(n: u32) -> Real {
    let b = bernoulli(n as usize + 1);
    let f = (1..=n + 1).fold(real(1.0), |acc, i| acc * real(i as f64));
    -div(real(2f64.powi(n as i32 + 1) - 1.0) * b, f)
}

/// Expansion of H_k^{(r)} (plain) or H̄_k^{(r)} (barred).
pub(crate) fn inner_expansion(r: Index, order: u32) -> Expansion {
    let m = r.magnitude();
    let mut e = Expansion::new(order);
    let b = bernoulli_over_factorial();
    if !r.is_barred() && m == 1 {
        // log k + γ + 1/(2k) - Σ B_{2j}/(2j) k^{-2j}
        e.add(false, 1, 0, real(1.0));
        e.add(false, 0, 0, euler_gamma());
        e.add(false, 0, 1, real(0.5));
        for j in 1..=order / 2 {
            e.add(false, 0, 2 * j, -div(bernoulli(2 * j as usize), real((2 * j) as f64)));
        }
    } else if !r.is_barred() {
        // ζ(r) - k^{1-r}/(r-1) + k^{-r}/2 - Σ B_{2j}/(2j)! (r)_{2j-1} k^{-r-2j+1}
        e.add(false, 0, 0, zeta(m).expect("inner index within tabulated range"));
        e.add(false, 0, m - 1, -recip(real((m - 1) as f64)));
        e.add(false, 0, m, real(0.5));
        for j in 1..=order / 2 {
            e.add(false, 0, m + 2 * j - 1, -(b[j as usize] * rising(m, 2 * j - 1)));
        }
    } else {
        // η(r) - (-1)^k [f/2 - Σ c_n f^{(n)}],  f^{(n)} = (-1)^n (r)_n k^{-r-n}
        e.add(false, 0, 0, eta(m).expect("inner index within tabulated range"));
        e.add(true, 0, m, real(-0.5));
        for n in (1..=order).step_by(2) {
            e.add(true, 0, m + n, -(boole(n) * rising(m, n)));
        }
    }
    e
}

/// Expansion of the outer weight: (k+1)^{-n}, times (-1)^{k+1} when barred.
pub(crate) fn outer_expansion(n: Index, order: u32) -> Expansion {
    let m = n.magnitude();
    let mut e = Expansion::new(order);
    let mut binom = real(1.0); // C(m+j-1, j)
    for j in 0..=order.saturating_sub(m) {
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        let c = binom * real(sign);
        if n.is_barred() {
            e.add(true, 0, m + j, -c);
        } else {
            e.add(false, 0, m + j, c);
        }
        binom = div(binom * real((m + j) as f64), real((j + 1) as f64));
    }
    e
}

/// log^a x · x^{-b} differentiated: coefficients over powers of log x.
#[derive(Clone)]
struct LogPower {
    coeffs: Vec<Real>,
    pow: u32,
}

impl LogPower {
    fn new(log: u32, pow: u32) -> Self {
        let mut coeffs = vec![real(0.0); log as usize + 1];
        coeffs[log as usize] = real(1.0);
        LogPower { coeffs, pow }
    }

    fn derivative(&self) -> Self {
        // d/dx L^a x^{-b} = (a L^{a-1} - b L^a) x^{-b-1}
        let mut coeffs = vec![real(0.0); self.coeffs.len()];
        for (a, c) in self.coeffs.iter().enumerate() {
            coeffs[a] -= *c * real(self.pow as f64);
            if a > 0 {
                coeffs[a - 1] += *c * real(a as f64);
            }
        }
        LogPower { coeffs, pow: self.pow + 1 }
    }

    fn eval(&self, p: u32, log_n: Real) -> Real {
        let mut acc = real(0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * log_n + *c;
        }
        acc * real(0.5f64.powi((p * self.pow) as i32))
    }
}

/// ∫_N^∞ log^a x · x^{-b} dx = Σ_j a!/(a-j)! log^{a-j}N · N^{1-b}/(b-1)^{j+1}.
fn tail_integral(log: u32, pow: u32, p: u32, log_n: Real) -> Real {
    debug_assert!(pow >= 2);
    let b1 = real((pow - 1) as f64);
    let mut acc = real(0.0);
    let mut falling = real(1.0);
    let mut denom = b1;
    for j in 0..=log {
        let lp = (0..log - j).fold(real(1.0), |x, _| x * log_n);
        acc += div(falling * lp, denom);
        falling *= real((log - j) as f64);
        denom *= b1;
    }
    acc * real(0.5f64.powi((p * (pow - 1)) as i32))
}

/// Σ_{k>N} of the expansion with N = 2^p, using `em_terms` correction terms.
pub(crate) fn tail_sum(e: &Expansion, p: u32, em_terms: u32) -> Real {
    let log_n = real(p as f64) * log2();
    let b = bernoulli_over_factorial();
    let mut total = real(0.0);
    for (s, c) in e.terms() {
        let g = LogPower::new(s.log, s.pow);
        let g0 = g.eval(p, log_n);
        let mut t;
        if s.osc {
            // N even: Σ_{k>N} (-1)^k g(k) = -(g/2 - Σ c_n g^{(n)})(N)
            t = g0 * real(0.5);
            let mut d = g.derivative();
            for n in 1..=2 * em_terms - 1 {
                if n % 2 == 1 {
                    t -= boole(n) * d.eval(p, log_n);
                }
                d = d.derivative();
            }
            t = -t;
        } else {
            // ∫_N^∞ g - g(N)/2 - Σ B_{2j}/(2j)! g^{(2j-1)}(N)
            t = tail_integral(s.log, s.pow, p, log_n) - g0 * real(0.5);
            let mut d = g.derivative();
            for j in 1..=em_terms {
                t -= b[j as usize] * d.eval(p, log_n);
                d = d.derivative().derivative();
            }
        }
        total += *c * t;
    }
    total
}

/// Running state of the direct partial sum Σ_{k ≤ N}.
pub(crate) struct PartialSum {
    outer: Index,
    inner: Vec<Index>,
    values: Vec<Real>,
    k: u64,
    pub sum: Real,
    pub largest: f64,
}

impl PartialSum {
    pub fn new(outer: Index, inner: &[Index]) -> Self {
        PartialSum {
            outer,
            inner: inner.to_vec(),
            values: vec![real(0.0); inner.len()],
            k: 0,
            sum: real(0.0),
            largest: 0.0,
        }
    }

    pub fn advance_to(&mut self, n: u64) {
        while self.k < n {
            self.k += 1;
            let k = self.k;
            let odd = k % 2 == 1;
            let mut prod = real(1.0);
            for (r, v) in self.inner.iter().zip(self.values.iter_mut()) {
                let t = inv_pow(k, r.magnitude());
                *v = if r.is_barred() && !odd { *v - t } else { *v + t };
                prod *= *v;
            }
            let term = prod * inv_pow(k + 1, self.outer.magnitude());
            self.sum = if self.outer.is_barred() && !odd { self.sum - term } else { self.sum + term };
            self.largest = self.largest.max(self.sum.hi().abs());
        }
    }

    pub fn count(&self) -> u64 {
        self.k
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boole_coefficients() {
        assert!((boole(1).hi() + 0.25).abs() < 1e-16);
        assert!((boole(3).hi() - 1.0 / 48.0).abs() < 1e-16);
        assert!(boole(2).hi().abs() < 1e-30);
    }

    #[test]
    fn zeta_tail_from_expansion() {
        // Σ_{k>N} k^{-2} = ζ(2) - H_N^{(2)}
        let mut e = Expansion::new(30);
        e.add(false, 0, 2, real(1.0));
        let p = 6;
        let mut h = real(0.0);
        for k in 1..=64u64 {
            h += inv_pow(k, 2);
        }
        let t = tail_sum(&e, p, 10);
        assert!((t - (zeta(2).unwrap() - h)).abs().hi() < 1e-28);
    }

    #[test]
    fn alternating_tail() {
        // Σ_{k>N} (-1)^k / k = -(log 2 - H̄_N)  with H̄_N = Σ (-1)^{k+1}/k
        let mut e = Expansion::new(30);
        e.add(true, 0, 1, real(1.0));
        let mut hb = real(0.0);
        for k in 1..=64u64 {
            let t = recip(real(k as f64));
            hb = if k % 2 == 1 { hb + t } else { hb - t };
        }
        let t = tail_sum(&e, 6, 10);
        assert!((t + (log2() - hb)).abs().hi() < 1e-28);
    }

    #[test]
    fn log_tail() {
        // Σ_{k>N} log k / k^2 against direct summation to a large cutoff plus a coarse tail.
        let mut e = Expansion::new(30);
        e.add(false, 1, 2, real(1.0));
        let fine = tail_sum(&e, 10, 10);
        let mut direct = real(0.0);
        for k in 65..=1024u64 {
            direct += real((k as f64).ln()) * inv_pow(k, 2);
        }
        let coarse = tail_sum(&e, 6, 10);
        assert!(((coarse - direct - fine).hi()).abs() < 1e-14);
    }

    #[test]
    fn harmonic_expansion_matches_partial_sums() {
        let e = inner_expansion(Index::plain(1), 20);
        let k = 1u64 << 8;
        let log_k = real(8.0) * log2();
        let mut approx = real(0.0);
        for (s, c) in e.terms() {
            let lp = (0..s.log).fold(real(1.0), |x, _| x * log_k);
            approx += *c * lp * real(0.5f64.powi(8 * s.pow as i32));
        }
        let mut h = real(0.0);
        for j in 1..=k {
            h += recip(real(j as f64));
        }
        assert!((approx - h).abs().hi() < 1e-28);
    }
}
