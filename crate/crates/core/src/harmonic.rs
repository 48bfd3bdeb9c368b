//! Harmonic sums S(n; r₁,…,r_l) and their expansion into Euler sums.
//!
//! S(n; r₁,…,r_l) = Σ_{k≥1} X_k^{(r₁)}⋯X_k^{(r_l)} / (k+1)^n, where X is the
//! generalized harmonic number H_k^{(r)} for r > 0 and its alternating variant
//! for barred r. A barred outer index n̄ adds the factor (-1)^{k+1}.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::algebra::{multinomial_expansion, stuffle, Index, SeqComb, Sequence};
use crate::combinatorics::compositions;
use crate::error::{Error, Result};
use crate::rational::{factorial, Rational};

/// The data (n; r₁,…,r_l) of a harmonic sum. Inner indices are kept in
/// descending canonical order since the sum is symmetric in them.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HarmonicSumSpec {
    outer: Index,
    inner: Vec<Index>,
}

impl HarmonicSumSpec {
    pub fn new(outer: Index, mut inner: Vec<Index>) -> Result<Self> {
        if outer.value() == 1 {
            return Err(Error::InvalidOuter(1));
        }
        if inner.is_empty() {
            return Err(Error::EmptyInner);
        }
        inner.sort_by(|a, b| b.cmp(a));
        Ok(HarmonicSumSpec { outer, inner })
    }

    /// From raw integers; `0` or `1` as outer is rejected.
    pub fn from_values(outer: i32, inner: &[i32]) -> Result<Self> {
        let o = Index::new(outer).map_err(|_| Error::InvalidOuter(outer as i64))?;
        let inner = inner.iter().map(|&r| Index::new(r)).collect::<Result<Vec<_>>>()?;
        Self::new(o, inner)
    }

    pub fn outer(&self) -> Index {
        self.outer
    }

    pub fn inner(&self) -> &[Index] {
        &self.inner
    }

    pub fn weight(&self) -> u32 {
        self.outer.magnitude() + self.inner.iter().map(|r| r.magnitude()).sum::<u32>()
    }

    pub fn has_bars(&self) -> bool {
        self.outer.is_barred() || self.inner.iter().any(|r| r.is_barred())
    }

    fn barred_inner_count(&self) -> usize {
        self.inner.iter().filter(|r| r.is_barred()).count()
    }
}

impl fmt::Debug for HarmonicSumSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `S(2;1,b2)`: bars written with a `b` prefix.
impl fmt::Display for HarmonicSumSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |i: Index| {
            if i.is_barred() {
                format!("b{}", i.magnitude())
            } else {
                i.magnitude().to_string()
            }
        };
        let inner: Vec<String> = self.inner.iter().map(|&r| show(r)).collect();
        write!(f, "S({};{})", show(self.outer), inner.join(","))
    }
}

fn prefix_outer(outer: Index, sign: i64, c: &SeqComb) -> SeqComb {
    let s = Rational::from_integer(BigInt::from(sign));
    let mut out = SeqComb::zero();
    for (seq, coeff) in c.iter() {
        out.add_term(seq.prepend(outer), coeff * &s);
    }
    out
}

/// (-1)^k ζ(n, (r₁)*(r₂)*⋯*(r_l)) with k the number of barred rᵢ.
pub fn expand(spec: &HarmonicSumSpec) -> SeqComb {
    let product = spec
        .inner
        .iter()
        .fold(SeqComb::unit(), |acc, &r| stuffle(&acc, &SeqComb::single(Sequence::new(vec![r]))));
    let sign = if spec.barred_inner_count().is_multiple_of(2) { 1 } else { -1 };
    prefix_outer(spec.outer, sign, &product)
}

/// Closed-form expansion of S(n; {r}^k) or S(n; {r̄}^k) through the
/// multinomial formula instead of iterated stuffles.
pub fn expand_repeated(outer: Index, r: u32, k: u32, barred: bool) -> Result<SeqComb> {
    if outer.value() == 1 {
        return Err(Error::InvalidOuter(1));
    }
    if r == 0 || k == 0 {
        return Err(Error::EmptyInner);
    }
    let sign = if barred && k % 2 == 1 { -1 } else { 1 };
    Ok(prefix_outer(outer, sign, &multinomial_expansion(r, k, barred)))
}

/// The family Σ_l (-1)^{m-l}/l! Σ_{r₁+…+r_l=m} 1/(r₁⋯r_l) S(n; r₁,…,r_l),
/// merged over permutations of the inner indices. Its expansion is exactly
/// ζ(n, {1}^m).
pub fn flajolet_combination(outer: Index, m: u32) -> Result<BTreeMap<HarmonicSumSpec, Rational>> {
    if outer.is_barred() || outer.value() < 2 {
        return Err(Error::InvalidOuter(outer.value() as i64));
    }
    if m == 0 {
        return Err(Error::EmptyInner);
    }
    let mut out: BTreeMap<HarmonicSumSpec, Rational> = BTreeMap::new();
    for parts in compositions(m, None) {
        let l = parts.len() as u32;
        let sign = if (m - l).is_multiple_of(2) { 1 } else { -1 };
        let prod = parts.iter().fold(BigInt::one(), |acc, &r| acc * BigInt::from(r));
        let coeff = Rational::new(BigInt::from(sign), factorial(l) * prod);
        let spec = HarmonicSumSpec::new(outer, parts.iter().map(|&r| Index::plain(r)).collect())?;
        *out.entry(spec).or_insert_with(|| Rational::from_integer(0.into())) += coeff;
    }
    out.retain(|_, c| *c != Rational::from_integer(0.into()));
    Ok(out)
}

/// Expands every member of a weighted family and sums.
pub fn expand_family(family: &BTreeMap<HarmonicSumSpec, Rational>) -> SeqComb {
    let mut out = SeqComb::zero();
    for (spec, c) in family {
        out.add_assign_scaled(&expand(spec), c);
    }
    out
}
