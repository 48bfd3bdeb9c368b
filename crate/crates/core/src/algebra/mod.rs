//! Signed index sequences and formal linear combinations of them.
//!
//! An [`Index`] is a nonzero integer; a negative value `-k` stands for the
//! barred (alternating) index k̄. A [`Sequence`] is a finite list of indices and
//! doubles as the argument of an Euler sum ζ(k₁,…,kₙ) and as a basis element of
//! the free abelian group on which the harmonic shuffle product lives.

mod lincomb;
mod stuffle;

use std::cmp::Ordering;
use std::fmt;

pub use lincomb::{LinComb, SeqComb};
pub use stuffle::{
    concat, depth_one_combination, merge, multinomial_expansion, stuffle, stuffle_power, stuffle_seq,
};

use crate::error::{Error, Result};

/// Nonzero signed integer; the sign is the colour (negative = barred).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Index(i32);

impl Index {
    pub fn new(value: i32) -> Result<Self> {
        if value == 0 {
            Err(Error::ZeroIndex)
        } else {
            Ok(Index(value))
        }
    }

    pub fn plain(k: u32) -> Self {
        assert!(k > 0, "index magnitude must be positive");
        Index(k as i32)
    }

    pub fn barred(k: u32) -> Self {
        assert!(k > 0, "index magnitude must be positive");
        Index(-(k as i32))
    }

    pub fn value(self) -> i32 {
        self.0
    }

    pub fn magnitude(self) -> u32 {
        self.0.unsigned_abs()
    }

    pub fn is_barred(self) -> bool {
        self.0 < 0
    }

    /// +1 or -1, the σ of ζ(k; σ).
    pub fn sign(self) -> i32 {
        self.0.signum()
    }
}

impl Ord for Index {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.magnitude(), self.is_barred()).cmp(&(other.magnitude(), other.is_barred()))
    }
}

impl PartialOrd for Index {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl TryFrom<i32> for Index {
    type Error = Error;

    fn try_from(value: i32) -> Result<Self> {
        Index::new(value)
    }
}

/// Ordered list of indices; the empty sequence is the unit `1`.
///
/// Ordering is the canonical term order: ascending depth, then
/// lexicographic on (magnitude, barred) per position.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Sequence(Vec<Index>);

impl Sequence {
    pub fn new(indices: Vec<Index>) -> Self {
        Sequence(indices)
    }

    pub fn unit() -> Self {
        Sequence(Vec::new())
    }

    /// Builds from raw signed integers, rejecting zeros.
    pub fn from_values(values: &[i32]) -> Result<Self> {
        values.iter().map(|&v| Index::new(v)).collect::<Result<Vec<_>>>().map(Sequence)
    }

    pub fn indices(&self) -> &[Index] {
        &self.0
    }

    pub fn values(&self) -> Vec<i32> {
        self.0.iter().map(|i| i.value()).collect()
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().map(|i| i.magnitude()).sum()
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<Index> {
        self.0.first().copied()
    }

    /// ζ(self) converges: non-empty and the leading index is not an unbarred 1.
    pub fn is_admissible(&self) -> bool {
        matches!(self.first(), Some(k) if k.value() != 1)
    }

    /// Admissible with no barred indices.
    pub fn is_positive_admissible(&self) -> bool {
        self.is_admissible() && self.0.iter().all(|i| !i.is_barred())
    }

    pub fn has_bars(&self) -> bool {
        self.0.iter().any(|i| i.is_barred())
    }

    pub fn prepend(&self, head: Index) -> Sequence {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(head);
        v.extend_from_slice(&self.0);
        Sequence(v)
    }

    pub fn into_inner(self) -> Vec<Index> {
        self.0
    }
}

impl Ord for Sequence {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Sequence {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Vec<Index>> for Sequence {
    fn from(v: Vec<Index>) -> Self {
        Sequence(v)
    }
}

/// Shorthand for literals in tests and tables; panics on a zero entry.
#[macro_export]
macro_rules! seq {
    () => { $crate::algebra::Sequence::unit() };
    ($($v:expr),+ $(,)?) => {
        $crate::algebra::Sequence::from_values(&[$($v),+]).expect("nonzero indices")
    };
}

impl fmt::Debug for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `(2,-1,3)`; the unit prints as `()`.
impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{k}")?;
        }
        write!(f, ")")
    }
}

/// Human form `z(2,-1,3)` of the Euler sum with this argument.
pub fn zeta_label(s: &Sequence) -> String {
    format!("z{s}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_index_rejected() {
        assert_eq!(Index::new(0), Err(Error::ZeroIndex));
        assert!(Sequence::from_values(&[2, 0]).is_err());
    }

    #[test]
    fn weight_and_depth() {
        let s = seq![5, -3];
        assert_eq!(s.weight(), 8);
        assert_eq!(s.depth(), 2);
        assert_eq!(Sequence::unit().weight(), 0);
    }

    #[test]
    fn admissibility() {
        assert!(seq![2, 1].is_admissible());
        assert!(seq![-1, 1].is_admissible());
        assert!(!seq![1, 2].is_admissible());
        assert!(!Sequence::unit().is_admissible());
        assert!(!seq![-1].is_positive_admissible());
    }

    #[test]
    fn canonical_order() {
        let mut v = vec![seq![2, 1, 1], seq![3, -2, -1], seq![2, 2], seq![3, -1, -2], seq![-2], seq![2]];
        v.sort();
        assert_eq!(v, vec![seq![2], seq![-2], seq![2, 2], seq![2, 1, 1], seq![3, -1, -2], seq![3, -2, -1]]);
    }
}
