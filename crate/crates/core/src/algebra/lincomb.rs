use std::collections::btree_map::{self, BTreeMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{zeta_label, Sequence};
use crate::rational::{join_signed, Rational};

/// Finite formal sum of keys with exact rational coefficients.
///
/// Zero coefficients are never stored, and iteration follows the key order,
/// so two equal combinations always print and serialize identically.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinComb<T: Ord = Sequence> {
    terms: BTreeMap<T, Rational>,
}

pub type SeqComb = LinComb<Sequence>;

impl<T: Ord> Default for LinComb<T> {
    fn default() -> Self {
        LinComb { terms: BTreeMap::new() }
    }
}

impl<T: Ord + Clone> LinComb<T> {
    /// The empty combination (additive zero).
    pub fn zero() -> Self {
        LinComb { terms: BTreeMap::new() }
    }

    pub fn term(key: T, coeff: Rational) -> Self {
        let mut c = Self::zero();
        c.add_term(key, coeff);
        c
    }

    pub fn single(key: T) -> Self {
        Self::term(key, Rational::one())
    }

    pub fn add_term(&mut self, key: T, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign_scaled(&mut self, other: &Self, scale: &Rational) {
        if scale.is_zero() {
            return;
        }
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c * scale);
        }
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        if factor.is_zero() {
            return Self::zero();
        }
        LinComb { terms: self.terms.iter().map(|(k, c)| (k.clone(), c * factor)).collect() }
    }

    pub fn coeff(&self, key: &T) -> Rational {
        self.terms.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&T, &Rational)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &T> {
        self.terms.keys()
    }

    /// Sum of all coefficients.
    pub fn coefficient_mass(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |acc, c| acc + c)
    }

    pub fn all_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Applies `f` to every key, merging collisions.
    pub fn map_keys<U: Ord + Clone>(&self, mut f: impl FnMut(&T) -> U) -> LinComb<U> {
        let mut out = LinComb::zero();
        for (k, c) in &self.terms {
            out.add_term(f(k), c.clone());
        }
        out
    }

    pub fn remove(&mut self, key: &T) -> Option<Rational> {
        self.terms.remove(key)
    }
}

impl LinComb<Sequence> {
    /// The unit `1` (coefficient 1 on the empty sequence), distinct from zero.
    pub fn unit() -> Self {
        Self::single(Sequence::unit())
    }

    pub fn from_seq(s: Sequence) -> Self {
        Self::single(s)
    }

    /// Human text: `z(2,2) + 2 z(2,1,1)`.
    pub fn to_zeta_string(&self) -> String {
        join_signed(self.terms.iter().map(|(s, c)| (c, zeta_label(s))), " ")
    }
}

impl<T: Ord + Clone> FromIterator<(T, Rational)> for LinComb<T> {
    fn from_iter<I: IntoIterator<Item = (T, Rational)>>(iter: I) -> Self {
        let mut c = Self::zero();
        for (k, v) in iter {
            c.add_term(k, v);
        }
        c
    }
}

impl<T: Ord + Clone> Add for &LinComb<T> {
    type Output = LinComb<T>;

    fn add(self, rhs: Self) -> LinComb<T> {
        let mut out = self.clone();
        out.add_assign_scaled(rhs, &Rational::one());
        out
    }
}

impl<T: Ord + Clone> Sub for &LinComb<T> {
    type Output = LinComb<T>;

    fn sub(self, rhs: Self) -> LinComb<T> {
        let mut out = self.clone();
        out.add_assign_scaled(rhs, &-Rational::one());
        out
    }
}

impl<T: Ord + Clone> Neg for &LinComb<T> {
    type Output = LinComb<T>;

    fn neg(self) -> LinComb<T> {
        self.scale(&-Rational::one())
    }
}

impl<T: Ord + Clone> Mul<&Rational> for &LinComb<T> {
    type Output = LinComb<T>;

    fn mul(self, rhs: &Rational) -> LinComb<T> {
        self.scale(rhs)
    }
}

impl<T: Ord + Clone + fmt::Debug> fmt::Debug for LinComb<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter().map(|(k, c)| (k, c.to_string()))).finish()
    }
}

impl fmt::Display for LinComb<Sequence> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_zeta_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use crate::seq;

    #[test]
    fn zero_coefficients_are_dropped() {
        let mut c = SeqComb::zero();
        c.add_term(seq![2], int(3));
        c.add_term(seq![2], int(-3));
        assert!(c.is_zero());
        c.add_term(seq![3], int(0));
        assert!(c.is_zero());
    }

    #[test]
    fn unit_is_not_zero() {
        assert!(!SeqComb::unit().is_zero());
        assert_ne!(SeqComb::unit(), SeqComb::zero());
    }

    #[test]
    fn display() {
        let mut c = SeqComb::zero();
        c.add_term(seq![2, 1, 1], int(2));
        c.add_term(seq![2, 2], int(1));
        assert_eq!(c.to_string(), "z(2,2) + 2 z(2,1,1)");
        let mut d = SeqComb::zero();
        d.add_term(seq![3, -1], int(-1));
        d.add_term(seq![2, 1, -1], rat(-3, 2));
        assert_eq!(d.to_string(), "-z(3,-1) - 3/2 z(2,1,-1)");
        assert_eq!(SeqComb::zero().to_string(), "0");
    }
}
