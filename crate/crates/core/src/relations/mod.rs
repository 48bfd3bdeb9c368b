//! Relation families among (alternating) Euler sums.
//!
//! A [`Relation`] is a linear identity Σ cᵢ ζ(sᵢ) + P = 0 where P is a
//! polynomial in classical constants. Generators here cover duality, the sum
//! formula, finite and regularized double shuffle, products with known
//! factors, depth-one reductions and the ADZ generating function.

mod adz;
mod constants;

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

pub use adz::{adz_coefficient, adz_coefficient_with, AdzSeries, DEFAULT_ADZ_TRUNCATION};
pub use constants::{ConstAtom, ConstMonomial, ConstPolynomial};

use crate::algebra::{stuffle_seq, Index, SeqComb, Sequence};
use crate::combinatorics::{admissible_sequences, compositions};
use crate::error::{Error, Result};
use crate::rational::{factorial, Rational};
use crate::words::{decode, seq_to_word, shuffle, shuffle_sequences, Letter, Word};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Family {
    Duality,
    Sum,
    DoubleShuffle,
    RegularizedDoubleShuffle,
    Adz,
    Product,
    DepthOne,
    ZetaTwos,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Duality => "duality",
            Family::Sum => "sum",
            Family::DoubleShuffle => "dshuffle",
            Family::RegularizedDoubleShuffle => "regdshuffle",
            Family::Adz => "adz",
            Family::Product => "product",
            Family::DepthOne => "depth1",
            Family::ZetaTwos => "zeta2n",
        }
    }

    pub fn from_name(name: &str) -> Option<Family> {
        [
            Family::Duality,
            Family::Sum,
            Family::DoubleShuffle,
            Family::RegularizedDoubleShuffle,
            Family::Adz,
            Family::Product,
            Family::DepthOne,
            Family::ZetaTwos,
        ]
        .into_iter()
        .find(|f| f.name() == name)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Σ coeff·ζ(seq) + const_part = 0.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Relation {
    pub family: Family,
    pub zeta_part: SeqComb,
    pub const_part: ConstPolynomial,
}

impl Relation {
    pub fn new(family: Family, zeta_part: SeqComb, const_part: ConstPolynomial) -> Self {
        Relation { family, zeta_part, const_part }
    }

    /// ζ(s) = value.
    pub fn pin(family: Family, s: Sequence, value: &ConstPolynomial) -> Self {
        Relation::new(family, SeqComb::single(s), value.scale(&-Rational::one()))
    }

    pub fn is_trivial(&self) -> bool {
        self.zeta_part.is_zero() && self.const_part.is_zero()
    }

    pub fn all_admissible(&self) -> bool {
        self.zeta_part.keys().all(Sequence::is_admissible)
    }

    /// Common weight of every ζ-term and constant monomial, if homogeneous.
    pub fn weight(&self) -> Option<u32> {
        let mut ws: Vec<u32> = self.zeta_part.keys().map(Sequence::weight).collect();
        ws.extend(self.const_part.terms().map(|(m, _)| m.weight()));
        let first = *ws.first()?;
        ws.iter().all(|&w| w == first).then_some(first)
    }

    /// The constant side moved to the right: `z(4,1) = -zeta(2)*zeta(3) + 2*zeta(5)`.
    pub fn rhs(&self) -> ConstPolynomial {
        self.const_part.scale(&-Rational::one())
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.zeta_part, self.rhs())
    }
}

/// ζ(s) - ζ(s') = 0 for a positive admissible s and its dual s'.
pub fn duality_relation(s: &Sequence) -> Result<Relation> {
    let dual = crate::words::duality(s)?;
    let zeta = &SeqComb::single(s.clone()) - &SeqComb::single(dual);
    Ok(Relation::new(Family::Duality, zeta, ConstPolynomial::zero()))
}

/// Σ_{k₁+…+kₙ = k, k₁ ≥ 2} ζ(k₁,…,kₙ) - ζ(k) = 0.
pub fn sum_formula(weight: u32, depth: u32) -> Result<Relation> {
    if depth == 0 || weight <= depth {
        return Err(Error::InvalidSumFormula { weight, depth });
    }
    let mut zeta = SeqComb::zero();
    for parts in compositions(weight, Some(depth)) {
        if parts[0] >= 2 {
            zeta.add_term(Sequence::new(parts.iter().map(|&p| Index::plain(p)).collect()), Rational::one());
        }
    }
    zeta.add_term(Sequence::new(vec![Index::plain(weight)]), -Rational::one());
    Ok(Relation::new(Family::Sum, zeta, ConstPolynomial::zero()))
}

/// Stuffle expansion minus shuffle expansion of ζ(a)ζ(b).
pub fn double_shuffle(a: &Sequence, b: &Sequence) -> Result<Relation> {
    for s in [a, b] {
        if !s.is_admissible() {
            return Err(Error::NotAdmissible(s.clone()));
        }
    }
    let zeta = &stuffle_seq(a, b) - &shuffle_sequences(a, b)?;
    Ok(Relation::new(Family::DoubleShuffle, zeta, ConstPolynomial::zero()))
}

/// (1)*w - (1)ш w for admissible w. The divergent term (1,w) occurs once on
/// each side and cancels; anything non-admissible left over is an error.
pub fn regularized_double_shuffle(w: &Sequence) -> Result<Relation> {
    if !w.is_admissible() {
        return Err(Error::NotAdmissible(w.clone()));
    }
    let one = Sequence::new(vec![Index::plain(1)]);
    let star = stuffle_seq(&one, w);
    let sha = decode(&shuffle(&Word::new(vec![Letter::YPlus]), &seq_to_word(w)?))?;
    let divergent = one_then(w);
    debug_assert_eq!(star.coeff(&divergent), Rational::one());
    debug_assert_eq!(sha.coeff(&divergent), Rational::one());
    let zeta = &star - &sha;
    if let Some(bad) = zeta.keys().find(|s| !s.is_admissible()) {
        return Err(Error::DivergentTerm(bad.clone()));
    }
    Ok(Relation::new(Family::RegularizedDoubleShuffle, zeta, ConstPolynomial::zero()))
}

fn one_then(w: &Sequence) -> Sequence {
    w.prepend(Index::plain(1))
}

/// ζ(n̄) as a constant: -log 2 for n = 1, (2^{1-n} - 1)ζ(n) otherwise.
pub fn eta_value(n: u32) -> ConstPolynomial {
    assert!(n >= 1, "eta_value needs n >= 1");
    if n == 1 {
        return ConstPolynomial::log2().scale(&-Rational::one());
    }
    let c = Rational::new(BigInt::one(), BigInt::one() << (n as usize - 1)) - Rational::one();
    ConstPolynomial::zeta(n).scale(&c)
}

/// ζ(k) or ζ(k̄) for a single index.
pub fn depth_one_value(k: Index) -> Option<ConstPolynomial> {
    match k.value() {
        1 => None,
        v if v > 1 => Some(ConstPolynomial::zeta(v as u32)),
        _ => Some(eta_value(k.magnitude())),
    }
}

/// ζ({2}^n) = π^{2n}/(2n+1)!, returned in powers of π.
pub fn zeta_two_repeated(n: u32) -> ConstPolynomial {
    assert!(n >= 1, "zeta_two_repeated needs n >= 1");
    ConstPolynomial::term(
        Rational::new(BigInt::one(), factorial(2 * n + 1)),
        ConstMonomial::power(ConstAtom::Pi, 2 * n),
    )
}

/// ζ(m+1, {1}^{n-1}) = [x^m y^n] of the ADZ series.
pub fn adz_relation(series: &AdzSeries, m: u32, n: u32) -> Result<Relation> {
    let mut idx = vec![Index::plain(m + 1)];
    idx.extend(std::iter::repeat_n(Index::plain(1), n as usize - 1));
    Ok(Relation::pin(Family::Adz, Sequence::new(idx), &series.coefficient(m, n)?))
}

/// Both expansions of ζ(a)ζ(b) set equal to the product of known values.
pub fn product_relations(
    a: &Sequence,
    b: &Sequence,
    value_a: &ConstPolynomial,
    value_b: &ConstPolynomial,
) -> Result<[Relation; 2]> {
    let product = value_a.mul(value_b).scale(&-Rational::one());
    Ok([
        Relation::new(Family::Product, stuffle_seq(a, b), product.clone()),
        Relation::new(Family::Product, shuffle_sequences(a, b)?, product),
    ])
}

/// One family at a given weight and level, in deterministic order. Families
/// needing known lower-weight values (products) are produced by the reducer.
pub fn relation_family(family: Family, weight: u32, level: u8) -> Result<Vec<Relation>> {
    let mut out = Vec::new();
    match family {
        Family::Duality => {
            for s in admissible_sequences(weight, 1) {
                let dual = crate::words::duality(&s)?;
                if s < dual {
                    out.push(duality_relation(&s)?);
                }
            }
        }
        Family::Sum => {
            for depth in 2..weight {
                out.push(sum_formula(weight, depth)?);
            }
        }
        Family::DoubleShuffle => {
            for wa in 1..weight {
                let wb = weight - wa;
                if wa > wb {
                    break;
                }
                let left = admissible_sequences(wa, level);
                let right = admissible_sequences(wb, level);
                for a in &left {
                    for b in &right {
                        if wa == wb && b < a {
                            continue;
                        }
                        let r = double_shuffle(a, b)?;
                        if !r.is_trivial() {
                            out.push(r);
                        }
                    }
                }
            }
        }
        Family::RegularizedDoubleShuffle => {
            if weight >= 2 {
                for w in admissible_sequences(weight - 1, level) {
                    let r = regularized_double_shuffle(&w)?;
                    if !r.is_trivial() {
                        out.push(r);
                    }
                }
            }
        }
        Family::Adz => {
            let series = AdzSeries::new(weight.max(DEFAULT_ADZ_TRUNCATION));
            for m in 1..weight {
                out.push(adz_relation(&series, m, weight - m)?);
            }
        }
        Family::DepthOne => {
            for v in [weight as i32, -(weight as i32)] {
                if v < 0 && level == 1 {
                    continue;
                }
                let k = Index::new(v)?;
                if let Some(value) = depth_one_value(k) {
                    out.push(Relation::pin(Family::DepthOne, Sequence::new(vec![k]), &value));
                }
            }
        }
        Family::ZetaTwos => {
            if weight.is_multiple_of(2) && weight >= 2 {
                let n = weight / 2;
                let s = Sequence::new(vec![Index::plain(2); n as usize]);
                out.push(Relation::pin(Family::ZetaTwos, s, &zeta_two_repeated(n).normalize()));
            }
        }
        Family::Product => {}
    }
    out.retain(|r| !r.zeta_part.is_zero() || !r.const_part.is_zero());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use num_traits::Zero;

    use super::*;
    use crate::rational::{int, rat};
    use crate::seq;

    /// No zero coefficients and no divergent terms.
    fn check_admissible(r: &Relation) -> Result<()> {
        match r.zeta_part.keys().find(|s| !s.is_admissible()) {
            Some(s) => Err(Error::NotAdmissible(s.clone())),
            None => {
                assert!(r.zeta_part.iter().all(|(_, c)| !c.is_zero()));
                Ok(())
            }
        }
    }

    fn comb(terms: &[(i64, Sequence)]) -> SeqComb {
        terms.iter().map(|(c, s)| (s.clone(), int(*c))).collect()
    }

    fn p(s: &str) -> ConstPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn sum_formula_examples() {
        assert_eq!(sum_formula(3, 2).unwrap().zeta_part, comb(&[(1, seq![2, 1]), (-1, seq![3])]));
        assert_eq!(
            sum_formula(4, 2).unwrap().zeta_part,
            comb(&[(1, seq![3, 1]), (1, seq![2, 2]), (-1, seq![4])])
        );
        assert_eq!(
            sum_formula(6, 4).unwrap().zeta_part,
            comb(&[
                (1, seq![2, 2, 1, 1]),
                (1, seq![2, 1, 2, 1]),
                (1, seq![2, 1, 1, 2]),
                (1, seq![3, 1, 1, 1]),
                (-1, seq![6])
            ])
        );
        assert!(sum_formula(3, 3).is_err());
        assert!(sum_formula(3, 0).is_err());
    }

    #[test]
    fn double_shuffle_two_three() {
        // (2)*(3) = (2,3)+(3,2)+(5);  (2)ш(3) = (2,3)+3(3,2)+6(4,1)
        let r = double_shuffle(&seq![2], &seq![3]).unwrap();
        assert_eq!(r.zeta_part, comb(&[(1, seq![5]), (-2, seq![3, 2]), (-6, seq![4, 1])]));
    }

    #[test]
    fn double_shuffle_two_with_three_one() {
        let star = stuffle_seq(&seq![2], &seq![3, 1]);
        assert_eq!(
            star,
            comb(&[
                (1, seq![2, 3, 1]),
                (1, seq![3, 2, 1]),
                (1, seq![3, 1, 2]),
                (1, seq![5, 1]),
                (1, seq![3, 3])
            ])
        );
        let sha = shuffle_sequences(&seq![2], &seq![3, 1]).unwrap();
        assert_eq!(
            sha,
            comb(&[(4, seq![3, 2, 1]), (1, seq![3, 1, 2]), (9, seq![4, 1, 1]), (1, seq![2, 3, 1])])
        );
    }

    #[test]
    fn double_shuffle_barred_ones() {
        let r = double_shuffle(&seq![-1], &seq![-1]).unwrap();
        assert_eq!(r.zeta_part, comb(&[(2, seq![-1, -1]), (1, seq![2]), (-2, seq![-1, 1])]));
        assert!(double_shuffle(&seq![1], &seq![2]).is_err());
    }

    #[test]
    fn regularized_examples() {
        let r = regularized_double_shuffle(&seq![-2]).unwrap();
        assert_eq!(
            r.zeta_part,
            comb(&[(1, seq![-2, 1]), (1, seq![-3]), (-1, seq![2, -1]), (-1, seq![-2, -1])])
        );
        assert!(r.all_admissible());
        let r = regularized_double_shuffle(&seq![2]).unwrap();
        assert_eq!(r.zeta_part, comb(&[(1, seq![3]), (-1, seq![2, 1])]));
        // (1)*(3) - (1)ш(3): (3,1)+(4) - [(2,2)+(3,1)+... ] worked by hand
        let r = regularized_double_shuffle(&seq![3]).unwrap();
        assert_eq!(r.zeta_part, comb(&[(1, seq![4]), (-1, seq![2, 2]), (-1, seq![3, 1])]));
    }

    #[test]
    fn eta_values() {
        assert_eq!(eta_value(1), p("-log2"));
        assert_eq!(eta_value(2), p("-1/2*zeta(2)"));
        assert_eq!(eta_value(3), p("-3/4*zeta(3)"));
    }

    #[test]
    fn zeta_twos() {
        assert_eq!(zeta_two_repeated(1).normalize(), p("zeta(2)"));
        assert_eq!(zeta_two_repeated(2).normalize(), p("3/4*zeta(4)"));
        assert_eq!(zeta_two_repeated(3).normalize(), p("3/16*zeta(6)"));
        assert_eq!(zeta_two_repeated(3).to_string(), "1/5040*pi^6");
        let _ = rat(1, 1);
    }

    #[test]
    fn relation_text() {
        let r = Relation::pin(Family::Adz, seq![4, 1], &p("-zeta(2)*zeta(3) + 2*zeta(5)"));
        assert_eq!(r.to_string(), "z(4,1) = -zeta(2)*zeta(3) + 2*zeta(5)");
        assert_eq!(r.weight(), Some(5));
    }

    #[test]
    fn families_are_homogeneous_and_admissible() {
        for fam in [
            Family::Duality,
            Family::Sum,
            Family::DoubleShuffle,
            Family::RegularizedDoubleShuffle,
            Family::Adz,
            Family::DepthOne,
            Family::ZetaTwos,
        ] {
            for w in 2..=6 {
                for r in relation_family(fam, w, 1).unwrap() {
                    assert_eq!(r.weight(), Some(w), "{fam} {r}");
                    assert!(r.all_admissible(), "{fam} {r}");
                }
            }
            for r in relation_family(fam, 3, 2).unwrap() {
                assert_eq!(r.weight(), Some(3));
                check_admissible(&r).unwrap();
            }
        }
    }
}
