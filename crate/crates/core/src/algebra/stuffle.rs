//! The harmonic shuffle (stuffle) product and its closed-form powers.

use num_bigint::BigInt;
use num_traits::One;

use super::{Index, SeqComb, Sequence};
use crate::combinatorics::compositions;
use crate::rational::{factorial, Rational};

pub fn concat(a: &Sequence, b: &Sequence) -> Sequence {
    let mut v = a.indices().to_vec();
    v.extend_from_slice(b.indices());
    Sequence::new(v)
}

/// The overlap letter p(k+l): magnitude |k|+|l|, barred iff exactly one
/// argument is barred.
pub fn merge(k: Index, l: Index) -> Index {
    let magnitude = (k.magnitude() + l.magnitude()) as i32;
    Index::new(magnitude * k.sign() * l.sign()).expect("magnitude is positive")
}

fn prepend_all(head: Index, c: &SeqComb, out: &mut SeqComb) {
    for (s, coeff) in c.iter() {
        out.add_term(s.prepend(head), coeff.clone());
    }
}

/// Stuffle of two plain sequences.
///
/// Fills a table over suffix pairs from the back so each suffix product is
/// built once.
pub fn stuffle_seq(a: &Sequence, b: &Sequence) -> SeqComb {
    let (a, b) = (a.indices(), b.indices());
    let (la, lb) = (a.len(), b.len());
    let mut table: Vec<Vec<SeqComb>> = vec![vec![SeqComb::zero(); lb + 1]; la + 1];
    for j in 0..=lb {
        table[la][j] = SeqComb::single(Sequence::new(b[j..].to_vec()));
    }
    for i in 0..la {
        table[i][lb] = SeqComb::single(Sequence::new(a[i..].to_vec()));
    }
    for i in (0..la).rev() {
        for j in (0..lb).rev() {
            let mut cell = SeqComb::zero();
            prepend_all(a[i], &table[i + 1][j], &mut cell);
            prepend_all(b[j], &table[i][j + 1], &mut cell);
            prepend_all(merge(a[i], b[j]), &table[i + 1][j + 1], &mut cell);
            table[i][j] = cell;
        }
    }
    std::mem::take(&mut table[0][0])
}

/// Bilinear extension of [`stuffle_seq`].
pub fn stuffle(a: &SeqComb, b: &SeqComb) -> SeqComb {
    let mut out = SeqComb::zero();
    for (sa, ca) in a.iter() {
        for (sb, cb) in b.iter() {
            out.add_assign_scaled(&stuffle_seq(sa, sb), &(ca * cb));
        }
    }
    out
}

/// k-fold stuffle power; `k = 0` gives the unit.
pub fn stuffle_power(a: &SeqComb, k: u32) -> SeqComb {
    let mut acc = SeqComb::unit();
    for _ in 0..k {
        acc = stuffle(&acc, a);
    }
    acc
}

/// Closed form of (r)^{*k} (or (r̄)^{*k} when `barred`) as a sum over
/// compositions a₁+…+a_l = k with multinomial coefficients k!/(a₁!⋯a_l!).
///
/// In the barred case the part r·aᵢ carries a bar exactly when aᵢ is odd.
pub fn multinomial_expansion(r: u32, k: u32, barred: bool) -> SeqComb {
    assert!(r >= 1 && k >= 1, "multinomial_expansion needs r, k >= 1");
    let k_fact = factorial(k);
    let mut out = SeqComb::zero();
    for parts in compositions(k, None) {
        let denom = parts.iter().fold(BigInt::one(), |acc, &a| acc * factorial(a));
        let seq = parts
            .iter()
            .map(|&a| if barred && a % 2 == 1 { Index::barred(r * a) } else { Index::plain(r * a) })
            .collect::<Vec<_>>();
        out.add_term(Sequence::new(seq), Rational::new(k_fact.clone(), denom));
    }
    out
}

/// Σ_{l=1}^{m} (-1)^{m-l}/l! Σ_{r₁+…+r_l=m} 1/(r₁⋯r_l) · (r₁)*⋯*(r_l),
/// which collapses to the single sequence ({1}^m).
pub fn depth_one_combination(m: u32) -> SeqComb {
    assert!(m >= 1, "depth_one_combination needs m >= 1");
    let mut out = SeqComb::zero();
    for parts in compositions(m, None) {
        let l = parts.len() as u32;
        let sign = if (m - l).is_multiple_of(2) { 1 } else { -1 };
        let prod: BigInt = parts.iter().fold(BigInt::one(), |acc, &r| acc * BigInt::from(r));
        let coeff = Rational::new(BigInt::from(sign), factorial(l) * prod);
        let product = parts.iter().fold(SeqComb::unit(), |acc, &r| {
            stuffle(&acc, &SeqComb::single(Sequence::new(vec![Index::plain(r)])))
        });
        out.add_assign_scaled(&product, &coeff);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use crate::seq;

    fn comb(terms: &[(i64, Sequence)]) -> SeqComb {
        terms.iter().map(|(c, s)| (s.clone(), int(*c))).collect()
    }

    fn one(s: Sequence) -> SeqComb {
        SeqComb::single(s)
    }

    #[test]
    fn concat_cases() {
        assert_eq!(concat(&seq![2], &seq![1, 1]), seq![2, 1, 1]);
        assert_eq!(concat(&seq![], &seq![3]), seq![3]);
        assert_eq!(concat(&seq![-1], &seq![-2]), seq![-1, -2]);
    }

    #[test]
    fn merge_cases() {
        let m = |a, b| merge(Index::new(a).unwrap(), Index::new(b).unwrap()).value();
        assert_eq!(m(1, 1), 2);
        assert_eq!(m(-1, -2), 3);
        assert_eq!(m(1, -2), -3);
        assert_eq!(m(-4, 1), -5);
    }

    #[test]
    fn small_products() {
        assert_eq!(stuffle(&one(seq![1]), &one(seq![1])), comb(&[(2, seq![1, 1]), (1, seq![2])]));
        assert_eq!(
            stuffle(&one(seq![1]), &one(seq![-2])),
            comb(&[(1, seq![1, -2]), (1, seq![-2, 1]), (1, seq![-3])])
        );
        assert_eq!(
            stuffle(&one(seq![-1]), &one(seq![-2])),
            comb(&[(1, seq![-1, -2]), (1, seq![-2, -1]), (1, seq![3])])
        );
        let triple = comb(&[(1, seq![3]), (3, seq![1, 2]), (3, seq![2, 1]), (6, seq![1, 1, 1])]);
        let p = stuffle(&stuffle(&one(seq![1]), &one(seq![1])), &one(seq![1]));
        assert_eq!(p, triple);
        assert_eq!(stuffle_power(&one(seq![1]), 3), triple);
    }

    #[test]
    fn unit_and_zero() {
        let a = one(seq![5, -3]);
        assert_eq!(stuffle(&SeqComb::unit(), &a), a);
        assert_eq!(stuffle(&a, &SeqComb::unit()), a);
        assert!(stuffle(&SeqComb::zero(), &a).is_zero());
        assert_eq!(stuffle_power(&one(seq![-7]), 0), SeqComb::unit());
    }

    #[test]
    fn multinomial_small_cases() {
        assert_eq!(multinomial_expansion(1, 2, false), comb(&[(1, seq![2]), (2, seq![1, 1])]));
        assert_eq!(multinomial_expansion(1, 1, true), one(seq![-1]));
        assert_eq!(multinomial_expansion(1, 3, true), stuffle_power(&one(seq![-1]), 3));
    }

    #[test]
    fn depth_one_small_cases() {
        assert_eq!(depth_one_combination(1), one(seq![1]));
        assert_eq!(depth_one_combination(2), one(seq![1, 1]));
        assert_eq!(depth_one_combination(3), one(seq![1, 1, 1]));
    }

    /// Ordered set partitions of a k-set, counted by brute force: assign each
    /// element a block label and keep surjective labellings onto 0..b.
    fn fubini_brute_force(k: u32) -> u64 {
        let mut total = 0;
        for blocks in 1..=k {
            let labellings = (blocks as u64).pow(k);
            for code in 0..labellings {
                let mut seen = vec![false; blocks as usize];
                let mut c = code;
                for _ in 0..k {
                    seen[(c % blocks as u64) as usize] = true;
                    c /= blocks as u64;
                }
                if seen.iter().all(|&s| s) {
                    total += 1;
                }
            }
        }
        total
    }

    #[test]
    fn coefficient_mass_is_fubini() {
        let expected = [1u64, 3, 13, 75];
        for k in 1..=4u32 {
            assert_eq!(fubini_brute_force(k), expected[k as usize - 1]);
            let mass = stuffle_power(&one(seq![1]), k).coefficient_mass();
            assert_eq!(mass, int(expected[k as usize - 1] as i64));
        }
    }
}
