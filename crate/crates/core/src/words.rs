//! Iterated-integral words over {x, y⁺, y⁻} and the shuffle product.
//!
//! A sequence (k₁,…,kₙ) with signs σⱼ maps to the word
//! x^{k₁-1} y^{ε₁} ⋯ x^{kₙ-1} y^{εₙ} with εⱼ = σ₁⋯σⱼ. For positive sequences
//! this is the usual z_{k₁}⋯z_{kₙ} with z_k = x^{k-1}y.

use std::fmt;

use crate::algebra::{Index, LinComb, SeqComb, Sequence};
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Letter {
    X,
    YPlus,
    YMinus,
}

impl Letter {
    fn y(sign: i32) -> Letter {
        if sign > 0 {
            Letter::YPlus
        } else {
            Letter::YMinus
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_decodable(&self) -> bool {
        matches!(self.0.last(), Some(Letter::YPlus | Letter::YMinus))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for l in &self.0 {
            f.write_str(match l {
                Letter::X => "x",
                Letter::YPlus => "y+",
                Letter::YMinus => "y-",
            })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub fn seq_to_word(s: &Sequence) -> Result<Word> {
    if s.is_unit() {
        return Err(Error::EmptySequence);
    }
    let mut letters = Vec::with_capacity(s.weight() as usize);
    let mut running = 1;
    for k in s.indices() {
        running *= k.sign();
        letters.extend(std::iter::repeat_n(Letter::X, k.magnitude() as usize - 1));
        letters.push(Letter::y(running));
    }
    Ok(Word(letters))
}

pub fn word_to_seq(w: &Word) -> Result<Sequence> {
    if !w.is_decodable() {
        return Err(Error::NotDecodable);
    }
    let mut out = Vec::new();
    let mut run = 0u32;
    let mut prev = 1;
    for &l in &w.0 {
        match l {
            Letter::X => run += 1,
            Letter::YPlus | Letter::YMinus => {
                let eps = if l == Letter::YPlus { 1 } else { -1 };
                let magnitude = (run + 1) as i32;
                out.push(Index::new(magnitude * eps * prev).expect("positive magnitude"));
                prev = eps;
                run = 0;
            }
        }
    }
    Ok(Sequence::new(out))
}

/// All order-preserving interleavings, with multiplicity.
pub fn shuffle(a: &Word, b: &Word) -> LinComb<Word> {
    let (a, b) = (&a.0, &b.0);
    let (la, lb) = (a.len(), b.len());
    let mut table: Vec<Vec<LinComb<Word>>> = vec![vec![LinComb::zero(); lb + 1]; la + 1];
    for j in 0..=lb {
        table[la][j] = LinComb::single(Word(b[j..].to_vec()));
    }
    for i in 0..la {
        table[i][lb] = LinComb::single(Word(a[i..].to_vec()));
    }
    for i in (0..la).rev() {
        for j in (0..lb).rev() {
            let mut cell = LinComb::zero();
            for (head, rest) in [(a[i], &table[i + 1][j]), (b[j], &table[i][j + 1])] {
                for (w, c) in rest.iter() {
                    let mut v = Vec::with_capacity(w.len() + 1);
                    v.push(head);
                    v.extend_from_slice(&w.0);
                    cell.add_term(Word(v), c.clone());
                }
            }
            table[i][j] = cell;
        }
    }
    std::mem::take(&mut table[0][0])
}

pub fn shuffle_comb(a: &LinComb<Word>, b: &LinComb<Word>) -> LinComb<Word> {
    let mut out = LinComb::zero();
    for (wa, ca) in a.iter() {
        for (wb, cb) in b.iter() {
            out.add_assign_scaled(&shuffle(wa, wb), &(ca * cb));
        }
    }
    out
}

/// Decodes every word of a combination back to sequences.
pub fn decode(c: &LinComb<Word>) -> Result<SeqComb> {
    let mut out = SeqComb::zero();
    for (w, coeff) in c.iter() {
        out.add_term(word_to_seq(w)?, coeff.clone());
    }
    Ok(out)
}

/// Shuffle product of two sequences, returned in sequence space.
pub fn shuffle_sequences(a: &Sequence, b: &Sequence) -> Result<SeqComb> {
    decode(&shuffle(&seq_to_word(a)?, &seq_to_word(b)?))
}

/// Dual of a positive admissible sequence: reverse the word and swap x with y.
pub fn duality(s: &Sequence) -> Result<Sequence> {
    if !s.is_positive_admissible() {
        return Err(Error::NotLevelOne(s.clone()));
    }
    let w = seq_to_word(s)?;
    let dual: Vec<Letter> =
        w.0.iter()
            .rev()
            .map(|l| match l {
                Letter::X => Letter::YPlus,
                _ => Letter::X,
            })
            .collect();
    word_to_seq(&Word(dual))
}

/// Dual via the block description k = (a₁+1,{1}^{b₁-1},…,a_s+1,{1}^{b_s-1})
/// ↦ (b_s+1,{1}^{a_s-1},…,b₁+1,{1}^{a₁-1}).
pub fn duality_by_blocks(s: &Sequence) -> Result<Sequence> {
    if !s.is_positive_admissible() {
        return Err(Error::NotLevelOne(s.clone()));
    }
    let mut blocks: Vec<(u32, u32)> = Vec::new();
    for k in s.indices() {
        let k = k.magnitude();
        if k >= 2 {
            blocks.push((k - 1, 1));
        } else {
            blocks.last_mut().expect("admissible sequences open a block").1 += 1;
        }
    }
    let mut out = Vec::new();
    for &(a, b) in blocks.iter().rev() {
        out.push(Index::plain(b + 1));
        out.extend(std::iter::repeat_n(Index::plain(1), a as usize - 1));
    }
    Ok(Sequence::new(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use crate::seq;
    use Letter::*;

    fn w(letters: &[Letter]) -> Word {
        Word::new(letters.to_vec())
    }

    #[test]
    fn encoding_examples() {
        assert_eq!(seq_to_word(&seq![2, 1]).unwrap(), w(&[X, YPlus, YPlus]));
        assert_eq!(seq_to_word(&seq![-1, 1]).unwrap(), w(&[YMinus, YMinus]));
        assert_eq!(seq_to_word(&seq![-2]).unwrap(), w(&[X, YMinus]));
        assert_eq!(seq_to_word(&seq![]), Err(Error::EmptySequence));
    }

    #[test]
    fn decoding_examples() {
        assert_eq!(word_to_seq(&w(&[X, YPlus, YPlus])).unwrap(), seq![2, 1]);
        assert_eq!(word_to_seq(&w(&[YMinus, YMinus, YMinus])).unwrap(), seq![-1, 1, 1]);
        assert_eq!(word_to_seq(&w(&[X, X])), Err(Error::NotDecodable));
        assert_eq!(word_to_seq(&Word::empty()), Err(Error::NotDecodable));
    }

    #[test]
    fn shuffle_examples() {
        let a = w(&[YMinus]);
        let b = w(&[YMinus, YMinus]);
        assert_eq!(shuffle(&a, &b), LinComb::term(w(&[YMinus, YMinus, YMinus]), int(3)));
        assert_eq!(decode(&shuffle(&a, &b)).unwrap(), SeqComb::term(seq![-1, 1, 1], int(3)));
        assert_eq!(decode(&shuffle(&a, &a)).unwrap(), SeqComb::term(seq![-1, 1], int(2)));
        let x = w(&[X, YPlus]);
        assert_eq!(shuffle(&Word::empty(), &x), LinComb::single(x.clone()));
    }

    #[test]
    fn duality_examples() {
        assert_eq!(duality(&seq![3, 1, 1, 1]).unwrap(), seq![5, 1]);
        assert_eq!(duality(&seq![2]).unwrap(), seq![2]);
        assert_eq!(duality(&seq![2, 1, 1, 1, 1]).unwrap(), seq![6]);
        assert_eq!(duality(&seq![2, 3, 1]).unwrap(), seq![3, 1, 2]);
        assert!(duality(&seq![-2]).is_err());
        assert!(duality(&seq![1, 2]).is_err());
    }

    #[test]
    fn block_form_agrees_on_weight_seven() {
        for s in crate::combinatorics::admissible_sequences(7, 1) {
            assert_eq!(duality(&s).unwrap(), duality_by_blocks(&s).unwrap(), "{s}");
        }
    }
}
