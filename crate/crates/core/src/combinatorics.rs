//! Enumeration helpers: integer compositions and admissible sequences.

use crate::algebra::{Index, Sequence};

/// Compositions of `n` into positive parts, optionally with a fixed number of
/// parts. Output order is deterministic (lexicographic in the parts).
pub fn compositions(n: u32, parts: Option<u32>) -> Vec<Vec<u32>> {
    fn go(rest: u32, slots: Option<u32>, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            if slots.is_none_or(|s| s == 0) {
                out.push(prefix.clone());
            }
            return;
        }
        if slots == Some(0) {
            return;
        }
        for first in 1..=rest {
            prefix.push(first);
            go(rest - first, slots.map(|s| s - 1), prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    go(n, parts, &mut Vec::new(), &mut out);
    out
}

/// All admissible sequences of the given weight. Level 1 gives positive
/// indices only; level 2 allows every sign pattern.
pub fn admissible_sequences(weight: u32, level: u8) -> Vec<Sequence> {
    let mut out = Vec::new();
    for parts in compositions(weight, None) {
        if level == 1 {
            let s = Sequence::new(parts.iter().map(|&p| Index::plain(p)).collect());
            if s.is_admissible() {
                out.push(s);
            }
            continue;
        }
        let depth = parts.len();
        for mask in 0u32..(1 << depth) {
            let s = Sequence::new(
                parts
                    .iter()
                    .enumerate()
                    .map(|(i, &p)| if mask & (1 << i) != 0 { Index::barred(p) } else { Index::plain(p) })
                    .collect(),
            );
            if s.is_admissible() {
                out.push(s);
            }
        }
    }
    out.sort();
    out
}
