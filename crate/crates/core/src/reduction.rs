//! Exact reduction of Euler sums to classical constants.
//!
//! For a fixed weight and level every relation generator is instantiated,
//! the rows are row-reduced over Q with polynomial right-hand sides, and each
//! unknown whose pivot row involves no free column receives a closed form.
//! Lower weights are solved first so products of known values can be used.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::{SeqComb, Sequence};
use crate::combinatorics::admissible_sequences;
use crate::error::{Error, Result};
use crate::harmonic::{expand, HarmonicSumSpec};
use crate::rational::Rational;
use crate::relations::{
    product_relations, relation_family, ConstMonomial, ConstPolynomial, Family, Relation,
};

/// Largest weight handled at each level.
pub fn max_weight(level: u8) -> Option<u32> {
    match level {
        1 => Some(7),
        2 => Some(3),
        _ => None,
    }
}

fn check_envelope(weight: u32, level: u8) -> Result<()> {
    match max_weight(level) {
        Some(max) if weight >= 1 && weight <= max => Ok(()),
        _ => Err(Error::UnsupportedEnvelope { weight, level }),
    }
}

const ALL_FAMILIES: [Family; 7] = [
    Family::DepthOne,
    Family::ZetaTwos,
    Family::Duality,
    Family::Sum,
    Family::Adz,
    Family::DoubleShuffle,
    Family::RegularizedDoubleShuffle,
];

#[derive(Clone, Debug)]
pub struct ReductionSystem {
    pub weight: u32,
    pub level: u8,
    pub unknowns: Vec<Sequence>,
    pub knowns: Vec<ConstMonomial>,
    pub rows: Vec<Relation>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Reduced {
    Closed(ConstPolynomial),
    Irreducible,
}

impl Reduced {
    pub fn closed(&self) -> Option<&ConstPolynomial> {
        match self {
            Reduced::Closed(p) => Some(p),
            Reduced::Irreducible => None,
        }
    }
}

impl fmt::Display for Reduced {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reduced::Closed(p) => write!(f, "{p}"),
            Reduced::Irreducible => f.write_str("irreducible"),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Solution {
    pub values: BTreeMap<Sequence, Reduced>,
    pub rank: usize,
}

impl Solution {
    pub fn get(&self, s: &Sequence) -> Option<&Reduced> {
        self.values.get(s)
    }

    pub fn closed(&self, s: &Sequence) -> Option<&ConstPolynomial> {
        self.values.get(s).and_then(Reduced::closed)
    }

    pub fn irreducible(&self) -> impl Iterator<Item = &Sequence> {
        self.values.iter().filter(|(_, v)| matches!(v, Reduced::Irreducible)).map(|(s, _)| s)
    }

    pub fn is_complete(&self) -> bool {
        self.irreducible().next().is_none()
    }
}

/// Builds and solves systems, caching each (weight, level) solution.
#[derive(Clone, Debug)]
pub struct Reducer {
    families: BTreeSet<Family>,
    cache: BTreeMap<(u32, u8), Solution>,
}

impl Default for Reducer {
    fn default() -> Self {
        Reducer::new()
    }
}

impl Reducer {
    pub fn new() -> Self {
        Reducer::with_families(&ALL_FAMILIES)
    }

    /// Restricts the generators used; products of solved lower-weight values
    /// are always included.
    pub fn with_families(families: &[Family]) -> Self {
        Reducer { families: families.iter().copied().collect(), cache: BTreeMap::new() }
    }

    pub fn system(&mut self, weight: u32, level: u8) -> Result<ReductionSystem> {
        check_envelope(weight, level)?;
        let mut rows = Vec::new();
        for &family in &self.families {
            rows.extend(relation_family(family, weight, level)?);
        }
        for wa in 1..weight {
            let wb = weight - wa;
            if wa > wb {
                break;
            }
            let left = self.solve(wa, level)?.clone();
            let right = if wa == wb { left.clone() } else { self.solve(wb, level)?.clone() };
            for (a, va) in left.values.iter().filter_map(|(s, v)| Some((s, v.closed()?))) {
                for (b, vb) in right.values.iter().filter_map(|(s, v)| Some((s, v.closed()?))) {
                    if wa == wb && b < a {
                        continue;
                    }
                    rows.extend(product_relations(a, b, va, vb)?);
                }
            }
        }
        for r in &mut rows {
            r.const_part = r.const_part.normalize();
        }
        rows.retain(|r| !r.is_trivial());
        for r in &rows {
            if r.weight() != Some(weight) || !r.all_admissible() {
                return Err(Error::Inconsistent(format!("malformed {} row: {r}", r.family)));
            }
        }

        let mut unknowns = admissible_sequences(weight, level);
        unknowns.sort_by(|a, b| Reverse(a.depth()).cmp(&Reverse(b.depth())).then_with(|| a.cmp(b)));
        let knowns: BTreeSet<ConstMonomial> =
            rows.iter().flat_map(|r| r.const_part.terms().map(|(m, _)| m.clone())).collect();
        Ok(ReductionSystem { weight, level, unknowns, knowns: knowns.into_iter().collect(), rows })
    }

    pub fn solve(&mut self, weight: u32, level: u8) -> Result<&Solution> {
        if !self.cache.contains_key(&(weight, level)) {
            let system = self.system(weight, level)?;
            let solution = solve(&system)?;
            self.cache.insert((weight, level), solution);
        }
        Ok(&self.cache[&(weight, level)])
    }

    /// Closed form of a single admissible sequence.
    pub fn value(&mut self, s: &Sequence) -> Result<ConstPolynomial> {
        if !s.is_admissible() {
            return Err(Error::NotAdmissible(s.clone()));
        }
        let level = if s.has_bars() { 2 } else { 1 };
        match self.solve(s.weight(), level)?.get(s) {
            Some(Reduced::Closed(p)) => Ok(p.clone()),
            _ => Err(Error::Irreducible(s.clone())),
        }
    }

    /// Substitutes closed forms into a linear combination of sequences.
    pub fn closed_form(&mut self, c: &SeqComb) -> Result<ConstPolynomial> {
        let mut out = ConstPolynomial::zero();
        for (s, coeff) in c.iter() {
            out = out.add(&self.value(s)?.scale(coeff));
        }
        Ok(out.normalize())
    }

    pub fn closed_form_harmonic(&mut self, spec: &HarmonicSumSpec) -> Result<ConstPolynomial> {
        let level = if spec.has_bars() { 2 } else { 1 };
        check_envelope(spec.weight(), level)?;
        self.closed_form(&expand(spec))
    }
}

pub fn build_system(weight: u32, level: u8) -> Result<ReductionSystem> {
    Reducer::new().system(weight, level)
}

pub fn closed_form_harmonic(spec: &HarmonicSumSpec) -> Result<ConstPolynomial> {
    Reducer::new().closed_form_harmonic(spec)
}

struct Row {
    coeffs: Vec<Rational>,
    rhs: ConstPolynomial,
}

/// Gauss-Jordan elimination; the first available row is always the pivot.
pub fn solve(system: &ReductionSystem) -> Result<Solution> {
    let n = system.unknowns.len();
    let column: BTreeMap<&Sequence, usize> =
        system.unknowns.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut rows = Vec::with_capacity(system.rows.len());
    for r in &system.rows {
        let mut coeffs = vec![Rational::zero(); n];
        for (s, c) in r.zeta_part.iter() {
            let &j = column
                .get(s)
                .ok_or_else(|| Error::Inconsistent(format!("{s} is not an unknown of the system")))?;
            coeffs[j] = c.clone();
        }
        rows.push(Row { coeffs, rhs: r.rhs() });
    }

    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..n {
        let Some(p) = (next..rows.len()).find(|&i| !rows[i].coeffs[col].is_zero()) else {
            continue;
        };
        rows.swap(next, p);
        let inv = Rational::one() / &rows[next].coeffs[col];
        if !inv.is_one() {
            let row = &mut rows[next];
            for c in row.coeffs.iter_mut() {
                *c = &*c * &inv;
            }
            row.rhs = row.rhs.scale(&inv);
        }
        let (before, rest) = rows.split_at_mut(next);
        let (pivot, after) = rest.split_first_mut().expect("pivot row");
        for row in before.iter_mut().chain(after.iter_mut()) {
            let f = row.coeffs[col].clone();
            if f.is_zero() {
                continue;
            }
            for (c, pc) in row.coeffs.iter_mut().zip(&pivot.coeffs).skip(col) {
                if !pc.is_zero() {
                    *c -= &f * pc;
                }
            }
            row.rhs = row.rhs.sub(&pivot.rhs.scale(&f));
        }
        pivots.push(col);
        next += 1;
    }

    if let Some(bad) = rows[next..].iter().find(|r| !r.rhs.is_zero()) {
        return Err(Error::Inconsistent(format!(
            "weight {} level {}: 0 = {}",
            system.weight, system.level, bad.rhs
        )));
    }

    let pivot_set: BTreeSet<usize> = pivots.iter().copied().collect();
    let mut values = BTreeMap::new();
    for s in &system.unknowns {
        values.insert(s.clone(), Reduced::Irreducible);
    }
    for (r, &col) in pivots.iter().enumerate() {
        let row = &rows[r];
        let depends_on_free =
            row.coeffs.iter().enumerate().any(|(j, c)| j != col && !c.is_zero() && !pivot_set.contains(&j));
        if !depends_on_free {
            values.insert(system.unknowns[col].clone(), Reduced::Closed(row.rhs.normalize()));
        }
    }

    for r in &system.rows {
        let mut residual = r.const_part.clone();
        let mut all_closed = true;
        for (s, c) in r.zeta_part.iter() {
            match values.get(s).and_then(Reduced::closed) {
                Some(v) => residual = residual.add(&v.scale(c)),
                None => all_closed = false,
            }
        }
        if all_closed && !residual.normalize().is_zero() {
            return Err(Error::Inconsistent(format!("{} row {r} leaves {residual}", r.family)));
        }
    }

    Ok(Solution { values, rank: pivots.len() })
}
