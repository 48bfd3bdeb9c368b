use std::collections::BTreeMap;

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use stuffle_core::algebra::stuffle_seq;
use stuffle_core::combinatorics::admissible_sequences;
use stuffle_core::harmonic::expand;
use stuffle_core::numerics::{
    eval_const_poly, eval_euler_sum, eval_harmonic_sum, eval_lincomb, relation_residual, EvalConfig,
    NumericValue,
};
use stuffle_core::reduction::Reducer;
use stuffle_core::relations::{relation_family, sum_formula, zeta_two_repeated, Family};
use stuffle_core::words::{duality, shuffle_sequences};
use stuffle_core::{HarmonicSumSpec, SeqComb, Sequence};

fn cfg() -> EvalConfig {
    EvalConfig::default()
}

fn residual(v: &NumericValue) -> f64 {
    v.value.hi().abs()
}

/// Memoized ζ values for the larger sweeps.
struct Oracle {
    cache: BTreeMap<Sequence, NumericValue>,
    cfg: EvalConfig,
}

impl Oracle {
    fn new() -> Self {
        Oracle { cache: BTreeMap::new(), cfg: EvalConfig::with_tolerance(1e-12) }
    }

    fn zeta(&mut self, s: &Sequence) -> NumericValue {
        if let Some(v) = self.cache.get(s) {
            return *v;
        }
        let v = eval_euler_sum(s, &self.cfg).unwrap();
        self.cache.insert(s.clone(), v);
        v
    }

    fn comb(&mut self, c: &SeqComb) -> NumericValue {
        let mut total = NumericValue::zero();
        for (s, q) in c.iter() {
            let coeff = stuffle_core::numerics::constants::rational_to_real(q);
            total = total.add(&self.zeta(s).scale(coeff));
        }
        total
    }
}

#[test]
fn stuffle_homomorphism_on_random_pairs() {
    let mut pool = Vec::new();
    for w in 1..=4 {
        pool.extend(admissible_sequences(w, 2));
    }
    let mut runner = TestRunner::new(Config { cases: 20, ..Config::default() });
    let strategy = (0..pool.len(), 0..pool.len())
        .prop_filter("weight <= 5", |&(i, j)| pool[i].weight() + pool[j].weight() <= 5);
    runner
        .run(&strategy, |(i, j)| {
            let (a, b) = (&pool[i], &pool[j]);
            let na = eval_euler_sum(a, &cfg()).unwrap();
            let nb = eval_euler_sum(b, &cfg()).unwrap();
            let prod = na.mul(&nb);
            let star = eval_lincomb(&stuffle_seq(a, b), &cfg()).unwrap();
            let diff = (prod.value - star.value).abs().hi();
            prop_assert!(diff <= 1e-6, "{a} * {b}: {diff:e}");
            prop_assert!(diff <= prod.error_bound + star.error_bound + 1e-25);
            Ok(())
        })
        .unwrap();
}

#[test]
fn shuffle_side_matches_products() {
    let mut oracle = Oracle::new();
    for wa in 1..=2 {
        for wb in wa..=3 - wa {
            for a in admissible_sequences(wa, 2) {
                for b in admissible_sequences(wb, 2) {
                    let prod = oracle.zeta(&a).mul(&oracle.zeta(&b));
                    let sha = oracle.comb(&shuffle_sequences(&a, &b).unwrap());
                    assert!((prod.value - sha.value).abs().hi() <= 1e-10, "{a} ш {b}");
                }
            }
        }
    }
}

#[test]
fn duality_numerically() {
    let mut oracle = Oracle::new();
    for w in 2..=6 {
        for s in admissible_sequences(w, 1) {
            let d = duality(&s).unwrap();
            let diff = (oracle.zeta(&s).value - oracle.zeta(&d).value).abs().hi();
            assert!(diff <= 2e-12, "{s} vs {d}: {diff:e}");
        }
    }
}

#[test]
fn sum_formula_numerically() {
    for w in 3..=7 {
        for depth in 2..=4.min(w - 1) {
            let r = sum_formula(w, depth).unwrap();
            let v = relation_residual(&r, &cfg()).unwrap();
            assert!(residual(&v) <= 1e-8, "w={w} d={depth}: {:e}", residual(&v));
        }
    }
}

#[test]
fn relation_families_numerically() {
    let mut oracle = Oracle::new();
    let families = [
        Family::Duality,
        Family::Sum,
        Family::DoubleShuffle,
        Family::RegularizedDoubleShuffle,
        Family::Adz,
        Family::DepthOne,
        Family::ZetaTwos,
    ];
    let mut count = 0;
    for (level, max_w) in [(1u8, 6u32), (2, 5)] {
        for w in 2..=max_w {
            for fam in families {
                for r in relation_family(fam, w, level).unwrap() {
                    let depth = r.zeta_part.keys().map(Sequence::depth).max().unwrap_or(1) as f64;
                    let consts = eval_const_poly(&r.const_part, &cfg()).unwrap();
                    let v = oracle.comb(&r.zeta_part).add(&consts);
                    assert!(residual(&v) <= depth * 1e-8, "{fam} w={w}: {r} -> {:e}", residual(&v));
                    count += 1;
                }
            }
        }
    }
    assert!(count >= 250, "only {count} relations");
}

#[test]
fn zeta_twos_numerically() {
    for n in 1..=3u32 {
        let s = Sequence::from_values(&vec![2; n as usize]).unwrap();
        let z = eval_euler_sum(&s, &cfg()).unwrap();
        let p = eval_const_poly(&zeta_two_repeated(n), &cfg()).unwrap();
        assert!((z.value - p.value).abs().hi() <= 1e-8);
    }
}

#[test]
fn refinement_is_monotone() {
    let seqs = [Sequence::from_values(&[3, 1, 2]).unwrap(), Sequence::from_values(&[-1, -1, 1]).unwrap()];
    let specs = [
        HarmonicSumSpec::from_values(2, &[1, 1, 1]).unwrap(),
        HarmonicSumSpec::from_values(-1, &[1, -1]).unwrap(),
    ];
    let mut tol = 1e-6;
    let mut last_e = [f64::INFINITY; 2];
    let mut last_h = [f64::INFINITY; 2];
    while tol >= 1e-24 {
        let c = EvalConfig::with_tolerance(tol);
        for i in 0..2 {
            let e = eval_euler_sum(&seqs[i], &c).unwrap().error_bound;
            let h = eval_harmonic_sum(&specs[i], &c).unwrap().error_bound;
            assert!(e <= last_e[i] && e <= tol, "euler {i} at {tol:e}");
            assert!(h <= last_h[i] && h <= tol, "harmonic {i} at {tol:e}");
            last_e[i] = e;
            last_h[i] = h;
        }
        tol /= 2.0;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// The direct-summation oracle agrees with the polylogarithm oracle on expansions.
    #[test]
    fn harmonic_oracle_matches_expansion(outer in prop_oneof![Just(2i32), Just(3), Just(-1), Just(-2)],
                                         inner in prop::collection::vec(prop_oneof![Just(1i32), Just(2), Just(-1), Just(-2)], 1..=3)) {
        let spec = HarmonicSumSpec::from_values(outer, &inner).unwrap();
        prop_assume!(spec.weight() <= 6);
        let direct = eval_harmonic_sum(&spec, &cfg()).unwrap();
        let expanded = eval_lincomb(&expand(&spec), &cfg()).unwrap();
        let diff = (direct.value - expanded.value).abs().hi();
        prop_assert!(diff <= 2e-8, "{}: {:e}", spec, diff);
    }
}

#[test]
fn solved_values_match_oracle() {
    let mut reducer = Reducer::new();
    let mut oracle = Oracle::new();
    for (w, level) in [(2, 1), (3, 1), (4, 1), (5, 1), (6, 1), (7, 1), (1, 2), (2, 2), (3, 2)] {
        let sol = reducer.solve(w, level).unwrap().clone();
        assert!(sol.is_complete(), "w={w} level={level}");
        for (s, v) in &sol.values {
            let p = v.closed().unwrap();
            let diff = (oracle.zeta(s).value - eval_const_poly(p, &cfg()).unwrap().value).abs().hi();
            assert!(diff <= 1e-10, "{s} = {p}: {diff:e}");
        }
    }
}

#[test]
fn reduction_is_deterministic() {
    let render = || {
        let mut r = Reducer::new();
        let mut out = String::new();
        for (w, level) in [(6u32, 1u8), (3, 2)] {
            for (s, v) in &r.solve(w, level).unwrap().values {
                out.push_str(&format!("{s} = {v}\n"));
            }
        }
        out
    };
    assert_eq!(render(), render());
}
