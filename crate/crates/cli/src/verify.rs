//! The `verify` command: fixture tables, structural identities, property sweeps
//! and solver checks, each reported as one PASS/FAIL line.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use serde::Deserialize;
use serde_json::json;

use stuffle_core::algebra::{
    depth_one_combination, multinomial_expansion, stuffle, stuffle_power, stuffle_seq,
};
use stuffle_core::combinatorics::admissible_sequences;
use stuffle_core::harmonic::{expand_family, flajolet_combination};
use stuffle_core::numerics::{
    eval_const_poly, eval_euler_sum, eval_harmonic_sum, eval_lincomb, EvalConfig, NumericValue,
};
use stuffle_core::reduction::max_weight;
use stuffle_core::relations::{adz_coefficient, regularized_double_shuffle, relation_family, sum_formula};
use stuffle_core::words::{duality, seq_to_word, shuffle};
use stuffle_core::{expand, ConstPolynomial, Family, Index, Rational, Reducer, SeqComb, Sequence};

use crate::commands::{closed_form, CliError, CliResult, Output, FAMILIES};
use crate::expr::{parse_combination, Expr};

const PAPER_TABLES: &str = include_str!("../../../goldens/paper_tables.json");
const EXPANSIONS: &str = include_str!("../../../goldens/expansions.json");

/// Residual accepted for any numeric comparison.
pub const NUMERIC_LIMIT: f64 = 1e-6;
const TIME_LIMIT: Duration = Duration::from_secs(60);
const OUTERS: [i32; 6] = [2, 3, 5, -1, -2, -3];

#[derive(Deserialize)]
struct Fixture {
    records: Vec<Record>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct Record {
    pub id: String,
    pub lhs: String,
    pub rhs: String,
}

pub fn paper_tables() -> Vec<Record> {
    serde_json::from_str::<Fixture>(PAPER_TABLES).expect("bundled fixture is valid JSON").records
}

pub fn expansion_table() -> Vec<Record> {
    serde_json::from_str::<Fixture>(EXPANSIONS).expect("bundled fixture is valid JSON").records
}

#[derive(Clone, Debug)]
pub struct Check {
    pub group: &'static str,
    pub id: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Default)]
struct Report {
    checks: Vec<Check>,
}

impl Report {
    fn push(&mut self, group: &'static str, id: impl Into<String>, outcome: Result<String, String>) {
        let (passed, detail) = match outcome {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        self.checks.push(Check { group, id: id.into(), passed, detail });
    }

    fn into_output(self) -> Output {
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        let passed = self.checks.len() - failed;
        let mut text: Vec<String> = self
            .checks
            .iter()
            .map(|c| {
                format!("{} [{}] {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.group, c.id, c.detail)
            })
            .collect();
        text.push(format!("{passed} passed, {failed} failed"));
        let checks: Vec<_> = self
            .checks
            .iter()
            .map(|c| json!({ "group": c.group, "id": c.id, "passed": c.passed, "detail": c.detail }))
            .collect();
        Output {
            text: text.join("\n"),
            json: json!({ "passed": passed, "failed": failed, "checks": checks }),
            status: if failed == 0 { 0 } else { 1 },
        }
    }
}

fn level_of(e: &Expr) -> u8 {
    if e.has_bars() {
        2
    } else {
        1
    }
}

fn numeric(e: &Expr, cfg: &EvalConfig) -> Result<(NumericValue, Duration), String> {
    let start = Instant::now();
    let v = match e {
        Expr::Sum(spec) => eval_harmonic_sum(spec, cfg),
        Expr::Zeta(s) => eval_euler_sum(s, cfg),
    }
    .map_err(|err| err.to_string())?;
    Ok((v, start.elapsed()))
}

fn check_record(r: &Record, reducer: &mut Reducer, cfg: &EvalConfig) -> Result<String, String> {
    let lhs: Expr = r.lhs.parse().map_err(|e| format!("fixture lhs: {e}"))?;
    let want: ConstPolynomial = r.rhs.parse().map_err(|e| format!("fixture rhs: {e}"))?;
    let want = want.normalize();
    let got = closed_form(reducer, &lhs).map_err(|e| e.to_string())?;
    if got != want {
        return Err(format!("{lhs} reduced to {got}, expected {want}"));
    }
    let (v, t) = numeric(&lhs, cfg)?;
    let rhs = eval_const_poly(&want, cfg).map_err(|e| e.to_string())?;
    let residual = (v.value - rhs.value).abs().hi();
    if residual > NUMERIC_LIMIT || t > TIME_LIMIT {
        return Err(format!("{lhs}: residual {residual:.1e} in {t:.1?}"));
    }
    Ok(format!("{lhs} = {want}  (residual {residual:.1e}, {t:.1?})"))
}

fn check_expansion(r: &Record) -> Result<String, String> {
    for n in OUTERS {
        let subst = |s: &str| s.replace("n", &n.to_string());
        let lhs: Expr = subst(&r.lhs).parse().map_err(|e| format!("fixture lhs: {e}"))?;
        let want = parse_combination(&subst(&r.rhs)).map_err(|e| format!("fixture rhs: {e}"))?;
        let Expr::Sum(spec) = lhs else {
            return Err("fixture lhs is not a harmonic sum".into());
        };
        let got = expand(&spec);
        if got != want {
            return Err(format!("{spec}: got {got}, expected {want}"));
        }
    }
    Ok(format!("{} = {} for n in {OUTERS:?}", r.lhs, r.rhs))
}

fn check_multinomial() -> Result<String, String> {
    let start = Instant::now();
    for r in 1..=3u32 {
        for k in 1..=5u32 {
            for barred in [false, true] {
                let idx = if barred { Index::barred(r) } else { Index::plain(r) };
                let power = stuffle_power(&SeqComb::single(Sequence::new(vec![idx])), k);
                if multinomial_expansion(r, k, barred) != power {
                    return Err(format!("r={r} k={k} barred={barred}"));
                }
            }
        }
    }
    Ok(format!("r<=3, k<=5, both signs in {:.1?}", start.elapsed()))
}

fn check_depth_one() -> Result<String, String> {
    for m in 1..=8u32 {
        if depth_one_combination(m) != SeqComb::single(Sequence::new(vec![Index::plain(1); m as usize])) {
            return Err(format!("m={m}"));
        }
    }
    for n in 2..=5 {
        for m in 2..=4u32 {
            let family = flajolet_combination(Index::plain(n), m).map_err(|e| e.to_string())?;
            let mut target = vec![Index::plain(n)];
            target.extend(std::iter::repeat_n(Index::plain(1), m as usize));
            if expand_family(&family) != SeqComb::single(Sequence::new(target)) {
                return Err(format!("combination n={n} m={m}"));
            }
        }
    }
    Ok("({1}^m) for m<=8; combinations collapse for n=2..5, m=2..4".into())
}

fn sequences_up_to(weight: u32) -> Vec<Sequence> {
    let mut out = Vec::new();
    for w in 1..=weight {
        for parts in stuffle_core::combinatorics::compositions(w, None) {
            for mask in 0..1u32 << parts.len() {
                let idx = parts
                    .iter()
                    .enumerate()
                    .map(|(i, &p)| if mask >> i & 1 == 1 { Index::barred(p) } else { Index::plain(p) })
                    .collect();
                out.push(Sequence::new(idx));
            }
        }
    }
    out
}

fn check_stuffle_algebra() -> Result<String, String> {
    let pool = sequences_up_to(3);
    let small = sequences_up_to(2);
    let one = |s: &Sequence| SeqComb::single(s.clone());
    for a in &pool {
        for b in &pool {
            if stuffle_seq(a, b) != stuffle_seq(b, a) {
                return Err(format!("{a} * {b} not commutative"));
            }
        }
    }
    for a in &small {
        for b in &small {
            for c in &small {
                let left = stuffle(&stuffle_seq(a, b), &one(c));
                let right = stuffle(&one(a), &stuffle_seq(b, c));
                if left != right {
                    return Err(format!("({a} * {b}) * {c} not associative"));
                }
            }
        }
    }
    Ok(format!("commutative on {} pairs, associative on {} triples", pool.len().pow(2), small.len().pow(3)))
}

fn check_homomorphism(cfg: &EvalConfig) -> Result<String, String> {
    let pool: Vec<Sequence> = (1..=4).flat_map(|w| admissible_sequences(w, 2)).collect();
    let mut pairs = Vec::new();
    for (i, a) in pool.iter().enumerate() {
        for b in &pool[i..] {
            if a.weight() + b.weight() <= 5 {
                pairs.push((a, b));
            }
        }
    }
    let stride = (pairs.len() / 20).max(1);
    let mut worst = 0f64;
    let mut count = 0;
    for (a, b) in pairs.into_iter().step_by(stride).take(20) {
        let za = eval_euler_sum(a, cfg).map_err(|e| e.to_string())?;
        let zb = eval_euler_sum(b, cfg).map_err(|e| e.to_string())?;
        let star = eval_lincomb(&stuffle_seq(a, b), cfg).map_err(|e| e.to_string())?;
        let diff = (za.mul(&zb).value - star.value).abs().hi();
        if diff > NUMERIC_LIMIT {
            return Err(format!("z{a} z{b}: residual {diff:.1e}"));
        }
        worst = worst.max(diff);
        count += 1;
    }
    Ok(format!("{count} pairs of weight <= 5, max residual {worst:.1e}"))
}

fn check_duality(cfg: &EvalConfig) -> Result<String, String> {
    let mut worst = 0f64;
    let mut count = 0;
    for w in 2..=6 {
        for s in admissible_sequences(w, 1) {
            let d = duality(&s).map_err(|e| e.to_string())?;
            if duality(&d).map_err(|e| e.to_string())? != s {
                return Err(format!("{s} is not returned by the second application"));
            }
            let a = eval_euler_sum(&s, cfg).map_err(|e| e.to_string())?;
            let b = eval_euler_sum(&d, cfg).map_err(|e| e.to_string())?;
            let diff = (a.value - b.value).abs().hi();
            if diff > 2e-6 {
                return Err(format!("z{s} vs z{d}: residual {diff:.1e}"));
            }
            worst = worst.max(diff);
            count += 1;
        }
    }
    Ok(format!("{count} sequences of weight <= 6, max residual {worst:.1e}"))
}

fn check_sum_formula(cfg: &EvalConfig) -> Result<String, String> {
    let mut worst = 0f64;
    for w in 2..=7u32 {
        for depth in 1..=4.min(w - 1) {
            let r = sum_formula(w, depth).map_err(|e| e.to_string())?;
            let lhs = eval_lincomb(&r.zeta_part, cfg).map_err(|e| e.to_string())?;
            let c = eval_const_poly(&r.const_part, cfg).map_err(|e| e.to_string())?;
            let diff = lhs.add(&c).value.abs().hi();
            if diff > NUMERIC_LIMIT {
                return Err(format!("weight {w} depth {depth}: residual {diff:.1e}"));
            }
            worst = worst.max(diff);
        }
    }
    Ok(format!("weight <= 7, depth <= 4, max residual {worst:.1e}"))
}

fn check_shuffle_count() -> Result<String, String> {
    let pool = sequences_up_to(3);
    for a in &pool {
        for b in &pool {
            let (wa, wb) =
                (seq_to_word(a).map_err(|e| e.to_string())?, seq_to_word(b).map_err(|e| e.to_string())?);
            let (n, k) = ((wa.len() + wb.len()) as u64, wa.len() as u64);
            let binom = (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1));
            if shuffle(&wa, &wb).coefficient_mass() != Rational::from_integer(binom.into()) {
                return Err(format!("{a} ш {b}"));
            }
        }
    }
    Ok(format!("{} pairs", pool.len().pow(2)))
}

fn check_regularized() -> Result<String, String> {
    let seq = |v: &[i32]| Sequence::from_values(v).expect("nonzero");
    let r = regularized_double_shuffle(&seq(&[-2])).map_err(|e| e.to_string())?;
    let one = Rational::from_integer(1.into());
    let want: SeqComb = [
        (seq(&[-2, 1]), one.clone()),
        (seq(&[-3]), one.clone()),
        (seq(&[2, -1]), -one.clone()),
        (seq(&[-2, -1]), -one.clone()),
    ]
    .into_iter()
    .collect();
    let lead = r.zeta_part.coeff(&seq(&[-2, 1]));
    if lead == Rational::from_integer(0.into()) || r.zeta_part.scale(&(one / lead)) != want {
        return Err(format!("got {r}"));
    }
    if !r.const_part.is_zero() || !r.all_admissible() {
        return Err(format!("unexpected constant or divergent term in {r}"));
    }
    Ok(r.to_string())
}

fn check_adz() -> Result<String, String> {
    let families: Vec<Family> = FAMILIES.iter().copied().filter(|f| *f != Family::Adz).collect();
    let mut reducer = Reducer::with_families(&families);
    let mut count = 0;
    for m in 1..=5u32 {
        for n in 1..=6 - m {
            let a = adz_coefficient(m, n).map_err(|e| e.to_string())?;
            if a != adz_coefficient(n, m).map_err(|e| e.to_string())? {
                return Err(format!("({m},{n}) and ({n},{m}) differ"));
            }
            let mut v = vec![Index::plain(m + 1)];
            v.extend(std::iter::repeat_n(Index::plain(1), n as usize - 1));
            let s = Sequence::new(v);
            let solved = reducer.value(&s).map_err(|e| format!("z{s}: {e}"))?;
            if solved != a {
                return Err(format!("z{s}: series {a}, solver {solved}"));
            }
            count += 1;
        }
    }
    Ok(format!("{count} coefficients with m+n <= 6 match the solver run without them; symmetric"))
}

fn check_solution(reducer: &mut Reducer, weight: u32, level: u8, cfg: &EvalConfig) -> Result<String, String> {
    let sol = reducer.solve(weight, level).map_err(|e| e.to_string())?.clone();
    let open: Vec<String> = sol.irreducible().map(|s| format!("z{s}")).collect();
    let mut worst = 0f64;
    for (s, v) in &sol.values {
        let Some(p) = v.closed() else { continue };
        let z = eval_euler_sum(s, cfg).map_err(|e| e.to_string())?;
        let c = eval_const_poly(p, cfg).map_err(|e| e.to_string())?;
        let diff = (z.value - c.value).abs().hi();
        if diff > NUMERIC_LIMIT {
            return Err(format!("z{s} = {p}: residual {diff:.1e}"));
        }
        worst = worst.max(diff);
    }
    let closed = sol.values.len() - open.len();
    let mut detail = format!("{closed} closed forms, max residual {worst:.1e}");
    if !open.is_empty() {
        detail.push_str(&format!("; irreducible: {}", open.join(", ")));
    }
    Ok(detail)
}

fn check_family(family: Family, weight: u32, level: u8, cfg: &EvalConfig) -> Result<String, String> {
    let rows = relation_family(family, weight, level).map_err(|e| e.to_string())?;
    let mut worst = 0f64;
    for r in &rows {
        let z = eval_lincomb(&r.zeta_part, cfg).map_err(|e| e.to_string())?;
        let c = eval_const_poly(&r.const_part, cfg).map_err(|e| e.to_string())?;
        let diff = z.add(&c).value.abs().hi();
        if diff > NUMERIC_LIMIT {
            return Err(format!("{r}: residual {diff:.1e}"));
        }
        worst = worst.max(diff);
    }
    Ok(format!("{} relations, max residual {worst:.1e}", rows.len()))
}

/// Runs the suite. With neither filter everything runs; otherwise only the
/// fixture records, solver tables and relation families at the chosen weight
/// and level.
pub fn verify(weight: Option<u32>, level: Option<u8>, cfg: &EvalConfig) -> CliResult<Output> {
    cfg.validate()?;
    if let Some(l) = level {
        if !(1..=2).contains(&l) {
            return Err(CliError::Usage(format!("level must be 1 or 2 (got {l})")));
        }
    }
    let levels: Vec<u8> = level.map_or(vec![1, 2], |l| vec![l]);
    let mut grid: Vec<(u32, u8)> = Vec::new();
    for &l in &levels {
        let top = max_weight(l).unwrap_or(0);
        match weight {
            Some(w) if w > top || w == 0 => {}
            Some(w) => grid.push((w, l)),
            None => grid.extend((1..=top).map(|w| (w, l))),
        }
    }
    if grid.is_empty() {
        return Err(CliError::Unsupported(format!(
            "weight {} is outside the supported envelope for the requested level",
            weight.unwrap_or(0)
        )));
    }

    let full = weight.is_none() && level.is_none();
    let mut report = Report::default();
    let mut reducer = Reducer::new();

    if full {
        for r in expansion_table() {
            report.push("expand", r.id.clone(), check_expansion(&r));
        }
        report.push("algebra", "multinomial", check_multinomial());
        report.push("algebra", "depth-one", check_depth_one());
    }

    let mut records: BTreeMap<(u32, u8), Vec<Record>> = BTreeMap::new();
    for r in paper_tables() {
        let e: Expr = r.lhs.parse().map_err(|e| CliError::Failed(format!("fixture {}: {e}", r.id)))?;
        records.entry((e.weight(), level_of(&e))).or_default().push(r);
    }
    for (key, rs) in &records {
        if !grid.contains(key) {
            continue;
        }
        for r in rs {
            report.push("tables", r.id.clone(), check_record(r, &mut reducer, cfg));
        }
    }

    if full {
        report.push("properties", "stuffle-algebra", check_stuffle_algebra());
        report.push("properties", "homomorphism", check_homomorphism(cfg));
        report.push("properties", "duality", check_duality(cfg));
        report.push("properties", "sum-formula", check_sum_formula(cfg));
        report.push("properties", "shuffle-count", check_shuffle_count());
        report.push("relations", "regularized-b2", check_regularized());
        report.push("relations", "generating-function", check_adz());
    }

    for &(w, l) in &grid {
        report.push("solve", format!("w{w}-level{l}"), check_solution(&mut reducer, w, l, cfg));
        if !full {
            for f in FAMILIES {
                report.push("relations", format!("{}-w{w}-level{l}", f.name()), check_family(f, w, l, cfg));
            }
        }
    }
    Ok(report.into_output())
}

#[cfg(test)]
mod tests {
    use super::*;
    use stuffle_core::HarmonicSumSpec;

    #[test]
    fn fixtures_parse() {
        for r in paper_tables() {
            assert!(r.lhs.parse::<Expr>().is_ok(), "{}", r.id);
            assert!(r.rhs.parse::<ConstPolynomial>().is_ok(), "{}", r.id);
        }
        assert_eq!(paper_tables().len(), 36);
        assert_eq!(expansion_table().len(), 8);
    }

    #[test]
    fn expansion_records_hold() {
        for r in expansion_table() {
            check_expansion(&r).unwrap();
        }
    }

    #[test]
    fn weight_five_level_one() {
        let out = verify(Some(5), Some(1), &EvalConfig::default()).unwrap();
        assert_eq!(out.status, 0, "{}", out.text);
        for id in ["z41", "z32", "z23", "s2-111"] {
            assert!(out.text.contains(&format!("PASS [tables] {id}:")), "{id}");
        }
    }

    #[test]
    fn outside_envelope() {
        assert_eq!(verify(Some(9), Some(1), &EvalConfig::default()).unwrap_err().exit_code(), 3);
        assert_eq!(verify(None, Some(4), &EvalConfig::default()).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn structural_checks_pass() {
        check_multinomial().unwrap();
        check_depth_one().unwrap();
        check_regularized().unwrap();
        check_adz().unwrap();
        check_shuffle_count().unwrap();
    }

    #[test]
    fn spec_is_harmonic() {
        let e: Expr = "S(2;1,1)".parse().unwrap();
        assert!(matches!(e, Expr::Sum(ref s) if *s == HarmonicSumSpec::from_values(2, &[1, 1]).unwrap()));
    }
}
