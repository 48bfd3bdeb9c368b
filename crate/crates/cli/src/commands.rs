use std::fmt;

use serde::Serialize;
use serde_json::{json, Value};

use stuffle_core::numerics::{eval_euler_sum, eval_harmonic_sum, EvalConfig};
use stuffle_core::relations::relation_family;
use stuffle_core::{ConstPolynomial, Error, Family, Rational, Reducer, SeqComb};

use crate::expr::Expr;

/// Errors sorted by exit status.
#[derive(Debug)]
pub enum CliError {
    /// Bad input: unparsable text, invalid index, bad flag value.
    Usage(String),
    /// Outside the supported weights, or a value the relations do not pin.
    Unsupported(String),
    /// Something that should hold did not.
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Unsupported(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Unsupported(m) | CliError::Failed(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::Parse { .. }
            | Error::ZeroIndex
            | Error::InvalidOuter(_)
            | Error::EmptyInner
            | Error::NotAdmissible(_)
            | Error::NotLevelOne(_)
            | Error::EmptySequence
            | Error::InvalidSumFormula { .. }
            | Error::InvalidConfig(_) => CliError::Usage(msg),
            Error::UnsupportedEnvelope { .. }
            | Error::Irreducible(_)
            | Error::TruncationExceeded { .. }
            | Error::ToleranceUnreachable { .. }
            | Error::UnsupportedAtom(_) => CliError::Unsupported(msg),
            _ => CliError::Failed(msg),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// What a command prints, in both formats, and the status to exit with.
#[derive(Debug)]
pub struct Output {
    pub text: String,
    pub json: Value,
    pub status: i32,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Output { text, json, status: 0 }
    }

    pub fn render(&self, as_json: bool) -> String {
        if as_json {
            serde_json::to_string_pretty(&self.json).expect("JSON values always serialize")
        } else {
            self.text.clone()
        }
    }
}

#[derive(Serialize)]
pub struct JsonTerm {
    pub coeff: String,
    pub seq: Vec<i32>,
}

/// Always `p/q`, so integers print as `n/1`.
pub fn json_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn json_terms(c: &SeqComb) -> Vec<JsonTerm> {
    c.iter().map(|(s, q)| JsonTerm { coeff: json_rational(q), seq: s.values() }).collect()
}

pub fn parse_expr(text: &str) -> CliResult<Expr> {
    text.parse::<Expr>().map_err(CliError::from)
}

pub fn expand(text: &str) -> CliResult<Output> {
    let spec = match parse_expr(text)? {
        Expr::Sum(spec) => spec,
        Expr::Zeta(_) => return Err(CliError::Usage("expand takes a harmonic sum S(n;...)".into())),
    };
    let c = stuffle_core::expand(&spec);
    Ok(Output::ok(c.to_string(), json!({ "terms": json_terms(&c) })))
}

pub fn closed_form(reducer: &mut Reducer, e: &Expr) -> CliResult<ConstPolynomial> {
    let p = match e {
        Expr::Sum(spec) => reducer.closed_form_harmonic(spec)?,
        Expr::Zeta(s) => reducer.value(s)?,
    };
    Ok(p)
}

pub fn reduce(text: &str) -> CliResult<Output> {
    let e = parse_expr(text)?;
    let p = closed_form(&mut Reducer::new(), &e)?;
    let terms: Vec<Value> =
        p.terms().map(|(m, q)| json!({ "coeff": json_rational(q), "monomial": m.to_string() })).collect();
    Ok(Output::ok(
        p.to_string(),
        json!({ "expr": e.to_string(), "closed_form": p.to_string(), "terms": terms }),
    ))
}

pub fn eval(text: &str, cfg: &EvalConfig) -> CliResult<Output> {
    let e = parse_expr(text)?;
    let v = match &e {
        Expr::Sum(spec) => eval_harmonic_sum(spec, cfg)?,
        Expr::Zeta(s) => eval_euler_sum(s, cfg)?,
    };
    let digits = cfg.tolerance_digits() as usize + 2;
    Ok(Output::ok(
        format!("{v:.digits$}"),
        json!({
            "expr": e.to_string(),
            "value": v.to_decimal(digits),
            "error_bound": v.error_bound,
            "heuristic": v.heuristic,
            "tolerance": cfg.tolerance,
        }),
    ))
}

pub fn relations(weight: u32, level: u8, family: Option<Family>) -> CliResult<Output> {
    if !(1..=2).contains(&level) {
        return Err(CliError::Usage(format!("level must be 1 or 2 (got {level})")));
    }
    let families: Vec<Family> = match family {
        Some(f) => vec![f],
        None => FAMILIES.to_vec(),
    };
    let mut text = Vec::new();
    let mut records = Vec::new();
    for f in families {
        for r in relation_family(f, weight, level)? {
            text.push(format!("[{}] {r}", f.name()));
            records.push(json!({
                "family": f.name(),
                "relation": r.to_string(),
                "terms": json_terms(&r.zeta_part),
                "rhs": r.rhs().to_string(),
            }));
        }
    }
    let count = records.len();
    Ok(Output::ok(
        text.join("\n"),
        json!({ "weight": weight, "level": level, "count": count, "relations": records }),
    ))
}

/// Families listed when none is chosen; products are generated inside the solver.
pub const FAMILIES: [Family; 7] = [
    Family::Duality,
    Family::Sum,
    Family::DoubleShuffle,
    Family::RegularizedDoubleShuffle,
    Family::Adz,
    Family::DepthOne,
    Family::ZetaTwos,
];

pub fn parse_family(name: &str) -> CliResult<Family> {
    Family::from_name(name).ok_or_else(|| {
        let known: Vec<&str> = FAMILIES.iter().map(|f| f.name()).collect();
        CliError::Usage(format!("unknown family '{name}' (expected one of {})", known.join(", ")))
    })
}
