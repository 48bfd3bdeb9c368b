use thiserror::Error;

use crate::algebra::Sequence;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("index must be nonzero")]
    ZeroIndex,

    #[error("outer index must be nonzero, >=2 if positive (got {0})")]
    InvalidOuter(i64),

    #[error("harmonic sum needs at least one inner index")]
    EmptyInner,

    #[error("{0} is not admissible (leading index is an unbarred 1)")]
    NotAdmissible(Sequence),

    #[error("{0} is not a positive admissible sequence")]
    NotLevelOne(Sequence),

    #[error("word does not end with a y-letter and cannot be decoded")]
    NotDecodable,

    #[error("empty sequence has no word")]
    EmptySequence,

    #[error("sum formula needs weight > depth >= 1 (got weight {weight}, depth {depth})")]
    InvalidSumFormula { weight: u32, depth: u32 },

    #[error("divergent term {0} survived regularization")]
    DivergentTerm(Sequence),

    #[error("coefficient of x^{m} y^{n} lies beyond truncation degree {truncation}")]
    TruncationExceeded { m: u32, n: u32, truncation: u32 },

    #[error("weight {weight} at level {level} is outside the supported envelope")]
    UnsupportedEnvelope { weight: u32, level: u8 },

    #[error("inconsistent relation system: {0}")]
    Inconsistent(String),

    #[error("{0} is not reducible by the generated relations")]
    Irreducible(Sequence),

    #[error("tolerance {tolerance:e} not reached within {max_terms} terms")]
    ToleranceUnreachable { tolerance: f64, max_terms: usize },

    #[error("invalid evaluation config: {0}")]
    InvalidConfig(String),

    #[error("no numerical evaluator for constant {0}")]
    UnsupportedAtom(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
