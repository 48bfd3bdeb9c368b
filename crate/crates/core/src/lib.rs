//! Exact and numerical manipulation of (alternating) Euler sums and
//! nonlinear harmonic sums.
//!
//! Harmonic sums are expanded into Euler sums through the quasi-shuffle
//! (stuffle) algebra; Euler sums are related to each other through duality,
//! double shuffle and generating-function identities, and reduced to
//! classical constants by exact linear algebra. Numerical evaluation provides
//! an independent cross-check.

pub mod algebra;
pub mod bernoulli;
pub mod combinatorics;
pub mod error;
pub mod harmonic;
pub mod numerics;
pub mod rational;
pub mod reduction;
pub mod relations;
pub mod words;

pub use algebra::{Index, LinComb, SeqComb, Sequence};
pub use error::{Error, Result};
pub use harmonic::{expand, HarmonicSumSpec};
pub use numerics::{EvalConfig, NumericValue};
pub use rational::Rational;
pub use reduction::{closed_form_harmonic, Reduced, Reducer};
pub use relations::{ConstAtom, ConstMonomial, ConstPolynomial, Family, Relation};
