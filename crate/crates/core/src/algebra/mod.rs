//! Exact arithmetic: rationals, a small dense matrix inverse, and supercommutative
//! truncated series.

pub mod matrix;
pub mod rational;
pub mod series;

pub use rational::{format_rational, int, parse_rational, QuotedRational, Rational};
pub use series::{
    epsilon_sign, monomial_mul, Cutoff, Monomial, Sign, SignRule, TruncatedSeries, VarSpace,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("variable-count mismatch: expected {expected}, found {found}")]
    VariableCount { expected: usize, found: usize },
    #[error("lattice rank mismatch: expected {expected}, found {found}")]
    LatticeRank { expected: usize, found: usize },
    #[error("odd variable t_{variable} has exponent >= 2")]
    OddSquare { variable: usize },
    #[error("Novikov exponent {0:?} is not effective")]
    NonEffective(Vec<i64>),
    #[error("series live over different variable sets")]
    SpaceMismatch,
}
