use alloc::string::String;

use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("operands live over different variable tables ({left} vs {right} variables)")]
    VariableMismatch { left: usize, right: usize },
    #[error("too many variables: {0} (at most {max})", max = crate::algebra::MAX_VARS)]
    TooManyVariables(usize),
    #[error("box ({row}, {col}) lies outside the Young diagram")]
    OutsideDiagram { row: usize, col: usize },
    #[error("parts must be positive and weakly decreasing")]
    InvalidPartition,
    #[error("polynomial is not divisible by {0}")]
    NotDivisible(String),
    #[error("denominator vanishes under substitution")]
    ZeroDenominator,
    #[error("plethystic exponential needs a zero constant term")]
    NonZeroConstantTerm,
    #[error("plethystic logarithm needs constant term one")]
    ConstantTermNotOne,
    #[error("series truncation orders differ ({0} vs {1})")]
    OrderMismatch(usize, usize),
    #[error("t-expansion undefined: {0}")]
    TExpansion(String),
    #[error("invalid curve parameters: {0}")]
    InvalidParams(String),
    #[error("integrality violated at rank {rank}: {detail}")]
    Integrality { rank: usize, detail: String },
    #[error("rank {rank} and degree {degree} are not coprime")]
    NotCoprime { rank: usize, degree: i64 },
    #[error("unsupported field size {0}")]
    UnsupportedField(u64),
    #[error("enumeration of {count} Higgs fields exceeds the cap {cap}")]
    EnumerationCap { count: u128, cap: u128 },
    #[error("rank {0} is not supported by the brute-force oracle")]
    UnsupportedRank(usize),
    #[error("invalid zeta data: {0}")]
    InvalidZeta(String),
    #[error("polynomial is not invariant under the Weyl action")]
    NotWeylInvariant,
    #[error("evaluation is not an integer (residual {residual:e} >= {tol:e})")]
    NotInteger { residual: f64, tol: f64 },
    #[error("identity check failed: {0}")]
    CheckFailed(String),
    #[error("leftover variable {0} in numeric evaluation")]
    LeftoverVariable(String),
}
