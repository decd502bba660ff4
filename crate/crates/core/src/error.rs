use thiserror::Error;

use crate::theta::ThetaInvalidity;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph order must be at least {min}, got {n}")]
    InvalidOrder { n: u64, min: u64 },

    #[error("jump {value} is congruent to 0 mod {n} (self-loop)")]
    InvalidJump { n: u64, value: i64 },

    #[error("connection set is empty")]
    EmptyConnectionSet,

    #[error("scale factor must be positive")]
    InvalidScale,

    #[error("{x} is not a unit modulo {n}")]
    NotAUnit { n: u64, x: u64 },

    #[error("order mismatch: {left} vs {right}")]
    OrderMismatch { left: u64, right: u64 },

    #[error("invalid rotation parameters: {}", join_reasons(.0))]
    InvalidTheta(Vec<ThetaInvalidity>),

    #[error("group axiom violated: {0}")]
    GroupAxiom(String),

    #[error("index set is not a subgroup of Z_{modulus}: {detail}")]
    SubgroupViolation { modulus: u64, detail: String },

    #[error("degenerate family: {0}")]
    DegenerateFamily(String),

    #[error("invalid family parameters: {0}")]
    InvalidFamilyParams(String),

    #[error("verification failed: {0}")]
    VerificationFailure(String),

    #[error("enumeration needs {needed} candidates, budget is {cap}")]
    BudgetExceeded { needed: u128, cap: u128 },

    #[error("not applicable: {0}")]
    Inapplicable(String),
}

fn join_reasons(reasons: &[ThetaInvalidity]) -> String {
    reasons.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("; ")
}
