use thiserror::Error;

/// Errors produced anywhere in the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("unsupported field: p = {p} ({reason})")]
    UnsupportedField { p: u64, reason: &'static str },

    #[error("variable set mismatch: {0}")]
    VarSetMismatch(String),

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("valuation of the zero polynomial is undefined")]
    UndefinedValuation,

    #[error("polynomial is not divisible by the given divisor")]
    NotDivisible,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("point does not lie on the conic")]
    NotOnConic,

    #[error("degenerate line pencil: A - B*v^2 vanishes identically")]
    DegeneratePencil,

    #[error("triple does not satisfy the cleared conic identity")]
    NotASolution,

    #[error("search budget exceeded: estimated {estimate} candidates, limit {limit}")]
    BudgetExceeded { estimate: u128, limit: u128 },

    #[error("bad sample point: {0}")]
    BadSample(String),

    #[error("ill-conditioned lift: {what} has magnitude 2^{log2_magnitude}")]
    Conditioning {
        what: &'static str,
        log2_magnitude: i64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
