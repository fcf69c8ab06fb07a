use thiserror::Error;

use crate::patterns::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot factor {value}: no factor found below the trial-division bound {bound}")]
    FactorBoundExceeded { value: String, bound: u64 },

    #[error("radicand {0} does not fit in 64 bits")]
    RadicandOverflow(String),

    #[error("square root of a negative number: {0}")]
    NegativeRadicand(String),

    #[error("not a partition: {0}")]
    InvalidPartition(String),

    #[error("partition {partition} is not inside the ({k},{n})-hook")]
    HookViolation {
        partition: String,
        k: usize,
        n: usize,
    },

    #[error("invalid highest weight: {0}")]
    InvalidWeight(String),

    #[error("malformed pattern: {0}")]
    MalformedPattern(String),

    #[error("pattern violates {} condition(s), first: {}", .0.len(), .0[0])]
    InvalidPattern(Vec<Violation>),

    #[error("theta is not defined at column {column}, row {row}")]
    UndefinedTheta { column: i32, row: usize },

    #[error("no label at column {column}, row {row}")]
    InvalidPosition { column: i32, row: usize },

    #[error("formula integrity: {0}")]
    FormulaIntegrity(String),

    #[error("operator dimensions differ: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("index {index} out of range for gl({n}|{n})")]
    IndexOutOfRange { index: i32, n: usize },

    #[error("generator {0} is not defined for this rank")]
    InvalidGenerator(String),

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("interpolation nodes must be distinct: {0} repeats")]
    RepeatedNode(String),

    #[error("vanishing denominator: {0}")]
    ZeroDenominator(String),

    #[error("truncation at rank {n} would drop rows up to stability index {index}")]
    TruncationTooShallow { n: usize, index: usize },

    #[error("parse error: {0}")]
    Parse(String),
}
