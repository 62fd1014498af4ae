use thiserror::Error;

/// Every failure mode of the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different quadratic fields (D={0} and D={1})")]
    MixedRadicands(String, String),
    #[error("square root of a negative number: {0}")]
    NegativeRadicand(String),
    #[error("argument out of domain: {0}")]
    OutOfDomain(String),
    #[error("{0} is not the center of a quasi-perfect class")]
    NotQuasiPerfect(String),
    #[error("operation undefined for the formal class {0}")]
    FormalClass(String),
    #[error("nonpositive denominator d - m b")]
    NonpositiveDenominator,
    #[error("degenerate denominator d - m b = 0")]
    DegenerateDenominator,
    #[error("classes have different signs of eps")]
    MixedEps,
    #[error("class centers are not strictly increasing")]
    UnorderedCenters,
    #[error("invalid triple: {0}")]
    InvalidTriple(String),
    #[error("invalid label: {0}")]
    InvalidLabel(String),
    #[error("the root label .1 has no predecessor")]
    RootHasNoPredecessor,
    #[error("no index qualifies for the requested staircase")]
    EmptySelection,
    #[error("degenerate recursion limit (denominator sequence vanishes)")]
    DegenerateLimit,
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("eps must equal (-1)^i")]
    ParityMismatch,
    #[error("p + q + t must be even")]
    ParityViolation,
    #[error("class {0} is not in the requested tree")]
    NotInTree(String),
    #[error("class {0} is not blocked even at its center")]
    NoBlockedPoint(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
