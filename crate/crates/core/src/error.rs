use num_bigint::{BigInt, BigUint};
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Why a sequence of integers is not the h-vector of an artinian algebra.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HVectorError {
    #[error("empty sequence")]
    Empty,
    #[error("entry of degree 0 is {0}, expected 1")]
    FirstEntryNotOne(BigInt),
    #[error("entry of degree {degree} is {value}, interior entries must be positive")]
    NonPositiveEntry { degree: usize, value: BigInt },
    #[error("Macaulay bound violated at degree {degree}: h_{next_degree} = {value} exceeds {bound}", next_degree = .degree + 1)]
    MacaulayViolation {
        degree: usize,
        value: BigUint,
        bound: BigUint,
    },
}

/// Why a sequence of integers is not a socle-vector.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SocleVectorError {
    #[error("a socle-vector needs at least the entries of degree 0 and 1")]
    TooShort,
    #[error("entry of degree 0 is {0}, expected 0")]
    NonZeroFirst(BigInt),
    #[error("entry of degree {degree} is negative ({value})")]
    Negative { degree: usize, value: BigInt },
    #[error("last entry must be positive")]
    ZeroTop,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid h-vector: {0}")]
    HVector(#[from] HVectorError),
    #[error("invalid socle-vector: {0}")]
    SocleVector(#[from] SocleVectorError),
    #[error("the h-vector (1) has no socle-vector")]
    TrivialAlgebra,
    #[error(
        "shift by {shift} is undefined for an expansion whose smallest lower index is {lowest}"
    )]
    ShiftOutOfRange { shift: i64, lowest: usize },
    #[error("monomials in {left} and {right} variables cannot be compared")]
    VariableMismatch { left: usize, right: usize },
    #[error("the constant monomial has no largest variable")]
    ConstantMonomial,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid form: {0}")]
    InvalidForm(String),
    #[error("invalid inverse system: {0}")]
    InvalidModule(String),
    #[error("invalid monomial ideal: {0}")]
    InvalidIdeal(String),
    #[error("degree {requested} lies beyond the stored bound {bound}")]
    BoundExceeded { requested: usize, bound: usize },
    #[error("quotient is not artinian within degree {0}")]
    NotArtinian(usize),
    #[error("ideal is not a lex-segment ideal in degree {0}")]
    NotLexSegment(usize),
    #[error("{0} is too large to materialize")]
    TooLarge(String),
    #[error("degree {degree} is outside the admissible range {min}..={max}")]
    DegreeOutOfRange {
        degree: usize,
        min: usize,
        max: usize,
    },
    #[error("codimension {0} is not supported here: {1}")]
    UnsupportedCodimension(String, &'static str),
    #[error("shift {0} is not a possible cancellation")]
    NotACancellation(usize),
    #[error("condition {0} does not hold for this h-vector")]
    ConditionNotMet(String),
    #[error("no generic choice found; seeds tried: {seeds:?}")]
    GenericityExhausted { seeds: Vec<u64> },
    #[error("witness rejected: {0}")]
    WitnessRejected(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("parse error: {0}")]
    Parse(String),
}
