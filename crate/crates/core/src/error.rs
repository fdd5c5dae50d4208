use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised by the algebra engines.
///
/// Parse failures carry their own type ([`ParseError`]) because they are
/// reported with a line number and map to a different CLI exit code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("matrix is not invertible modulo {modulus}")]
    NotInvertibleMod { modulus: u64 },
    #[error("lattice is not invariant under the endomorphism")]
    NotInvariant,
    #[error("lattice has infinite index")]
    InfiniteIndex,
    #[error("induced map on the quotient is not an automorphism")]
    NotAutomorphism,
    #[error("internal error: {0}")]
    Internal(String),
    #[error("element of nonzero height {0} is not in the normal closure of the base group")]
    NotInKernel(i64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {p} divides det(phi) = {det}")]
    PrimeDividesDeterminant { p: u64, det: String },
    #[error("level must be at least 1")]
    InvalidLevel,
    #[error("enumeration budget of {budget} elements exceeded")]
    BudgetExceeded { budget: u64 },
    #[error("element does not belong to this quotient")]
    QuotientMismatch,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("invalid graph of groups: {}", join_errors(.0))]
    InvalidGraph(Vec<crate::gog::GraphError>),
}

fn join_errors(errors: &[crate::gog::GraphError]) -> String {
    errors.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

/// A syntax error in one of the text formats, with a 1-based line number.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}
