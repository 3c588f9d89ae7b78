use std::fmt;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// `p` passed to a field constructor is not prime.
    NonPrimeCharacteristic(u64),
    /// `p^m` exceeds the configured field size cap.
    FieldTooLarge { p: u64, m: u32, cap: u64 },
    /// Two elements from different fields were combined.
    FieldMismatch,
    /// Multiplicative inverse of zero requested.
    DivisionByZero,
    /// The requested field pair is not a subfield extension.
    NotASubfield,
    /// A trace/norm value failed to land in the target subfield.
    ResultNotInSubfield,
    /// Matrix or vector dimensions do not match the operation.
    DimensionMismatch { expected: String, got: String },
    /// An enumeration would exceed the configured budget.
    BudgetExceeded { what: String, needed: u128, cap: u64 },
    /// Subcode dimension outside `1..=k`.
    InvalidDimension { j: usize, k: usize },
    /// A generator matrix column is zero and cannot be a projective point.
    ZeroColumn(usize),
    /// Generator rows are linearly dependent over the base field.
    DependentRows,
    /// A matrix expected to be nonsingular is singular.
    SingularMatrix,
    /// Parameters fail a precondition (value and reason).
    InvalidParams(String),
    /// Supplied lambdas are linearly dependent over the base field.
    DependentLambdas,
    /// The Moore matrix of the lambdas is singular; carries a nullspace witness.
    SingularMoore { witness: Vec<u32> },
    /// An internal consistency assertion failed (indicates a library bug).
    InternalInconsistency(String),
    /// A norm-trace family member has rank below h (offending member index).
    RankDeficientMember { index: usize },
    /// The rows of a constructed code are dependent, contradicting its
    /// dimension claim.
    RankDeficientCode { expected_rank: usize, got: usize },
    /// A subset index is out of range for the family.
    IndexOutOfRange { index: usize, len: usize },
    /// A brute-forced distance fell below the guaranteed lower bound.
    BoundViolated { claimed: u64, actual: u64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonPrimeCharacteristic(p) => write!(f, "{p} is not prime"),
            Error::FieldTooLarge { p, m, cap } => {
                write!(f, "field of size {p}^{m} exceeds the size cap {cap}")
            }
            Error::FieldMismatch => write!(f, "elements belong to different fields"),
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::NotASubfield => write!(f, "not a subfield extension"),
            Error::ResultNotInSubfield => {
                write!(f, "trace/norm result not in the target subfield")
            }
            Error::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Error::BudgetExceeded { what, needed, cap } => {
                write!(f, "{what} needs {needed} steps, over the budget cap {cap}")
            }
            Error::InvalidDimension { j, k } => {
                write!(f, "subcode dimension {j} outside 1..={k}")
            }
            Error::ZeroColumn(i) => write!(f, "column {i} is zero"),
            Error::DependentRows => write!(f, "generator rows are dependent over the base field"),
            Error::SingularMatrix => write!(f, "matrix is singular"),
            Error::InvalidParams(msg) => write!(f, "invalid parameters: {msg}"),
            Error::DependentLambdas => write!(f, "lambdas are linearly dependent over F_q"),
            Error::SingularMoore { witness } => {
                write!(f, "Moore matrix is singular (nullspace witness {witness:?})")
            }
            Error::InternalInconsistency(msg) => write!(f, "internal inconsistency: {msg}"),
            Error::RankDeficientMember { index } => {
                write!(f, "family member {index} has rank below h")
            }
            Error::RankDeficientCode { expected_rank, got } => {
                write!(f, "code rows have rank {got}, expected {expected_rank}")
            }
            Error::IndexOutOfRange { index, len } => {
                write!(f, "member index {index} out of range for family of size {len}")
            }
            Error::BoundViolated { claimed, actual } => {
                write!(f, "brute-forced distance {actual} below guaranteed bound {claimed}")
            }
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
