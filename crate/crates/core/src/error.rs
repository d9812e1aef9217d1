use thiserror::Error;

/// Errors raised across the crate.
///
/// Labels (elements of F^r) are reported in their bitstring form so that
/// diagnostics read the same way as the vectors in the group and
/// permutation files.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("r={r} is outside the supported range {min}..={max}")]
    RankOutOfRange { r: usize, min: usize, max: usize },

    #[error("the zero label has no star")]
    ZeroLabel,

    #[error("matrix at label 0 is not the identity")]
    NotIdentityAtZero,

    #[error("matrix at label {0} is singular")]
    SingularMatrix(String),

    #[error("closure violated for labels a={a}, b={b}")]
    ClosureViolation { a: String, b: String },

    #[error("table has {found} entries, expected {expected}")]
    IncompleteTable { expected: usize, found: usize },

    #[error("not a bijection fixing zero: {0}")]
    NotZeroFixingBijection(String),

    #[error("permutation is not induced by an automorphism: {0}")]
    NotAnAutomorphism(String),

    #[error("group of order {order} exceeds the limit {limit}")]
    GroupTooLarge { order: usize, limit: usize },

    #[error("enumeration guard exceeded: r={r}, at most {max} is supported")]
    EnumerationGuard { r: usize, max: usize },

    #[error("coset mismatch: second half lies in H_{found}, expected H_{expected}")]
    CosetMismatch { expected: String, found: String },

    #[error("vector of odd weight has no coset index")]
    OddWeight,

    #[error("{field}: formula gives {formula}, {oracle_name} gives {oracle}")]
    OracleMismatch {
        field: &'static str,
        formula: usize,
        oracle_name: &'static str,
        oracle: usize,
    },

    #[error("preserved-star count {count} plus one is not a power of two")]
    NotPowerOfTwo { count: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("no decomposition of r={0} into the supported parts")]
    NoDecomposition(usize),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}
