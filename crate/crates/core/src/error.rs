use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("modulus is reducible over the prime field")]
    ReducibleModulus,
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("field order {0} exceeds 2^16")]
    OrderTooLarge(u64),
    #[error("elements belong to different fields")]
    ContextMismatch,
    #[error("division by zero")]
    DivideByZero,
    #[error("value {value} is not an element of a field of order {q}")]
    ElementOutOfRange { value: u32, q: u32 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("ambient dimensions differ: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("shape mismatch")]
    ShapeMismatch,
    #[error("invalid shape: {0}")]
    InvalidShape(String),
    #[error("enumeration of {size} items exceeds the cap of {cap}")]
    EnumerationTooLarge { size: u128, cap: u128 },
    #[error("operation needs a nonzero code")]
    TrivialCode,
    #[error("the zero matrix has no pivot")]
    ZeroMatrix,
    #[error("subspace of dimension {dim} is too small: need more than {needed}")]
    DimensionTooSmall { dim: usize, needed: usize },
    #[error("the coset representative lies in the subspace")]
    AInV,
    #[error("search exhausted without a witness")]
    SearchExhausted,
    #[error("anticode classification does not apply: {0}")]
    ClassificationNotApplicable(String),
    #[error("transpose requested on non-square block {0}")]
    IllegalTranspose(usize),
    #[error("isometry group of size {size} exceeds the cap of {cap}")]
    GroupTooLarge { size: u128, cap: u128 },
    #[error("index r = {r} outside 1..={dim}")]
    RankOutOfRange { r: usize, dim: usize },
    #[error("blocks have different numbers of rows")]
    UnequalRowDims,
    #[error("not linear over the requested subfield: {0}")]
    NotLinearOverSubfield(String),
    #[error("dimension {0} is not of the form sum_{{i>=j}} m_i n_i - delta m_j")]
    DimNotAdmissible(usize),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for errors that signal a contradiction with a proved statement,
    /// i.e. a bug rather than a bad input.
    pub fn is_invariant_violation(&self) -> bool {
        matches!(self, Error::InvariantViolation(_) | Error::SearchExhausted)
    }
}
