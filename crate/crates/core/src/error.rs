use alloc::string::String;

/// Errors raised by the algebra core.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not prime")]
    CompositeP(u64),
    #[error("size cap exceeded: {0}")]
    SizeExceeded(String),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("elements belong to different fields: {0}")]
    FieldMismatch(String),
    #[error("not a subfield: {0}")]
    NotSubfield(String),
    #[error("base is not a generator of the unit group")]
    NotGenerator,
    #[error("zero argument")]
    ZeroArgument,
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("replacement polynomials must be homogeneous of one common degree")]
    InhomogeneousReplacement,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("insufficient precision: need {needed}, have {available}")]
    InsufficientPrecision { needed: i64, available: i64 },
    #[error("symbol has a zero entry")]
    ZeroEntry,
    #[error("zero rational function")]
    ZeroFunction,
    #[error("not a constant extension: {0}")]
    NotConstantExtension(String),
    #[error("series is not a principal unit")]
    NotPrincipalUnit,
    #[error("valuation unknown at the available precision")]
    UnknownValuation,
    #[error("element is a p-th power")]
    IsPthPower,
    #[error("extension is trivial")]
    TrivialExtension,
    #[error("polynomial is not irreducible")]
    NotIrreducible,
    #[error("division by zero")]
    DivisionByZero,
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
