use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("precision unattainable: {0}")]
    PrecisionUnattainable(String),

    #[error("invalid precision context: {0}")]
    InvalidPrecision(String),

    #[error("defining polynomial must be monic with integer coefficients")]
    NonMonicPolynomial,

    #[error("defining polynomial is reducible over Q: factor {0}")]
    ReduciblePolynomial(String),

    #[error("irreducibility could not be certified for the given polynomial")]
    IrreducibilityUnknown,

    #[error("degree must be at least 2 (got {0})")]
    DegreeTooSmall(usize),

    #[error("non-maximal order unsupported: Dedekind's criterion fails at p = {0}")]
    NonMaximalOrder(u64),

    #[error("discriminant override invalid: disc(f)/override is not a perfect square")]
    BadDiscriminantOverride,

    #[error("cannot factor discriminant {0}")]
    DiscriminantFactorization(String),

    #[error("division by zero field element")]
    DivisionByZero,

    #[error("embedding index {0} out of range")]
    BadEmbeddingIndex(usize),

    #[error("formal sum term is 0 or 1")]
    ElementZeroOrOne,

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("missing decomposition for a support element")]
    MissingDecomposition,

    #[error("relation search inconclusive: {0}")]
    RelationSearchFailed(String),

    #[error("unsupported prime {0}: index divisor for this field")]
    UnsupportedPrime(u64),

    #[error("unsupported field: {0}")]
    UnsupportedField(String),

    #[error("term budget exceeded: {0}")]
    TermBudget(String),

    #[error("element is not certified (needs a VERIFIED_ZERO certificate)")]
    UncertifiedElement,

    #[error("expected {expected} basis elements, got {got}")]
    WrongElementCount { expected: usize, got: usize },

    #[error("regulator matrix numerically singular (|det| = {0})")]
    SingularRegulator(String),

    #[error("prime {0} out of supported range for this operation")]
    PrimeOutOfRange(u64),

    #[error("malformed input: {0}")]
    MalformedInput(String),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}
