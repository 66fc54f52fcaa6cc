use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("valuation of zero is undefined")]
    UndefinedValuation,
    #[error("{base} is not a unit modulo {modulus}")]
    NotAUnit { base: String, modulus: u64 },
    #[error("{0} is not an odd prime")]
    NotOddPrime(String),
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),
    #[error("polynomial has zero constant term, so its roots are not invertible")]
    NonInvertibleRoot,
    #[error("inconsistent field: {0}")]
    InconsistentField(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("incompatible Dade group shapes: {0}")]
    IncompatibleShapes(String),
    #[error("label cannot come from a dominating block: {0}")]
    InvalidDomination(String),
    #[error("invalid exponent: {0}")]
    InvalidExponent(String),
    #[error("invalid sign entry {0}; expected -1 or +1")]
    InvalidSign(i64),
    #[error("invalid group descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("characteristic clash: p = {p} divides q = {q}")]
    BadCharacteristic { p: u64, q: u64 },
    #[error("invalid support dimension: {0}")]
    InvalidSupport(String),
    #[error("invalid scenario: {0}")]
    InvalidScenario(String),
    #[error("out of scope: {0}")]
    OutOfScope(String),
    #[error("reproduction failed: {0}")]
    ReproductionFailure(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
