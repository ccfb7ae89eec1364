use thiserror::Error;

/// Errors produced by ring/ideal construction and the predicate engine.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("ring order must be at least 2 (got {0})")]
    InvalidOrder(u64),
    #[error("constructor requires a nonempty list of factors")]
    InvalidArity,
    #[error("polynomial modulus must be monic of degree >= 1")]
    InvalidModulus,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("ideal is the whole ring; a proper ideal is required")]
    NotProper,
    #[error("quotient module is zero (J is the whole ring)")]
    ZeroModule,
    #[error("element map is not a unital ring homomorphism: {0}")]
    NotAHom(String),
    #[error("multiplicative closure of S contains zero; localization collapses")]
    CollapsesToZero,
    #[error("ring order {order} exceeds the enumeration cutoff {cutoff}")]
    TooLarge { order: u64, cutoff: u64 },
    #[error("operands belong to different rings")]
    RingMismatch,
    #[error("homomorphism is not surjective")]
    NotSurjective,
    #[error("index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("element ({0}, {1}) is not in the amalgamation subring")]
    NotInSubring(String, String),
    #[error("ring axiom violated: {0}")]
    AxiomViolation(String),
}
