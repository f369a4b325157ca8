use crate::value_group::MultZ0;

/// Errors shared by every module of the crate.
///
/// Each variant names the contract that was violated; callers that need to
/// distinguish "your input was bad" from "the available precision cannot
/// decide this" can match on the variant.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("inversion of zero")]
    ZeroInverse,

    #[error("division by zero")]
    DivisionByZero,

    #[error("zero cannot be raised to a non-positive power")]
    ZeroPower,

    #[error("not a uniformizer: element has valuation {actual}")]
    NotAUniformizer { actual: MultZ0 },

    #[error("operation requires a nonzero argument")]
    ZeroArgument,

    #[error("element is not in the unit ball")]
    NotInUnitBall,

    #[error("element is not in the maximal ideal")]
    NotInMaximalIdeal,

    #[error("operands belong to different contexts")]
    ContextMismatch,

    #[error("element is indistinguishable from zero at the available precision")]
    ZeroIndistinguishable,

    #[error("insufficient precision for the requested operation")]
    InsufficientPrecision,

    #[error("element is not integral")]
    NotIntegral,

    #[error("undecidable at the available precision")]
    UndecidableAtPrecision,

    #[error("modulus is not monic")]
    NonMonicModulus,

    #[error("modulus polynomial is reducible")]
    ReducibleModulus,

    #[error("extension degree {n} exceeds the supported maximum {max}")]
    DegreeTooLarge { n: usize, max: usize },

    #[error("extension carries no ramification certificate")]
    NoCertificate,

    #[error("precision exhausted while deciding a valuation")]
    PrecisionExhausted,

    #[error("at least one sample is required")]
    EmptySamples,
}

pub type Result<T> = std::result::Result<T, Error>;
