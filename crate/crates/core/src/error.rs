use num_bigint::BigUint;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("{value} is not invertible modulo {modulus} (gcd = {gcd})")]
    NotInvertible {
        value: BigUint,
        modulus: BigUint,
        gcd: BigUint,
    },

    #[error("moduli {0} and {1} are not coprime")]
    InvalidModuli(BigUint, BigUint),

    #[error("{value} is not a unit modulo {modulus}")]
    NotAUnit { value: BigUint, modulus: BigUint },

    /// A division that must be exact left a remainder, so some input
    /// precondition was broken upstream.
    #[error("non-exact division in {context}: {numerator} / {denominator}")]
    ExactnessViolation {
        context: &'static str,
        numerator: String,
        denominator: BigUint,
    },

    #[error("invalid safe-prime parameters: {0}")]
    InvalidParams(String),

    #[error("no safe prime of {bits} bits found after {candidates} candidates (seed {seed})")]
    SearchExhausted {
        bits: u32,
        seed: u64,
        candidates: u64,
    },

    #[error("degenerate modulus {0}")]
    DegenerateModulus(BigUint),

    #[error("inconsistent inputs: {0}")]
    InconsistentInputs(String),

    #[error("Teichmüller digit of base {base} modulo {p} is zero; index recovery impossible")]
    ZeroDigit { base: BigUint, p: BigUint },

    #[error("a0^n = b0 (mod p) does not hold: {0}")]
    Lemma1Violated(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("no solution: {0}")]
    NoSolution(String),

    #[error("invalid system: {0}")]
    InvalidSystem(String),

    #[error("solution set has {count} members, above the limit {limit}")]
    TooManySolutions { count: BigUint, limit: u64 },

    #[error("group order {0} exceeds the brute-force limit")]
    OrderTooLarge(BigUint),
}

impl Error {
    /// Stable machine-readable tag, used in error documents.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) => "invalid-input",
            Error::NotInvertible { .. } => "not-invertible",
            Error::InvalidModuli(..) => "invalid-moduli",
            Error::NotAUnit { .. } => "not-a-unit",
            Error::ExactnessViolation { .. } => "exactness-violation",
            Error::InvalidParams(_) => "invalid-params",
            Error::SearchExhausted { .. } => "search-exhausted",
            Error::DegenerateModulus(_) => "degenerate-modulus",
            Error::InconsistentInputs(_) => "inconsistent-inputs",
            Error::ZeroDigit { .. } => "zero-digit",
            Error::Lemma1Violated(_) => "lemma1-violated",
            Error::PreconditionViolated(_) => "precondition-violated",
            Error::InvalidInstance(_) => "invalid-instance",
            Error::NoSolution(_) => "no-solution",
            Error::InvalidSystem(_) => "invalid-system",
            Error::TooManySolutions { .. } => "too-many-solutions",
            Error::OrderTooLarge(_) => "order-too-large",
        }
    }
}
