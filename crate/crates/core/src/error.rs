use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by an interval containing zero")]
    DivisionByIntervalContainingZero,
    #[error("rational power of a base that is not certainly positive")]
    NonPositiveBase,
    #[error("argument outside the domain of {0}")]
    DomainViolation(&'static str),
    #[error("hypergeometric series may diverge: |z| < 1 is not certain")]
    DivergentParameters,
    #[error("lower parameter c is a non-positive integer")]
    InvalidC,
    #[error("verified quadrature exceeded its budget of {budget} subintervals")]
    QuadratureBudgetExceeded { budget: usize },
    #[error("invalid competitor geometry for (k, l) = ({k}, {l})")]
    InvalidGeometry { k: u32, l: u32 },
    #[error("precision cap of {max_bits} bits reached before the requested accuracy")]
    PrecisionExhausted { max_bits: u32 },
    #[error("no valid Lawson pair for n = {n}")]
    NoValidPair { n: u32 },
    #[error("unsupported dimension n = {n}: {reason}")]
    UnsupportedDimension { n: u32, reason: &'static str },
    #[error("malformed ball literal: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
