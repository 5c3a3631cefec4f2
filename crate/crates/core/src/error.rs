use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("{0} is outside the supported prime range p < 2^31")]
    PrimeTooLarge(u64),
    #[error("prime {p} is below {min}, the minimum for this operation")]
    PrimeTooSmall { p: u64, min: u64 },
    #[error("exponent {0} is outside 1..=4")]
    ExponentOutOfRange(u32),
    #[error("operands live in different rings (mod {left} and mod {right})")]
    MixedRings { left: u128, right: u128 },
    #[error("{value} is not invertible modulo {modulus}")]
    NotInvertible { value: u128, modulus: u128 },
    #[error("rational {value} has negative {p}-adic valuation")]
    NegativeValuation { value: String, p: u64 },
    #[error("{what} = {value} is out of range, expected {expected}")]
    OutOfRange {
        what: &'static str,
        value: u64,
        expected: String,
    },
    #[error("(eps={eps}, a={a}, b={b}) is an exceptional triple with no congruence claim")]
    ExcludedTriple { eps: u8, a: u32, b: u32 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn out_of_range(what: &'static str, value: u64, expected: impl Into<String>) -> Error {
    Error::OutOfRange {
        what,
        value,
        expected: expected.into(),
    }
}
