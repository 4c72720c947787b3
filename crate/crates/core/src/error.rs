use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unsupported field size p={p}, m={m}")]
    UnsupportedField { p: u32, m: u32 },
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("modulus is not irreducible of degree {0}")]
    Reducible(u32),
    #[error("omega does not generate the multiplicative group")]
    NotGenerator,
    #[error("inversion of zero")]
    ZeroInverse,
    #[error("{n} does not divide {m}")]
    NotDivisor { n: u32, m: u32 },
    #[error("element {0} out of range")]
    OutOfRange(u64),
    #[error("value {0} does not lie in the subfield")]
    NotInSubfield(u32),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("induced form is not biadditive")]
    NotBiadditive,
    #[error("image of the squaring does not span the target space")]
    NotSpanning,
    #[error("search budget of {0} nodes exceeded")]
    Budget(u64),
    #[error("consistency check failed: {0}")]
    Inconsistent(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
