use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("characteristic {0} is not a prime below 2^31")]
    InvalidCharacteristic(u32),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("characteristic mismatch: {0} vs {1}")]
    CharacteristicMismatch(u32, u32),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("polynomial is not homogeneous: {0}")]
    NotHomogeneous(String),

    #[error("ideal generator of degree 0 makes the quotient trivial")]
    ConstantGenerator,

    #[error("degree {degree} exceeds the degree bound {bound}; raise the degree bound")]
    DegreeBoundExceeded { degree: i64, bound: usize },

    #[error("homological window too small: need {needed}, have {available}")]
    WindowExceeded { needed: usize, available: usize },

    #[error("module is zero")]
    ZeroModule,

    #[error("map is not a cocycle: {0}")]
    NotACocycle(String),

    #[error("not a chain map: {0}")]
    NotAChainMap(String),

    #[error("unreliable reconstruction: {0}")]
    Unreliable(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("{0}")]
    Refused(String),
}
