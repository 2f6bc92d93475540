use thiserror::Error;

/// Errors produced by the exact-arithmetic routines and the certifiers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("gcd of zero polynomials")]
    GcdOfZero,

    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,

    #[error("polynomial is not squarefree")]
    NotSquarefree,

    #[error("undefined map: numerator and denominator are both zero")]
    UndefinedMap,

    #[error("map is the identity")]
    IdentityMap,

    #[error("singular Möbius transform (a·e − b·c = 0)")]
    SingularTransform,

    #[error("interval does not isolate a root of the fixed-point polynomial")]
    NotARoot,

    #[error("infinity is not a fixed point of the iterate")]
    InfinityNotFixed,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid family parameters: {0}")]
    Family(String),

    #[error("resource budget exceeded: {0}")]
    Budget(String),
}

pub type Result<T> = std::result::Result<T, Error>;
