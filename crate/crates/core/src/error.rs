use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("leading coefficient is zero")]
    ZeroLeading,
    #[error("polynomial degree must be at least 2, got {0}")]
    DegreeTooSmall(usize),
    #[error("non-finite value at index {0}")]
    NonFinite(usize),
    #[error("expected {expected} approximations, got {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("components {0} and {1} of the approximation vector coincide")]
    NotDistinct(usize, usize),
    #[error("exponent p must satisfy p >= 1, got {0}")]
    BadExponent(f64),
    #[error("iteration denominator vanishes at component {0}")]
    OutsideDomain(usize),
    #[error("evaluation point coincides with component {0}")]
    DivByZero(usize),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("initial conditions do not hold at the given vector")]
    NotCertified,
    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),
    #[error("finite-difference jacobian is singular")]
    SingularJacobian,
}
