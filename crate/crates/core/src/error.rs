use alloc::string::String;

/// Errors raised by the core operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoreError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("exponent must be non-negative, got {0}")]
    NegativeExponent(i64),
    #[error("{0} is not in H_p (denominator is not a power of p)")]
    NotInHp(String),
    #[error("domain mismatch: [{0}] vs [{1}]")]
    DomainMismatch(String, String),
    #[error("invalid domain: {0}")]
    InvalidDomain(String),
    #[error("point {0} is not interior to the domain")]
    NotInterior(String),
    #[error("point {0} lies outside the domain")]
    OutsideDomain(String),
    #[error("malformed piecewise-affine data: {0}")]
    Malformed(String),
    #[error("function is not convex")]
    NotConvex,
    #[error("function is not periodic: f(1) = {0}, f(p) = {1}")]
    NotPeriodic(String, String),
    #[error("operation undefined on the bottom element")]
    Bottom,
    #[error("divisor is not principal (deg = {degree}, chi = {chi})")]
    NotPrincipal { degree: String, chi: u64 },
    #[error("parameter must be positive, got {0}")]
    NonPositiveParameter(String),
    #[error("theta data violate the balance conditions: {0}")]
    BalanceViolation(String),
    #[error("function is not a member of E_(N,p): {0}")]
    NotInModule(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("empty series")]
    EmptySeries,
    #[error("no convergence: {0}")]
    NonConvergence(String),
    #[error("unsupported degree class: {0}")]
    UnsupportedDegree(String),
}

pub type Result<T, E = CoreError> = core::result::Result<T, E>;
