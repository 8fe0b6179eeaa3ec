use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("zero is not an element of Q_p^*")]
    ZeroInput,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid context parameter: {0}")]
    InvalidContext(String),
    #[error("oracle depth {have} too small, need at least {needed}")]
    DepthTooSmall { needed: u32, have: u32 },
    #[error("oracle search space p^{depth} too large for p = {p}")]
    OracleTooLarge { p: u64, depth: u32 },
    #[error("Gauss sums did not stabilize (difference {diff:e}); increase gauss_terms")]
    NotStabilized { diff: f64 },
    #[error("operation not supported for p = {0}")]
    UnsupportedPrime(u64),
    #[error("matrix is not a symplectic similitude")]
    NotSimilitude,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("no cocycle evaluation rule applies: {0}")]
    UnsupportedCocyclePath(String),
    #[error("conjugator's Sp component is not in the Siegel parabolic")]
    ConjugatorNotOmegaZero,
    #[error("character is not tamely ramified: {0}")]
    UnsupportedRamification(String),
    #[error("mismatched primes {0} and {1}")]
    PrimeMismatch(u64, u64),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Precondition(String),
}
