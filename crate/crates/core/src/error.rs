use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("denominator of {value} is divisible by p = {p}")]
    DenominatorDivisibleByP { value: String, p: u64 },
    #[error("{value} is not divisible by p^{valuation}")]
    NotDivisible { value: String, valuation: u32 },
    #[error("precision exhausted: need p^{needed}, have p^{available}")]
    PrecisionExhausted { needed: i64, available: u32 },
    #[error("c = {0} is not congruent to 1 modulo the required power of p")]
    CNotOneModP(String),
    #[error("constant term {0} is not a p-adic unit")]
    NonUnitConstantTerm(String),
    #[error("constant term {0} must vanish before integrating against dt/t")]
    NonzeroConstantTerm(String),
    #[error("Dwork chain of {0} has no period within the step limit")]
    NoPeriod(String),
    #[error("no coefficient pair contains a unit; the sign cannot be fitted")]
    NoUnitCoefficient,
    #[error("value has negative valuation {0}")]
    NotIntegral(i64),
    #[error("mismatched primes {0} and {1}")]
    PrimeMismatch(u64, u64),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("cannot parse {0:?}")]
    Parse(String),
    #[error("invalid configuration: {0}")]
    ConfigInvalid(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
