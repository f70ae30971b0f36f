use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("GF({p}^{m}) exceeds the table limit of {limit} elements")]
    TooLarge { p: u64, m: u32, limit: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("coordinate {index} is outside 1..={q}")]
    OutOfRange { index: u64, q: u64 },
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("{needed} exceeds the budget of {budget}")]
    BudgetExceeded { needed: String, budget: u64 },
    #[error("brute-force count over {needed} coefficient vectors exceeds the limit of {limit}")]
    BruteForceTooLarge { needed: String, limit: u64 },
    #[error("lambda {numerator}/{denominator} is not an integer")]
    NonIntegerLambda { numerator: String, denominator: String },
    #[error("weight {weight} supports repeat between {min} and {max} times")]
    NonconstantMultiplicity { weight: u64, min: u64, max: u64 },
}

impl Error {
    pub(crate) fn bad(msg: impl Into<String>) -> Self {
        Error::BadParameters(msg.into())
    }
}
