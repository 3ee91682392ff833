use thiserror::Error;

/// Errors raised by the dimension engines and the closed-form layer.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),

    #[error("invalid variety parameters: {0}")]
    InvalidSpec(String),

    #[error("invalid point: {0}")]
    InvalidPoint(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("matrix for {spec} needs {entries} entries, over the budget of {budget}")]
    Sizing {
        spec: String,
        entries: u128,
        budget: u128,
    },

    #[error("no generic point found after {attempts} draws (seed {seed})")]
    GenericityExhausted { attempts: usize, seed: u64 },

    #[error("scan budget of {budget} exhausted before {what} was determined")]
    BudgetExceeded { budget: usize, what: &'static str },

    #[error("outside the hypotheses of the lemma: {0}")]
    OutsideHypotheses(String),

    #[error("malformed matrix: {0}")]
    MalformedMatrix(String),
}

pub type Result<T> = std::result::Result<T, Error>;
