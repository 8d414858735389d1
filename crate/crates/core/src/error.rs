use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported characteristic {p}: {reason}")]
    UnsupportedCharacteristic { p: u64, reason: &'static str },

    #[error("no primitive cube root of unity in F_{p}")]
    NoPrimitiveCubeRoot { p: u64 },

    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("unknown variable `{name}` at offset {offset}")]
    UnknownVariable { name: String, offset: usize },

    #[error("invalid polynomial space: {0}")]
    InvalidSpace(String),

    #[error("polynomial is not weighted-homogeneous for weights {weights:?}")]
    NotHomogeneous { weights: Vec<u32> },

    #[error("coefficient cannot be reduced mod {p}: {reason}")]
    Reduction { p: u64, reason: String },

    #[error("equation not in Weierstrass shape y^2 = x^3 + f(z): {0}")]
    NotWeierstrass(String),

    #[error("iteration budget exceeded: need {required}, budget {budget}")]
    BudgetExceeded { required: u128, budget: u64 },

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("inputs inconsistent with the cohomological model: no feasible w23")]
    InconsistentInputs,

    #[error("inconclusive at this prime: feasible w23 = {feasible:?}")]
    Inconclusive { feasible: Vec<i64> },
}

pub type Result<T> = std::result::Result<T, Error>;
