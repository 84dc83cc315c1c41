use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("universe must contain at least one execution")]
    EmptyUniverse,
    #[error("label `{0}` is not in the universe")]
    UnknownLabel(String),
    #[error("label `{0}` appears more than once")]
    DuplicateLabel(String),
    #[error("grade {0} is outside [0, 1]")]
    GradeOutOfRange(String),
    #[error("malformed grade `{0}`")]
    InvalidGrade(String),
    #[error("execution `{0}` is blocking (delta = gamma = 0)")]
    BlockingViolation(String),
    #[error("processes are defined over different universes")]
    UniverseMismatch,
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("invalid scope: {0}")]
    InvalidScope(String),
    #[error("work estimate {required} exceeds budget {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
    #[error("only a counterexample can be shrunk")]
    NothingToShrink,
    #[error("counterexample does not reproduce on its witnesses")]
    StaleCounterexample,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
