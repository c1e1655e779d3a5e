use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error: {0}")]
    Syntax(String),

    #[error("cyclic factor must be at least 1, got {0}")]
    FactorTooSmall(u64),

    #[error("group order {order} exceeds the configured maximum {max}")]
    OrderTooLarge { order: u64, max: u64 },

    #[error("operands belong to different groups ({left} vs {right})")]
    MixedGroups { left: String, right: String },

    #[error("element {0} is out of range for the group")]
    ElementOutOfRange(String),

    #[error("set is not a subgroup")]
    NotSubgroup,

    #[error("operation requires a cyclic group, got {0}")]
    NotCyclic(String),

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("search budget of {limit} nodes exceeded")]
    BudgetExceeded { limit: u64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("no periodic tiling complement found: {0}")]
    NoPeriodicComplement(String),

    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. })
    }
}
