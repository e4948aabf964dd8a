use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("degree {0} exceeds the degree cap {1}")]
    DegreeTooLarge(usize, usize),
    #[error("group too large: closure exceeds {0} elements")]
    GroupTooLarge(usize),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("unknown group: {0}")]
    UnknownGroup(String),
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("element {0} does not belong to the group")]
    NotAnElement(String),
    #[error("subset is not a subgroup of the parent group")]
    NotASubgroup,
    #[error("subgroups belong to different parent groups")]
    ParentMismatch,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("series term {0} is not normal in its successor")]
    NotNormalAt(usize),
    #[error("series term {0} is not contained in its successor")]
    NotAscending(usize),
    #[error("group is not abelian")]
    NotAbelian,
    #[error("group is not monolithic")]
    NotMonolithic,
    #[error("search budget of {0} exhausted")]
    BudgetExhausted(u64),
    #[error("no retraction: {0}")]
    NoRetraction(String),
    #[error("catalog error on line {line}: {msg}")]
    Catalog { line: usize, msg: String },
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
