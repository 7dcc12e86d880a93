use std::fmt;

use crate::term::Rank;

/// Upper bound on the number of state-word pairs any relational computation
/// may materialize.
pub const PAIR_BUDGET: u128 = 10_000_000;

/// Position of a syntax error in the input text (1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Position {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("rank mismatch: {context} ({left} vs {right})")]
    RankMismatch {
        context: &'static str,
        left: Rank,
        right: Rank,
    },
    #[error("syntax error at {position}: {message}")]
    Syntax { position: Position, message: String },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("state set must be nonempty")]
    EmptyStateSet,
    #[error("computation needs {needed} pairs, budget is {limit}")]
    BudgetExceeded { needed: u128, limit: u128 },
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("k must be at least 1")]
    InvalidK,
    #[error("coloring does not cover node {0}")]
    IncompleteColoring(u32),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),
    #[error("run search requires the TSRel D-set")]
    NotTsRel,
    #[error("json: {0}")]
    Json(String),
}

impl Error {
    pub(crate) fn syntax(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Syntax {
            position: Position { line, column },
            message: message.into(),
        }
    }

    pub(crate) fn budget(needed: u128) -> Self {
        Error::BudgetExceeded {
            needed,
            limit: PAIR_BUDGET,
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
