use thiserror::Error;

use crate::search::SearchStats;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid image: {0}")]
    InvalidImage(String),

    #[error("point {index} is out of range for an image with {size} points")]
    InvalidPoint { index: usize, size: usize },

    #[error("image mismatch: {0}")]
    ImageMismatch(String),

    #[error("invalid map: {0}")]
    InvalidMap(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("image has {size} points; this operation is limited to {limit}")]
    TooLarge { size: usize, limit: usize },

    #[error("search budget exhausted after {} nodes", .0.nodes_visited)]
    BudgetExhausted(SearchStats),

    #[error("invalid budget: {0}")]
    InvalidBudget(String),

    #[error("unknown catalog key `{0}`")]
    UnknownCatalogKey(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExhausted(_))
    }
}
