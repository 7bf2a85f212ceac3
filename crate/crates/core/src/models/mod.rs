//! Finite categories, diagrams in them, and interpretations of formulas.

pub mod category;
pub mod diagram;
pub mod eval;
pub mod interp;
pub mod samples;

use thiserror::Error;

pub use category::{CategoryBuilder, CategoryError, FiniteCategory, MorphId, ObjectId};
pub use diagram::{comp, count_diagrams, diagrams, diagrams_with, is_commutative, is_commutative_bruteforce, Diagram};
pub use eval::{evaluate, EvalLimits, Evaluator};
pub use interp::{Categorical, Dual, Interpretation, Table};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("shape is not a path-quiver")]
    NotPathShape,
    #[error("{what}: {size} elements exceed the cap of {cap}")]
    Resource { what: String, size: u128, cap: usize },
    #[error(transparent)]
    Category(#[from] CategoryError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("no domain for {0}")]
    MissingDomain(String),
    #[error("{what}: {size} elements exceed the cap of {cap}")]
    Resource { what: String, size: u128, cap: usize },
    #[error("work limit of {0} steps exceeded")]
    WorkLimit(u64),
    #[error("free variable `{0}`")]
    FreeVariable(String),
    #[error("ill-sorted: {0}")]
    IllSorted(String),
}

impl EvalError {
    /// Cap or work-limit failures, as opposed to malformed input.
    pub fn is_resource(&self) -> bool {
        matches!(self, EvalError::Resource { .. } | EvalError::WorkLimit(_))
    }
}

impl From<ModelError> for EvalError {
    fn from(e: ModelError) -> Self {
        match e {
            ModelError::Resource { what, size, cap } => EvalError::Resource { what, size, cap },
            other => EvalError::IllSorted(other.to_string()),
        }
    }
}
