//! Exact enumeration oracles and plug-in heuristics.

mod exact;
mod greedy;
mod local_search;
mod pipeline;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{Kind, ModelError, ValidationReport};
use crate::reductions::ReductionError;
use crate::transport::TransportError;

pub use exact::{
    exact, exact_cfl, exact_cflmc, exact_tmc, CFLMC_ENUMERATION_LIMIT, ENUMERATION_LIMIT,
};
pub use greedy::greedy_ufl;
pub use local_search::{local_search_cfl, local_search_cfl_with_history};
pub use pipeline::{approx_tmc_pipeline, Heuristic, PipelineRun};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolverError {
    #[error("{what} count {size} exceeds the enumeration limit {limit}")]
    TooLarge {
        what: &'static str,
        size: usize,
        limit: usize,
    },
    #[error("solver expects {expected}, got a {found} instance")]
    WrongKind { expected: &'static str, found: Kind },
    #[error("instance is infeasible: demand {demand} > supply {supply}")]
    Infeasible { demand: i64, supply: i64 },
    #[error("solver produced an invalid solution: {0}")]
    Invalid(ValidationReport),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Transport(#[from] TransportError),
    #[error(transparent)]
    Reduction(#[from] ReductionError),
}

/// Move families tried by [`local_search_cfl`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Neighborhood {
    Open,
    Close,
    Swap,
    All,
}

impl Neighborhood {
    fn opens(self) -> bool {
        matches!(self, Neighborhood::Open | Neighborhood::All)
    }

    fn closes(self) -> bool {
        matches!(self, Neighborhood::Close | Neighborhood::All)
    }

    fn swaps(self) -> bool {
        matches!(self, Neighborhood::Swap | Neighborhood::All)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SolverParams {
    pub max_iterations: usize,
    pub neighborhood: Neighborhood,
    /// Reserved for randomized restarts; the current heuristics are
    /// deterministic and ignore it.
    pub seed: u64,
}

impl Default for SolverParams {
    fn default() -> Self {
        SolverParams {
            max_iterations: 1000,
            neighborhood: Neighborhood::All,
            seed: 0,
        }
    }
}
