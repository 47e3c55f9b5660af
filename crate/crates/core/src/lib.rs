//! Decision support for multi-UAV mission plan selection.
//!
//! Ranks candidate mission plans under operator preference profiles with ten
//! classical and six fuzzy multi-criteria methods, removes near-duplicate
//! plans by assignment similarity, and scores rankings against recorded
//! operator choices.

pub mod crisp;
pub mod error;
pub mod eval;
pub mod filter;
pub mod fuzzy;
pub mod fuzzy_methods;
pub mod method;
pub mod model;
pub mod ranking;

pub use error::{DssError, Result};
pub use fuzzy::Tfn;
pub use method::{Method, MethodParams};
pub use model::{
    crisp_weights, fuzzy_weights, Criterion, DecisionMatrix, Direction, FuzzyWeightVector,
    ImportanceDegree, OperatorProfile, WeightVector,
};
pub use ranking::{RankedAlternative, Ranking, ScoreOrder};
