use thiserror::Error;

pub type Result<T> = std::result::Result<T, DssError>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DssError {
    #[error("invalid decision matrix: {0}")]
    InvalidMatrix(String),

    #[error("profile does not cover criterion `{0}`")]
    MissingCriterion(String),

    #[error("profile has no criterion named `{0}` in the applied criteria set")]
    UnknownCriterion(String),

    #[error("normalization domain error on criterion `{criterion}`: {reason}")]
    NormalizationDomain { criterion: String, reason: String },

    #[error("value domain error at alternative `{alternative}`, criterion `{criterion}`: {reason}")]
    ValueDomain {
        alternative: String,
        criterion: String,
        reason: String,
    },

    #[error("fuzzy arithmetic domain error in {op}: {reason}")]
    FuzzyDomain { op: &'static str, reason: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("power iteration did not converge after {iterations} iterations (last delta {last_delta:e})")]
    NoConvergence { iterations: usize, last_delta: f64 },

    #[error("hypervolume domain error: {0}")]
    HypervolumeDomain(String),

    #[error("evaluation error: {0}")]
    Evaluation(String),
}
