//! Scoring rankings against recorded operator decisions and comparing
//! methods with the Wilcoxon signed-rank test.

pub mod aggregate;
pub mod compare;
pub mod score;
pub mod wilcoxon;

pub use aggregate::{aggregate_scores, GroupBy, GroupStats};
pub use compare::{compare_methods, comparison_matrix, ComparisonCell, ComparisonMatrix, MethodComparison, SIGNIFICANCE};
pub use score::{latest_decisions, score, score_rank, Decision, ScoreRecord};
pub use wilcoxon::{signed_rank, WilcoxonMethod, WilcoxonResult, EXACT_MAX_N};
