//! Similarity filtering of ranked mission plans and the hypervolume-based
//! threshold sweep.

pub mod hypervolume;
pub mod plan;
pub mod sweep;

pub use hypervolume::{hypervolume, normalize_objectives, DEFAULT_REFERENCE};
pub use plan::{distance_matrix, filter_indices, filter_plans, plan_distance, Assignment, FilterWeights, MissionPlan, PlanDeltas};
pub use sweep::{parse_grid, threshold_sweep, SweepRow, DEFAULT_THRESHOLD};
