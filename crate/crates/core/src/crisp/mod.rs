//! The ten classical ranking methods.

pub mod ahp;
pub mod electre;
pub mod multimoora;
pub mod normalize;
pub mod rim;
pub mod topsis;
pub mod vikor;
pub mod waspas;
pub mod wpm;
pub mod wsm;

pub use ahp::{ahp, principal_eigenvector};
pub use electre::{credibility_matrix, electre3, ElectreThresholds, Thresholds};
pub use multimoora::{multimoora, DominanceAggregation};
pub use rim::{rim, RimCriterion, RimParams};
pub use topsis::{topsis, Normalization};
pub use vikor::vikor;
pub use waspas::waspas;
pub use wpm::wpm;
pub use wsm::wsm;
