//! Service layer of the mission plan decision support engine: dataset
//! ingestion, the rank-then-filter pipeline, synthetic data, and the HTTP
//! API consumed by the operator UI.

pub mod api;
pub mod config;
pub mod dataset;
pub mod error;
pub mod pipeline;
pub mod synth;

pub use dataset::{ingest, ingest_dir, DatasetMeta, MissionDataset};
pub use error::{Result, ServiceError};
pub use pipeline::{run_pipeline, PipelineConfig, PipelineOutput};
