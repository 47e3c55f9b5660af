//! Server configuration file and startup.

use std::fs;
use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::api::{router, AppState, DecisionLog};
use crate::dataset::ingest_dir;
use crate::error::{from_json, Result, ServiceError};
use crate::pipeline::{builtin_profiles, load_decisions, PipelineConfig};

/// Directory holding the synthetic missions shipped with the crate.
pub const BUNDLED_DATA: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/data");
pub const DEFAULT_PORT: u16 = 8080;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ServeConfig {
    /// Directory of mission dataset files.
    #[serde(default = "bundled_missions")]
    pub data: PathBuf,
    /// Decision log; created on the first submission.
    #[serde(default)]
    pub decisions: Option<PathBuf>,
    #[serde(default)]
    pub port: Option<u16>,
    #[serde(default)]
    pub pipeline: PipelineConfig,
}

fn bundled_missions() -> PathBuf {
    Path::new(BUNDLED_DATA).join("missions")
}

impl Default for ServeConfig {
    fn default() -> Self {
        ServeConfig {
            data: bundled_missions(),
            decisions: None,
            port: None,
            pipeline: PipelineConfig::default(),
        }
    }
}

impl ServeConfig {
    /// Reads a JSON config. Relative paths are taken from the config file's
    /// directory.
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| ServiceError::io(path, e))?;
        let mut cfg: ServeConfig = from_json(&text, &path.display().to_string())?;
        let base = path.parent().unwrap_or(Path::new("."));
        if cfg.data.is_relative() {
            cfg.data = base.join(&cfg.data);
        }
        if let Some(d) = cfg.decisions.as_mut().filter(|d| d.is_relative()) {
            *d = base.join(&*d);
        }
        cfg.pipeline.validate()?;
        Ok(cfg)
    }

    pub fn state(&self) -> Result<AppState> {
        self.pipeline.validate()?;
        let missions = ingest_dir(&self.data)?;
        let entries = match &self.decisions {
            Some(p) => load_decisions(p)?,
            None => Vec::new(),
        };
        Ok(AppState::new(
            missions,
            builtin_profiles(),
            self.pipeline.clone(),
            DecisionLog {
                path: self.decisions.clone(),
                entries,
            },
        ))
    }
}

pub async fn serve(cfg: &ServeConfig, port: u16) -> anyhow::Result<()> {
    let app = router(Arc::new(cfg.state()?));
    let addr = SocketAddr::from(([0, 0, 0, 0], port));
    let listener = tokio::net::TcpListener::bind(addr).await?;
    eprintln!("listening on http://{}/api/v1", listener.local_addr()?);
    axum::serve(listener, app).await?;
    Ok(())
}
