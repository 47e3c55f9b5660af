//! Mission datasets: a set of candidate plans plus the mission's shape.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use dss_core::filter::MissionPlan;
use dss_core::model::mission_criteria;
use dss_core::{Criterion, DecisionMatrix};
use serde::{Deserialize, Serialize};

use crate::error::{from_json, Result, ServiceError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatasetMeta {
    pub tasks: u32,
    pub multi_uav_tasks: u32,
    pub uavs: u32,
    pub gcss: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MissionDataset {
    pub id: String,
    pub meta: DatasetMeta,
    pub plans: Vec<MissionPlan>,
}

impl MissionDataset {
    /// Parses and validates a dataset document.
    pub fn from_json_str(text: &str, source_name: &str) -> Result<Self> {
        let ds: MissionDataset = from_json(text, source_name)?;
        ds.validate(source_name)?;
        Ok(ds)
    }

    pub fn validate(&self, source_name: &str) -> Result<()> {
        let schema = |pointer: String, message: String| ServiceError::Schema {
            source_name: source_name.to_string(),
            pointer,
            message,
        };
        if self.id.trim().is_empty() {
            return Err(schema("/id".into(), "dataset id is empty".into()));
        }
        let m = &self.meta;
        for (name, v) in [("tasks", m.tasks), ("uavs", m.uavs), ("gcss", m.gcss)] {
            if v < 1 {
                return Err(schema(format!("/meta/{name}"), format!("{name} must be at least 1")));
            }
        }
        if m.multi_uav_tasks > m.tasks {
            return Err(schema(
                "/meta/multi_uav_tasks".into(),
                format!("{} multi-UAV tasks exceed {} tasks", m.multi_uav_tasks, m.tasks),
            ));
        }
        if self.plans.is_empty() {
            return Err(schema("/plans".into(), "dataset has no plans".into()));
        }
        let criteria = mission_criteria();
        let mut ids = BTreeSet::new();
        for (i, p) in self.plans.iter().enumerate() {
            if !ids.insert(p.id.as_str()) {
                return Err(schema(format!("/plans/{i}/id"), format!("duplicate plan id `{}`", p.id)));
            }
            for c in &criteria {
                match p.criteria.get(&c.id) {
                    None => {
                        return Err(schema(
                            format!("/plans/{i}/criteria"),
                            format!("plan `{}` lacks criterion `{}`", p.id, c.id),
                        ))
                    }
                    Some(v) if !v.is_finite() => {
                        return Err(schema(
                            format!("/plans/{i}/criteria/{}", c.id),
                            format!("value {v} is not finite"),
                        ))
                    }
                    Some(_) => {}
                }
            }
            if let Some(extra) = p.criteria.keys().find(|k| !criteria.iter().any(|c| &c.id == *k)) {
                return Err(schema(
                    format!("/plans/{i}/criteria/{extra}"),
                    format!("unknown criterion `{extra}`"),
                ));
            }
            p.validate(&criteria)
                .map_err(|e| schema(format!("/plans/{i}/tasks"), e.to_string()))?;
        }
        Ok(())
    }

    /// Decision matrix over the canonical criteria, one row per plan in
    /// dataset order.
    pub fn matrix(&self) -> Result<DecisionMatrix> {
        let criteria = mission_criteria();
        let rows = self
            .plans
            .iter()
            .map(|p| criteria.iter().map(|c| p.criteria[&c.id]).collect())
            .collect();
        let ids = self.plans.iter().map(|p| p.id.clone()).collect();
        DecisionMatrix::new(criteria, ids, rows)
            .map_err(|e| ServiceError::core(format!("dataset `{}`", self.id), e))
    }

    pub fn plan(&self, id: &str) -> Option<&MissionPlan> {
        self.plans.iter().find(|p| p.id == id)
    }

    pub fn criteria(&self) -> Vec<Criterion> {
        mission_criteria()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("dataset serializes")
    }
}

pub fn ingest(path: &Path) -> Result<MissionDataset> {
    let text = fs::read_to_string(path).map_err(|e| ServiceError::io(path, e))?;
    MissionDataset::from_json_str(&text, &path.display().to_string())
}

/// Every `*.json` dataset in `dir`, sorted by dataset id. Dataset ids must be
/// unique across the directory.
pub fn ingest_dir(dir: &Path) -> Result<Vec<MissionDataset>> {
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| ServiceError::io(dir, e))?
        .map(|entry| entry.map(|e| e.path()).map_err(|e| ServiceError::io(dir, e)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    let mut datasets = paths.iter().map(|p| ingest(p)).collect::<Result<Vec<_>>>()?;
    datasets.sort_by(|a, b| a.id.cmp(&b.id));
    if let Some(w) = datasets.windows(2).find(|w| w[0].id == w[1].id) {
        return Err(ServiceError::Invalid(format!(
            "dataset id `{}` appears twice in {}",
            w[0].id,
            dir.display()
        )));
    }
    if datasets.is_empty() {
        return Err(ServiceError::Invalid(format!("no datasets in {}", dir.display())));
    }
    Ok(datasets)
}
