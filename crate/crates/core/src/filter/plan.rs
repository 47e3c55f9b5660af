use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{DssError, Result};
use crate::model::Criterion;

/// One UAV performing one task.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Assignment {
    pub task: String,
    pub uav: String,
    /// Position of the task in the UAV's sequence.
    pub order: u32,
    /// Flight profile of the path to the task (e.g. `min`, `max`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sensor: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MissionPlan {
    pub id: String,
    pub tasks: Vec<Assignment>,
    /// Ground control station of each UAV.
    #[serde(default)]
    pub gcs: BTreeMap<String, String>,
    /// Flight profile of each UAV's return path.
    #[serde(default)]
    pub returns: BTreeMap<String, String>,
    pub criteria: BTreeMap<String, f64>,
}

impl MissionPlan {
    /// Checks that every (task, UAV) pair appears once and that the plan
    /// carries a finite value for each criterion.
    pub fn validate(&self, criteria: &[Criterion]) -> Result<()> {
        let mut seen = BTreeSet::new();
        for a in &self.tasks {
            if !seen.insert((a.task.as_str(), a.uav.as_str())) {
                return Err(DssError::InvalidParameter(format!(
                    "plan `{}` assigns task `{}` to UAV `{}` twice",
                    self.id, a.task, a.uav
                )));
            }
        }
        for c in criteria {
            match self.criteria.get(&c.id) {
                None => return Err(DssError::MissingCriterion(format!("{} (plan `{}`)", c.id, self.id))),
                Some(v) if !v.is_finite() => {
                    return Err(DssError::ValueDomain {
                        alternative: self.id.clone(),
                        criterion: c.id.clone(),
                        reason: format!("value {v} is not finite"),
                    })
                }
                Some(_) => {}
            }
        }
        Ok(())
    }

    fn pairs(&self) -> BTreeMap<(&str, &str), &Assignment> {
        self.tasks.iter().map(|a| ((a.task.as_str(), a.uav.as_str()), a)).collect()
    }

    pub fn uavs(&self) -> BTreeSet<&str> {
        self.tasks.iter().map(|a| a.uav.as_str()).collect()
    }
}

/// Per-variable weights of the plan distance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FilterWeights {
    pub w_uav: f64,
    pub w_order: f64,
    pub w_gcs: f64,
    pub w_path: f64,
    pub w_return: f64,
    pub w_sensor: f64,
}

impl Default for FilterWeights {
    fn default() -> Self {
        FilterWeights {
            w_uav: 1.0,
            w_order: 0.6,
            w_gcs: 0.2,
            w_path: 0.1,
            w_return: 0.1,
            w_sensor: 0.1,
        }
    }
}

impl FilterWeights {
    fn as_array(&self) -> [f64; 6] {
        [self.w_uav, self.w_order, self.w_gcs, self.w_path, self.w_return, self.w_sensor]
    }

    pub fn validate(&self) -> Result<()> {
        let w = self.as_array();
        if w.iter().any(|x| !(x.is_finite() && *x >= 0.0)) {
            return Err(DssError::InvalidParameter(format!("filter weights must be nonnegative, got {w:?}")));
        }
        if w.iter().all(|&x| x == 0.0) {
            return Err(DssError::InvalidParameter("filter weights must not all be zero".into()));
        }
        Ok(())
    }
}

/// Number of differing entries per variable family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct PlanDeltas {
    pub uav: usize,
    pub order: usize,
    pub gcs: usize,
    pub path: usize,
    pub r#return: usize,
    pub sensor: usize,
}

impl PlanDeltas {
    /// Counts differences between two plans.
    ///
    /// A (task, UAV) pair present in only one plan is one difference in
    /// `uav` and nothing else; order, path and sensor are compared on the
    /// pairs both plans share. GCS and return profiles are compared over the
    /// union of UAVs, a missing entry differing from any present one.
    pub fn between(s1: &MissionPlan, s2: &MissionPlan) -> Self {
        let (p1, p2) = (s1.pairs(), s2.pairs());
        let mut d = PlanDeltas::default();
        for (key, a) in &p1 {
            match p2.get(key) {
                None => d.uav += 1,
                Some(b) => {
                    d.order += usize::from(a.order != b.order);
                    d.path += usize::from(a.path != b.path);
                    d.sensor += usize::from(a.sensor != b.sensor);
                }
            }
        }
        d.uav += p2.keys().filter(|k| !p1.contains_key(*k)).count();
        d.gcs = map_differences(&s1.gcs, &s2.gcs);
        d.r#return = map_differences(&s1.returns, &s2.returns);
        d
    }

    pub fn weighted(&self, w: &FilterWeights) -> f64 {
        w.w_uav * self.uav as f64
            + w.w_order * self.order as f64
            + w.w_gcs * self.gcs as f64
            + w.w_path * self.path as f64
            + w.w_return * self.r#return as f64
            + w.w_sensor * self.sensor as f64
    }
}

fn map_differences(a: &BTreeMap<String, String>, b: &BTreeMap<String, String>) -> usize {
    let keys: BTreeSet<&String> = a.keys().chain(b.keys()).collect();
    keys.into_iter().filter(|k| a.get(*k) != b.get(*k)).count()
}

pub fn plan_distance(s1: &MissionPlan, s2: &MissionPlan, w: &FilterWeights) -> f64 {
    PlanDeltas::between(s1, s2).weighted(w)
}

/// Greedy best-first filter over a symmetric distance matrix given in ranked
/// order: an index is kept iff it is farther than `threshold` from every index
/// kept before it.
pub fn filter_indices(distances: &[Vec<f64>], threshold: f64) -> Vec<usize> {
    let mut kept: Vec<usize> = Vec::new();
    for i in 0..distances.len() {
        if kept.iter().all(|&k| distances[i][k] > threshold) {
            kept.push(i);
        }
    }
    kept
}

pub fn distance_matrix(plans: &[&MissionPlan], w: &FilterWeights) -> Vec<Vec<f64>> {
    let n = plans.len();
    let mut d = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let x = plan_distance(plans[i], plans[j], w);
            d[i][j] = x;
            d[j][i] = x;
        }
    }
    d
}

/// Removes plans too similar to a better-ranked kept plan. `ranked` must be
/// ordered best first; the output keeps that order.
pub fn filter_plans<'a>(
    ranked: &[&'a MissionPlan],
    w: &FilterWeights,
    threshold: f64,
) -> Result<Vec<&'a MissionPlan>> {
    w.validate()?;
    if !(threshold.is_finite() && threshold >= 0.0) {
        return Err(DssError::InvalidParameter(format!("threshold must be nonnegative, got {threshold}")));
    }
    let d = distance_matrix(ranked, w);
    Ok(filter_indices(&d, threshold).into_iter().map(|i| ranked[i]).collect())
}
