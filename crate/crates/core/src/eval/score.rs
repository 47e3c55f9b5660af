use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{DssError, Result};
use crate::ranking::Ranking;

/// An operator's choice of the best plan of a mission under a profile.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decision {
    pub operator: String,
    pub profile: String,
    pub mission: String,
    pub plan: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ts: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreRecord {
    pub operator: String,
    pub mission: String,
    pub profile: String,
    pub method: String,
    pub score: f64,
    /// Set when the mission had a single plan, so any ranking is perfect.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub degenerate: bool,
}

/// `(n - rank) / (n - 1)`: 1 when the chosen plan is ranked first, 0 when
/// last. A single-plan mission scores 1 and is flagged degenerate.
pub fn score_rank(rank: usize, num_solutions: usize) -> Result<(f64, bool)> {
    if num_solutions == 0 || rank == 0 || rank > num_solutions {
        return Err(DssError::Evaluation(format!(
            "rank {rank} is outside 1..={num_solutions}"
        )));
    }
    if num_solutions == 1 {
        return Ok((1.0, true));
    }
    Ok(((num_solutions - rank) as f64 / (num_solutions - 1) as f64, false))
}

/// Scores a ranking against a decision. Tied plans share their competition
/// rank.
pub fn score(ranking: &Ranking, decision: &Decision, num_solutions: usize) -> Result<ScoreRecord> {
    let rank = ranking.rank_of(&decision.plan).ok_or_else(|| {
        DssError::Evaluation(format!(
            "chosen plan `{}` is not in the {} ranking of mission `{}`",
            decision.plan, ranking.method, decision.mission
        ))
    })?;
    let (score, degenerate) = score_rank(rank, num_solutions)?;
    Ok(ScoreRecord {
        operator: decision.operator.clone(),
        mission: decision.mission.clone(),
        profile: decision.profile.clone(),
        method: ranking.method.clone(),
        score,
        degenerate,
    })
}

/// The last decision per (operator, profile, mission), in first-seen order.
/// Later submissions revise earlier ones.
pub fn latest_decisions(log: &[Decision]) -> Vec<Decision> {
    let mut order: Vec<(String, String, String)> = Vec::new();
    let mut latest: BTreeMap<(String, String, String), Decision> = BTreeMap::new();
    for d in log {
        let key = (d.operator.clone(), d.profile.clone(), d.mission.clone());
        if latest.insert(key.clone(), d.clone()).is_none() {
            order.push(key);
        }
    }
    order.into_iter().map(|k| latest.remove(&k).expect("key recorded")).collect()
}
