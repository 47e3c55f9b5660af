use std::collections::BTreeMap;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{DssError, Result};
use crate::eval::score::ScoreRecord;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupBy {
    Method,
    Operator,
    Profile,
    Mission,
}

impl GroupBy {
    pub fn name(self) -> &'static str {
        match self {
            GroupBy::Method => "method",
            GroupBy::Operator => "operator",
            GroupBy::Profile => "profile",
            GroupBy::Mission => "mission",
        }
    }

    fn key(self, r: &ScoreRecord) -> &str {
        match self {
            GroupBy::Method => &r.method,
            GroupBy::Operator => &r.operator,
            GroupBy::Profile => &r.profile,
            GroupBy::Mission => &r.mission,
        }
    }

    /// Parses a comma-separated list such as `method,profile`.
    pub fn parse_list(s: &str) -> Result<Vec<GroupBy>> {
        s.split(',')
            .map(str::trim)
            .filter(|p| !p.is_empty())
            .map(str::parse)
            .collect()
    }
}

impl FromStr for GroupBy {
    type Err = DssError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "method" => Ok(GroupBy::Method),
            "operator" => Ok(GroupBy::Operator),
            "profile" => Ok(GroupBy::Profile),
            "mission" => Ok(GroupBy::Mission),
            other => Err(DssError::InvalidParameter(format!(
                "cannot group by `{other}`; use method, operator, profile or mission"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroupStats {
    /// Group values in the order of the requested dimensions.
    pub key: Vec<String>,
    pub count: usize,
    pub mean: f64,
    pub median: f64,
    /// Sample standard deviation; 0 for a single record.
    pub sd: f64,
}

/// Mean, median and sample standard deviation of scores per group, groups in
/// lexicographic key order. An empty `group_by` yields one overall group.
pub fn aggregate_scores(records: &[ScoreRecord], group_by: &[GroupBy]) -> Result<Vec<GroupStats>> {
    if records.is_empty() {
        return Err(DssError::Evaluation("no score records to aggregate".into()));
    }
    let mut groups: BTreeMap<Vec<String>, Vec<f64>> = BTreeMap::new();
    for r in records {
        let key = group_by.iter().map(|g| g.key(r).to_string()).collect();
        groups.entry(key).or_default().push(r.score);
    }
    Ok(groups
        .into_iter()
        .map(|(key, scores)| {
            let n = scores.len();
            let mean = scores.iter().sum::<f64>() / n as f64;
            let sd = if n > 1 {
                (scores.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt()
            } else {
                0.0
            };
            GroupStats {
                key,
                count: n,
                mean,
                median: median(scores),
                sd,
            }
        })
        .collect())
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len();
    if n % 2 == 1 {
        xs[n / 2]
    } else {
        (xs[n / 2 - 1] + xs[n / 2]) / 2.0
    }
}
