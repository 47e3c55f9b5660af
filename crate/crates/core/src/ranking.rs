//! Ranked output shared by every method.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Relative tolerance under which two scores are declared tied.
pub const SCORE_TIE_RELATIVE: f64 = 1e-9;
/// Absolute floor for the tie test, for scores at or near zero.
pub const SCORE_TIE_ABSOLUTE: f64 = 1e-12;

pub fn scores_tie(a: f64, b: f64) -> bool {
    let diff = (a - b).abs();
    diff <= SCORE_TIE_ABSOLUTE || diff <= SCORE_TIE_RELATIVE * a.abs().max(b.abs())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScoreOrder {
    HigherIsBetter,
    LowerIsBetter,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankedAlternative {
    pub id: String,
    /// Row of the alternative in the source matrix.
    pub index: usize,
    /// Competition rank: tied alternatives share a rank, the next one skips.
    pub rank: usize,
    pub score: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ranking {
    pub method: String,
    pub entries: Vec<RankedAlternative>,
    #[serde(default)]
    pub metadata: BTreeMap<String, Value>,
}

impl Ranking {
    /// Ranks alternatives by a scalar score. Ties keep matrix order.
    pub fn from_scores(method: &str, ids: &[String], scores: &[f64], order: ScoreOrder) -> Self {
        assert_eq!(ids.len(), scores.len(), "one score per alternative");
        let mut idx: Vec<usize> = (0..scores.len()).collect();
        idx.sort_by(|&i, &j| match order {
            ScoreOrder::HigherIsBetter => scores[j].total_cmp(&scores[i]),
            ScoreOrder::LowerIsBetter => scores[i].total_cmp(&scores[j]),
        });
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for i in idx {
            match groups.last_mut() {
                Some(g) if scores_tie(scores[g[0]], scores[i]) => g.push(i),
                _ => groups.push(vec![i]),
            }
        }
        let mut ranking = Self::from_groups(method, ids, groups, Some(scores));
        ranking.metadata.insert(
            "score_order".into(),
            Value::from(match order {
                ScoreOrder::HigherIsBetter => "descending",
                ScoreOrder::LowerIsBetter => "ascending",
            }),
        );
        ranking
    }

    /// Ranks alternatives from equivalence classes listed best first.
    pub fn from_groups(
        method: &str,
        ids: &[String],
        groups: Vec<Vec<usize>>,
        scores: Option<&[f64]>,
    ) -> Self {
        let mut entries = Vec::with_capacity(ids.len());
        let mut next_rank = 1;
        for mut group in groups {
            group.sort_unstable();
            let rank = next_rank;
            next_rank += group.len();
            for i in group {
                entries.push(RankedAlternative {
                    id: ids[i].clone(),
                    index: i,
                    rank,
                    score: scores.map(|s| s[i]),
                });
            }
        }
        debug_assert_eq!(entries.len(), ids.len(), "every alternative ranked once");
        Ranking {
            method: method.to_string(),
            entries,
            metadata: BTreeMap::new(),
        }
    }

    /// Ranks alternatives by a lexicographic key, smaller keys first. Equal
    /// keys tie.
    pub fn from_keys<K: PartialEq>(
        method: &str,
        ids: &[String],
        keys: &[K],
        cmp: impl Fn(&K, &K) -> std::cmp::Ordering,
    ) -> Self {
        let mut idx: Vec<usize> = (0..keys.len()).collect();
        idx.sort_by(|&i, &j| cmp(&keys[i], &keys[j]));
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for i in idx {
            match groups.last_mut() {
                Some(g) if keys[g[0]] == keys[i] => g.push(i),
                _ => groups.push(vec![i]),
            }
        }
        Self::from_groups(method, ids, groups, None)
    }

    pub fn with_meta(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.metadata.insert(key.to_string(), value.into());
        self
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn rank_of(&self, id: &str) -> Option<usize> {
        self.entries.iter().find(|e| e.id == id).map(|e| e.rank)
    }

    pub fn score_of(&self, id: &str) -> Option<f64> {
        self.entries.iter().find(|e| e.id == id).and_then(|e| e.score)
    }

    /// Matrix rows in ranked order.
    pub fn order(&self) -> Vec<usize> {
        self.entries.iter().map(|e| e.index).collect()
    }

    pub fn ids(&self) -> Vec<&str> {
        self.entries.iter().map(|e| e.id.as_str()).collect()
    }

    /// Rank of each matrix row, indexed by row.
    pub fn ranks_by_index(&self) -> Vec<usize> {
        let mut ranks = vec![0; self.entries.len()];
        for e in &self.entries {
            ranks[e.index] = e.rank;
        }
        ranks
    }
}
