//! ELECTRE III: fuzzy outranking credibility plus descending and ascending
//! distillation.
//!
//! Distillation uses the discrimination threshold `s(l) = 0.3 - 0.15 l`.
//! At cut level `l`, `a` is preferred to `b` when `S(a,b) > l - s(l)` and
//! `S(a,b) - S(b,a) > s(l)`. The final ranking orders alternatives by the mean
//! of their descending and ascending class positions; equal means tie.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{DssError, Result};
use crate::model::{criteria_ids, Criterion, DecisionMatrix, WeightVector};
use crate::ranking::Ranking;

pub const METHOD: &str = "electre3";

pub const DISCRIMINATION_ALPHA: f64 = 0.3;
pub const DISCRIMINATION_BETA: f64 = -0.15;

/// Indifference, preference and veto thresholds of one criterion, in the
/// criterion's units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Thresholds {
    pub q: f64,
    pub p: f64,
    pub v: f64,
}

impl Thresholds {
    pub const fn new(q: f64, p: f64, v: f64) -> Self {
        Thresholds { q, p, v }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "BTreeMap<String, Thresholds>", into = "BTreeMap<String, Thresholds>")]
pub struct ElectreThresholds {
    thresholds: BTreeMap<String, Thresholds>,
}

impl TryFrom<BTreeMap<String, Thresholds>> for ElectreThresholds {
    type Error = DssError;

    fn try_from(map: BTreeMap<String, Thresholds>) -> Result<Self> {
        ElectreThresholds::new(map)
    }
}

impl From<ElectreThresholds> for BTreeMap<String, Thresholds> {
    fn from(t: ElectreThresholds) -> Self {
        t.thresholds
    }
}

impl ElectreThresholds {
    pub fn new(thresholds: BTreeMap<String, Thresholds>) -> Result<Self> {
        for (id, t) in &thresholds {
            let finite = t.q.is_finite() && t.p.is_finite() && t.v.is_finite();
            if !finite || !(0.0 <= t.q && t.q <= t.p && t.p <= t.v) {
                return Err(DssError::InvalidParameter(format!(
                    "thresholds for `{id}` must satisfy 0 <= q <= p <= v, got q={}, p={}, v={}",
                    t.q, t.p, t.v
                )));
            }
        }
        Ok(ElectreThresholds { thresholds })
    }

    /// Expert thresholds for the eleven mission criteria.
    pub fn mission_defaults() -> Self {
        use criteria_ids::*;
        let table = [
            (COST, Thresholds::new(0.5, 5.0, 50.0)),
            (DISTANCE, Thresholds::new(0.5, 5.0, 50.0)),
            (FLIGHT_TIME, Thresholds::new(0.01, 0.5, 1.5)),
            (FUEL, Thresholds::new(0.5, 7.0, 50.0)),
            (MAKESPAN, Thresholds::new(0.005, 0.3, 1.0)),
            (NUM_GCSS, Thresholds::new(0.0, 1.0, 2.0)),
            (NUM_UAVS, Thresholds::new(0.0, 1.0, 4.0)),
            (RISK_DISTANCE_GROUND, Thresholds::new(0.001, 0.1, 0.5)),
            (RISK_DISTANCE_UAVS, Thresholds::new(0.001, 0.1, 0.5)),
            (RISK_FUEL_USAGE, Thresholds::new(0.001, 0.1, 0.5)),
            (RISK_OUT_OF_COVERAGE, Thresholds::new(0.001, 0.1, 0.5)),
        ];
        ElectreThresholds {
            thresholds: table.iter().map(|(k, t)| (k.to_string(), *t)).collect(),
        }
    }

    pub fn get(&self, id: &str) -> Option<Thresholds> {
        self.thresholds.get(id).copied()
    }

    pub fn aligned(&self, criteria: &[Criterion]) -> Result<Vec<Thresholds>> {
        criteria
            .iter()
            .map(|c| {
                self.get(&c.id).ok_or_else(|| {
                    DssError::InvalidParameter(format!("no ELECTRE thresholds for criterion `{}`", c.id))
                })
            })
            .collect()
    }
}

/// Partial concordance with "a outranks b" given the advantage `delta` of b
/// over a.
fn concordance(delta: f64, t: Thresholds) -> f64 {
    if delta <= t.q {
        1.0
    } else if delta >= t.p {
        0.0
    } else {
        (t.p - delta) / (t.p - t.q)
    }
}

fn discordance(delta: f64, t: Thresholds) -> f64 {
    if delta <= t.p {
        0.0
    } else if delta >= t.v {
        1.0
    } else {
        (delta - t.p) / (t.v - t.p)
    }
}

/// Credibility `S(a,b)` of "a is at least as good as b" for every pair.
pub fn credibility_matrix(
    m: &DecisionMatrix,
    w: &WeightVector,
    t: &ElectreThresholds,
) -> Result<Vec<Vec<f64>>> {
    let weights = w.aligned(m.criteria())?;
    let thresholds = t.aligned(m.criteria())?;
    let weight_total: f64 = weights.iter().sum();
    if weight_total <= 0.0 {
        return Err(DssError::InvalidParameter("weights must not all be zero".into()));
    }
    let n = m.n_alternatives();
    let mut s = vec![vec![1.0; n]; n];
    for a in 0..n {
        for b in 0..n {
            if a == b {
                continue;
            }
            let mut partial_discordance = Vec::with_capacity(m.n_criteria());
            let mut c_ab = 0.0;
            for (j, crit) in m.criteria().iter().enumerate() {
                let delta = if crit.is_benefit() {
                    m.value(b, j) - m.value(a, j)
                } else {
                    m.value(a, j) - m.value(b, j)
                };
                c_ab += weights[j] * concordance(delta, thresholds[j]);
                partial_discordance.push(discordance(delta, thresholds[j]));
            }
            c_ab /= weight_total;
            let mut credibility = c_ab;
            for d in partial_discordance {
                if d > c_ab {
                    credibility *= (1.0 - d) / (1.0 - c_ab);
                }
            }
            s[a][b] = credibility;
        }
    }
    Ok(s)
}

fn discrimination(lambda: f64) -> f64 {
    DISCRIMINATION_ALPHA + DISCRIMINATION_BETA * lambda
}

fn prefers(s: &[Vec<f64>], a: usize, b: usize, lambda: f64) -> bool {
    let sl = discrimination(lambda);
    s[a][b] > lambda - sl && s[a][b] - s[b][a] > sl
}

/// Qualification: alternatives a is preferred to minus those preferred to a,
/// within `set`.
fn qualifications(s: &[Vec<f64>], set: &[usize], lambda: f64) -> Vec<i64> {
    set.iter()
        .map(|&a| {
            set.iter()
                .filter(|&&b| b != a)
                .map(|&b| prefers(s, a, b, lambda) as i64 - prefers(s, b, a, lambda) as i64)
                .sum()
        })
        .collect()
}

fn max_credibility_below(s: &[Vec<f64>], set: &[usize], bound: f64) -> f64 {
    let mut best = 0.0f64;
    for &a in set {
        for &b in set {
            if a != b && s[a][b] < bound {
                best = best.max(s[a][b]);
            }
        }
    }
    best
}

/// Extracts classes one at a time; `descending` keeps the best-qualified
/// alternatives, otherwise the worst. Classes come out in extraction order.
fn distill(s: &[Vec<f64>], descending: bool) -> Vec<Vec<usize>> {
    let mut remaining: Vec<usize> = (0..s.len()).collect();
    let mut classes = Vec::new();
    while !remaining.is_empty() {
        let mut candidates = remaining.clone();
        if candidates.len() > 1 {
            let mut lambda = 0.0f64;
            for &a in &remaining {
                for &b in &remaining {
                    if a != b {
                        lambda = lambda.max(s[a][b]);
                    }
                }
            }
            loop {
                let q = qualifications(s, &candidates, lambda);
                let target = if descending { *q.iter().max().unwrap() } else { *q.iter().min().unwrap() };
                candidates = candidates
                    .iter()
                    .zip(&q)
                    .filter(|(_, &qi)| qi == target)
                    .map(|(&a, _)| a)
                    .collect();
                if candidates.len() == 1 || lambda <= 0.0 {
                    break;
                }
                lambda = max_credibility_below(s, &candidates, lambda - discrimination(lambda));
            }
        }
        remaining.retain(|a| !candidates.contains(a));
        classes.push(candidates);
    }
    classes
}

#[derive(Debug, Clone, PartialEq)]
pub struct Distillation {
    /// Descending pre-order, best class first.
    pub descending: Vec<Vec<usize>>,
    /// Ascending pre-order, best class first.
    pub ascending: Vec<Vec<usize>>,
}

impl Distillation {
    pub fn from_credibility(s: &[Vec<f64>]) -> Self {
        let descending = distill(s, true);
        let mut ascending = distill(s, false);
        ascending.reverse();
        Distillation { descending, ascending }
    }

    fn positions(classes: &[Vec<usize>], n: usize) -> Vec<usize> {
        let mut pos = vec![0; n];
        for (k, class) in classes.iter().enumerate() {
            for &a in class {
                pos[a] = k + 1;
            }
        }
        pos
    }

    pub fn descending_ranks(&self, n: usize) -> Vec<usize> {
        Self::positions(&self.descending, n)
    }

    pub fn ascending_ranks(&self, n: usize) -> Vec<usize> {
        Self::positions(&self.ascending, n)
    }

    /// Pairs ordered one way by the descending pre-order and the other way by
    /// the ascending one.
    pub fn incomparable_pairs(&self, n: usize) -> Vec<(usize, usize)> {
        let d = self.descending_ranks(n);
        let a = self.ascending_ranks(n);
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let di = d[i].cmp(&d[j]);
                let ai = a[i].cmp(&a[j]);
                if di != std::cmp::Ordering::Equal && ai != std::cmp::Ordering::Equal && di != ai {
                    pairs.push((i, j));
                }
            }
        }
        pairs
    }
}

pub fn electre3(m: &DecisionMatrix, w: &WeightVector, t: &ElectreThresholds) -> Result<Ranking> {
    let s = credibility_matrix(m, w, t)?;
    let n = m.n_alternatives();
    let dist = Distillation::from_credibility(&s);
    let d = dist.descending_ranks(n);
    let a = dist.ascending_ranks(n);
    // Twice the mean position keeps the key integral.
    let keys: Vec<usize> = d.iter().zip(&a).map(|(x, y)| x + y).collect();
    let scores: Vec<f64> = keys.iter().map(|&k| k as f64 / 2.0).collect();
    let ids = m.alternatives();
    let mut ranking = Ranking::from_keys(METHOD, ids, &keys, |x, y| x.cmp(y));
    for e in &mut ranking.entries {
        e.score = Some(scores[e.index]);
    }
    let name = |classes: &Vec<Vec<usize>>| -> Vec<Vec<&str>> {
        classes.iter().map(|c| c.iter().map(|&i| ids[i].as_str()).collect()).collect()
    };
    let incomparable: Vec<[&str; 2]> = dist
        .incomparable_pairs(n)
        .into_iter()
        .map(|(i, j)| [ids[i].as_str(), ids[j].as_str()])
        .collect();
    Ok(ranking
        .with_meta("score_order", "ascending")
        .with_meta("score", "mean of descending and ascending distillation positions")
        .with_meta("credibility", json!(s))
        .with_meta("descending", json!(name(&dist.descending)))
        .with_meta("ascending", json!(name(&dist.ascending)))
        .with_meta("incomparable", json!(incomparable))
        .with_meta(
            "discrimination",
            json!({"alpha": DISCRIMINATION_ALPHA, "beta": DISCRIMINATION_BETA}),
        ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup(rows: Vec<Vec<f64>>, t: Thresholds) -> (DecisionMatrix, WeightVector, ElectreThresholds) {
        let criteria: Vec<Criterion> =
            (0..rows[0].len()).map(|j| Criterion::minimize(&format!("c{j}"))).collect();
        let ids = (1..=rows.len()).map(|i| format!("s{i}")).collect();
        let thresholds = ElectreThresholds::new(criteria.iter().map(|c| (c.id.clone(), t)).collect()).unwrap();
        let w = WeightVector::uniform(&criteria);
        (DecisionMatrix::new(criteria, ids, rows).unwrap(), w, thresholds)
    }

    #[test]
    fn clear_winner_has_full_credibility() {
        let (m, w, t) = setup(vec![vec![1.0, 1.0], vec![3.0, 3.0]], Thresholds::new(0.1, 1.0, 10.0));
        let s = credibility_matrix(&m, &w, &t).unwrap();
        assert_eq!(s[0][1], 1.0);
        assert_eq!(s[1][0], 0.0);
        assert_eq!(s[0][0], 1.0);
        assert_eq!(electre3(&m, &w, &t).unwrap().ids(), vec!["s1", "s2"]);
    }

    #[test]
    fn indifference_everywhere_ties() {
        let (m, w, t) = setup(
            vec![vec![1.0, 1.0], vec![1.05, 0.98], vec![0.97, 1.02]],
            Thresholds::new(0.1, 1.0, 10.0),
        );
        let r = electre3(&m, &w, &t).unwrap();
        assert_eq!(r.ranks_by_index(), vec![1, 1, 1]);
    }

    #[test]
    fn threshold_ordering_is_validated() {
        let bad = [("c0".to_string(), Thresholds::new(1.0, 0.5, 2.0))].into_iter().collect();
        assert!(ElectreThresholds::new(bad).is_err());
        let neg = [("c0".to_string(), Thresholds::new(-1.0, 0.5, 2.0))].into_iter().collect();
        assert!(ElectreThresholds::new(neg).is_err());
    }

    #[test]
    fn missing_thresholds_rejected() {
        let (m, w, _) = setup(vec![vec![1.0], vec![2.0]], Thresholds::new(0.0, 1.0, 2.0));
        let t = ElectreThresholds::new(BTreeMap::new()).unwrap();
        assert!(electre3(&m, &w, &t).is_err());
    }

    #[test]
    fn mission_defaults_are_valid() {
        let t = ElectreThresholds::mission_defaults();
        assert!(ElectreThresholds::new(t.thresholds.clone()).is_ok());
        assert_eq!(t.get("makespan"), Some(Thresholds::new(0.005, 0.3, 1.0)));
        assert_eq!(t.aligned(&crate::model::mission_criteria()).unwrap().len(), 11);
    }

    #[test]
    fn chain_is_ranked_in_order() {
        let (m, w, t) = setup(
            vec![vec![3.0, 3.0], vec![1.0, 1.0], vec![5.0, 5.0]],
            Thresholds::new(0.1, 1.0, 10.0),
        );
        assert_eq!(electre3(&m, &w, &t).unwrap().ids(), vec!["s2", "s1", "s3"]);
    }
}
