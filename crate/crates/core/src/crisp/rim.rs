//! Reference ideal method.
//!
//! Each alternative is scored only against fixed per-criterion ranges, so
//! adding or removing alternatives never reorders the others.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::crisp::electre::ElectreThresholds;
use crate::error::{DssError, Result};
use crate::model::{DecisionMatrix, WeightVector};
use crate::ranking::{Ranking, ScoreOrder};

pub const METHOD: &str = "rim";

/// Universe of discourse `[a, b]` and reference ideal `[c, d]` of a criterion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RimCriterion {
    pub range: [f64; 2],
    pub ideal: [f64; 2],
}

impl RimCriterion {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        if !([a, b, c, d].iter().all(|x| x.is_finite()) && a <= c && c <= d && d <= b) {
            return Err(DssError::InvalidParameter(format!(
                "RIM parameters must satisfy A <= C <= D <= B, got A={a}, B={b}, C={c}, D={d}"
            )));
        }
        Ok(RimCriterion {
            range: [a, b],
            ideal: [c, d],
        })
    }

    /// Normalized closeness of `v` to the reference ideal, in `[0, 1]`.
    /// `None` when `v` lies outside the universe of discourse.
    pub fn normalize(&self, v: f64) -> Option<f64> {
        let [a, b] = self.range;
        let [c, d] = self.ideal;
        if v < a || v > b {
            return None;
        }
        if (c..=d).contains(&v) {
            return Some(1.0);
        }
        let gap = (v - c).abs().min((v - d).abs());
        if v < c {
            Some(1.0 - gap / (a - c).abs())
        } else {
            Some(1.0 - gap / (d - b).abs())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "BTreeMap<String, RimCriterion>", into = "BTreeMap<String, RimCriterion>")]
pub struct RimParams {
    params: BTreeMap<String, RimCriterion>,
}

impl TryFrom<BTreeMap<String, RimCriterion>> for RimParams {
    type Error = DssError;

    fn try_from(map: BTreeMap<String, RimCriterion>) -> Result<Self> {
        RimParams::new(map)
    }
}

impl From<RimParams> for BTreeMap<String, RimCriterion> {
    fn from(p: RimParams) -> Self {
        p.params
    }
}

impl RimParams {
    pub fn new(params: BTreeMap<String, RimCriterion>) -> Result<Self> {
        for (id, p) in &params {
            RimCriterion::new(p.range[0], p.range[1], p.ideal[0], p.ideal[1]).map_err(|e| {
                DssError::InvalidParameter(format!("criterion `{id}`: {e}"))
            })?;
        }
        Ok(RimParams { params })
    }

    /// Range from the observed minimum and maximum of each criterion; ideal
    /// from the best observed value widened by the indifference threshold
    /// towards the worse side (clamped to the range).
    pub fn from_matrix(m: &DecisionMatrix, thresholds: Option<&ElectreThresholds>) -> Result<Self> {
        let mut params = BTreeMap::new();
        for (j, c) in m.criteria().iter().enumerate() {
            let (lo, hi) = m.column_min_max(j);
            let q = thresholds.and_then(|t| t.get(&c.id)).map_or(0.0, |t| t.q);
            let p = if c.is_benefit() {
                RimCriterion::new(lo, hi, (hi - q).max(lo), hi)?
            } else {
                RimCriterion::new(lo, hi, lo, (lo + q).min(hi))?
            };
            params.insert(c.id.clone(), p);
        }
        Ok(RimParams { params })
    }

    pub fn get(&self, id: &str) -> Option<RimCriterion> {
        self.params.get(id).copied()
    }
}

pub fn relative_index(m: &DecisionMatrix, w: &WeightVector, params: &RimParams) -> Result<Vec<f64>> {
    let weights = w.aligned(m.criteria())?;
    let per_criterion = m
        .criteria()
        .iter()
        .map(|c| {
            params.get(&c.id).ok_or_else(|| {
                DssError::InvalidParameter(format!("no RIM parameters for criterion `{}`", c.id))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out = Vec::with_capacity(m.n_alternatives());
    for (i, row) in m.rows().iter().enumerate() {
        let (mut plus, mut minus) = (0.0, 0.0);
        for (j, &v) in row.iter().enumerate() {
            let y = per_criterion[j].normalize(v).ok_or_else(|| DssError::ValueDomain {
                alternative: m.alternatives()[i].clone(),
                criterion: m.criteria()[j].id.clone(),
                reason: format!(
                    "value {v} outside the RIM range [{}, {}]",
                    per_criterion[j].range[0], per_criterion[j].range[1]
                ),
            })?;
            let weighted = weights[j] * y;
            plus += (weighted - weights[j]) * (weighted - weights[j]);
            minus += weighted * weighted;
        }
        let (plus, minus) = (plus.sqrt(), minus.sqrt());
        out.push(if plus + minus == 0.0 { 0.5 } else { minus / (plus + minus) });
    }
    Ok(out)
}

pub fn rim(m: &DecisionMatrix, w: &WeightVector, params: &RimParams) -> Result<Ranking> {
    let r = relative_index(m, w, params)?;
    Ok(Ranking::from_scores(METHOD, m.alternatives(), &r, ScoreOrder::HigherIsBetter)
        .with_meta("relative_index", json!(r)))
}
