use serde_json::json;

use crate::error::{DssError, Result};
use crate::model::{DecisionMatrix, WeightVector};
use crate::ranking::{Ranking, ScoreOrder};

pub const METHOD: &str = "vikor";

#[derive(Debug, Clone, PartialEq)]
pub struct VikorScores {
    /// Weighted normalized Manhattan distance to the ideal.
    pub s: Vec<f64>,
    /// Weighted normalized Chebyshev distance to the ideal.
    pub r: Vec<f64>,
    pub q: Vec<f64>,
    /// Criteria whose best and worst values coincide; they contribute nothing.
    pub degenerate_criteria: Vec<String>,
}

pub fn scores(m: &DecisionMatrix, w: &WeightVector, v: f64) -> Result<VikorScores> {
    if !(0.0..=1.0).contains(&v) {
        return Err(DssError::InvalidParameter(format!("v must lie in [0, 1], got {v}")));
    }
    let weights = w.aligned(m.criteria())?;
    let n = m.n_alternatives();
    let mut s = vec![0.0; n];
    let mut r = vec![0.0f64; n];
    let mut degenerate_criteria = Vec::new();
    for (j, c) in m.criteria().iter().enumerate() {
        let (lo, hi) = m.column_min_max(j);
        let (best, worst) = if c.is_benefit() { (hi, lo) } else { (lo, hi) };
        if best == worst {
            degenerate_criteria.push(c.id.clone());
            continue;
        }
        for i in 0..n {
            let term = weights[j] * (best - m.value(i, j)) / (best - worst);
            s[i] += term;
            r[i] = r[i].max(term);
        }
    }
    let q = compromise(&s, &r, v);
    Ok(VikorScores {
        s,
        r,
        q,
        degenerate_criteria,
    })
}

/// `Q = v (S - S*) / (S- - S*) + (1 - v) (R - R*) / (R- - R*)`; a term whose
/// denominator vanishes is zero.
pub(crate) fn compromise(s: &[f64], r: &[f64], v: f64) -> Vec<f64> {
    let (s_best, s_worst) = min_max(s);
    let (r_best, r_worst) = min_max(r);
    s.iter()
        .zip(r)
        .map(|(si, ri)| {
            let group = if s_worst > s_best { (si - s_best) / (s_worst - s_best) } else { 0.0 };
            let regret = if r_worst > r_best { (ri - r_best) / (r_worst - r_best) } else { 0.0 };
            v * group + (1.0 - v) * regret
        })
        .collect()
}

fn min_max(xs: &[f64]) -> (f64, f64) {
    xs.iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| (lo.min(x), hi.max(x)))
}

pub fn vikor(m: &DecisionMatrix, w: &WeightVector, v: f64) -> Result<Ranking> {
    let sc = scores(m, w, v)?;
    Ok(Ranking::from_scores(METHOD, m.alternatives(), &sc.q, ScoreOrder::LowerIsBetter)
        .with_meta("v", v)
        .with_meta("S", json!(sc.s))
        .with_meta("R", json!(sc.r))
        .with_meta("Q", json!(sc.q))
        .with_meta("degenerate_criteria", json!(sc.degenerate_criteria)))
}
