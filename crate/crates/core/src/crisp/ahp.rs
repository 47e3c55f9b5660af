//! Analytic hierarchy process with eigenvector priorities.
//!
//! Criteria are compared by the ratio of their importance degrees. For each
//! criterion, alternatives are compared on a 1-9 scale derived from how far
//! apart their values are relative to the criterion's range in the set.

use serde_json::json;

use crate::error::{DssError, Result};
use crate::model::{DecisionMatrix, OperatorProfile};
use crate::ranking::{Ranking, ScoreOrder};

pub const METHOD: &str = "ahp";

pub const POWER_ITERATION_TOLERANCE: f64 = 1e-9;
pub const POWER_ITERATION_MAX: usize = 10_000;

/// Principal eigenvector of a positive square matrix by power iteration,
/// normalized to sum to one.
pub fn principal_eigenvector(a: &[Vec<f64>]) -> Result<Vec<f64>> {
    let n = a.len();
    if n == 0 || a.iter().any(|row| row.len() != n) {
        return Err(DssError::InvalidParameter("comparison matrix must be square and non-empty".into()));
    }
    let mut x = vec![1.0 / n as f64; n];
    let mut delta = f64::INFINITY;
    for _ in 0..POWER_ITERATION_MAX {
        let mut y: Vec<f64> = a
            .iter()
            .map(|row| row.iter().zip(&x).map(|(aij, xj)| aij * xj).sum())
            .collect();
        let total: f64 = y.iter().sum();
        if !(total > 0.0 && total.is_finite()) {
            return Err(DssError::InvalidParameter(
                "comparison matrix must have positive entries".into(),
            ));
        }
        y.iter_mut().for_each(|v| *v /= total);
        delta = y.iter().zip(&x).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        x = y;
        if delta < POWER_ITERATION_TOLERANCE {
            return Ok(x);
        }
    }
    Err(DssError::NoConvergence {
        iterations: POWER_ITERATION_MAX,
        last_delta: delta,
    })
}

/// Criteria comparison matrix `A[i][j] = D(fi) / D(fj)`.
pub fn criteria_comparisons(profile: &OperatorProfile, m: &DecisionMatrix) -> Result<Vec<Vec<f64>>> {
    let degrees = profile.aligned_degrees(m.criteria())?;
    Ok(degrees
        .iter()
        .map(|di| degrees.iter().map(|dj| di.value() as f64 / dj.value() as f64).collect())
        .collect())
}

/// Scale value in 1..=9 for the advantage of one alternative over another on
/// a criterion: the absolute gap relative to the criterion range, mapped
/// linearly onto 1..=9 and rounded.
pub fn scale_value(gap: f64, range: f64) -> u32 {
    if range <= 0.0 || gap <= 0.0 {
        return 1;
    }
    let fraction = (gap / range).min(1.0);
    (1.0 + 8.0 * fraction).round() as u32
}

/// Signed scale of `a` against `b` on criterion `j`: positive when `a` is
/// better, negative when `b` is better, `1` for equal values.
pub(crate) fn oriented_scale(m: &DecisionMatrix, j: usize, a: usize, b: usize) -> (u32, bool) {
    let (lo, hi) = m.column_min_max(j);
    let (va, vb) = (m.value(a, j), m.value(b, j));
    let n = scale_value((va - vb).abs(), hi - lo);
    let a_better = if m.criteria()[j].is_benefit() { va >= vb } else { va <= vb };
    (n, a_better)
}

/// Reciprocal pairwise comparison matrix of the alternatives on criterion `j`.
pub fn alternative_comparisons(m: &DecisionMatrix, j: usize) -> Vec<Vec<f64>> {
    let n = m.n_alternatives();
    let mut a = vec![vec![1.0; n]; n];
    for s in 0..n {
        for t in (s + 1)..n {
            let (value, s_better) = oriented_scale(m, j, s, t);
            let value = value as f64;
            if s_better {
                a[s][t] = value;
                a[t][s] = 1.0 / value;
            } else {
                a[s][t] = 1.0 / value;
                a[t][s] = value;
            }
        }
    }
    a
}

/// Criterion weights and per-criterion local priorities (`local[f][s]`).
pub struct AhpPriorities {
    pub criteria: Vec<f64>,
    pub local: Vec<Vec<f64>>,
}

impl AhpPriorities {
    /// Additive aggregation `P_s = sum over f of w_f * p_sf`.
    pub fn global(&self) -> Vec<f64> {
        let n = self.local.first().map_or(0, Vec::len);
        (0..n)
            .map(|s| self.criteria.iter().zip(&self.local).map(|(w, p)| w * p[s]).sum())
            .collect()
    }
}

pub fn priorities(m: &DecisionMatrix, profile: &OperatorProfile) -> Result<AhpPriorities> {
    if m.n_alternatives() < 2 {
        return Err(DssError::InvalidMatrix("AHP needs at least two alternatives".into()));
    }
    let criteria = principal_eigenvector(&criteria_comparisons(profile, m)?)?;
    let local = (0..m.n_criteria())
        .map(|j| principal_eigenvector(&alternative_comparisons(m, j)))
        .collect::<Result<Vec<_>>>()?;
    Ok(AhpPriorities { criteria, local })
}

pub fn ahp(m: &DecisionMatrix, profile: &OperatorProfile) -> Result<Ranking> {
    let p = priorities(m, profile)?;
    let global = p.global();
    Ok(Ranking::from_scores(METHOD, m.alternatives(), &global, ScoreOrder::HigherIsBetter)
        .with_meta("criteria_priorities", json!(p.criteria))
        .with_meta("aggregation", "additive"))
}
