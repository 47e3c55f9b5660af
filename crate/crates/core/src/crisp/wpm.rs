use crate::crisp::normalize;
use crate::error::Result;
use crate::model::{DecisionMatrix, WeightVector};
use crate::ranking::{Ranking, ScoreOrder};

pub const METHOD: &str = "wpm";

/// Weighted product of linear-normalized scores. The ratio of two scores is
/// the pairwise product `P(si/sj)`, so sorting by score agrees with every
/// pairwise comparison.
pub fn scores(m: &DecisionMatrix, w: &WeightVector) -> Result<Vec<f64>> {
    normalize::require_positive(m)?;
    let weights = w.aligned(m.criteria())?;
    let r = normalize::linear(m)?;
    Ok(r.iter()
        .map(|row| row.iter().zip(&weights).map(|(x, w)| x.powf(*w)).product())
        .collect())
}

/// `P(si/sj)` on raw values, oriented so that a value above one favours `si`.
pub fn pairwise_ratio(m: &DecisionMatrix, w: &WeightVector, i: usize, j: usize) -> Result<f64> {
    normalize::require_positive(m)?;
    let weights = w.aligned(m.criteria())?;
    Ok(m.criteria()
        .iter()
        .enumerate()
        .map(|(f, c)| {
            let ratio = if c.is_benefit() {
                m.value(i, f) / m.value(j, f)
            } else {
                m.value(j, f) / m.value(i, f)
            };
            ratio.powf(weights[f])
        })
        .product())
}

pub fn wpm(m: &DecisionMatrix, w: &WeightVector) -> Result<Ranking> {
    let s = scores(m, w)?;
    Ok(Ranking::from_scores(METHOD, m.alternatives(), &s, ScoreOrder::HigherIsBetter)
        .with_meta("normalization", "linear"))
}
